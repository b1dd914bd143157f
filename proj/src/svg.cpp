#include "mfa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mfa {

namespace {

constexpr double kWidth = 640.0, kHeight = 420.0;
constexpr double kLeft = 64.0, kRight = 24.0, kTop = 40.0, kBottom = 48.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void take(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (lo > hi) {  // nothing finite
      lo = 0.0;
      hi = 1.0;
    }
    if (lo == hi) {
      const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
  }
};

double map_x(double v, const Range& r) {
  return kLeft + (v - r.lo) / (r.hi - r.lo) * (kWidth - kLeft - kRight);
}

double map_y(double v, const Range& r) {
  return kHeight - kBottom - (v - r.lo) / (r.hi - r.lo) * (kHeight - kTop - kBottom);
}

std::string header() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string axes(const Range& xr, const Range& yr, const std::string& title,
                 const std::string& x_label, const std::string& y_label) {
  std::string out;
  out += "<g stroke=\"#333\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" +
         num(kWidth - kRight) + "\" y2=\"" + num(kHeight - kBottom) + "\"/>\n";
  out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
         "\" y2=\"" + num(kHeight - kBottom) + "\"/>\n";
  out += "</g>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    const double px = map_x(fx, xr);
    const double py = map_y(fy, yr);
    out += "<line x1=\"" + num(px) + "\" y1=\"" + num(kHeight - kBottom) + "\" x2=\"" + num(px) +
           "\" y2=\"" + num(kHeight - kBottom + 4) + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + num(px) + "\" y=\"" + num(kHeight - kBottom + 18) +
           "\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
    out += "<line x1=\"" + num(kLeft - 4) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(py) + "\" stroke=\"#333\"/>\n";
    out += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
           "\" text-anchor=\"end\">" + num(fy) + "</text>\n";
  }
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";
  out += "<text x=\"" + num(kWidth / 2) + "\" y=\"" + num(kHeight - 10) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  out += "<text x=\"16\" y=\"" + num(kHeight / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(kHeight / 2) + ")\">" + y_label + "</text>\n";
  return out;
}

}  // namespace

std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label) {
  Range xr, yr;
  for (const SvgSeries& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      xr.take(s.x[i]);
      yr.take(s.y[i]);
    }
  xr.finish();
  yr.finish();

  std::string out = header();
  out += axes(xr, yr, title, x_label, y_label);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const SvgSeries& s = series[k];
    const char* color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!pts.empty()) pts += ' ';
      pts += num(map_x(s.x[i], xr)) + "," + num(map_y(s.y[i], yr));
    }
    if (!pts.empty())
      out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(k);
    out += "<rect x=\"" + num(kWidth - kRight - 130) + "\" y=\"" + num(ly) +
           "\" width=\"12\" height=\"4\" fill=\"" + color + "\"/>\n";
    out += "<text x=\"" + num(kWidth - kRight - 112) + "\" y=\"" + num(ly + 6) + "\">" + s.label +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string svg_histogram(const Histogram& hist, const std::string& title,
                          const std::string& x_label) {
  Range xr, yr;
  xr.take(hist.edges.front());
  xr.take(hist.edges.back());
  yr.take(0.0);
  for (std::size_t c : hist.counts) yr.take(static_cast<double>(c));
  xr.finish();
  yr.finish();

  std::string out = header();
  out += axes(xr, yr, title, x_label, "count");
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    const double x0 = map_x(hist.edges[i], xr);
    const double x1 = map_x(hist.edges[i + 1], xr);
    const double y1 = map_y(static_cast<double>(hist.counts[i]), yr);
    const double y0 = map_y(0.0, yr);
    if (y0 <= y1) continue;  // zero-height bar
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y1) + "\" width=\"" + num(std::max(1.0, x1 - x0)) +
           "\" height=\"" + num(y0 - y1) + "\" fill=\"#1f77b4\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mfa
