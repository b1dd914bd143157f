#include "mfa/dataset.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mfa/errors.hpp"
#include "mfa/rng.hpp"

namespace mfa {

namespace {

void check_sample_count(std::size_t m) {
  if (m < 2) throw std::invalid_argument("dataset needs at least 2 examples");
}

}  // namespace

Dataset gen_linear(std::size_t m, std::uint64_t seed, double margin) {
  check_sample_count(m);
  if (margin <= 0.0 || margin >= 1.0) throw std::invalid_argument("margin must lie in (0,1)");
  std::mt19937_64 gen(seed);

  // Random separating direction; bias kept small so both classes show up.
  double w0 = gaussian(gen), w1 = gaussian(gen);
  double norm = std::sqrt(w0 * w0 + w1 * w1);
  if (norm < 1e-12) {
    w0 = 1.0;
    w1 = 0.0;
    norm = 1.0;
  }
  w0 /= norm;
  w1 /= norm;
  const double b = uniform_in(gen, -0.2, 0.2);

  Dataset ds;
  ds.name = "linear";
  ds.X = Matrix(m, 2);
  ds.y.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double x0 = 0.0, x1 = 0.0, s = 0.0;
    // Resample until the point clears the margin band.
    for (;;) {
      x0 = uniform_in(gen, -1.0, 1.0);
      x1 = uniform_in(gen, -1.0, 1.0);
      s = w0 * x0 + w1 * x1 + b;
      if (std::fabs(s) >= margin) break;
    }
    ds.X(i, 0) = x0;
    ds.X(i, 1) = x1;
    ds.y[i] = s > 0.0 ? 1.0 : 0.0;
  }
  return ds;
}

Dataset gen_nonlinear(std::size_t m, std::uint64_t seed, double noise) {
  check_sample_count(m);
  if (noise < 0.0) throw std::invalid_argument("noise must be non-negative");
  std::mt19937_64 gen(seed);

  const std::size_t m0 = (m + 1) / 2;  // upper moon, class 0
  Dataset ds;
  ds.name = "nonlinear";
  ds.X = Matrix(m, 2);
  ds.y.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool lower = i >= m0;
    const double t = std::numbers::pi * uniform01(gen);
    double x0, x1;
    if (!lower) {
      x0 = std::cos(t);
      x1 = std::sin(t);
    } else {
      x0 = 1.0 - std::cos(t);
      x1 = 0.5 - std::sin(t);
    }
    ds.X(i, 0) = x0 + noise * gaussian(gen);
    ds.X(i, 1) = x1 + noise * gaussian(gen);
    ds.y[i] = lower ? 1.0 : 0.0;
  }
  return ds;
}

Dataset load_digits_csv(const std::filesystem::path& path, int class_a, int class_b) {
  if (class_a == class_b) throw std::invalid_argument("digit classes must differ");
  if (class_a < 0 || class_a > 9 || class_b < 0 || class_b > 9)
    throw std::invalid_argument("digit classes must lie in [0,9]");

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<std::array<double, 64>> pixels;
  std::vector<double> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string field;
    std::array<double, 64> px{};
    int label = -1;
    std::size_t idx = 0;
    while (std::getline(row, field, ',')) {
      long v = 0;
      try {
        std::size_t used = 0;
        v = std::stol(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError("bad integer field '" + field + "'", line_no);
      }
      if (idx < 64) {
        if (v < 0 || v > 16) throw ParseError("pixel out of [0,16]", line_no);
        px[idx] = static_cast<double>(v) / 16.0;
      } else if (idx == 64) {
        if (v < 0 || v > 9) throw ParseError("label out of [0,9]", line_no);
        label = static_cast<int>(v);
      }
      ++idx;
    }
    if (idx != 65) throw ParseError("expected 65 comma-separated fields, got " + std::to_string(idx), line_no);
    if (label != class_a && label != class_b) continue;
    pixels.push_back(px);
    labels.push_back(label == class_b ? 1.0 : 0.0);
  }
  if (pixels.empty()) throw std::runtime_error("no rows matched the requested digit classes");
  bool seen_a = false, seen_b = false;
  for (double v : labels) (v == 0.0 ? seen_a : seen_b) = true;
  if (!seen_a || !seen_b)
    throw std::runtime_error("digit class " + std::to_string(seen_a ? class_b : class_a) +
                             " has no rows in " + path.string());

  Dataset ds;
  ds.name = "digits";
  ds.X = Matrix(pixels.size(), 64);
  ds.y = std::move(labels);
  for (std::size_t i = 0; i < pixels.size(); ++i)
    for (std::size_t j = 0; j < 64; ++j) ds.X(i, j) = pixels[i][j];
  return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  if (test_fraction <= 0.0 || test_fraction >= 1.0)
    throw std::invalid_argument("test_fraction must lie in (0,1)");
  const std::size_t m = ds.size();
  check_sample_count(m);

  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  // Fisher-Yates with the pinned generator; std::shuffle is not portable.
  std::mt19937_64 gen(seed);
  for (std::size_t i = m - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
    std::swap(order[i], order[j]);
  }

  const auto n_test = static_cast<std::size_t>(std::ceil(static_cast<double>(m) * test_fraction));
  if (n_test == 0 || n_test >= m) throw std::invalid_argument("split would leave one side empty");

  auto take = [&](std::size_t begin, std::size_t count, const char* tag) {
    Dataset out;
    out.name = ds.name + "/" + tag;
    out.X = Matrix(count, ds.features());
    out.y.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t src = order[begin + i];
      for (std::size_t j = 0; j < ds.features(); ++j) out.X(i, j) = ds.X(src, j);
      out.y[i] = ds.y[src];
    }
    return out;
  };
  return {take(n_test, m - n_test, "train"), take(0, n_test, "test")};
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  char buf[32];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.features(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.X(i, j));
      out << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%g", ds.y[i]);
    out << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace mfa
