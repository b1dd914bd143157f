#pragma once

#include <string>
#include <vector>

#include "mfa/hessian.hpp"

namespace mfa {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal standalone line chart (axes, ticks, legend). Non-finite points
/// are dropped from their series. Deterministic output bytes.
std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label);

/// Bar rendering of eig_histogram output.
std::string svg_histogram(const Histogram& hist, const std::string& title,
                          const std::string& x_label);

}  // namespace mfa
