#include "mfa/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "mfa/errors.hpp"

namespace mfa {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* where) {
  if (a != b) throw ShapeError(std::string(where) + ": length mismatch");
}

}  // namespace

double bce_loss(const std::vector<double>& y_hat, const std::vector<double>& y) {
  require_same_length(y_hat.size(), y.size(), "bce_loss");
  if (y_hat.empty()) throw ShapeError("bce_loss: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = clamp_unit(y_hat[i]);
    sum += y[i] * std::log(p) + (1.0 - y[i]) * std::log(1.0 - p);
  }
  return -sum / static_cast<double>(y.size());
}

double bernoulli_nll_oracle(const std::vector<double>& q, const std::vector<double>& y) {
  require_same_length(q.size(), y.size(), "bernoulli_nll_oracle");
  if (q.empty()) throw ShapeError("bernoulli_nll_oracle: empty input");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double p = clamp_unit(q[i]);
    const double mass = std::pow(p, y[i]) * std::pow(1.0 - p, 1.0 - y[i]);
    sum += std::log(mass);
  }
  return -sum / static_cast<double>(y.size());
}

double saddle_point_lambda(double y, double q) {
  if (!(y > 0.0 && y < 1.0) || !(q > 0.0 && q < 1.0))
    throw std::domain_error("saddle_point_lambda: y and q must lie strictly in (0,1)");
  return std::log(y * (1.0 - q) / (q * (1.0 - y)));
}

double saddle_point_lambda_bisect(double y, double q) {
  if (!(y > 0.0 && y < 1.0) || !(q > 0.0 && q < 1.0))
    throw std::domain_error("saddle_point_lambda_bisect: y and q must lie strictly in (0,1)");
  // The gate mean q e^L / (q e^L + 1 - q) is increasing in L, so the
  // stationarity residual has one sign change on the bracket.
  auto residual = [&](double lambda) {
    const double w = q * std::exp(lambda);
    return w / (w + 1.0 - q) - y;
  };
  double lo = -50.0, hi = 50.0;
  double flo = residual(lo);
  if (flo > 0.0) throw std::domain_error("saddle_point_lambda_bisect: no sign change on bracket");
  for (int iter = 0; iter < 200 && hi - lo > 1e-11; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ResidualReport residual_report(const std::vector<double>& y_hat, const std::vector<double>& y,
                               double tolerance) {
  require_same_length(y_hat.size(), y.size(), "residual_report");
  if (y_hat.empty()) throw ShapeError("residual_report: empty input");
  if (!(tolerance > 0.0)) throw std::invalid_argument("residual_report: tolerance must be > 0");
  ResidualReport report;
  report.tolerance = tolerance;
  report.residuals.resize(y.size());
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    report.residuals[i] = y_hat[i] - y[i];
    if (std::fabs(report.residuals[i]) <= tolerance) ++zeros;
  }
  report.zero_fraction = static_cast<double>(zeros) / static_cast<double>(y.size());
  return report;
}

}  // namespace mfa
