#pragma once

#include <vector>

namespace mfa {

/// Clamp applied to network outputs before any log; keeps saturated sigmoids
/// (common with ReLU hidden layers) away from log(0).
constexpr double kOutputClamp = 1e-12;

inline double clamp_unit(double p) {
  if (p < kOutputClamp) return kOutputClamp;
  if (p > 1.0 - kOutputClamp) return 1.0 - kOutputClamp;
  return p;
}

/// Mean binary cross-entropy, -(1/m) sum[y ln p + (1-y) ln(1-p)], with
/// predictions clamped to [kOutputClamp, 1-kOutputClamp].
double bce_loss(const std::vector<double>& y_hat, const std::vector<double>& y);

/// Same quantity computed the blunt way: per-example Bernoulli mass
/// q^y (1-q)^{1-y} via std::pow, then -(1/m) sum of logs. Kept deliberately
/// independent of bce_loss so the two can cross-check each other.
double bernoulli_nll_oracle(const std::vector<double>& q, const std::vector<double>& y);

/// Stationary value of the outcome-probability exponent restricted to the
/// imaginary axis: Lambda = ln( y(1-q) / (q(1-y)) ). Diverges at y or q in
/// {0,1}; callers get a domain error there.
double saddle_point_lambda(double y, double q);

/// Numeric companion to saddle_point_lambda: solves the stationarity
/// condition q e^L / (q e^L + 1 - q) = y by bisection on L in [-50, 50].
double saddle_point_lambda_bisect(double y, double q);

struct ResidualReport {
  std::vector<double> residuals;  // e = y_hat - y
  double zero_fraction;           // |e| <= tolerance, as a fraction of m
  double tolerance;
};

ResidualReport residual_report(const std::vector<double>& y_hat, const std::vector<double>& y,
                               double tolerance = 0.05);

}  // namespace mfa
