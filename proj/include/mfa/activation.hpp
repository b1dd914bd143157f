#pragma once

#include <string>
#include <vector>

namespace mfa {

enum class ActivationKind { Sigmoid, Tanh, ReLU, Linear, Swish };

std::string to_string(ActivationKind kind);
ActivationKind activation_from_string(const std::string& name);

/// Per-layer inverse-noise scale. beta -> infinity is the noiseless (ReLU)
/// regime, beta -> 0 the noise-dominated (linear) one. Swish is the only
/// activation whose value depends on it; Sigmoid/Tanh take beta*h as argument.
struct NoiseParam {
  explicit NoiseParam(double beta_value);
  double beta;
};

/// ln(1 + e^{beta h}), the two-state gate normalization. Stable for
/// |beta h| up to 1e6: above a crossover of 30 the linear term is split off
/// and the remainder bounded by e^{-beta h}.
double log_partition(double h, NoiseParam beta);

/// Gate-open probability sigma(beta h) = beta^{-1} d/db log_partition.
double expected_gate(double h, NoiseParam beta);

/// Hidden-unit output. Swish is h * sigma(beta h), the expected transmitted
/// signal d/dbeta log_partition; ReLU/Linear are its beta -> inf / beta -> 0
/// limits; Sigmoid/Tanh are applied to beta h.
double activate(ActivationKind kind, double h, NoiseParam beta);

/// d activate / dh. ReLU uses the subgradient value 0 at h = 0.
double activate_dh(ActivationKind kind, double h, NoiseParam beta);

/// d activate / dbeta; identically 0 for ReLU and Linear.
double activate_dbeta(ActivationKind kind, double h, NoiseParam beta);

/// Sup-norm gaps of Swish against its two limits over a grid:
/// relu_gap = max |swish(h, beta) - max(h, 0)|, attained near h = 1/beta and
/// bounded by 1/(e beta); linear_gap = max |swish(h, beta) - h/2|.
struct LimitGaps {
  double relu_gap;
  double linear_gap;
};

LimitGaps limit_check(const std::vector<double>& h_grid, NoiseParam beta);

}  // namespace mfa
