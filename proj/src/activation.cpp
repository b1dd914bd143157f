#include "mfa/activation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfa {
namespace {

// e^{30} is ~1e13, far from overflow, and the dropped tail ln(1+e^{-x}) at
// the crossover is below 1e-13.
constexpr double kLogPartitionCrossover = 30.0;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// Stable logistic; evaluates exp only on the non-positive side.
double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

std::string to_string(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::ReLU: return "relu";
    case ActivationKind::Linear: return "linear";
    case ActivationKind::Swish: return "swish";
  }
  throw std::invalid_argument("unknown activation kind");
}

ActivationKind activation_from_string(const std::string& name) {
  if (name == "sigmoid") return ActivationKind::Sigmoid;
  if (name == "tanh") return ActivationKind::Tanh;
  if (name == "relu") return ActivationKind::ReLU;
  if (name == "linear") return ActivationKind::Linear;
  if (name == "swish") return ActivationKind::Swish;
  throw std::invalid_argument("unknown activation '" + name +
                              "' (expected sigmoid|tanh|relu|linear|swish)");
}

NoiseParam::NoiseParam(double beta_value) : beta(beta_value) {
  if (!std::isfinite(beta) || beta <= 0.0)
    throw std::invalid_argument("beta must be finite and > 0");
}

double log_partition(double h, NoiseParam beta) {
  require_finite(h, "h");
  const double x = beta.beta * h;
  if (x > kLogPartitionCrossover) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double expected_gate(double h, NoiseParam beta) {
  require_finite(h, "h");
  return sigmoid(beta.beta * h);
}

double activate(ActivationKind kind, double h, NoiseParam beta) {
  require_finite(h, "h");
  switch (kind) {
    case ActivationKind::Sigmoid: return sigmoid(beta.beta * h);
    case ActivationKind::Tanh: return std::tanh(beta.beta * h);
    case ActivationKind::ReLU: return std::max(h, 0.0);
    case ActivationKind::Linear: return h;
    case ActivationKind::Swish: return expected_gate(h, beta) * h;
  }
  throw std::invalid_argument("unknown activation kind");
}

double activate_dh(ActivationKind kind, double h, NoiseParam beta) {
  require_finite(h, "h");
  const double b = beta.beta;
  switch (kind) {
    case ActivationKind::Sigmoid: {
      return b * sigmoid(b * h) * sigmoid(-b * h);
    }
    case ActivationKind::Tanh: {
      const double t = std::tanh(b * h);
      return b * (1.0 - t * t);
    }
    case ActivationKind::ReLU:
      return h > 0.0 ? 1.0 : 0.0;
    case ActivationKind::Linear:
      return 1.0;
    case ActivationKind::Swish: {
      return sigmoid(b * h) * (1.0 + h * b * sigmoid(-b * h));
    }
  }
  throw std::invalid_argument("unknown activation kind");
}

double activate_dbeta(ActivationKind kind, double h, NoiseParam beta) {
  require_finite(h, "h");
  const double b = beta.beta;
  switch (kind) {
    case ActivationKind::Sigmoid:
      return h * sigmoid(b * h) * sigmoid(-b * h);
    case ActivationKind::Tanh: {
      const double t = std::tanh(b * h);
      return h * (1.0 - t * t);
    }
    case ActivationKind::ReLU:
    case ActivationKind::Linear:
      return 0.0;
    case ActivationKind::Swish:
      return h * h * sigmoid(b * h) * sigmoid(-b * h);
  }
  throw std::invalid_argument("unknown activation kind");
}

LimitGaps limit_check(const std::vector<double>& h_grid, NoiseParam beta) {
  if (h_grid.empty()) throw std::invalid_argument("limit_check: empty grid");
  LimitGaps gaps{0.0, 0.0};
  for (double h : h_grid) {
    require_finite(h, "h_grid entry");
    const double sw = activate(ActivationKind::Swish, h, beta);
    gaps.relu_gap = std::max(gaps.relu_gap, std::fabs(sw - std::max(h, 0.0)));
    gaps.linear_gap = std::max(gaps.linear_gap, std::fabs(sw - 0.5 * h));
  }
  return gaps;
}

}  // namespace mfa
