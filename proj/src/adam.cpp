#include "mfa/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "mfa/errors.hpp"

namespace mfa {

void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               const AdamConfig& cfg, std::size_t clip_from, double clip_floor) {
  if (grad.size() != params.size())
    throw ShapeError("adam_step: gradient has " + std::to_string(grad.size()) +
                     " entries for " + std::to_string(params.size()) + " parameters");
  if (state.m.size() != params.size())
    throw ShapeError("adam_step: state sized for " + std::to_string(state.m.size()) +
                     " parameters, got " + std::to_string(params.size()));
  if (cfg.learning_rate <= 0.0 || cfg.b1 < 0.0 || cfg.b1 >= 1.0 || cfg.b2 < 0.0 ||
      cfg.b2 >= 1.0 || cfg.eps <= 0.0)
    throw std::invalid_argument("adam_step: bad optimizer constants");

  ++state.t;
  const double c1 = 1.0 - std::pow(cfg.b1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(cfg.b2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i];
    state.m[i] = cfg.b1 * state.m[i] + (1.0 - cfg.b1) * g;
    state.v[i] = cfg.b2 * state.v[i] + (1.0 - cfg.b2) * g * g;
    const double mhat = state.m[i] / c1;
    const double vhat = state.v[i] / c2;
    params[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.eps);
    if (i >= clip_from && params[i] < clip_floor) params[i] = clip_floor;
  }
}

}  // namespace mfa
