#pragma once

#include <cstddef>
#include <vector>

namespace mfa {

struct AdamConfig {
  double learning_rate = 0.01;
  double b1 = 0.9;
  double b2 = 0.999;
  double eps = 1e-8;
};

/// First/second moment buffers plus the bias-correction step counter.
struct AdamState {
  explicit AdamState(std::size_t dim) : m(dim, 0.0), v(dim, 0.0) {}
  std::vector<double> m;
  std::vector<double> v;
  std::size_t t = 0;
};

/// One in-place update of `params`. Coordinates at index >= clip_from are
/// clamped from below at `clip_floor` after the step (used to keep noise
/// parameters positive); pass clip_from == params.size() to disable.
void adam_step(std::vector<double>& params, const std::vector<double>& grad, AdamState& state,
               const AdamConfig& cfg, std::size_t clip_from, double clip_floor = 1e-3);

}  // namespace mfa
