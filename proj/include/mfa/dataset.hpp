#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mfa/matrix.hpp"

namespace mfa {

struct Dataset {
  Matrix X;               // m x n features
  std::vector<double> y;  // binary labels, one per row
  std::string name;

  std::size_t size() const { return y.size(); }
  std::size_t features() const { return X.cols(); }
};

/// Linearly separable 2-feature task: points uniform in [-1,1]^2, labeled by
/// a seeded random hyperplane, resampled until every point clears `margin`.
Dataset gen_linear(std::size_t m, std::uint64_t seed, double margin = 0.2);

/// Two interleaved half-moon arcs with Gaussian jitter; not linearly
/// separable for the default noise.
Dataset gen_nonlinear(std::size_t m, std::uint64_t seed, double noise = 0.05);

/// 8x8 digits rows: 64 integer pixels in [0,16] then a label in [0,9],
/// comma-separated, no header. Keeps class_a as 0 and class_b as 1; pixels
/// scaled to [0,1].
Dataset load_digits_csv(const std::filesystem::path& path, int class_a, int class_b);

/// Seeded shuffle, then ceil(m * test_fraction) test rows and the rest train.
std::pair<Dataset, Dataset> split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Rows of "feature,...,feature,label", matching the digits layout.
void write_csv(const Dataset& ds, const std::filesystem::path& path);

}  // namespace mfa
