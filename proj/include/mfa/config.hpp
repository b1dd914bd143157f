#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfa/activation.hpp"

namespace mfa {

/// Everything a training run depends on. Fields left at their "auto"
/// sentinel (empty architecture, epochs == 0, checkpoint_every == 0) are
/// filled per dataset by resolve_config.
struct RunConfig {
  std::string dataset = "nonlinear";  // linear | nonlinear | digits
  std::string digits_path = "data/digits.csv";
  int digits_class_a = 0;
  int digits_class_b = 1;
  std::vector<std::size_t> hidden;  // hidden layer widths, e.g. {8,2}
  ActivationKind activation = ActivationKind::Swish;
  double beta0 = 1.0;
  bool beta_trainable = false;
  bool column_normalize = false;
  double learning_rate = 0.01;
  double adam_b1 = 0.9;
  double adam_b2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t epochs = 0;
  std::size_t checkpoint_every = 0;
  std::uint64_t seed = 1;
  double residual_tol = 0.05;
  double zero_tol_rel = 1e-6;
  double test_fraction = 0.2;
  std::string output_dir = "out";
};

/// The config-file / CLI key names, in canonical order.
const std::vector<std::string>& config_keys();

/// Assigns one key=value pair. Unknown key or unparseable value ->
/// invalid_argument naming the key and listing the valid ones.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value file, '#' starts a comment, blank lines ignored.
RunConfig load_config_file(const std::string& path);

/// Fills auto fields (architecture/epochs/checkpoint cadence per dataset)
/// and validates every invariant; call once after all overrides.
void resolve_config(RunConfig& cfg);

/// Input and output widths attached: {n_in, hidden..., 1}.
std::vector<std::size_t> full_architecture(const RunConfig& cfg);

/// Examples per generated dataset (digits size comes from the CSV).
std::size_t dataset_examples(const RunConfig& cfg);

/// "8,2" -> {8,2}; rejects empties and non-digits.
std::vector<std::size_t> parse_architecture(const std::string& text);

std::string architecture_to_string(const std::vector<std::size_t>& hidden);

}  // namespace mfa
