#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mfa/config.hpp"
#include "mfa/dataset.hpp"
#include "mfa/network.hpp"

namespace mfa {

/// One checkpoint row of the training trajectory.
struct TrajectoryRecord {
  std::size_t epoch = 0;
  double loss_train = 0.0;
  double loss_test = 0.0;
  double acc_train = 0.0;
  double acc_test = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double zero_residual_frac = 0.0;
};

/// Eigenvalues of the train-loss Hessian at one checkpoint.
struct CheckpointSpectrum {
  std::size_t epoch = 0;
  std::vector<double> eigenvalues;
};

struct RunResult {
  RunConfig config;  // fully resolved
  Network net;       // end-of-training parameters
  std::vector<TrajectoryRecord> trajectory;
  std::vector<CheckpointSpectrum> spectra;
  // Per-epoch train loss/accuracy measured just before that epoch's update,
  // i.e. entry k is the state after k completed updates.
  std::vector<double> epoch_loss_train;
  std::vector<double> epoch_acc_train;
  std::size_t param_dim = 0;
  bool negative_hidden_seen = false;  // any hidden activation < 0 at any checkpoint
};

/// Full-batch Adam training with spectrum/residual diagnostics at every
/// checkpoint. Deterministic: (config, seed) fixes every output bit.
/// Throws DivergenceError when the train loss leaves the finite range.
RunResult train_run(const RunConfig& cfg);

/// Per-seed, per-activation cell of a comparison sweep.
struct CompareCell {
  std::string activation;
  std::uint64_t seed = 0;
  double final_loss_train = 0.0;
  long long epochs_to_threshold = -1;  // first epoch with loss <= threshold, -1 if never
  double final_alpha = 0.0;
  double final_gamma = 0.0;
  double final_zero_residual_frac = 0.0;
  double eig_stddev = 0.0;  // sample stddev of the final spectrum
  bool gamma_positive_everywhere = false;
};

struct CompareActivationSummary {
  std::string activation;
  double median_final_loss = 0.0;
  double median_epochs_to_threshold = 0.0;  // never-converged cells count as epochs+1
  double median_final_alpha = 0.0;
  double median_final_gamma = 0.0;
  double median_final_zero_residual_frac = 0.0;
  double median_eig_stddev = 0.0;
};

struct CompareResult {
  std::vector<CompareCell> cells;
  std::vector<CompareActivationSummary> by_activation;
  double loss_threshold = 0.0;
};

/// Runs every (config, seed) cell sequentially. Configs must agree on every
/// field except activation (output_dir is also allowed to differ).
CompareResult compare_runs(const std::vector<RunConfig>& configs,
                           const std::vector<std::uint64_t>& seeds,
                           double loss_threshold = 0.1);

/// Builds (or loads) the dataset a config names, without splitting.
Dataset build_dataset(const RunConfig& cfg);

double median(std::vector<double> v);

/// n-1 denominator; 0 for fewer than two samples.
double sample_stddev(const std::vector<double>& v);

}  // namespace mfa
