#pragma once

#include <cstdint>
#include <vector>

#include "mfa/activation.hpp"
#include "mfa/matrix.hpp"

namespace mfa {

/// Dense feed-forward binary classifier. Hidden layers use hidden_kind with a
/// per-layer noise scale beta; the output layer is always a single unit with
/// a beta-scaled sigmoid, so layer_sizes.back() must be 1.
///
/// Flat parameter layout (version "mfa-params-1"): for each layer l in order,
/// weights[l] row-major then biases[l]; after all layers, the betas
/// (layer 1 .. L), present only when betas_in_flat() is true.
struct Network {
  std::vector<std::size_t> layer_sizes;     // [n0, n1, ..., nL], nL == 1
  std::vector<Matrix> weights;              // weights[l]: n_{l+1} x n_l
  std::vector<std::vector<double>> biases;  // biases[l]: n_{l+1}
  std::vector<double> betas;                // one per weight layer; betas.back() scales the output
  ActivationKind hidden_kind = ActivationKind::Swish;
  bool beta_trainable = false;

  std::size_t depth() const { return weights.size(); }

  /// Betas enter the flat parameter vector only when they are trainable and
  /// the hidden activation actually depends on beta. ReLU/Linear networks
  /// would otherwise carry coordinates with identically zero gradient, which
  /// would show up as fake flat directions in every spectrum.
  bool betas_in_flat() const {
    return beta_trainable && hidden_kind != ActivationKind::ReLU &&
           hidden_kind != ActivationKind::Linear;
  }

  std::size_t param_count() const;
};

/// One forward pass over a batch. acts[0] is the input batch itself; acts[l]
/// for 0 < l < L are hidden activations. outputs holds the clamped sigmoid
/// outputs, strictly inside (0,1).
struct ForwardCache {
  std::vector<Matrix> preacts;  // preacts[l]: batch x layer_sizes[l+1]
  std::vector<Matrix> acts;     // acts[l]: batch x layer_sizes[l]
  std::vector<double> outputs;  // batch
};

struct Gradients {
  std::vector<Matrix> d_weights;
  std::vector<std::vector<double>> d_biases;
  std::vector<double> d_betas;
};

/// Gaussian weights with standard deviation 1/sqrt(fan_in), zero biases, all
/// betas = beta0. Same seed, same bytes.
Network init_network(const std::vector<std::size_t>& layer_sizes, ActivationKind hidden_kind,
                     std::uint64_t seed, double beta0, bool beta_trainable = false);

ForwardCache forward(const Network& net, const Matrix& X);

/// Gradients of the mean binary cross-entropy over the batch with respect to
/// every weight, bias and (when trainable) beta. y entries must be 0 or 1.
Gradients backward(const Network& net, const ForwardCache& cache, const std::vector<double>& y);

std::vector<double> flatten_params(const Network& net);
Network unflatten_params(const Network& prototype, const std::vector<double>& flat);

/// Gradients flattened with the same layout as flatten_params.
std::vector<double> flatten_gradients(const Network& net, const Gradients& grads);

/// Rescale every weight-matrix column to unit sum (the information
/// conservation constraint). Idempotent; rejects columns whose sum is
/// within 1e-12 of zero.
Network column_normalize(const Network& net);

/// Fraction of examples with (y_hat >= threshold) == y; ties predict 1.
double predict_accuracy(const Network& net, const Matrix& X, const std::vector<double>& y,
                        double threshold = 0.5);

}  // namespace mfa
