#include "mfa/network.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mfa/errors.hpp"
#include "mfa/loss.hpp"
#include "mfa/rng.hpp"

namespace mfa {
namespace {

void check_input_shape(const Network& net, const Matrix& X) {
  if (X.cols() != net.layer_sizes.front())
    throw ShapeError("forward: input has " + std::to_string(X.cols()) + " features, network expects " +
                     std::to_string(net.layer_sizes.front()));
  for (std::size_t i = 0; i < X.size(); ++i)
    if (!std::isfinite(X.data()[i])) throw std::invalid_argument("forward: non-finite input entry");
}

}  // namespace

std::size_t Network::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < depth(); ++l) n += weights[l].size() + biases[l].size();
  if (betas_in_flat()) n += betas.size();
  return n;
}

Network init_network(const std::vector<std::size_t>& layer_sizes, ActivationKind hidden_kind,
                     std::uint64_t seed, double beta0, bool beta_trainable) {
  if (layer_sizes.size() < 2) throw std::invalid_argument("init_network: need at least input and output sizes");
  for (std::size_t n : layer_sizes)
    if (n < 1) throw std::invalid_argument("init_network: layer sizes must be >= 1");
  if (layer_sizes.back() != 1)
    throw std::invalid_argument("init_network: binary classifier needs a single output unit");
  if (!(beta0 > 0.0) || !std::isfinite(beta0))
    throw std::invalid_argument("init_network: beta0 must be finite and > 0");

  Network net;
  net.layer_sizes = layer_sizes;
  net.hidden_kind = hidden_kind;
  net.beta_trainable = beta_trainable;

  std::mt19937_64 gen(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const std::size_t fan_in = layer_sizes[l];
    const std::size_t fan_out = layer_sizes[l + 1];
    Matrix w(fan_out, fan_in);
    const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (std::size_t i = 0; i < w.size(); ++i) w.data()[i] = scale * gaussian(gen);
    net.weights.push_back(std::move(w));
    net.biases.emplace_back(fan_out, 0.0);
    net.betas.push_back(beta0);
  }
  return net;
}

ForwardCache forward(const Network& net, const Matrix& X) {
  check_input_shape(net, X);
  const std::size_t L = net.depth();
  const std::size_t m = X.rows();

  ForwardCache cache;
  cache.acts.reserve(L);
  cache.preacts.reserve(L);
  cache.acts.push_back(X);

  for (std::size_t l = 0; l < L; ++l) {
    const Matrix& a_prev = cache.acts[l];
    Matrix h = matmul_bt(a_prev, net.weights[l]);
    for (std::size_t mu = 0; mu < m; ++mu) {
      double* row = h.row(mu);
      for (std::size_t i = 0; i < h.cols(); ++i) row[i] += net.biases[l][i];
    }
    const NoiseParam beta(net.betas[l]);
    if (l + 1 < L) {
      Matrix a(m, h.cols());
      for (std::size_t i = 0; i < h.size(); ++i)
        a.data()[i] = activate(net.hidden_kind, h.data()[i], beta);
      cache.acts.push_back(std::move(a));
    } else {
      cache.outputs.resize(m);
      for (std::size_t mu = 0; mu < m; ++mu)
        cache.outputs[mu] = clamp_unit(activate(ActivationKind::Sigmoid, h(mu, 0), beta));
    }
    cache.preacts.push_back(std::move(h));
  }
  return cache;
}

Gradients backward(const Network& net, const ForwardCache& cache, const std::vector<double>& y) {
  const std::size_t L = net.depth();
  const std::size_t m = cache.outputs.size();
  if (y.size() != m) throw ShapeError("backward: label count does not match batch size");

  Gradients grads;
  grads.d_weights.resize(L);
  grads.d_biases.resize(L);
  grads.d_betas.assign(L, 0.0);

  const double inv_m = 1.0 / static_cast<double>(m);
  const bool train_beta = net.betas_in_flat();

  // Output layer: d(mean BCE)/d(preact) = beta_L (y_hat - y)/m, and the beta
  // gradient picks up the raw preact instead of the beta factor.
  Matrix delta(m, 1);
  for (std::size_t mu = 0; mu < m; ++mu) {
    const double e = (cache.outputs[mu] - y[mu]) * inv_m;
    delta(mu, 0) = e * net.betas[L - 1];
    if (train_beta) grads.d_betas[L - 1] += e * cache.preacts[L - 1](mu, 0);
  }

  for (std::size_t l = L; l-- > 0;) {
    const Matrix& a_prev = cache.acts[l];
    // dW_l = delta^T a_{l-1}; db_l = column sums of delta.
    Matrix dw(net.weights[l].rows(), net.weights[l].cols());
    std::vector<double> db(net.biases[l].size(), 0.0);
    for (std::size_t mu = 0; mu < m; ++mu) {
      const double* d_row = delta.row(mu);
      const double* a_row = a_prev.row(mu);
      for (std::size_t i = 0; i < dw.rows(); ++i) {
        const double di = d_row[i];
        if (di == 0.0) continue;
        double* dw_row = dw.row(i);
        for (std::size_t j = 0; j < dw.cols(); ++j) dw_row[j] += di * a_row[j];
        db[i] += di;
      }
    }
    grads.d_weights[l] = std::move(dw);
    grads.d_biases[l] = std::move(db);
    if (l == 0) break;

    // r = delta W_l is the gradient w.r.t. a_{l-1}; fold in the activation
    // derivative to step down one layer.
    Matrix r = matmul(delta, net.weights[l]);
    const NoiseParam beta(net.betas[l - 1]);
    delta = Matrix(m, r.cols());
    for (std::size_t mu = 0; mu < m; ++mu) {
      for (std::size_t i = 0; i < r.cols(); ++i) {
        const double h = cache.preacts[l - 1](mu, i);
        const double up = r(mu, i);
        delta(mu, i) = up * activate_dh(net.hidden_kind, h, beta);
        if (train_beta) grads.d_betas[l - 1] += up * activate_dbeta(net.hidden_kind, h, beta);
      }
    }
  }
  return grads;
}

std::vector<double> flatten_params(const Network& net) {
  std::vector<double> flat;
  flat.reserve(net.param_count());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    flat.insert(flat.end(), net.weights[l].data(), net.weights[l].data() + net.weights[l].size());
    flat.insert(flat.end(), net.biases[l].begin(), net.biases[l].end());
  }
  if (net.betas_in_flat()) flat.insert(flat.end(), net.betas.begin(), net.betas.end());
  return flat;
}

Network unflatten_params(const Network& prototype, const std::vector<double>& flat) {
  if (flat.size() != prototype.param_count())
    throw ShapeError("unflatten_params: expected " + std::to_string(prototype.param_count()) +
                     " values, got " + std::to_string(flat.size()));
  Network net = prototype;
  std::size_t pos = 0;
  for (std::size_t l = 0; l < net.depth(); ++l) {
    for (std::size_t i = 0; i < net.weights[l].size(); ++i) net.weights[l].data()[i] = flat[pos++];
    for (std::size_t i = 0; i < net.biases[l].size(); ++i) net.biases[l][i] = flat[pos++];
  }
  if (net.betas_in_flat())
    for (std::size_t l = 0; l < net.betas.size(); ++l) {
      if (!(flat[pos] > 0.0)) throw std::invalid_argument("unflatten_params: beta must stay > 0");
      net.betas[l] = flat[pos++];
    }
  return net;
}

std::vector<double> flatten_gradients(const Network& net, const Gradients& grads) {
  std::vector<double> flat;
  flat.reserve(net.param_count());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    flat.insert(flat.end(), grads.d_weights[l].data(),
                grads.d_weights[l].data() + grads.d_weights[l].size());
    flat.insert(flat.end(), grads.d_biases[l].begin(), grads.d_biases[l].end());
  }
  if (net.betas_in_flat()) flat.insert(flat.end(), grads.d_betas.begin(), grads.d_betas.end());
  return flat;
}

Network column_normalize(const Network& net) {
  Network out = net;
  for (std::size_t l = 0; l < out.depth(); ++l) {
    Matrix& w = out.weights[l];
    for (std::size_t j = 0; j < w.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < w.rows(); ++i) sum += w(i, j);
      if (std::fabs(sum) < 1e-12) throw DegenerateColumnError(l, j, sum);
      for (std::size_t i = 0; i < w.rows(); ++i) w(i, j) /= sum;
    }
  }
  return out;
}

double predict_accuracy(const Network& net, const Matrix& X, const std::vector<double>& y,
                        double threshold) {
  if (X.rows() != y.size()) throw ShapeError("predict_accuracy: label count does not match batch");
  const ForwardCache cache = forward(net, X);
  std::size_t hits = 0;
  for (std::size_t mu = 0; mu < y.size(); ++mu) {
    const double predicted = cache.outputs[mu] >= threshold ? 1.0 : 0.0;
    if (predicted == y[mu]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(y.size());
}

}  // namespace mfa
