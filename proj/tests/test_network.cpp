#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <mfa/errors.hpp>
#include <mfa/loss.hpp>
#include <mfa/network.hpp>
#include <mfa/rng.hpp>

#include "oracles.hpp"

using mfa::ActivationKind;
using mfa::Matrix;
using mfa::Network;
using oracles::close;

namespace {

const std::vector<ActivationKind> kAllKinds = {
    ActivationKind::Sigmoid, ActivationKind::Tanh, ActivationKind::ReLU,
    ActivationKind::Linear, ActivationKind::Swish};

Matrix random_batch(std::mt19937_64& gen, std::size_t rows, std::size_t cols) {
  Matrix X(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) X(i, j) = mfa::uniform_in(gen, -2.0, 2.0);
  return X;
}

std::vector<double> random_labels(std::mt19937_64& gen, std::size_t m) {
  std::vector<double> y(m);
  for (auto& v : y) v = static_cast<double>(gen() % 2);
  return y;
}

double loss_at(const Network& proto, const std::vector<double>& flat, const Matrix& X,
               const std::vector<double>& y) {
  const Network net = mfa::unflatten_params(proto, flat);
  return mfa::bce_loss(mfa::forward(net, X).outputs, y);
}

}  // namespace

TEST_CASE("init is deterministic and shaped correctly") {
  const auto a = mfa::init_network({2, 8, 2, 1}, ActivationKind::Swish, 42, 1.0);
  const auto b = mfa::init_network({2, 8, 2, 1}, ActivationKind::Swish, 42, 1.0);
  CHECK(mfa::flatten_params(a) == mfa::flatten_params(b));
  const auto c = mfa::init_network({2, 8, 2, 1}, ActivationKind::Swish, 43, 1.0);
  CHECK(mfa::flatten_params(a) != mfa::flatten_params(c));

  REQUIRE(a.weights.size() == 3);
  CHECK(a.weights[0].rows() == 8);
  CHECK(a.weights[0].cols() == 2);
  CHECK(a.weights[1].rows() == 2);
  CHECK(a.weights[1].cols() == 8);
  CHECK(a.weights[2].rows() == 1);
  CHECK(a.weights[2].cols() == 2);
  for (const auto& bias : a.biases)
    for (double v : bias) CHECK(v == 0.0);
  for (double beta : a.betas) CHECK(beta == 1.0);

  CHECK_THROWS_AS(mfa::init_network({2}, ActivationKind::Swish, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mfa::init_network({2, 0, 1}, ActivationKind::Swish, 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(mfa::init_network({2, 4, 3}, ActivationKind::Swish, 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(mfa::init_network({2, 4, 1}, ActivationKind::Swish, 1, 0.0),
                  std::invalid_argument);
}

TEST_CASE("init weight variance follows 1/fan_in") {
  // 1e5 draws with fan_in 4: sample variance within 5% of 0.25.
  const auto net = mfa::init_network({4, 25000, 1}, ActivationKind::Swish, 9, 1.0);
  const Matrix& W = net.weights[0];
  double mean = 0.0;
  for (std::size_t i = 0; i < W.size(); ++i) mean += W.data()[i];
  mean /= static_cast<double>(W.size());
  double var = 0.0;
  for (std::size_t i = 0; i < W.size(); ++i) {
    const double d = W.data()[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(W.size() - 1);
  CHECK(std::fabs(var - 0.25) <= 0.05 * 0.25);
  CHECK(std::fabs(mean) <= 0.01);
}

TEST_CASE("forward basics") {
  auto net = mfa::init_network({3, 4, 1}, ActivationKind::Swish, 5, 1.0);
  for (auto& W : net.weights)
    for (std::size_t i = 0; i < W.size(); ++i) W.data()[i] = 0.0;
  std::mt19937_64 gen(3);
  const Matrix X = random_batch(gen, 6, 3);
  for (double out : mfa::forward(net, X).outputs) CHECK(out == 0.5);

  // No hidden layer: plain beta-scaled logistic regression.
  auto one = mfa::init_network({1, 1}, ActivationKind::Swish, 5, 1.0);
  one.weights[0](0, 0) = 1.0;
  one.biases[0][0] = 0.0;
  Matrix x0(1, 1);
  x0(0, 0) = 0.0;
  CHECK(mfa::forward(one, x0).outputs[0] == 0.5);

  Matrix bad(2, 5);
  CHECK_THROWS_AS(mfa::forward(net, bad), mfa::ShapeError);
}

TEST_CASE("forward matches a hand-rolled replay") {
  std::mt19937_64 gen(17);
  const auto net = mfa::init_network({3, 4, 2, 1}, ActivationKind::Swish, 23, 0.8);
  const Matrix X = random_batch(gen, 5, 3);
  const auto cache = mfa::forward(net, X);

  auto sigma = [](double z) { return 1.0 / (1.0 + std::exp(-z)); };
  for (std::size_t mu = 0; mu < 5; ++mu) {
    std::vector<double> act = {X(mu, 0), X(mu, 1), X(mu, 2)};
    for (std::size_t l = 0; l < net.depth(); ++l) {
      const Matrix& W = net.weights[l];
      std::vector<double> next(W.rows());
      for (std::size_t i = 0; i < W.rows(); ++i) {
        double h = net.biases[l][i];
        for (std::size_t j = 0; j < W.cols(); ++j) h += W(i, j) * act[j];
        CHECK(close(cache.preacts[l](mu, i), h, 1e-12));
        next[i] = (l + 1 == net.depth()) ? sigma(net.betas[l] * h)
                                         : h * sigma(net.betas[l] * h);
      }
      act = next;
    }
    CHECK(close(cache.outputs[mu], act[0], 1e-12));
  }
}

TEST_CASE("perfect fit kills the gradient") {
  auto net = mfa::init_network({1, 1}, ActivationKind::Swish, 1, 1.0);
  net.weights[0](0, 0) = 0.0;
  net.biases[0][0] = 40.0;  // sigmoid(40) clamps to 1 - 1e-12
  Matrix X(3, 1);
  X(0, 0) = -1.0;
  X(1, 0) = 0.5;
  X(2, 0) = 2.0;
  const std::vector<double> y = {1.0, 1.0, 1.0};
  const auto cache = mfa::forward(net, X);
  const auto g = mfa::backward(net, cache, y);
  CHECK(std::fabs(g.d_weights[0](0, 0)) <= 1e-9);
  CHECK(std::fabs(g.d_biases[0][0]) <= 1e-9);
}

TEST_CASE("gradients match finite differences for every kind and coordinate") {
  const std::vector<std::vector<std::size_t>> archs = {{2, 5, 1}, {4, 8, 2, 1}};
  std::mt19937_64 gen(29);
  for (const auto& sizes : archs) {
    for (ActivationKind kind : kAllKinds) {
      auto net = mfa::init_network(sizes, kind, 31 + static_cast<std::uint64_t>(kind), 0.7, true);
      const Matrix X = random_batch(gen, 6, sizes.front());
      const auto y = random_labels(gen, 6);
      const auto g = mfa::backward(net, mfa::forward(net, X), y);
      const auto flat = mfa::flatten_params(net);
      const auto gflat = mfa::flatten_gradients(net, g);
      REQUIRE(gflat.size() == flat.size());
      for (std::size_t i = 0; i < flat.size(); ++i) {
        auto probe = flat;
        const double h = 1e-5 * std::max(1.0, std::fabs(flat[i]));
        probe[i] = flat[i] + h;
        const double up = loss_at(net, probe, X, y);
        probe[i] = flat[i] - h;
        const double dn = loss_at(net, probe, X, y);
        const double fd = (up - dn) / (2.0 * h);
        CHECK(close(gflat[i], fd, 1e-5, 1e-8));
      }
    }
  }
}

TEST_CASE("beta gradients are zero when frozen or beta-independent") {
  std::mt19937_64 gen(37);
  const Matrix X = random_batch(gen, 4, 2);
  const auto y = random_labels(gen, 4);

  // Frozen betas: gradient buffers stay identically zero.
  auto frozen = mfa::init_network({2, 3, 1}, ActivationKind::Swish, 3, 1.0, false);
  const auto gf = mfa::backward(frozen, mfa::forward(frozen, X), y);
  for (double v : gf.d_betas) CHECK(v == 0.0);
  CHECK_FALSE(frozen.betas_in_flat());

  // ReLU/Linear hidden layers never expose beta coordinates, trainable or not:
  // a flat direction with a hardwired zero gradient would pollute the spectrum.
  for (ActivationKind kind : {ActivationKind::ReLU, ActivationKind::Linear}) {
    auto net = mfa::init_network({2, 3, 1}, kind, 3, 1.0, true);
    CHECK_FALSE(net.betas_in_flat());
    CHECK(net.param_count() == 13);
  }
  auto swish = mfa::init_network({2, 3, 1}, ActivationKind::Swish, 3, 1.0, true);
  CHECK(swish.betas_in_flat());
  CHECK(swish.param_count() == 15);
}

TEST_CASE("dead relu net has exactly zero hidden gradients") {
  auto net = mfa::init_network({2, 3, 1}, ActivationKind::ReLU, 7, 1.0);
  for (std::size_t i = 0; i < net.weights[0].size(); ++i) net.weights[0].data()[i] = 0.0;
  for (auto& b : net.biases[0]) b = -1.0;  // every hidden pre-activation negative
  std::mt19937_64 gen(41);
  const Matrix X = random_batch(gen, 5, 2);
  const auto y = random_labels(gen, 5);
  const auto g = mfa::backward(net, mfa::forward(net, X), y);
  for (std::size_t i = 0; i < g.d_weights[0].size(); ++i) CHECK(g.d_weights[0].data()[i] == 0.0);
  for (double v : g.d_biases[0]) CHECK(v == 0.0);
  // Downstream weights see zero activations, downstream bias still learns.
  for (std::size_t i = 0; i < g.d_weights[1].size(); ++i) CHECK(g.d_weights[1].data()[i] == 0.0);
  CHECK(std::fabs(g.d_biases[1][0]) > 0.0);
}

TEST_CASE("flatten round trip and layout") {
  auto net = mfa::init_network({2, 3, 1}, ActivationKind::Swish, 13, 0.9, true);
  const auto flat = mfa::flatten_params(net);
  REQUIRE(flat.size() == 15);  // 2*3+3 + 3*1+1 + 2
  const auto back = mfa::flatten_params(mfa::unflatten_params(net, flat));
  CHECK(back == flat);

  // Perturbing one flat coordinate changes exactly one parameter.
  for (std::size_t i = 0; i < flat.size(); ++i) {
    auto probe = flat;
    probe[i] += 0.125;
    const auto other = mfa::unflatten_params(net, probe);
    std::size_t diffs = 0;
    for (std::size_t l = 0; l < net.depth(); ++l) {
      for (std::size_t k = 0; k < net.weights[l].size(); ++k)
        if (net.weights[l].data()[k] != other.weights[l].data()[k]) ++diffs;
      for (std::size_t k = 0; k < net.biases[l].size(); ++k)
        if (net.biases[l][k] != other.biases[l][k]) ++diffs;
      if (net.betas[l] != other.betas[l]) ++diffs;
    }
    CHECK(diffs == 1);
  }

  std::vector<double> wrong(14, 0.0);
  CHECK_THROWS_AS(mfa::unflatten_params(net, wrong), mfa::ShapeError);
  auto negbeta = flat;
  negbeta[14] = -0.5;
  CHECK_THROWS_AS(mfa::unflatten_params(net, negbeta), std::invalid_argument);
}

TEST_CASE("linear hidden layers collapse to their matrix product") {
  std::mt19937_64 gen(53);
  auto deep = mfa::init_network({2, 3, 1}, ActivationKind::Linear, 59, 1.3);
  const Matrix X = random_batch(gen, 7, 2);

  // Composite single layer: W = B A, b = B b1 + b2, same output beta.
  auto flat_net = mfa::init_network({2, 1}, ActivationKind::Linear, 0, 1.0);
  const Matrix& A = deep.weights[0];
  const Matrix& B = deep.weights[1];
  for (std::size_t j = 0; j < 2; ++j) {
    double w = 0.0;
    for (std::size_t k = 0; k < 3; ++k) w += B(0, k) * A(k, j);
    flat_net.weights[0](0, j) = w;
  }
  double b = deep.biases[1][0];
  for (std::size_t k = 0; k < 3; ++k) b += B(0, k) * deep.biases[0][k];
  flat_net.biases[0][0] = b;
  flat_net.betas[0] = deep.betas[1];

  const auto out_deep = mfa::forward(deep, X).outputs;
  const auto out_flat = mfa::forward(flat_net, X).outputs;
  for (std::size_t mu = 0; mu < 7; ++mu) CHECK(close(out_deep[mu], out_flat[mu], 1e-12));
}

TEST_CASE("beta cannot be traded for an input rescale") {
  // swish(s*h, beta) != s * swish(h, beta): the gap is order one, not epsilon.
  const double h = 1.0, s = 2.0;
  const double lhs = mfa::activate(ActivationKind::Swish, s * h, mfa::NoiseParam(1.0));
  const double rhs = s * mfa::activate(ActivationKind::Swish, h, mfa::NoiseParam(1.0));
  CHECK(std::fabs(lhs - rhs) > 0.2);
}

TEST_CASE("column normalize") {
  auto net = mfa::init_network({1, 3, 1}, ActivationKind::Swish, 61, 1.0);
  net.weights[0](0, 0) = 0.2;
  net.weights[0](1, 0) = 0.2;
  net.weights[0](2, 0) = 0.6;
  net.weights[1](0, 0) = 1.0;
  net.weights[1](0, 1) = 1.0;
  net.weights[1](0, 2) = 1.0;
  const auto normed = mfa::column_normalize(net);
  CHECK(close(normed.weights[0](0, 0), 0.2, 1e-15));
  CHECK(close(normed.weights[0](2, 0), 0.6, 1e-15));

  auto rand_net = mfa::init_network({3, 5, 2, 1}, ActivationKind::Swish, 71, 1.0);
  const auto once = mfa::column_normalize(rand_net);
  for (const auto& W : once.weights)
    for (std::size_t j = 0; j < W.cols(); ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < W.rows(); ++i) sum += W(i, j);
      CHECK(close(sum, 1.0, 1e-12));
    }
  const auto twice = mfa::column_normalize(once);
  const auto f1 = mfa::flatten_params(once);
  const auto f2 = mfa::flatten_params(twice);
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(close(f1[i], f2[i], 1e-12));

  auto degenerate = mfa::init_network({2, 2, 1}, ActivationKind::Swish, 73, 1.0);
  degenerate.weights[0](0, 0) = 1.0;
  degenerate.weights[0](1, 0) = -1.0;
  CHECK_THROWS_AS(mfa::column_normalize(degenerate), mfa::DegenerateColumnError);
  try {
    mfa::column_normalize(degenerate);
  } catch (const mfa::DegenerateColumnError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("layer") != std::string::npos);
    CHECK(msg.find("column") != std::string::npos);
  }
}

TEST_CASE("predict accuracy and the tie rule") {
  auto net = mfa::init_network({2, 3, 1}, ActivationKind::Swish, 79, 1.0);
  for (auto& W : net.weights)
    for (std::size_t i = 0; i < W.size(); ++i) W.data()[i] = 0.0;
  Matrix X(3, 2);
  // Outputs are all exactly 0.5; the >= rule classifies ties as 1.
  CHECK(close(mfa::predict_accuracy(net, X, {1.0, 0.0, 1.0}), 2.0 / 3.0, 1e-15));
  CHECK(close(mfa::predict_accuracy(net, X, {0.0, 0.0, 0.0}), 0.0, 1e-15));
  CHECK_THROWS_AS(mfa::predict_accuracy(net, X, {1.0}), mfa::ShapeError);
}
