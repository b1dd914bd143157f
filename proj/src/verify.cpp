#include "mfa/verify.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "mfa/activation.hpp"
#include "mfa/hessian.hpp"
#include "mfa/loss.hpp"
#include "mfa/network.hpp"
#include "mfa/rng.hpp"

namespace mfa {

namespace {

bool close(double a, double b, double rtol, double atol = 1e-9) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= std::max(atol, rtol * scale);
}

bool check_gate_identity() {
  const double e = 1e-6;
  for (int bi = 0; bi < 5; ++bi) {
    const double beta = std::pow(10.0, bi - 2);  // 0.01 .. 100
    for (int hi = 0; hi <= 24; ++hi) {
      const double h = -8.0 + 16.0 * hi / 24.0;
      const double fd =
          (log_partition(h + e, NoiseParam(beta)) - log_partition(h - e, NoiseParam(beta))) /
          (2.0 * e) / beta;
      if (!close(expected_gate(h, NoiseParam(beta)), fd, 1e-6)) return false;
    }
  }
  return true;
}

bool check_swish_identity() {
  for (int bi = 0; bi < 5; ++bi) {
    const double beta = std::pow(10.0, bi - 2);
    const double e = 1e-6 * beta;
    for (int hi = 0; hi <= 24; ++hi) {
      const double h = -8.0 + 16.0 * hi / 24.0;
      const double fd =
          (log_partition(h, NoiseParam(beta + e)) - log_partition(h, NoiseParam(beta - e))) /
          (2.0 * e);
      if (!close(activate(ActivationKind::Swish, h, NoiseParam(beta)), fd, 1e-6)) return false;
    }
  }
  return true;
}

bool check_limits() {
  std::vector<double> grid;
  for (int i = 0; i <= 2000; ++i) grid.push_back(-10.0 + 20.0 * i / 2000.0);
  for (double beta : {10.0, 100.0, 1000.0}) {
    const LimitGaps g = limit_check(grid, NoiseParam(beta));
    if (g.relu_gap > 1.0 / (std::numbers::e * beta) + 1e-9) return false;
  }
  for (double beta : {1e-3, 1e-2}) {
    const LimitGaps g = limit_check(grid, NoiseParam(beta));
    if (g.linear_gap > beta * 100.0 / 4.0 + 1e-9) return false;
  }
  return true;
}

bool check_backprop_fd() {
  const std::vector<std::vector<std::size_t>> archs = {{2, 5, 1}, {4, 3, 2, 1}};
  const ActivationKind kinds[] = {ActivationKind::Sigmoid, ActivationKind::Tanh,
                                  ActivationKind::ReLU, ActivationKind::Linear,
                                  ActivationKind::Swish};
  std::mt19937_64 gen(20240817ull);
  for (const auto& arch : archs) {
    for (ActivationKind kind : kinds) {
      Network net = init_network(arch, kind, gen(), 0.7, /*beta_trainable=*/true);
      const std::size_t m = 7;
      Matrix X(m, arch.front());
      std::vector<double> y(m);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < arch.front(); ++j) X(i, j) = gaussian(gen) * 1.5;
        y[i] = uniform01(gen) < 0.5 ? 0.0 : 1.0;
      }
      const ForwardCache cache = forward(net, X);
      const std::vector<double> grad = flatten_gradients(net, backward(net, cache, y));
      std::vector<double> theta = flatten_params(net);
      for (std::size_t i = 0; i < theta.size(); ++i) {
        const double step = 1e-5 * std::max(1.0, std::fabs(theta[i]));
        const double keep = theta[i];
        theta[i] = keep + step;
        const double up = bce_loss(forward(unflatten_params(net, theta), X).outputs, y);
        theta[i] = keep - step;
        const double dn = bce_loss(forward(unflatten_params(net, theta), X).outputs, y);
        theta[i] = keep;
        if (!close(grad[i], (up - dn) / (2.0 * step), 1e-5, 1e-8)) return false;
      }
    }
  }
  return true;
}

bool check_appendix() {
  std::mt19937_64 gen(77ull);
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = 1 + static_cast<std::size_t>(gen() % 8);
    std::vector<double> q(m), y(m);
    for (std::size_t k = 0; k < m; ++k) {
      q[k] = uniform_in(gen, 1e-6, 1.0 - 1e-6);
      y[k] = uniform01(gen) < 0.5 ? 0.0 : 1.0;
    }
    if (std::fabs(bce_loss(q, y) - bernoulli_nll_oracle(q, y)) > 1e-12) return false;
  }
  for (int yi = 1; yi <= 9; ++yi)
    for (int qi = 1; qi <= 9; ++qi) {
      const double y = 0.05 + 0.90 * (yi - 1) / 8.0;
      const double q = 0.05 + 0.90 * (qi - 1) / 8.0;
      if (std::fabs(saddle_point_lambda(y, q) - saddle_point_lambda_bisect(y, q)) > 1e-8)
        return false;
    }
  return true;
}

bool check_eigen() {
  // Quadratic form f = theta' A theta / 2 has exact gradient A theta.
  Matrix A(2, 2);
  A(0, 0) = 2.0;
  A(0, 1) = 1.0;
  A(1, 0) = 1.0;
  A(1, 1) = 3.0;
  const GradFn grad = [&A](const std::vector<double>& t) {
    return std::vector<double>{A(0, 0) * t[0] + A(0, 1) * t[1], A(1, 0) * t[0] + A(1, 1) * t[1]};
  };
  const HessianResult hr = hessian_fd(grad, {0.3, -0.7});
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (std::fabs(hr.H(i, j) - A(i, j)) > 1e-6) return false;

  std::mt19937_64 gen(4242ull);
  Matrix S(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j <= i; ++j) S(i, j) = S(j, i) = gaussian(gen);
  const EigenSystem es = jacobi_eigensystem(S, /*want_vectors=*/true);
  double trace = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < 8; ++i) trace += S(i, i);
  for (double v : es.values) sum += v;
  if (!close(sum, trace, 1e-10, 1e-10)) return false;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      double r = 0.0;
      for (std::size_t k = 0; k < 8; ++k) r += es.vectors(i, k) * es.values[k] * es.vectors(j, k);
      if (std::fabs(r - S(i, j)) > 1e-8) return false;
    }
  return true;
}

}  // namespace

int run_verification(std::ostream& out) {
  int failures = 0;
  const auto suite = [&](const char* name, bool ok) {
    out << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };
  suite("gate identity: expected_gate = (1/beta) d/dh log-partition", check_gate_identity());
  suite("swish identity: swish = d/dbeta log-partition", check_swish_identity());
  suite("swish limit gaps within relu/linear bounds", check_limits());
  suite("backprop gradients match central differences", check_backprop_fd());
  suite("cross-entropy = bernoulli oracle; saddle point = bisection", check_appendix());
  suite("finite-difference hessian + jacobi trace/reconstruction", check_eigen());
  return failures;
}

}  // namespace mfa
