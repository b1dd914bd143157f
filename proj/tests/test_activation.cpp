#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include <mfa/activation.hpp>

#include "oracles.hpp"

using mfa::ActivationKind;
using mfa::NoiseParam;
using oracles::close;

namespace {

const std::vector<ActivationKind> kAllKinds = {
    ActivationKind::Sigmoid, ActivationKind::Tanh, ActivationKind::ReLU,
    ActivationKind::Linear, ActivationKind::Swish};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("noise param rejects non-positive beta") {
  CHECK_THROWS_AS(NoiseParam(0.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParam(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(NoiseParam(std::nan("")), std::invalid_argument);
  CHECK(NoiseParam(1.0).beta == 1.0);
}

TEST_CASE("log partition basics") {
  CHECK(close(mfa::log_partition(0.0, NoiseParam(1.0)), std::log(2.0), 1e-15));
  // Saturated branches: the tail correction ln(1+e^-x) <= e^-x.
  CHECK(std::fabs(mfa::log_partition(1000.0, NoiseParam(1.0)) - 1000.0) <= 1e-12);
  CHECK(std::fabs(mfa::log_partition(-1000.0, NoiseParam(1.0))) <= 1e-12);
  // No overflow anywhere up to |beta h| = 1e6.
  CHECK(mfa::log_partition(1e6, NoiseParam(1.0)) == 1e6);
  CHECK(std::isfinite(mfa::log_partition(-1e6, NoiseParam(1.0))));
  CHECK(close(mfa::log_partition(3.0, NoiseParam(10.0)), 30.0 + std::log1p(std::exp(-30.0)), 1e-14));
  CHECK_THROWS_AS(mfa::log_partition(std::nan(""), NoiseParam(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(mfa::log_partition(INFINITY, NoiseParam(1.0)), std::invalid_argument);
}

TEST_CASE("expected gate values and saturation") {
  for (double b : {0.3, 1.0, 7.0})
    CHECK(mfa::expected_gate(0.0, NoiseParam(b)) == 0.5);
  CHECK(close(mfa::expected_gate(40.0, NoiseParam(1.0)), 1.0, 1e-15));
  CHECK(close(mfa::expected_gate(-40.0, NoiseParam(1.0)), 0.0, 1e-15, 1e-15));
}

// The gate is beta^{-1} times the bias-shift derivative of the log partition.
TEST_CASE("expected gate matches finite difference of log partition") {
  for (double b : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0, 0.05, 4.0}) {
    const NoiseParam beta(b);
    for (double h : linspace(-5.0, 5.0, 100)) {
      const double e = 1e-6;
      const double fd =
          (mfa::log_partition(h + e, beta) - mfa::log_partition(h - e, beta)) / (2.0 * e) / b;
      CHECK(close(mfa::expected_gate(h, beta), fd, 1e-6));
    }
  }
}

TEST_CASE("activate values per kind") {
  CHECK(mfa::activate(ActivationKind::Swish, 0.0, NoiseParam(7.0)) == 0.0);
  CHECK(close(mfa::activate(ActivationKind::Swish, 10.0, NoiseParam(100.0)), 10.0, 0.0, 4e-3));
  CHECK(mfa::activate(ActivationKind::ReLU, -3.0, NoiseParam(1.0)) == 0.0);
  CHECK(mfa::activate(ActivationKind::ReLU, 3.0, NoiseParam(1.0)) == 3.0);
  CHECK(mfa::activate(ActivationKind::Linear, -2.5, NoiseParam(9.0)) == -2.5);
  CHECK(close(mfa::activate(ActivationKind::Sigmoid, 1.0, NoiseParam(2.0)),
              1.0 / (1.0 + std::exp(-2.0)), 1e-15));
  CHECK(close(mfa::activate(ActivationKind::Tanh, 0.5, NoiseParam(3.0)), std::tanh(1.5), 1e-15));
  CHECK_THROWS_AS(mfa::activate(ActivationKind::Swish, INFINITY, NoiseParam(1.0)),
                  std::invalid_argument);
}

// Swish is exactly the gate times the pre-activation, same evaluation order.
TEST_CASE("swish equals gate times input exactly") {
  for (double b : {0.2, 1.0, 6.0})
    for (double h : linspace(-8.0, 8.0, 33))
      CHECK(mfa::activate(ActivationKind::Swish, h, NoiseParam(b)) ==
            mfa::expected_gate(h, NoiseParam(b)) * h);
}

// Swish is the beta-derivative of the log partition.
TEST_CASE("swish matches finite difference of log partition in beta") {
  for (double b : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const NoiseParam beta(b);
    for (double h : linspace(-5.0, 5.0, 100)) {
      const double e = 1e-6 * b;
      const double fd = (mfa::log_partition(h, NoiseParam(b + e)) -
                         mfa::log_partition(h, NoiseParam(b - e))) /
                        (2.0 * e);
      CHECK(close(mfa::activate(ActivationKind::Swish, h, beta), fd, 1e-6));
    }
  }
}

TEST_CASE("activate_dh closed forms") {
  CHECK(mfa::activate_dh(ActivationKind::Swish, 0.0, NoiseParam(1.0)) == 0.5);
  CHECK(mfa::activate_dh(ActivationKind::Sigmoid, 0.0, NoiseParam(1.0)) == 0.25);
  CHECK(mfa::activate_dh(ActivationKind::ReLU, 2.0, NoiseParam(1.0)) == 1.0);
  CHECK(mfa::activate_dh(ActivationKind::ReLU, -2.0, NoiseParam(1.0)) == 0.0);
  // Subgradient convention at the kink.
  CHECK(mfa::activate_dh(ActivationKind::ReLU, 0.0, NoiseParam(1.0)) == 0.0);
  CHECK(mfa::activate_dh(ActivationKind::Linear, 123.0, NoiseParam(1.0)) == 1.0);
}

TEST_CASE("activate_dh matches finite differences on a grid") {
  for (ActivationKind kind : kAllKinds) {
    for (double b : {0.1, 0.3, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0}) {
      const NoiseParam beta(b);
      for (double h : linspace(-4.99, 4.99, 100)) {
        if (kind == ActivationKind::ReLU && std::fabs(h) < 1e-3) continue;  // kink
        const double e = 1e-6 * std::max(1.0, std::fabs(h));
        const double fd = (mfa::activate(kind, h + e, beta) - mfa::activate(kind, h - e, beta)) /
                          (2.0 * e);
        CHECK(close(mfa::activate_dh(kind, h, beta), fd, 1e-6, 1e-9));
      }
    }
  }
}

TEST_CASE("activate_dbeta closed forms and grid check") {
  for (double b : {0.5, 1.0, 4.0}) {
    CHECK(mfa::activate_dbeta(ActivationKind::Swish, 0.0, NoiseParam(b)) == 0.0);
    CHECK(mfa::activate_dbeta(ActivationKind::ReLU, 1.7, NoiseParam(b)) == 0.0);
    CHECK(mfa::activate_dbeta(ActivationKind::Linear, -0.3, NoiseParam(b)) == 0.0);
  }
  for (ActivationKind kind : kAllKinds) {
    for (double b : {0.1, 0.3, 0.7, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 10.0}) {
      for (double h : linspace(-4.99, 4.99, 100)) {
        const double e = 1e-6 * b;
        const double fd = (mfa::activate(kind, h, NoiseParam(b + e)) -
                           mfa::activate(kind, h, NoiseParam(b - e))) /
                          (2.0 * e);
        CHECK(close(mfa::activate_dbeta(kind, h, NoiseParam(b)), fd, 1e-6, 1e-9));
      }
    }
  }
}

TEST_CASE("limit gaps against analytic bounds") {
  // ReLU limit: sup_h |swish - relu| = sup_{x>0} x sigma(-bx) <= 1/(e b).
  for (double b : {10.0, 100.0, 1000.0}) {
    const auto gaps = mfa::limit_check(linspace(-10.0, 10.0, 2001), NoiseParam(b));
    CHECK(gaps.relu_gap <= 1.0 / (std::exp(1.0) * b) + 1e-9);
    CHECK(gaps.relu_gap > 0.0);
  }
  // Linear limit: |swish - h/2| = |h||sigma(bh) - 1/2| <= b h^2 / 4.
  {
    const auto gaps = mfa::limit_check(linspace(-1.0, 1.0, 401), NoiseParam(1e-6));
    CHECK(gaps.linear_gap <= 2.5e-7 + 1e-12);
  }
  {
    const auto gaps = mfa::limit_check(linspace(-1.0, 1.0, 401), NoiseParam(1e-3));
    CHECK(gaps.linear_gap <= 1e-3 / 4.0 + 1e-12);
  }
  // At h = 0 both limits are exact for any beta.
  const auto zero = mfa::limit_check({0.0}, NoiseParam(1e6));
  CHECK(zero.relu_gap == 0.0);
  CHECK(zero.linear_gap == 0.0);
  CHECK_THROWS_AS(mfa::limit_check({}, NoiseParam(1.0)), std::invalid_argument);
}

// Larger beta always sits closer to the ReLU limit (pointwise, h > 0).
TEST_CASE("relu gap shrinks monotonically in beta") {
  const double pairs[][2] = {{0.5, 1.0}, {1.0, 2.0}, {2.0, 4.0}, {10.0, 100.0}};
  for (const auto& p : pairs) {
    for (double h : linspace(0.01, 10.0, 200)) {
      const double g1 = std::fabs(mfa::activate(ActivationKind::Swish, h, NoiseParam(p[0])) -
                                  std::max(h, 0.0));
      const double g2 = std::fabs(mfa::activate(ActivationKind::Swish, h, NoiseParam(p[1])) -
                                  std::max(h, 0.0));
      CHECK(g2 <= g1 + 1e-15);
    }
  }
}

TEST_CASE("swish dips negative for some h < 0 at every beta") {
  for (double b : {0.1, 0.5, 1.0, 3.0, 10.0, 100.0}) {
    double lowest = 0.0;
    for (double h : linspace(-40.0 / b, 0.0, 400))
      lowest = std::min(lowest, mfa::activate(ActivationKind::Swish, h, NoiseParam(b)));
    CHECK(lowest < 0.0);
  }
}

TEST_CASE("activation names round trip") {
  for (ActivationKind kind : kAllKinds)
    CHECK(mfa::activation_from_string(mfa::to_string(kind)) == kind);
  CHECK_THROWS_AS(mfa::activation_from_string("softmax"), std::invalid_argument);
}
