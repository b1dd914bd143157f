#pragma once

// Independent oracles for the test suites. Everything here is deliberately
// written from scratch (no reuse of the library's own numerics) so a bug in
// the implementation cannot hide inside its own test.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include <mfa/matrix.hpp>

namespace oracles {

inline bool close(double a, double b, double rtol, double atol = 1e-9) {
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::fabs(a - b) <= atol + rtol * std::max(std::fabs(a), std::fabs(b));
}

/// Central difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Rosenblatt perceptron on {0,1} labels; returns final train accuracy.
/// Converges to 1.0 on any linearly separable set given enough passes.
inline double perceptron_accuracy(const mfa::Matrix& X, const std::vector<double>& y,
                                  int max_passes = 2000) {
  const std::size_t m = X.rows(), n = X.cols();
  std::vector<double> w(n, 0.0);
  double b = 0.0;
  for (int pass = 0; pass < max_passes; ++pass) {
    int mistakes = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = b;
      for (std::size_t j = 0; j < n; ++j) s += w[j] * X(i, j);
      const double t = y[i] > 0.5 ? 1.0 : -1.0;
      if (t * s <= 0.0) {
        for (std::size_t j = 0; j < n; ++j) w[j] += t * X(i, j);
        b += t;
        ++mistakes;
      }
    }
    if (mistakes == 0) break;
  }
  std::size_t right = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = b;
    for (std::size_t j = 0; j < n; ++j) s += w[j] * X(i, j);
    if ((s > 0.0) == (y[i] > 0.5)) ++right;
  }
  return static_cast<double>(right) / static_cast<double>(m);
}

/// Best linear fit by plain gradient descent on the logistic loss; returns
/// train accuracy of the fitted separator. Used to show a set is NOT
/// linearly separable (accuracy stays well below 1).
inline double logistic_probe_accuracy(const mfa::Matrix& X, const std::vector<double>& y,
                                      int iters = 3000, double lr = 0.5) {
  const std::size_t m = X.rows(), n = X.cols();
  std::vector<double> w(n, 0.0);
  double b = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<double> gw(n, 0.0);
    double gb = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double s = b;
      for (std::size_t j = 0; j < n; ++j) s += w[j] * X(i, j);
      const double p = 1.0 / (1.0 + std::exp(-s));
      const double e = (p - y[i]) / static_cast<double>(m);
      for (std::size_t j = 0; j < n; ++j) gw[j] += e * X(i, j);
      gb += e;
    }
    for (std::size_t j = 0; j < n; ++j) w[j] -= lr * gw[j];
    b -= lr * gb;
  }
  std::size_t right = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = b;
    for (std::size_t j = 0; j < n; ++j) s += w[j] * X(i, j);
    if ((s >= 0.0) == (y[i] > 0.5)) ++right;
  }
  return static_cast<double>(right) / static_cast<double>(m);
}

/// Determinant by Gaussian elimination with partial pivoting.
inline double determinant(mfa::Matrix A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant: square matrices only");
  const std::size_t n = A.rows();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(A(i, k)) > std::fabs(A(piv, k))) piv = i;
    if (A(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(k, j));
      det = -det;
    }
    det *= A(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
    }
  }
  return det;
}

}  // namespace oracles
