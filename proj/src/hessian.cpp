#include "mfa/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mfa/errors.hpp"

namespace mfa {
namespace {

constexpr std::size_t kMaxHessianDim = 2000;
constexpr double kFdScale = 6.0e-6;  // ~cbrt(machine epsilon), scaled per coordinate
constexpr int kMaxSweeps = 100;

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.data()[i]));
  return m;
}

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * a.data()[i];
  return std::sqrt(s);
}

// Off-diagonal Frobenius norm read from the upper triangle only; the sweep
// loop below never maintains the lower one.
double offdiag_frobenius_upper(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* row = a.row(i);
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += row[j] * row[j];
  }
  return std::sqrt(2.0 * s);
}

}  // namespace

HessianResult hessian_fd(const GradFn& grad_fn, const std::vector<double>& theta) {
  const std::size_t d = theta.size();
  if (d == 0) throw std::invalid_argument("hessian_fd: empty parameter vector");
  if (d > kMaxHessianDim)
    throw std::invalid_argument("hessian_fd: dimension " + std::to_string(d) +
                                " exceeds the desk-scale guard of " + std::to_string(kMaxHessianDim));
  for (double t : theta)
    if (!std::isfinite(t)) throw std::invalid_argument("hessian_fd: non-finite parameter");

  Matrix H(d, d);
  std::vector<double> probe = theta;
  const auto fill_column = [&](std::size_t i, double h) {
    probe[i] = theta[i] + h;
    const std::vector<double> g_plus = grad_fn(probe);
    probe[i] = theta[i] - h;
    const std::vector<double> g_minus = grad_fn(probe);
    probe[i] = theta[i];
    if (g_plus.size() != d || g_minus.size() != d)
      throw ShapeError("hessian_fd: gradient length does not match parameter count");
    const double inv = 1.0 / (2.0 * h);
    for (std::size_t k = 0; k < d; ++k) {
      const double v = (g_plus[k] - g_minus[k]) * inv;
      if (!std::isfinite(v))
        throw std::runtime_error("hessian_fd: non-finite gradient while probing coordinate " +
                                 std::to_string(i));
      H(k, i) = v;
    }
  };

  for (std::size_t i = 0; i < d; ++i)
    fill_column(i, kFdScale * std::max(1.0, std::fabs(theta[i])));

  const auto max_asym = [&] {
    double a = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) a = std::max(a, std::fabs(H(i, j) - H(j, i)));
    return a;
  };

  double asym = max_asym();
  double allowed = 1e-4 * (1.0 + max_abs(H));
  // Piecewise-smooth objectives (ReLU hidden units riding their kinks) can
  // leave the pinned step straddling a gradient crease even though the
  // objective is C^2 at theta itself. Shrinking the step for the columns
  // that disagree recovers the one-sided local Hessian; the guard below
  // still rejects genuinely inconsistent gradients, whose disagreement does
  // not shrink with the step. Trained nets have been observed riding kinks
  // at distance ~2.6e-9, hence the deep ladder; the last rung (~9.2e-11)
  // keeps central-difference roundoff two orders below the guard floor.
  for (double shrink = 16.0; asym > allowed && shrink <= 65536.0; shrink *= 16.0) {
    std::vector<bool> bad(d, false);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (std::fabs(H(i, j) - H(j, i)) > allowed) bad[i] = bad[j] = true;
    for (std::size_t i = 0; i < d; ++i)
      if (bad[i]) fill_column(i, kFdScale * std::max(1.0, std::fabs(theta[i])) / shrink);
    asym = max_asym();
    allowed = 1e-4 * (1.0 + max_abs(H));
  }

  if (asym > allowed)
    throw std::runtime_error("hessian_fd: asymmetry " + std::to_string(asym) +
                             " exceeds " + std::to_string(allowed) +
                             "; the supplied gradient is inconsistent");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double avg = 0.5 * (H(i, j) + H(j, i));
      H(i, j) = avg;
      H(j, i) = avg;
    }
  return HessianResult{std::move(H), asym};
}

EigenSystem jacobi_eigensystem(const Matrix& H, bool want_vectors) {
  const std::size_t n = H.rows();
  if (n == 0 || H.cols() != n) throw std::invalid_argument("jacobi_eigensystem: matrix must be square");
  {
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        asym = std::max(asym, std::fabs(H(i, j) - H(j, i)));
    if (asym > 1e-10 * std::max(1.0, max_abs(H)))
      throw std::invalid_argument("jacobi_eigensystem: input is not symmetric");
  }

  Matrix A = H;
  Matrix V;
  if (want_vectors) {
    V = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) V(i, i) = 1.0;
  }

  const double norm = frobenius(A);
  const double target = 1e-12 * norm;
  // Rotations on entries this small cannot move the off-diagonal norm past
  // the target; skipping them makes the tail sweeps cheap.
  const double skip = norm > 0.0 ? 1e-14 * norm / static_cast<double>(n) : 0.0;

  EigenSystem out;
  out.sweeps = 0;
  double off = offdiag_frobenius_upper(A);
  double* const base = A.data();
  while (off > target && out.sweeps < kMaxSweeps) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      double* const rowp = A.row(p);
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = rowp[q];
        if (std::fabs(apq) <= skip) continue;
        const double app = rowp[p];
        const double aqq = A(q, q);
        const double tau = (aqq - app) / (2.0 * apq);
        double t;
        if (std::isinf(tau)) {
          t = 0.0;
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        rowp[p] = app - t * apq;
        A(q, q) = aqq + t * apq;
        rowp[q] = 0.0;
        // Every pair (a_kp, a_kq) maps to (c x - s y, s x + c y); only the
        // upper-triangle copy of each pair is kept, in three segments.
        double* rowq = A.row(q);
        double* colp = base + p;
        double* colq = base + q;
        for (std::size_t k = 0; k < p; ++k) {  // (k,p), (k,q)
          const double x = colp[k * n];
          const double y = colq[k * n];
          colp[k * n] = c * x - s * y;
          colq[k * n] = s * x + c * y;
        }
        for (std::size_t k = p + 1; k < q; ++k) {  // (p,k), (k,q)
          const double x = rowp[k];
          const double y = colq[k * n];
          rowp[k] = c * x - s * y;
          colq[k * n] = s * x + c * y;
        }
        for (std::size_t k = q + 1; k < n; ++k) {  // (p,k), (q,k)
          const double x = rowp[k];
          const double y = rowq[k];
          rowp[k] = c * x - s * y;
          rowq[k] = s * x + c * y;
        }
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = V(k, p);
            const double vkq = V(k, q);
            V(k, p) = c * vkp - s * vkq;
            V(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    ++out.sweeps;
    off = offdiag_frobenius_upper(A);
  }

  if (off > target)
    throw ConvergenceError("jacobi_eigensystem: no convergence in " +
                           std::to_string(kMaxSweeps) + " sweeps", off);
  out.offdiag_residual = off;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return A(a, a) < A(b, b); });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = A(order[k], order[k]);
  if (want_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = V(i, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues_symmetric(const Matrix& H) {
  return jacobi_eigensystem(H, false).values;
}

SpectrumReport spectral_indices(const std::vector<double>& eigs, double zero_tol_rel) {
  if (eigs.empty()) throw std::invalid_argument("spectral_indices: empty spectrum");
  if (!(zero_tol_rel > 0.0)) throw std::invalid_argument("spectral_indices: tolerance must be > 0");
  double max_mag = 0.0;
  for (double v : eigs) max_mag = std::max(max_mag, std::fabs(v));

  SpectrumReport report;
  report.eigenvalues = eigs;
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
  report.zero_tol = zero_tol_rel * std::max(1.0, max_mag);
  std::size_t negative = 0, zero = 0;
  for (double v : report.eigenvalues) {
    if (v < -report.zero_tol)
      ++negative;
    else if (std::fabs(v) <= report.zero_tol)
      ++zero;
  }
  const double dim = static_cast<double>(eigs.size());
  report.alpha = static_cast<double>(negative) / dim;
  report.gamma = static_cast<double>(zero) / dim;
  return report;
}

Histogram eig_histogram(const std::vector<double>& eigs, std::size_t n_bins) {
  if (eigs.empty()) throw std::invalid_argument("eig_histogram: empty spectrum");
  if (n_bins < 1) throw std::invalid_argument("eig_histogram: need at least one bin");
  const auto [lo_it, hi_it] = std::minmax_element(eigs.begin(), eigs.end());
  const double lo = *lo_it, hi = *hi_it;

  Histogram hist;
  if (lo == hi) {
    hist.edges = {lo, hi};
    hist.counts = {eigs.size()};
    return hist;
  }
  hist.edges.resize(n_bins + 1);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t b = 0; b <= n_bins; ++b) hist.edges[b] = lo + width * static_cast<double>(b);
  hist.edges.back() = hi;
  hist.counts.assign(n_bins, 0);
  for (double v : eigs) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= n_bins) b = n_bins - 1;  // the max lands in the last bin
    ++hist.counts[b];
  }
  return hist;
}

}  // namespace mfa
