#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "mfa/matrix.hpp"

namespace mfa {

using GradFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct HessianResult {
  Matrix H;          // symmetrized, (H + H^T)/2
  double asymmetry;  // max |H - H^T| before symmetrization
};

/// Full Hessian by central differences of an analytic gradient. Column i is
/// [grad(theta + h_i e_i) - grad(theta - h_i e_i)] / (2 h_i) with
/// h_i = 6e-6 * max(1, |theta_i|). The pre-symmetrization asymmetry must stay
/// below 1e-4 * (1 + max|H|); larger values mean the gradient is wrong.
HessianResult hessian_fd(const GradFn& grad_fn, const std::vector<double>& theta);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]; empty unless requested
  int sweeps;
  double offdiag_residual;     // Frobenius norm of the off-diagonal part at exit
};

/// Cyclic Jacobi diagonalization of a symmetric matrix. Sweeps run until the
/// off-diagonal Frobenius norm drops below 1e-12 * ||H||_F, up to 100 sweeps.
EigenSystem jacobi_eigensystem(const Matrix& H, bool want_vectors = false);

/// Ascending spectrum of a symmetric matrix (Jacobi, no eigenvectors).
std::vector<double> eigenvalues_symmetric(const Matrix& H);

struct SpectrumReport {
  std::vector<double> eigenvalues;  // ascending
  double alpha;                     // fraction of eigenvalues < -zero_tol
  double gamma;                     // fraction with |eigenvalue| <= zero_tol
  double zero_tol;
  long checkpoint_epoch = 0;
};

/// alpha/gamma indices at tolerance zero_tol_rel * max(1, max|eigenvalue|).
SpectrumReport spectral_indices(const std::vector<double>& eigs, double zero_tol_rel = 1e-6);

struct Histogram {
  std::vector<double> edges;        // n_bins + 1 ascending edges
  std::vector<std::size_t> counts;  // n_bins entries summing to the input size
};

/// Equal-width histogram over [min, max]; a degenerate range collapses to a
/// single bin holding everything.
Histogram eig_histogram(const std::vector<double>& eigs, std::size_t n_bins);

}  // namespace mfa
