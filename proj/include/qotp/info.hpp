#pragma once

#include <algorithm>
#include <cmath>

#include "qotp/states.hpp"

namespace qotp {

/// Fidelity against a pure reference: F(psi, rho) = sqrt(<psi|rho|psi>),
/// clamped into [0,1] after round-off.
inline double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.dim() != rho.dim()) {
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  }
  const double overlap = std::real(expectation(psi.amplitudes(), rho.matrix()));
  return std::sqrt(std::clamp(overlap, 0.0, 1.0));
}

/// S(rho) = -sum_i lambda_i log2 lambda_i in bits, with lambda log lambda
/// taken as 0 for lambda <= 1e-12. The spectrum comes from the symmetrized
/// matrix, so slightly negative round-off eigenvalues are ignored.
inline double von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (const double lambda : hermitian_eigenvalues(rho.matrix())) {
    if (lambda > 1e-12) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

}  // namespace qotp
