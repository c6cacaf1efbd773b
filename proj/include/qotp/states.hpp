#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qotp/matrix.hpp"

namespace qotp {

inline constexpr std::size_t kMaxQubits = 3;
inline constexpr double kStateTol = 1e-9;

namespace detail {

inline std::size_t qubit_count_for_dim(std::size_t dim, const char* what) {
  std::size_t n = 0, d = 1;
  while (d < dim && n < kMaxQubits) {
    d <<= 1;
    ++n;
  }
  if (d != dim || n == 0) {
    throw std::invalid_argument(std::string(what) + ": dimension must be 2, 4 or 8");
  }
  return n;
}

}  // namespace detail

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellKind, 4> kAllBellKinds = {
    BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus};

/// Pure state of 1-3 qubits. Basis indices are bit strings with qubit 0 at
/// the most significant position, so two-qubit amplitudes run over
/// |00>, |01>, |10>, |11>. The protocol keeps the travel qubit A at qubit 0
/// and Bob's home qubit B at qubit 1, matching the |x>_A |y>_B notation.
class StateVector {
 public:
  explicit StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
    n_qubits_ = detail::qubit_count_for_dim(amps_.size(), "StateVector");
    double norm_sq = 0.0;
    for (const cplx& a : amps_) norm_sq += std::norm(a);
    if (std::abs(std::sqrt(norm_sq) - 1.0) > kStateTol) {
      throw std::invalid_argument("StateVector: amplitudes are not normalized");
    }
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx amplitude(std::size_t i) const { return amps_.at(i); }

 private:
  std::vector<cplx> amps_;
  std::size_t n_qubits_ = 0;
};

/// Mixed state of 1-3 qubits. Construction checks Hermiticity and unit trace
/// to 1e-9. Positive semidefiniteness needs an eigensolve, so it is exposed
/// separately through min_eigenvalue() instead of being paid on every
/// construction in the sampling loops.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
    if (!entries_.is_square()) {
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    n_qubits_ = detail::qubit_count_for_dim(entries_.rows(), "DensityMatrix");
    if (!entries_.is_hermitian(kStateTol)) {
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(entries_.trace() - 1.0) > kStateTol) {
      throw std::invalid_argument("DensityMatrix: trace must equal 1");
    }
  }

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  cplx operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// smallest eigenvalue; >= -1e-9 for a physical state
  double min_eigenvalue() const { return hermitian_eigenvalues(entries_).front(); }

 private:
  Matrix entries_;
  std::size_t n_qubits_ = 0;
};

/// The four maximally entangled two-qubit states over (A, B):
///   PhiPlus  = (|00> + |11>)/sqrt2    PhiMinus = (|00> - |11>)/sqrt2
///   PsiPlus  = (|01> + |10>)/sqrt2    PsiMinus = (|01> - |10>)/sqrt2
/// PsiMinus is the singlet shared by the honest parties; it anti-correlates
/// Z with Z and X with X.
inline StateVector bell_state(BellKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case BellKind::PhiPlus:
      return StateVector({r, 0.0, 0.0, r});
    case BellKind::PhiMinus:
      return StateVector({r, 0.0, 0.0, -r});
    case BellKind::PsiPlus:
      return StateVector({0.0, r, r, 0.0});
    case BellKind::PsiMinus:
      return StateVector({0.0, r, -r, 0.0});
  }
  throw std::invalid_argument("bell_state: unknown kind");
}

inline DensityMatrix density_from_pure(const StateVector& psi) {
  return DensityMatrix(outer(psi.amplitudes()));
}

/// Kronecker product of states; qubit counts add. Capped at three qubits.
inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.n_qubits() + b.n_qubits() > kMaxQubits) {
    throw std::invalid_argument("tensor: product exceeds 3 qubits");
  }
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

/// Reduced state on the kept qubits (original relative order preserved).
/// keep must be a nonempty set of valid qubit indices.
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<std::size_t>& keep) {
  const std::size_t n = rho.n_qubits();
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (kept.empty() || kept.back() >= n ||
      std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("partial_trace: keep must name distinct valid qubits");
  }

  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n; ++q) {
    if (std::find(kept.begin(), kept.end(), q) == kept.end()) traced.push_back(q);
  }
  if (traced.empty()) return rho;

  const std::size_t dk = std::size_t{1} << kept.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  // scatter the bits of a reduced index back to their original positions
  const auto compose = [&](std::size_t kept_value, std::size_t traced_value) {
    std::size_t idx = 0;
    for (std::size_t m = 0; m < kept.size(); ++m) {
      const std::size_t bit = (kept_value >> (kept.size() - 1 - m)) & 1u;
      idx |= bit << (n - 1 - kept[m]);
    }
    for (std::size_t m = 0; m < traced.size(); ++m) {
      const std::size_t bit = (traced_value >> (traced.size() - 1 - m)) & 1u;
      idx |= bit << (n - 1 - traced[m]);
    }
    return idx;
  };

  Matrix out(dk, dk);
  for (std::size_t i = 0; i < dk; ++i) {
    for (std::size_t j = 0; j < dk; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dt; ++t) {
        acc += rho(compose(i, t), compose(j, t));
      }
      out(i, j) = acc;
    }
  }
  return DensityMatrix(std::move(out));
}

}  // namespace qotp
