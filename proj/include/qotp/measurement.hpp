#pragma once

#include <array>

#include "qotp/rng.hpp"
#include "qotp/states.hpp"

namespace qotp {

/// Z = {|0>, |1>}, X = {|+>, |->}. Outcome 0 is the first element of the
/// basis; each basis' projectors sum to the identity.
enum class MeasurementBasis { Z, X };

inline const std::array<std::vector<cplx>, 2>& basis_kets(MeasurementBasis basis) {
  static const double r = 1.0 / std::sqrt(2.0);
  static const std::array<std::vector<cplx>, 2> z = {
      std::vector<cplx>{1.0, 0.0}, std::vector<cplx>{0.0, 1.0}};
  static const std::array<std::vector<cplx>, 2> x = {
      std::vector<cplx>{r, r}, std::vector<cplx>{r, -r}};
  return basis == MeasurementBasis::Z ? z : x;
}

inline Matrix basis_projector(MeasurementBasis basis, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("basis_projector: outcome must be 0 or 1");
  }
  return outer(basis_kets(basis)[static_cast<std::size_t>(outcome)]);
}

/// Pads a single-qubit operator with identities: I ⊗ ... ⊗ op ⊗ ... ⊗ I with
/// op at the given qubit position (qubit 0 = most significant).
inline Matrix embed_on_qubit(const Matrix& op, std::size_t qubit, std::size_t n_qubits) {
  if (!op.is_square() || op.rows() != 2) {
    throw std::invalid_argument("embed_on_qubit: operator must be 2x2");
  }
  if (qubit >= n_qubits) {
    throw std::invalid_argument("embed_on_qubit: qubit index out of range");
  }
  const Matrix left = Matrix::identity(std::size_t{1} << qubit);
  const Matrix right = Matrix::identity(std::size_t{1} << (n_qubits - 1 - qubit));
  return kron(left, kron(op, right));
}

/// Born probability tr(P rho P) = tr(rho P) of the given outcome.
inline double outcome_probability(const DensityMatrix& rho, std::size_t qubit,
                                  MeasurementBasis basis, int outcome) {
  const Matrix p = embed_on_qubit(basis_projector(basis, outcome), qubit, rho.n_qubits());
  cplx acc = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) acc += rho(i, j) * p(j, i);
  }
  return std::real(acc);
}

/// Deterministic collapse P rho P / p onto the given outcome.
inline DensityMatrix project_qubit(const DensityMatrix& rho, std::size_t qubit,
                                   MeasurementBasis basis, int outcome) {
  const Matrix p = embed_on_qubit(basis_projector(basis, outcome), qubit, rho.n_qubits());
  Matrix post = p * rho.matrix() * p;
  const double prob = std::real(post.trace());
  if (prob < 1e-12) {
    throw std::runtime_error("project_qubit: outcome probability vanishes");
  }
  post *= cplx(1.0 / prob, 0.0);
  return DensityMatrix(std::move(post));
}

struct MeasurementResult {
  int outcome = 0;
  double probability = 0.0;
  DensityMatrix post_state;
};

/// Projective measurement of one qubit. The outcome is sampled with the Born
/// probabilities from exactly one rng draw (u < p0 selects outcome 0); the
/// returned state is the normalized collapse.
inline MeasurementResult measure_qubit(const DensityMatrix& rho, std::size_t qubit,
                                       MeasurementBasis basis, Rng& rng) {
  const double p0 = outcome_probability(rho, qubit, basis, 0);
  const double p1 = outcome_probability(rho, qubit, basis, 1);
  if (p0 < 1e-12 && p1 < 1e-12) {
    throw std::runtime_error("measure_qubit: all outcome probabilities vanish");
  }
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  return MeasurementResult{outcome, outcome == 0 ? p0 : p1,
                           project_qubit(rho, qubit, basis, outcome)};
}

}  // namespace qotp
