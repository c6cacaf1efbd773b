#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "qotp/measurement.hpp"
#include "qotp/states.hpp"

namespace qotp {

inline Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix pauli_y() { return Matrix{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
inline Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

/// Completely positive trace-preserving map given by Kraus operators
/// {K_k}: rho -> sum_k K_k rho K_k^dagger. Operators are 2x2 (one qubit) or
/// 4x4 (a full two-qubit map); completeness sum_k K_k^dagger K_k = I is
/// checked elementwise to 1e-9 at construction.
class KrausChannel {
 public:
  KrausChannel(std::vector<Matrix> operators, std::string label)
      : ops_(std::move(operators)), label_(std::move(label)) {
    if (ops_.empty()) {
      throw std::invalid_argument("KrausChannel '" + label_ + "': no operators");
    }
    dim_ = ops_.front().rows();
    if (dim_ != 2 && dim_ != 4) {
      throw std::invalid_argument("KrausChannel '" + label_ +
                                  "': operator dimension must be 2 or 4");
    }
    for (std::size_t k = 0; k < ops_.size(); ++k) {
      if (!ops_[k].is_square() || ops_[k].rows() != dim_) {
        throw std::invalid_argument("KrausChannel '" + label_ + "': operator " +
                                    std::to_string(k) +
                                    " is not square of matching dimension");
      }
    }
    Matrix sum(dim_, dim_);
    for (const Matrix& k : ops_) sum += k.dagger() * k;
    const double dev = sum.max_abs_diff(Matrix::identity(dim_));
    if (dev > kStateTol) {
      throw std::invalid_argument(
          "KrausChannel '" + label_ +
          "': completeness violated, sum K^dagger K deviates from identity by " +
          std::to_string(dev));
    }
  }

  static KrausChannel identity(std::size_t dim) {
    return KrausChannel({Matrix::identity(dim)}, "identity");
  }

  /// rho -> (1-p) rho + p I/2 via {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y,
  /// sqrt(p/4) Z}
  static KrausChannel depolarizing(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("depolarizing: p must lie in [0,1]");
    }
    const cplx a = std::sqrt(1.0 - 0.75 * p);
    const cplx b = std::sqrt(0.25 * p);
    char label[48];
    std::snprintf(label, sizeof(label), "depolarizing(%.12g)", p);
    return KrausChannel(
        {a * Matrix::identity(2), b * pauli_x(), b * pauli_y(), b * pauli_z()}, label);
  }

  /// Nonselective projective measurement {P_0, P_1} in the given basis.
  static KrausChannel basis_projection(MeasurementBasis basis) {
    return KrausChannel({basis_projector(basis, 0), basis_projector(basis, 1)},
                        basis == MeasurementBasis::Z ? "z_projection" : "x_projection");
  }

  const std::vector<Matrix>& operators() const { return ops_; }
  std::size_t dim() const { return dim_; }
  const std::string& label() const { return label_; }

 private:
  std::vector<Matrix> ops_;
  std::string label_;
  std::size_t dim_ = 0;
};

/// Applies the channel: 2x2 operators act on the target qubit via identity
/// padding; 4x4 operators act on the whole two-qubit state (target ignored).
inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho,
                                   std::size_t target = 0) {
  Matrix out(rho.dim(), rho.dim());
  if (ch.dim() == 2) {
    for (const Matrix& k : ch.operators()) {
      const Matrix kf = embed_on_qubit(k, target, rho.n_qubits());
      out += kf * rho.matrix() * kf.dagger();
    }
  } else if (ch.dim() == rho.dim()) {
    for (const Matrix& k : ch.operators()) {
      out += k * rho.matrix() * k.dagger();
    }
  } else {
    throw std::invalid_argument("apply_channel: operator dimension " +
                                std::to_string(ch.dim()) +
                                " does not match state dimension " +
                                std::to_string(rho.dim()));
  }
  return DensityMatrix(std::move(out));
}

}  // namespace qotp
