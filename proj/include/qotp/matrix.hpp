#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qotp {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Everything in this library lives in
/// dimension 8 or below (three qubits), so plain O(n^3) loops are used
/// throughout.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<cplx>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) {
        throw std::invalid_argument("Matrix: ragged initializer");
      }
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  Matrix& operator*=(cplx s) {
    for (cplx& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(cplx s, Matrix m) { return m *= s; }
  friend Matrix operator*(Matrix m, cplx s) { return m *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("Matrix: shape mismatch in product");
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  Matrix dagger() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double max_abs_diff(const Matrix& o) const {
    require_same_shape(o);
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      m = std::max(m, std::abs(data_[i] - o.data_[i]));
    }
    return m;
  }

  bool is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = i; j < cols_; ++j) {
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
      }
    }
    return true;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw std::invalid_argument("Matrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product; index convention (i1*rows_b + i2, j1*cols_b + j2).
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const cplx v = a(i1, j1);
      if (v == 0.0) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = v * b(i2, j2);
        }
      }
    }
  }
  return out;
}

/// |v><v|
inline Matrix outer(const std::vector<cplx>& ket) {
  Matrix out(ket.size(), ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < ket.size(); ++j) {
      out(i, j) = ket[i] * std::conj(ket[j]);
    }
  }
  return out;
}

/// <v|M|v>
inline cplx expectation(const std::vector<cplx>& ket, const Matrix& m) {
  if (!m.is_square() || m.rows() != ket.size()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  cplx acc = 0.0;
  for (std::size_t i = 0; i < ket.size(); ++i) {
    for (std::size_t j = 0; j < ket.size(); ++j) {
      acc += std::conj(ket[i]) * m(i, j) * ket[j];
    }
  }
  return acc;
}

/// Eigenvalues of a Hermitian matrix via cyclic complex Jacobi rotations,
/// sorted ascending. The input is symmetrized as (A + A^dagger)/2 first to
/// absorb round-off. Quadratic convergence makes a handful of sweeps enough
/// for the <=8x8 matrices used here; residual off-diagonal mass is driven
/// below 1e-26 relative to the matrix scale (~1e-13 in the eigenvalues).
inline std::vector<double> hermitian_eigenvalues(Matrix a) {
  if (!a.is_square()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  }
  const std::size_t n = a.rows();
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = std::real(a(i, i));
    scale += std::norm(a(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
      scale += 2.0 * std::norm(m);
    }
  }

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    }
    if (off <= 1e-26 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx g = a(p, q);
        if (std::norm(g) <= 1e-30 * scale) continue;
        const double ag = std::abs(g);
        const cplx phase = g / ag;
        const double tau = (std::real(a(p, p)) - std::real(a(q, q))) / (2.0 * ag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- V^dagger A V with V an identity except in the (p,q) plane:
        // V(p,p)=c, V(p,q)=-s*phase, V(q,p)=s*conj(phase), V(q,q)=c.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
      }
    }
  }

  std::vector<double> evals(n);
  for (std::size_t i = 0; i < n; ++i) evals[i] = std::real(a(i, i));
  std::sort(evals.begin(), evals.end());
  return evals;
}

}  // namespace qotp
