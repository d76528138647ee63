// Copyright 2026 The choikit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace choi {

using Complex = std::complex<double>;

inline constexpr double kDefaultHermitianTol = 1e-10;

/// Dense row-major complex matrix. Every operator, state and Choi matrix in
/// the library is carried by this type.
///
/// Dimensions are always positive. Constructors reject non-finite entries;
/// mutable element access is unchecked.
class Matrix {
 public:
  /// Zero matrix of the given shape.
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  /// Nested row lists, e.g. `Matrix{{1, 0}, {0, 1}}`.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix column(std::vector<Complex> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  Complex trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex scale);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex scale, Matrix m);
Matrix operator*(Matrix m, Complex scale);

/// Largest |m_rc|.
double max_abs(const Matrix& m);
double frobenius_norm(const Matrix& m);
/// max |m - m^dagger| elementwise; requires a square matrix.
double hermiticity_defect(const Matrix& m);
/// tr(a^dagger b), the Hilbert-Schmidt inner product.
Complex hs_inner(const Matrix& a, const Matrix& b);

enum class TracedFactor { First, Second };

/// Kronecker product. Row (r_a, r_b) lives at r_a * b.rows() + r_b, so the
/// first factor is the slow index; columns likewise.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Partial trace of a (dim1*dim2)-square matrix whose composite index is
/// (index in factor 1) * dim2 + (index in factor 2).
///
///   Second: result_{i,j} = sum_k M_{ik,jk}   (dim1 x dim1)
///   First:  result_{k,l} = sum_i M_{ik,il}   (dim2 x dim2)
Matrix partial_trace(const Matrix& m, std::size_t dim1, std::size_t dim2,
                     TracedFactor traced);

/// |C>> for a d2 x d1 operator C (rows are output indices i, columns input
/// indices j). Component j * d2 + i holds C_{i,j}, i.e. the coefficient of
/// |j>_1 |i>_2.
Matrix vectorize(const Matrix& c, std::size_t d1, std::size_t d2);

/// Inverse of vectorize. Accepts a column or row vector of length d1 * d2.
Matrix devectorize(const Matrix& v, std::size_t d1, std::size_t d2);

/// |a><b| for column vectors a, b.
Matrix outer(const Matrix& a, const Matrix& b);

struct EigDecomposition {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
  int sweeps = 0;
};

struct JacobiSettings {
  int max_sweeps = 100;
  /// Stop once the off-diagonal Frobenius norm drops to rel_tol * ||m||_F.
  double rel_tol = 1e-13;
};

/// Spectral decomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Throws InvalidInput if m is not square or hermiticity_defect(m) > tol, and
/// ConvergenceError (carrying the off-diagonal norm) if max_sweeps is hit.
/// Eigenvectors inside a degenerate eigenspace are whatever the rotations
/// produced; no canonical basis is chosen.
EigDecomposition hermitian_eig(const Matrix& m, double tol = kDefaultHermitianTol,
                               const JacobiSettings& settings = {});

/// sum_k lambda_k v_k v_k^dagger.
Matrix reconstruct(const EigDecomposition& eig);
Matrix reconstruct(std::span<const double> eigenvalues, const Matrix& eigenvectors);

struct PsdReport {
  bool ok;
  double min_eigenvalue;
};

/// ok iff the smallest eigenvalue is >= -tol.
PsdReport psd_check(const Matrix& m, double tol = kDefaultHermitianTol);

/// S^{-1/2} of a Hermitian PSD matrix; eigenvalues below floor raise
/// InvalidInput (the matrix is numerically singular).
Matrix inverse_sqrt_psd(const Matrix& s, double floor, double tol = kDefaultHermitianTol);

}  // namespace choi
