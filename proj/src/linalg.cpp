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

#include "choi/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "choi/errors.hpp"

namespace choi {

namespace {

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput(std::string(op) + ": shape mismatch " + shape(a) + " vs " +
                       shape(b));
  }
}

void require_square(const Matrix& m, const char* op) {
  if (!m.is_square()) {
    throw InvalidInput(std::string(op) + ": expected a square matrix, got " + shape(m));
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw InvalidInput("Matrix: dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw InvalidInput("Matrix: dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw InvalidInput("Matrix: data length " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(rows) + "x" +
                       std::to_string(cols));
  }
  for (const Complex& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidInput("Matrix: non-finite entry");
    }
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw InvalidInput("Matrix: dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidInput("Matrix: ragged row list");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::vector<Complex> entries) {
  const std::size_t n = entries.size();
  return Matrix(n, 1, std::move(entries));
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Matrix Matrix::conjugate() const {
  Matrix out = *this;
  for (Complex& z : out.data_) z = std::conj(z);
  return out;
}

Complex Matrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex scale) {
  for (Complex& z : data_) z *= scale;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex scale, Matrix m) { return m *= scale; }
Matrix operator*(Matrix m, Complex scale) { return m *= scale; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidInput("operator*: inner dimensions differ, " + shape(a) + " * " +
                       shape(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs(const Matrix& m) {
  double best = 0.0;
  for (const Complex& z : m.data()) best = std::max(best, std::abs(z));
  return best;
}

double frobenius_norm(const Matrix& m) {
  double sum = 0.0;
  for (const Complex& z : m.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

double hermiticity_defect(const Matrix& m) {
  require_square(m, "hermiticity_defect");
  double worst = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "hs_inner");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::conj(a.data()[k]) * b.data()[k];
  return sum;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Complex s = a(ra, ca);
      if (s == Complex{}) continue;
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          out(ra * b.rows() + rb, ca * b.cols() + cb) = s * b(rb, cb);
    }
  return out;
}

Matrix partial_trace(const Matrix& m, std::size_t dim1, std::size_t dim2,
                     TracedFactor traced) {
  if (dim1 == 0 || dim2 == 0 || !m.is_square() || m.rows() != dim1 * dim2) {
    throw InvalidInput("partial_trace: expected a square matrix of side " +
                       std::to_string(dim1 * dim2) + ", got " + shape(m));
  }
  if (traced == TracedFactor::Second) {
    Matrix out(dim1, dim1);
    for (std::size_t i = 0; i < dim1; ++i)
      for (std::size_t j = 0; j < dim1; ++j)
        for (std::size_t k = 0; k < dim2; ++k) out(i, j) += m(i * dim2 + k, j * dim2 + k);
    return out;
  }
  Matrix out(dim2, dim2);
  for (std::size_t k = 0; k < dim2; ++k)
    for (std::size_t l = 0; l < dim2; ++l)
      for (std::size_t i = 0; i < dim1; ++i) out(k, l) += m(i * dim2 + k, i * dim2 + l);
  return out;
}

Matrix vectorize(const Matrix& c, std::size_t d1, std::size_t d2) {
  if (c.rows() != d2 || c.cols() != d1) {
    throw InvalidInput("vectorize: expected a " + std::to_string(d2) + "x" +
                       std::to_string(d1) + " operator, got " + shape(c));
  }
  Matrix v(d1 * d2, 1);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d1; ++j) v(j * d2 + i, 0) = c(i, j);
  return v;
}

Matrix devectorize(const Matrix& v, std::size_t d1, std::size_t d2) {
  if (v.size() != d1 * d2 || (v.rows() != 1 && v.cols() != 1)) {
    throw InvalidInput("devectorize: expected a vector of length " +
                       std::to_string(d1 * d2) + ", got " + shape(v));
  }
  Matrix c(d2, d1);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d1; ++j) c(i, j) = v.data()[j * d2 + i];
  return c;
}

Matrix outer(const Matrix& a, const Matrix& b) {
  if (a.cols() != 1 || b.cols() != 1) throw InvalidInput("outer: expected column vectors");
  Matrix out(a.rows(), b.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.rows(); ++c) out(r, c) = a(r, 0) * std::conj(b(c, 0));
  return out;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) sum += std::norm(a(r, c));
  return std::sqrt(sum);
}

// Annihilates a(p,q) with the unitary J acting on columns p, q:
//   J = [[c, s e], [-s conj(e), c]],  e = a_pq / |a_pq|
// and applies a <- J^dagger a J, v <- v J.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex e = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
  const double c = 1.0 / std::hypot(1.0, t);
  const double s = t * c;

  const Complex jpp = c, jpq = s * e, jqp = -s * std::conj(e), jqq = c;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace

EigDecomposition hermitian_eig(const Matrix& m, double tol, const JacobiSettings& settings) {
  require_square(m, "hermitian_eig");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian (defect " << defect << " > " << tol << ")";
    throw InvalidInput(os.str());
  }
  const std::size_t n = m.rows();

  // Work on the exactly Hermitian part.
  Matrix a = m;
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = m(r, r).real();
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex h = 0.5 * (m(r, c) + std::conj(m(c, r)));
      a(r, c) = h;
      a(c, r) = std::conj(h);
    }
  }
  Matrix v = Matrix::identity(n);

  const double target = settings.rel_tol * frobenius_norm(a);
  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > target) {
    if (sweeps == settings.max_sweeps) {
      std::ostringstream os;
      os << "hermitian_eig: no convergence after " << sweeps
         << " sweeps (off-diagonal norm " << off << ")";
      throw ConvergenceError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });

  EigDecomposition out{std::vector<double>(n), Matrix(n, n), sweeps};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

Matrix reconstruct(std::span<const double> eigenvalues, const Matrix& eigenvectors) {
  const std::size_t n = eigenvectors.rows();
  if (eigenvalues.size() != eigenvectors.cols()) {
    throw InvalidInput("reconstruct: eigenvalue count does not match eigenvector columns");
  }
  Matrix out(n, n);
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    const double lambda = eigenvalues[k];
    if (lambda == 0.0) continue;
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = lambda * eigenvectors(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eigenvectors(c, k));
    }
  }
  return out;
}

Matrix reconstruct(const EigDecomposition& eig) {
  return reconstruct(eig.eigenvalues, eig.eigenvectors);
}

PsdReport psd_check(const Matrix& m, double tol) {
  const EigDecomposition eig = hermitian_eig(m, tol);
  const double min_eigenvalue = eig.eigenvalues.back();
  return {min_eigenvalue >= -tol, min_eigenvalue};
}

Matrix inverse_sqrt_psd(const Matrix& s, double floor, double tol) {
  EigDecomposition eig = hermitian_eig(s, tol);
  for (double& lambda : eig.eigenvalues) {
    if (lambda < floor) {
      std::ostringstream os;
      os << "inverse_sqrt_psd: eigenvalue " << lambda << " below floor " << floor;
      throw InvalidInput(os.str());
    }
    lambda = 1.0 / std::sqrt(lambda);
  }
  return reconstruct(eig);
}

}  // namespace choi
