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

#include "choi/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "choi/errors.hpp"

namespace choi {

namespace {

std::string dims_str(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void require_input_shape(const Matrix& rho, std::size_t d_in, const char* op) {
  if (rho.rows() != d_in || rho.cols() != d_in) {
    throw InvalidInput(std::string(op) + ": input must be " + dims_str(d_in, d_in) +
                       ", got " + dims_str(rho.rows(), rho.cols()));
  }
}

}  // namespace

KrausRepr::KrausRepr(std::size_t d_in, std::size_t d_out, std::vector<Matrix> operators)
    : d_in_(d_in), d_out_(d_out), operators_(std::move(operators)) {
  if (d_in == 0 || d_out == 0) throw InvalidInput("KrausRepr: dimensions must be positive");
  if (operators_.empty()) throw InvalidInput("KrausRepr: at least one operator is required");
  for (std::size_t k = 0; k < operators_.size(); ++k) {
    const Matrix& a = operators_[k];
    if (a.rows() != d_out || a.cols() != d_in) {
      throw InvalidInput("KrausRepr: operator " + std::to_string(k) + " is " +
                         dims_str(a.rows(), a.cols()) + ", expected " +
                         dims_str(d_out, d_in));
    }
  }
}

ChoiMatrix::ChoiMatrix(std::size_t d_in, std::size_t d_out, Matrix m, double hermitian_tol)
    : d_in_(d_in), d_out_(d_out), m_(std::move(m)) {
  const std::size_t side = d_in * d_out;
  if (d_in == 0 || d_out == 0 || m_.rows() != side || m_.cols() != side) {
    throw InvalidInput("ChoiMatrix: expected a " + dims_str(side, side) + " matrix, got " +
                       dims_str(m_.rows(), m_.cols()));
  }
  const double defect = hermiticity_defect(m_);
  if (defect > hermitian_tol) {
    std::ostringstream os;
    os << "ChoiMatrix: matrix is not Hermitian (defect " << defect << ")";
    throw InvalidInput(os.str());
  }
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (!m_.is_square()) throw InvalidInput("DensityMatrix: matrix must be square");
  const double trace_error = std::abs(m_.trace() - 1.0);
  if (trace_error > tol) {
    std::ostringstream os;
    os << "DensityMatrix: trace differs from 1 by " << trace_error;
    throw InvalidInput(os.str());
  }
  const PsdReport psd = psd_check(m_, tol);  // also rejects non-Hermitian input
  if (!psd.ok) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << psd.min_eigenvalue;
    throw InvalidInput(os.str());
  }
}

Matrix MatrixUnit::materialize() const {
  if (p >= d || q >= d) throw InvalidInput("MatrixUnit: index out of range");
  Matrix e(d, d);
  e(p, q) = 1.0;
  return e;
}

Matrix apply_kraus(const KrausRepr& k, const Matrix& rho) {
  require_input_shape(rho, k.d_in(), "apply_kraus");
  Matrix out(k.d_out(), k.d_out());
  for (const Matrix& a : k.operators()) out += a * rho * a.adjoint();
  return out;
}

double kraus_tp_defect(const KrausRepr& k) {
  Matrix sum(k.d_in(), k.d_in());
  for (const Matrix& a : k.operators()) sum += a.adjoint() * a;
  return max_abs(sum - Matrix::identity(k.d_in()));
}

ChoiMatrix kraus_to_choi(const KrausRepr& k) {
  const std::size_t side = k.d_in() * k.d_out();
  Matrix x(side, side);
  for (const Matrix& a : k.operators()) {
    const Matrix v = vectorize(a, k.d_in(), k.d_out());
    x += outer(v, v);
  }
  return ChoiMatrix(k.d_in(), k.d_out(), std::move(x));
}

ChoiMatrix choi_via_basis_action(const ChannelMap& channel, std::size_t d_in,
                                 std::size_t d_out) {
  const std::size_t side = d_in * d_out;
  Matrix x(side, side);
  for (std::size_t p = 0; p < d_in; ++p) {
    for (std::size_t q = 0; q < d_in; ++q) {
      const Matrix unit = MatrixUnit{d_in, p, q}.materialize();
      const Matrix image = channel(unit);
      if (image.rows() != d_out || image.cols() != d_out) {
        throw InvalidInput("choi_via_basis_action: channel returned " +
                           dims_str(image.rows(), image.cols()) + ", expected " +
                           dims_str(d_out, d_out));
      }
      x += tensor_product(unit, image);
    }
  }
  return ChoiMatrix(d_in, d_out, std::move(x));
}

Matrix apply_choi(const ChoiMatrix& x, const Matrix& rho) {
  require_input_shape(rho, x.d_in(), "apply_choi");
  const Matrix lifted = tensor_product(rho.transpose(), Matrix::identity(x.d_out()));
  return partial_trace(lifted * x.matrix(), x.d_in(), x.d_out(), TracedFactor::First);
}

KrausRepr choi_to_kraus(const ChoiMatrix& x, std::optional<double> rank_tol) {
  const EigDecomposition eig = hermitian_eig(x.matrix());
  const double largest = eig.eigenvalues.front();
  const double smallest = eig.eigenvalues.back();
  const double tol = rank_tol.value_or(1e-12 * std::max(largest, 0.0));
  if (smallest < -tol) {
    std::ostringstream os;
    os << "choi_to_kraus: Choi matrix is not positive semidefinite (min eigenvalue "
       << smallest << ")";
    throw NotCompletelyPositive(os.str(), smallest);
  }

  const std::size_t side = x.matrix().rows();
  std::vector<Matrix> ops;
  for (std::size_t k = 0; k < eig.eigenvalues.size(); ++k) {
    const double kappa = eig.eigenvalues[k];
    if (kappa <= tol) break;  // descending order
    Matrix v(side, 1);
    const double scale = std::sqrt(kappa);
    for (std::size_t r = 0; r < side; ++r) v(r, 0) = scale * eig.eigenvectors(r, k);
    ops.push_back(devectorize(v, x.d_in(), x.d_out()));
  }
  if (ops.empty()) ops.emplace_back(x.d_out(), x.d_in());  // the zero map
  return KrausRepr(x.d_in(), x.d_out(), std::move(ops));
}

Matrix kraus_gram(const KrausRepr& k) {
  const std::size_t n = k.size();
  Matrix g(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g(a, b) = hs_inner(k.operators()[a], k.operators()[b]);
  return g;
}

CptpReport validate_cptp(const ChoiMatrix& x, double tol) {
  const PsdReport psd = psd_check(x.matrix(), std::max(tol, kDefaultHermitianTol));
  const Matrix reduced = partial_trace(x.matrix(), x.d_in(), x.d_out(), TracedFactor::Second);
  const double tp_defect = max_abs(reduced - Matrix::identity(x.d_in()));
  return {psd.min_eigenvalue >= -tol, tp_defect <= tol, psd.min_eigenvalue, tp_defect};
}

Matrix permute_factors(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm) {
  const std::size_t n = dims.size();
  if (perm.size() != n) throw InvalidInput("permute_factors: perm and dims differ in length");
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw InvalidInput("permute_factors: perm is not a permutation");
    seen[p] = true;
  }
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (!m.is_square() || m.rows() != total) {
    throw InvalidInput("permute_factors: expected a square matrix of side " +
                       std::to_string(total) + ", got " + dims_str(m.rows(), m.cols()));
  }

  // Stride of each input factor inside the output index.
  std::vector<std::size_t> out_stride(n);
  std::size_t stride = 1;
  for (std::size_t k = n; k-- > 0;) {
    out_stride[perm[k]] = stride;
    stride *= dims[perm[k]];
  }
  std::vector<std::size_t> target(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx, mapped = 0;
    for (std::size_t k = n; k-- > 0;) {
      mapped += (rest % dims[k]) * out_stride[k];
      rest /= dims[k];
    }
    target[idx] = mapped;
  }

  Matrix out(total, total);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c) out(target[r], target[c]) = m(r, c);
  return out;
}

ChoiMatrix product_choi(const ChoiMatrix& xa, const ChoiMatrix& xb) {
  // kron gives factor order (in_A, out_A, in_B, out_B); regroup to
  // (in_A, in_B, out_A, out_B).
  const std::size_t dims[] = {xa.d_in(), xa.d_out(), xb.d_in(), xb.d_out()};
  const std::size_t perm[] = {0, 2, 1, 3};
  Matrix joint = permute_factors(tensor_product(xa.matrix(), xb.matrix()), dims, perm);
  return ChoiMatrix(xa.d_in() * xb.d_in(), xa.d_out() * xb.d_out(), std::move(joint));
}

}  // namespace choi
