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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "choi/linalg.hpp"

namespace choi {

// Index convention used throughout the library
// -------------------------------------------
// A channel maps operators on H_in (dimension d_in) to operators on H_out
// (dimension d_out). Its Choi matrix lives on H_in (x) H_out, with the input
// factor as the slow index: the basis vector |j>_in |i>_out sits at flat
// position j * d_out + i. With this ordering the amplitude-damping Kraus pair
// produces
//
//   [[1, 0, 0, sqrt(1-p)],
//    [0, 0, 0, 0        ],
//    [0, 0, p, 0        ],
//    [sqrt(1-p), 0, 0, 1-p]].
//
// Other libraries commonly put the output factor first; files written by
// this library always use the convention above.

/// A list of d_out x d_in Kraus operators. Trace preservation is not
/// enforced here so that CP-only maps are representable; see
/// kraus_tp_defect.
class KrausRepr {
 public:
  KrausRepr(std::size_t d_in, std::size_t d_out, std::vector<Matrix> operators);

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  const std::vector<Matrix>& operators() const noexcept { return operators_; }
  std::size_t size() const noexcept { return operators_.size(); }

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  std::vector<Matrix> operators_;
};

/// Hermitian matrix on H_in (x) H_out. Membership in the CPTP set is a
/// separate question answered by validate_cptp.
class ChoiMatrix {
 public:
  ChoiMatrix(std::size_t d_in, std::size_t d_out, Matrix m,
             double hermitian_tol = kDefaultHermitianTol);

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  Matrix m_;
};

/// Hermitian, unit-trace, positive semidefinite.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double tol = kDefaultHermitianTol);

  std::size_t d() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// E^{p,q}: the d x d matrix with a single 1 at (p, q).
struct MatrixUnit {
  std::size_t d;
  std::size_t p;
  std::size_t q;

  Matrix materialize() const;
};

using ChannelMap = std::function<Matrix(const Matrix&)>;

struct CptpReport {
  bool cp;
  bool tp;
  double min_eigenvalue;
  double tp_defect;
};

/// sum_k A_k rho A_k^dagger. rho may be any d_in x d_in matrix.
Matrix apply_kraus(const KrausRepr& k, const Matrix& rho);

/// max |sum_k A_k^dagger A_k - I|, elementwise.
double kraus_tp_defect(const KrausRepr& k);

/// X = sum_k |A_k>><<A_k|.
ChoiMatrix kraus_to_choi(const KrausRepr& k);

/// X = sum_{p,q} E^{p,q} (x) channel(E^{p,q}). Independent of any particular
/// representation of the channel, which makes it the cross-check for
/// kraus_to_choi.
ChoiMatrix choi_via_basis_action(const ChannelMap& channel, std::size_t d_in,
                                 std::size_t d_out);

/// tr_in((rho^T (x) I_out) X).
Matrix apply_choi(const ChoiMatrix& x, const Matrix& rho);

/// Orthogonal Kraus representation from the spectral decomposition
/// X = sum_k kappa_k |phi_k><phi_k|: A_k = devectorize(sqrt(kappa_k) phi_k)
/// for every kappa_k > rank_tol, ordered by descending kappa_k.
///
/// rank_tol defaults to 1e-12 * (largest eigenvalue). Throws
/// NotCompletelyPositive if some eigenvalue is below -rank_tol. The operators
/// are fixed only up to phase and rotations inside degenerate eigenspaces.
KrausRepr choi_to_kraus(const ChoiMatrix& x, std::optional<double> rank_tol = std::nullopt);

/// G_{k,l} = tr(A_k^dagger A_l).
Matrix kraus_gram(const KrausRepr& k);

/// cp: smallest eigenvalue >= -tol. tp: max |tr_out X - I_in| <= tol.
/// Both diagnostics are always filled in.
CptpReport validate_cptp(const ChoiMatrix& x, double tol = kDefaultHermitianTol);

/// Reorders tensor factors of a square matrix on (x)_k C^{dims[k]}.
/// Factor k of the result is factor perm[k] of the input; rows and columns
/// are permuted together.
Matrix permute_factors(const Matrix& m, std::span<const std::size_t> dims,
                       std::span<const std::size_t> perm);

/// Choi matrix of the parallel channel E_A (x) E_B, in the library's
/// convention on (in_A in_B) (x) (out_A out_B).
ChoiMatrix product_choi(const ChoiMatrix& xa, const ChoiMatrix& xb);

}  // namespace choi
