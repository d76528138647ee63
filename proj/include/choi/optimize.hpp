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
#include <vector>

#include "choi/channels.hpp"

namespace choi {

/// d^2 Hermitian matrices: elements[0] = I_d, the rest traceless and
/// mutually trace-orthogonal.
struct HermitianBasis {
  std::size_t d;
  std::vector<Matrix> elements;
};

/// Generalized Gell-Mann basis: identity, then the d(d-1)/2 symmetric
/// E_jk + E_kj, the d(d-1)/2 antisymmetric -i E_jk + i E_kj (j < k), then the
/// d-1 diagonal generators. Traceless elements satisfy tr(s_a s_b) = 2 delta_ab.
/// For d = 2 this is {I, X, Y, Z}.
HermitianBasis gell_mann_basis(std::size_t d);

/// Real coordinates of a Hermitian matrix on H_in (x) H_out in the product
/// basis sigma_j (x) tau_k. Entry (j, k) sits at j * d_out^2 + k.
struct ParamVector {
  std::size_t d_in;
  std::size_t d_out;
  std::vector<double> x;

  double& at(std::size_t j, std::size_t k) { return x[j * d_out * d_out + k]; }
  double at(std::size_t j, std::size_t k) const { return x[j * d_out * d_out + k]; }
};

/// The trace-preserving ParamVector with only x[0,0] = 1/d_out set: the
/// channel sending every state to the maximally mixed state.
ParamVector depolarizing_params(std::size_t d_in, std::size_t d_out);

/// X = sum_{j,k} x_{j,k} sigma_j (x) tau_k.
ChoiMatrix params_to_choi(const ParamVector& params, const HermitianBasis& basis_in,
                          const HermitianBasis& basis_out);

/// x_{j,k} = tr((sigma_j (x) tau_k) X) / (tr sigma_j^2 * tr tau_k^2).
ParamVector choi_to_params(const ChoiMatrix& x, const HermitianBasis& basis_in,
                           const HermitianBasis& basis_out);

/// Frobenius projection onto {X : tr_out X = I_in}:
/// X + (I_in - tr_out X) (x) I_out / d_out.
ChoiMatrix project_tp_affine(const ChoiMatrix& x);

/// Frobenius-nearest PSD matrix (negative eigenvalues clipped to zero).
ChoiMatrix project_psd(const ChoiMatrix& x);

struct ProjectionResult {
  ChoiMatrix x;
  int iterations;
  bool converged;
  double min_eigenvalue;
  double tp_defect;
};

/// Dykstra alternating projections between the PSD cone and the
/// trace-preserving affine set. On success the returned point has
/// min_eigenvalue >= -tol and tp_defect <= tol. On hitting max_iter the last
/// iterate is returned with converged = false and both residuals filled in.
ProjectionResult project_cptp(const ChoiMatrix& x, double tol = 1e-9, int max_iter = 500);

enum class Sense { Maximize, Minimize };

/// tr(f X) for Hermitian f of side d_in * d_out.
class LinearObjective {
 public:
  LinearObjective(Matrix f, Sense sense, double hermitian_tol = kDefaultHermitianTol);

  const Matrix& f() const noexcept { return f_; }
  Sense sense() const noexcept { return sense_; }
  double value(const ChoiMatrix& x) const;

 private:
  Matrix f_;
  Sense sense_;
};

struct OptimizerSettings {
  double step0 = 1.0;
  double tol = 1e-9;
  int max_iter = 5000;
  int projection_max_iter = 500;
  int window = 10;
};

struct Feasibility {
  double min_eigenvalue;
  double tp_defect;
};

struct OptReport {
  ChoiMatrix x_opt;
  double objective_value;
  int iterations;
  Feasibility feasibility;
  bool converged;
  /// Objective after each iterate, starting with the (projected) start point.
  std::vector<double> history;
};

/// Projected gradient over the CPTP set:
///   X_{t+1} = project_cptp(X_t +/- step0 / sqrt(t + 1) * f).
/// Stops when the objective moves by at most tol across `window` iterations,
/// or after max_iter. converged is false if the window criterion never held
/// or the last projection did not converge.
OptReport optimize_linear(const LinearObjective& objective, std::size_t d_in, std::size_t d_out,
                          const ChoiMatrix& start, const OptimizerSettings& settings = {});

/// Same, starting from the depolarizing point.
OptReport optimize_linear(const LinearObjective& objective, std::size_t d_in, std::size_t d_out,
                          const OptimizerSettings& settings = {});

}  // namespace choi
