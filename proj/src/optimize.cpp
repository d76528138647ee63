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

#include "choi/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "choi/errors.hpp"

namespace choi {

namespace {

void require_basis(const HermitianBasis& basis, std::size_t d, const char* op) {
  if (basis.d != d || basis.elements.size() != d * d) {
    throw InvalidInput(std::string(op) + ": basis does not match dimension " +
                       std::to_string(d));
  }
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

HermitianBasis gell_mann_basis(std::size_t d) {
  if (d == 0) throw InvalidInput("gell_mann_basis: dimension must be positive");
  HermitianBasis basis{d, {Matrix::identity(d)}};
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      Matrix s(d, d);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      basis.elements.push_back(std::move(s));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      Matrix a(d, d);
      a(j, k) = -i;
      a(k, j) = i;
      basis.elements.push_back(std::move(a));
    }
  for (std::size_t l = 1; l < d; ++l) {
    const double norm = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    Matrix g(d, d);
    for (std::size_t j = 0; j < l; ++j) g(j, j) = norm;
    g(l, l) = -norm * static_cast<double>(l);
    basis.elements.push_back(std::move(g));
  }
  return basis;
}

ParamVector depolarizing_params(std::size_t d_in, std::size_t d_out) {
  ParamVector p{d_in, d_out, std::vector<double>(d_in * d_in * d_out * d_out, 0.0)};
  p.at(0, 0) = 1.0 / static_cast<double>(d_out);
  return p;
}

ChoiMatrix params_to_choi(const ParamVector& params, const HermitianBasis& basis_in,
                          const HermitianBasis& basis_out) {
  require_basis(basis_in, params.d_in, "params_to_choi");
  require_basis(basis_out, params.d_out, "params_to_choi");
  const std::size_t n_in = basis_in.elements.size();
  const std::size_t n_out = basis_out.elements.size();
  if (params.x.size() != n_in * n_out) {
    throw InvalidInput("params_to_choi: expected " + std::to_string(n_in * n_out) +
                       " coefficients, got " + std::to_string(params.x.size()));
  }
  const std::size_t side = params.d_in * params.d_out;
  Matrix x(side, side);
  for (std::size_t j = 0; j < n_in; ++j)
    for (std::size_t k = 0; k < n_out; ++k) {
      const double c = params.at(j, k);
      if (c == 0.0) continue;
      x += c * tensor_product(basis_in.elements[j], basis_out.elements[k]);
    }
  return ChoiMatrix(params.d_in, params.d_out, std::move(x));
}

ParamVector choi_to_params(const ChoiMatrix& x, const HermitianBasis& basis_in,
                           const HermitianBasis& basis_out) {
  require_basis(basis_in, x.d_in(), "choi_to_params");
  require_basis(basis_out, x.d_out(), "choi_to_params");
  const std::size_t n_in = basis_in.elements.size();
  const std::size_t n_out = basis_out.elements.size();
  ParamVector params{x.d_in(), x.d_out(), std::vector<double>(n_in * n_out)};
  for (std::size_t j = 0; j < n_in; ++j) {
    const Matrix& sigma = basis_in.elements[j];
    const double norm_in = hs_inner(sigma, sigma).real();
    for (std::size_t k = 0; k < n_out; ++k) {
      const Matrix& tau = basis_out.elements[k];
      const double norm_out = hs_inner(tau, tau).real();
      // sigma (x) tau is Hermitian, so tr((sigma (x) tau) X) = <sigma (x) tau, X>.
      const Complex overlap = hs_inner(tensor_product(sigma, tau), x.matrix());
      params.at(j, k) = overlap.real() / (norm_in * norm_out);
    }
  }
  return params;
}

ChoiMatrix project_tp_affine(const ChoiMatrix& x) {
  const std::size_t d_in = x.d_in(), d_out = x.d_out();
  const Matrix delta = Matrix::identity(d_in) -
                       partial_trace(x.matrix(), d_in, d_out, TracedFactor::Second);
  const Matrix correction =
      tensor_product(delta, Matrix::identity(d_out) * (1.0 / static_cast<double>(d_out)));
  return ChoiMatrix(d_in, d_out, x.matrix() + correction);
}

ChoiMatrix project_psd(const ChoiMatrix& x) {
  EigDecomposition eig = hermitian_eig(x.matrix());
  for (double& lambda : eig.eigenvalues) lambda = std::max(lambda, 0.0);
  return ChoiMatrix(x.d_in(), x.d_out(), hermitian_part(reconstruct(eig)));
}

ProjectionResult project_cptp(const ChoiMatrix& x, double tol, int max_iter) {
  const std::size_t d_in = x.d_in(), d_out = x.d_out();
  const std::size_t side = d_in * d_out;
  auto tp_defect = [&](const Matrix& m) {
    return max_abs(partial_trace(m, d_in, d_out, TracedFactor::Second) -
                   Matrix::identity(d_in));
  };

  // Dykstra: the PSD step carries correction p, the affine step q.
  Matrix current = x.matrix();
  Matrix p(side, side), q(side, side);
  ChoiMatrix y = x;
  for (int it = 1; it <= max_iter; ++it) {
    y = project_psd(ChoiMatrix(d_in, d_out, current + p));
    p = current + p - y.matrix();
    const double defect = tp_defect(y.matrix());
    if (defect <= tol) {
      const double min_eig = psd_check(y.matrix()).min_eigenvalue;
      return {std::move(y), it, min_eig >= -tol, min_eig, defect};
    }
    const ChoiMatrix next = project_tp_affine(ChoiMatrix(d_in, d_out, y.matrix() + q));
    q = y.matrix() + q - next.matrix();
    current = next.matrix();
  }
  const double min_eig = psd_check(y.matrix()).min_eigenvalue;
  const double defect = tp_defect(y.matrix());
  return {std::move(y), max_iter, false, min_eig, defect};
}

LinearObjective::LinearObjective(Matrix f, Sense sense, double hermitian_tol)
    : f_(std::move(f)), sense_(sense) {
  if (!f_.is_square()) throw InvalidInput("LinearObjective: matrix must be square");
  const double defect = hermiticity_defect(f_);
  if (defect > hermitian_tol) {
    std::ostringstream os;
    os << "LinearObjective: matrix is not Hermitian (defect " << defect << ")";
    throw InvalidInput(os.str());
  }
}

double LinearObjective::value(const ChoiMatrix& x) const {
  // tr(f X) = <f^dagger, X> = <f, X> for Hermitian f.
  return hs_inner(f_, x.matrix()).real();
}

OptReport optimize_linear(const LinearObjective& objective, std::size_t d_in, std::size_t d_out,
                          const ChoiMatrix& start, const OptimizerSettings& settings) {
  const std::size_t side = d_in * d_out;
  if (objective.f().rows() != side) {
    throw InvalidInput("optimize_linear: objective side " + std::to_string(objective.f().rows()) +
                       " does not match d_in * d_out = " + std::to_string(side));
  }
  if (start.d_in() != d_in || start.d_out() != d_out) {
    throw InvalidInput("optimize_linear: start point has the wrong dimensions");
  }
  const double direction = objective.sense() == Sense::Maximize ? 1.0 : -1.0;

  ProjectionResult state = project_cptp(start, settings.tol, settings.projection_max_iter);
  std::vector<double> history{objective.value(state.x)};
  bool window_met = false;
  int iterations = 0;
  while (iterations < settings.max_iter) {
    const double step = direction * settings.step0 / std::sqrt(iterations + 1.0);
    const ChoiMatrix moved(d_in, d_out, state.x.matrix() + step * objective.f());
    state = project_cptp(moved, settings.tol, settings.projection_max_iter);
    history.push_back(objective.value(state.x));
    ++iterations;
    const auto n = history.size();
    if (n > static_cast<std::size_t>(settings.window) &&
        std::abs(history[n - 1] - history[n - 1 - settings.window]) <= settings.tol) {
      window_met = true;
      break;
    }
  }
  const double value = history.back();
  return OptReport{state.x,
                   value,
                   iterations,
                   {state.min_eigenvalue, state.tp_defect},
                   window_met && state.converged,
                   std::move(history)};
}

OptReport optimize_linear(const LinearObjective& objective, std::size_t d_in, std::size_t d_out,
                          const OptimizerSettings& settings) {
  const ChoiMatrix start = params_to_choi(depolarizing_params(d_in, d_out),
                                          gell_mann_basis(d_in), gell_mann_basis(d_out));
  return optimize_linear(objective, d_in, d_out, start, settings);
}

}  // namespace choi
