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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "choi/builtin_channels.hpp"
#include "choi/errors.hpp"
#include "test_util.hpp"

namespace choi {
namespace {

using testing::max_diff;
using testing::printed_ad_choi;
using testing::random_hermitian;

const Complex kI(0.0, 1.0);

ChoiMatrix identity_choi(std::size_t d) { return kraus_to_choi(identity_channel(d)); }

TEST(GellMannBasis, QubitIsPauli) {
  const HermitianBasis b = gell_mann_basis(2);
  ASSERT_EQ(b.elements.size(), 4u);
  EXPECT_EQ(b.elements[0], Matrix::identity(2));
  EXPECT_EQ(b.elements[1], (Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(b.elements[2], (Matrix{{0, -kI}, {kI, 0}}));
  EXPECT_EQ(b.elements[3], (Matrix{{1, 0}, {0, -1}}));
}

TEST(GellMannBasis, OrthogonalTracelessHermitian) {
  for (std::size_t d : {1u, 2u, 3u, 4u, 5u}) {
    const HermitianBasis b = gell_mann_basis(d);
    ASSERT_EQ(b.elements.size(), d * d);
    for (std::size_t j = 0; j < d * d; ++j) {
      EXPECT_EQ(hermiticity_defect(b.elements[j]), 0.0);
      if (j > 0) {
        EXPECT_LE(std::abs(b.elements[j].trace()), 1e-14);
      }
      for (std::size_t k = 0; k < d * d; ++k) {
        const Complex g = (b.elements[j] * b.elements[k]).trace();
        const double expected = j != k ? 0.0 : (j == 0 ? double(d) : 2.0);
        EXPECT_LE(std::abs(g - expected), 1e-14) << d << " " << j << " " << k;
      }
    }
  }
}

TEST(GellMannBasis, SpansHermitianMatrices) {
  std::mt19937_64 rng(5);
  const HermitianBasis b = gell_mann_basis(3);
  const Matrix h = random_hermitian(3, rng);
  Matrix rebuilt(3, 3);
  for (const Matrix& s : b.elements) {
    const double c = (s * h).trace().real() / (s * s).trace().real();
    rebuilt += c * s;
  }
  EXPECT_LE(max_diff(rebuilt, h), 1e-12);
}

TEST(Params, DepolarizingPoint) {
  for (std::size_t d_in : {2u, 3u})
    for (std::size_t d_out : {2u, 3u}) {
      const ChoiMatrix x = params_to_choi(depolarizing_params(d_in, d_out),
                                          gell_mann_basis(d_in), gell_mann_basis(d_out));
      EXPECT_LE(max_diff(x.matrix(),
                         Matrix::identity(d_in * d_out) * (1.0 / static_cast<double>(d_out))),
                1e-15);
      EXPECT_TRUE(validate_cptp(x).tp);
    }
}

TEST(Params, ZeroVectorIsZeroMatrix) {
  const ParamVector zero{2, 2, std::vector<double>(16, 0.0)};
  const ChoiMatrix x = params_to_choi(zero, gell_mann_basis(2), gell_mann_basis(2));
  EXPECT_EQ(x.matrix(), Matrix(4, 4));
  EXPECT_DOUBLE_EQ(validate_cptp(x).tp_defect, 1.0);
}

TEST(Params, BasisProductHasUnitCoordinate) {
  const HermitianBasis b2 = gell_mann_basis(2), b3 = gell_mann_basis(3);
  const ChoiMatrix x(2, 3, tensor_product(b2.elements[1], b3.elements[1]));
  const ParamVector p = choi_to_params(x, b2, b3);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 9; ++k)
      EXPECT_NEAR(p.at(j, k), j == 1 && k == 1 ? 1.0 : 0.0, 1e-15);
}

TEST(Params, RoundTrip) {
  std::mt19937_64 rng(7);
  const HermitianBasis b2 = gell_mann_basis(2), b3 = gell_mann_basis(3);
  const ChoiMatrix ad(2, 2, printed_ad_choi(0.36));
  EXPECT_LE(max_diff(params_to_choi(choi_to_params(ad, b2, b2), b2, b2).matrix(), ad.matrix()),
            1e-12);
  for (int trial = 0; trial < 10; ++trial) {
    const ChoiMatrix h(3, 2, random_hermitian(6, rng));
    EXPECT_LE(max_diff(params_to_choi(choi_to_params(h, b3, b2), b3, b2).matrix(), h.matrix()),
              1e-12);
  }
}

TEST(Params, TracePreservingChannelsSatisfyConstraint) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t d_in = 2 + s % 2, d_out = 2 + (s / 2) % 2;
    const ChoiMatrix x = random_cptp_choi(d_in, d_out, 1 + s % 4, RngSeed{s});
    const ParamVector p = choi_to_params(x, gell_mann_basis(d_in), gell_mann_basis(d_out));
    EXPECT_NEAR(p.at(0, 0), 1.0 / static_cast<double>(d_out), 1e-12);
    for (std::size_t j = 1; j < d_in * d_in; ++j) EXPECT_NEAR(p.at(j, 0), 0.0, 1e-12);
  }
}

// Fixing the d_in^2 coordinates x[j,0] and drawing the rest freely always
// gives tr_out X = I; changing any fixed coordinate breaks it.
TEST(Params, ConstraintRemovesExactlyDinSquaredCoordinates) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  const std::size_t d_in = 3, d_out = 2;
  const HermitianBasis bi = gell_mann_basis(d_in), bo = gell_mann_basis(d_out);
  const std::size_t total = d_in * d_in * d_out * d_out;
  std::size_t constrained = 0;
  for (std::size_t j = 0; j < d_in * d_in; ++j)
    for (std::size_t k = 0; k < d_out * d_out; ++k) {
      ParamVector p = depolarizing_params(d_in, d_out);
      for (std::size_t jj = 0; jj < d_in * d_in; ++jj)
        for (std::size_t kk = 1; kk < d_out * d_out; ++kk) p.at(jj, kk) = normal(rng);
      p.at(j, k) += 0.25;
      const double defect = validate_cptp(params_to_choi(p, bi, bo)).tp_defect;
      if (defect > 1e-12) ++constrained;
    }
  EXPECT_EQ(constrained, d_in * d_in);
  EXPECT_EQ(total - constrained, d_in * d_in * (d_out * d_out - 1));
}

TEST(Params, RejectsMismatchedBasis) {
  EXPECT_THROW(params_to_choi(depolarizing_params(2, 2), gell_mann_basis(3), gell_mann_basis(2)),
               InvalidInput);
  EXPECT_THROW(choi_to_params(identity_choi(2), gell_mann_basis(2), gell_mann_basis(3)),
               InvalidInput);
}

TEST(ProjectTpAffine, Examples) {
  const ChoiMatrix tp = random_cptp_choi(2, 3, 2, RngSeed{1});
  EXPECT_LE(max_diff(project_tp_affine(tp).matrix(), tp.matrix()), 1e-15);

  const ChoiMatrix zero(2, 3, Matrix(6, 6));
  EXPECT_LE(max_diff(project_tp_affine(zero).matrix(), Matrix::identity(6) * (1.0 / 3.0)), 1e-15);

  std::mt19937_64 rng(13);
  const ChoiMatrix h(2, 3, random_hermitian(6, rng));
  const ChoiMatrix once = project_tp_affine(h);
  EXPECT_LE(validate_cptp(once).tp_defect, 1e-14);
  EXPECT_LE(max_diff(project_tp_affine(once).matrix(), once.matrix()), 1e-15);
}

TEST(ProjectPsd, Examples) {
  const ChoiMatrix ad(2, 2, printed_ad_choi(0.36));
  EXPECT_LE(max_diff(project_psd(ad).matrix(), ad.matrix()), 1e-11);

  const ChoiMatrix indefinite(1, 2, Matrix{{1, 0}, {0, -1}});
  EXPECT_LE(max_diff(project_psd(indefinite).matrix(), Matrix{{1, 0}, {0, 0}}), 1e-15);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const ChoiMatrix h(2, 2, random_hermitian(4, rng));
    const ChoiMatrix once = project_psd(h);
    EXPECT_TRUE(psd_check(once.matrix(), 1e-10).ok);
    EXPECT_LE(max_diff(project_psd(once).matrix(), once.matrix()), 1e-12);
  }
}

TEST(Projections, AreNonexpansive) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const ChoiMatrix a(2, 2, 2.0 * random_hermitian(4, rng));
    const ChoiMatrix b(2, 2, 2.0 * random_hermitian(4, rng));
    const double before = frobenius_norm(a.matrix() - b.matrix());
    EXPECT_LE(frobenius_norm(project_psd(a).matrix() - project_psd(b).matrix()), before + 1e-12);
    EXPECT_LE(frobenius_norm(project_tp_affine(a).matrix() - project_tp_affine(b).matrix()),
              before + 1e-12);
  }
}

// The affine projection is orthogonal: the correction is Frobenius-orthogonal
// to every direction inside the TP set.
TEST(ProjectTpAffine, CorrectionIsOrthogonalToFeasibleDirections) {
  std::mt19937_64 rng(23);
  const ChoiMatrix h(2, 3, random_hermitian(6, rng));
  const Matrix correction = project_tp_affine(h).matrix() - h.matrix();
  for (int trial = 0; trial < 10; ++trial) {
    const ChoiMatrix u = random_cptp_choi(2, 3, 6, RngSeed{static_cast<std::uint64_t>(trial)});
    const ChoiMatrix v = random_cptp_choi(2, 3, 3, RngSeed{static_cast<std::uint64_t>(trial + 50)});
    EXPECT_LE(std::abs(hs_inner(correction, u.matrix() - v.matrix())), 1e-13);
  }
}

TEST(ProjectCptp, FixedPoint) {
  const ChoiMatrix ad = amplitude_damping_choi(AmplitudeDamping(0.36));
  const ProjectionResult r = project_cptp(ad, 1e-9, 500);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(max_diff(r.x.matrix(), ad.matrix()), 1e-9);
}

TEST(ProjectCptp, ScaledChoiBecomesFeasible) {
  const ChoiMatrix scaled(2, 2, 1.5 * printed_ad_choi(0.36));
  const ProjectionResult r = project_cptp(scaled, 1e-9, 500);
  ASSERT_TRUE(r.converged);
  const CptpReport v = validate_cptp(r.x, 1e-8);
  EXPECT_TRUE(v.cp && v.tp);
  EXPECT_LE(v.tp_defect, 1e-8);
  EXPECT_GE(v.min_eigenvalue, -1e-8);
}

TEST(ProjectCptp, SmallPerturbationStaysClose) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const ChoiMatrix input(2, 2, printed_ad_choi(0.36) + 0.01 * random_hermitian(4, rng));
    const ProjectionResult r = project_cptp(input, 1e-9, 500);
    ASSERT_TRUE(r.converged);
    EXPECT_TRUE(validate_cptp(r.x, 1e-8).cp);
    EXPECT_LE(frobenius_norm(r.x.matrix() - input.matrix()), 0.2);
  }
}

TEST(ProjectCptp, IteratesPassValidation) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d_in = 2 + trial % 2, d_out = 2 + (trial / 2) % 2;
    const ChoiMatrix h(d_in, d_out, 3.0 * random_hermitian(d_in * d_out, rng));
    const double tol = 1e-9;
    const ProjectionResult r = project_cptp(h, tol, 5000);
    ASSERT_TRUE(r.converged) << trial;
    const CptpReport v = validate_cptp(r.x, 10 * tol);
    EXPECT_TRUE(v.cp && v.tp) << trial;
    EXPECT_LE(r.tp_defect, tol);
  }
}

TEST(ProjectCptp, ReportsNonConvergence) {
  std::mt19937_64 rng(37);
  const ChoiMatrix h(3, 3, 5.0 * random_hermitian(9, rng));
  const ProjectionResult r = project_cptp(h, 1e-14, 1);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_GT(r.tp_defect, 1e-14);
}

TEST(LinearObjective, RejectsNonHermitian) {
  EXPECT_THROW(LinearObjective(Matrix{{0, 1}, {0, 0}}, Sense::Maximize), InvalidInput);
  EXPECT_THROW(LinearObjective(Matrix(2, 3), Sense::Maximize), InvalidInput);
}

// For CPTP X: tr X = d_in and <<I|X|I>> <= lambda_max * d_in <= d_in^2.
TEST(OptimizeLinear, IdentityOverlapBoundHoldsOnSamples) {
  const Matrix f = identity_choi(2).matrix();
  const LinearObjective obj(f, Sense::Maximize);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const ChoiMatrix x = random_cptp_choi(2, 2, 1 + s % 4, RngSeed{s});
    EXPECT_LE(obj.value(x), 4.0 + 1e-9);
  }
}

TEST(OptimizeLinear, RecoversIdentityChannel) {
  const ChoiMatrix target = identity_choi(2);
  const OptReport r = optimize_linear(LinearObjective(target.matrix(), Sense::Maximize), 2, 2);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.objective_value, 4.0, 1e-4);
  EXPECT_LE(frobenius_norm(r.x_opt.matrix() - target.matrix()), 1e-3);
  EXPECT_LE(r.feasibility.tp_defect, 1e-9);
  EXPECT_GE(r.feasibility.min_eigenvalue, -1e-9);
}

TEST(OptimizeLinear, TraceObjectiveIsConstant) {
  const OptReport r =
      optimize_linear(LinearObjective(Matrix::identity(6), Sense::Maximize), 2, 3);
  EXPECT_TRUE(r.converged);
  for (double v : r.history) EXPECT_NEAR(v, 2.0, 1e-8);
}

TEST(OptimizeLinear, AscentFromDepolarizingPoint) {
  const OptReport r =
      optimize_linear(LinearObjective(printed_ad_choi(0.36), Sense::Maximize), 2, 2);
  ASSERT_GE(r.history.size(), 2u);
  EXPECT_GE(r.objective_value, r.history.front() - 1e-9);
  // Every accepted iterate is at least as good as the start.
  for (double v : r.history) EXPECT_GE(v, r.history.front() - 1e-8);
}

TEST(OptimizeLinear, MinimizeDescends) {
  const ChoiMatrix target = identity_choi(2);
  const OptReport r = optimize_linear(LinearObjective(target.matrix(), Sense::Minimize), 2, 2);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.objective_value, r.history.front() + 1e-9);
  // <<I|X|I>> >= 0 for PSD X, and 0 is attained (e.g. a constant channel onto a pure state).
  EXPECT_NEAR(r.objective_value, 0.0, 1e-6);
}

TEST(OptimizeLinear, CustomStartAndIterationCap) {
  const LinearObjective obj(identity_choi(2).matrix(), Sense::Maximize);
  OptimizerSettings settings;
  settings.max_iter = 1;
  const OptReport capped = optimize_linear(obj, 2, 2, settings);
  EXPECT_FALSE(capped.converged);
  EXPECT_EQ(capped.iterations, 1);

  const OptReport seeded =
      optimize_linear(obj, 2, 2, random_cptp_choi(2, 2, 4, RngSeed{3}), OptimizerSettings{});
  EXPECT_NEAR(seeded.objective_value, 4.0, 1e-4);
}

TEST(OptimizeLinear, RejectsMismatchedDimensions) {
  const LinearObjective obj(Matrix::identity(4), Sense::Maximize);
  EXPECT_THROW(optimize_linear(obj, 2, 3), InvalidInput);
}

}  // namespace
}  // namespace choi
