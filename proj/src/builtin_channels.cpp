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

#include "choi/builtin_channels.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "choi/errors.hpp"

namespace choi {

namespace {

constexpr int kMaxRetries = 16;
constexpr double kEigenvalueFloor = 1e-12;

std::mt19937_64 make_engine(RngSeed seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value),
                    static_cast<std::uint32_t>(seed.value >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Complex& z : g.data()) {
    const double re = normal(rng);
    const double im = normal(rng);
    z = Complex(re, im);
  }
  return g;
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

AmplitudeDamping::AmplitudeDamping(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "AmplitudeDamping: p = " << p << " is outside [0, 1]";
    throw InvalidInput(os.str());
  }
}

KrausRepr amplitude_damping_kraus(AmplitudeDamping params) {
  const double p = params.p();
  return KrausRepr(2, 2,
                   {Matrix{{1, 0}, {0, std::sqrt(1 - p)}}, Matrix{{0, std::sqrt(p)}, {0, 0}}});
}

ChoiMatrix amplitude_damping_choi(AmplitudeDamping params) {
  const double p = params.p();
  const double r = std::sqrt(1 - p);
  return ChoiMatrix(2, 2, Matrix{{1, 0, 0, r}, {0, 0, 0, 0}, {0, 0, p, 0}, {r, 0, 0, 1 - p}});
}

KrausRepr identity_channel(std::size_t d) {
  if (d == 0) throw InvalidInput("identity_channel: dimension must be positive");
  return KrausRepr(d, d, {Matrix::identity(d)});
}

ChoiMatrix random_cptp_choi(std::size_t d_in, std::size_t d_out, std::size_t rank,
                            RngSeed seed) {
  const std::size_t side = d_in * d_out;
  if (d_in == 0 || d_out == 0) throw InvalidInput("random_cptp_choi: dimensions must be positive");
  if (rank < 1 || rank > side) {
    throw InvalidInput("random_cptp_choi: rank " + std::to_string(rank) +
                       " outside [1, " + std::to_string(side) + "]");
  }
  // tr_out W has rank at most rank * d_out, so S is singular for every draw.
  if (rank * d_out < d_in) {
    throw InvalidInput("random_cptp_choi: rank " + std::to_string(rank) +
                       " cannot be trace preserving for d_in " + std::to_string(d_in) +
                       " and d_out " + std::to_string(d_out) + " (need rank * d_out >= d_in)");
  }
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::mt19937_64 rng = make_engine(seed, static_cast<std::uint64_t>(attempt));
    const Matrix g = gaussian_matrix(side, rank, rng);
    const Matrix w = g * g.adjoint();
    const Matrix s = partial_trace(w, d_in, d_out, TracedFactor::Second);
    Matrix s_inv_sqrt(d_in, d_in);
    try {
      s_inv_sqrt = inverse_sqrt_psd(s, kEigenvalueFloor);
    } catch (const InvalidInput&) {
      continue;
    }
    const Matrix dressing = tensor_product(s_inv_sqrt, Matrix::identity(d_out));
    return ChoiMatrix(d_in, d_out, hermitian_part(dressing * w * dressing));
  }
  throw InvalidInput("random_cptp_choi: reduced matrix singular after " +
                     std::to_string(kMaxRetries) + " draws");
}

KrausRepr random_cptp_kraus(std::size_t d_in, std::size_t d_out, std::size_t count,
                            RngSeed seed) {
  if (count == 0) throw InvalidInput("random_cptp_kraus: count must be positive");
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    std::mt19937_64 rng = make_engine(seed, static_cast<std::uint64_t>(attempt) + (1ull << 32));
    std::vector<Matrix> ops;
    Matrix s(d_in, d_in);
    for (std::size_t k = 0; k < count; ++k) {
      ops.push_back(gaussian_matrix(d_out, d_in, rng));
      s += ops.back().adjoint() * ops.back();
    }
    Matrix s_inv_sqrt(d_in, d_in);
    try {
      s_inv_sqrt = inverse_sqrt_psd(hermitian_part(s), kEigenvalueFloor);
    } catch (const InvalidInput&) {
      continue;
    }
    for (Matrix& a : ops) a = a * s_inv_sqrt;
    return KrausRepr(d_in, d_out, std::move(ops));
  }
  throw InvalidInput("random_cptp_kraus: operators span a singular subspace");
}

DensityMatrix random_density_matrix(std::size_t d, RngSeed seed) {
  std::mt19937_64 rng = make_engine(seed, 2ull << 32);
  const Matrix g = gaussian_matrix(d, d, rng);
  Matrix rho = hermitian_part(g * g.adjoint());
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace choi
