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
#include <cstdint>

#include "choi/channels.hpp"

namespace choi {

/// Damping probability of the qubit amplitude-damping channel, in [0, 1].
class AmplitudeDamping {
 public:
  explicit AmplitudeDamping(double p);
  double p() const noexcept { return p_; }

 private:
  double p_;
};

struct RngSeed {
  std::uint64_t value;
};

/// {[[1, 0], [0, sqrt(1-p)]], [[0, sqrt(p)], [0, 0]]}. The second operator is
/// kept even when it is zero (p = 0).
KrausRepr amplitude_damping_kraus(AmplitudeDamping params);

/// Closed-form Choi matrix of amplitude damping.
ChoiMatrix amplitude_damping_choi(AmplitudeDamping params);

/// Single Kraus operator I_d.
KrausRepr identity_channel(std::size_t d);

/// Random CPTP Choi matrix of the given rank: W = G G^dagger for a complex
/// Gaussian (d_in d_out) x rank matrix G, then
/// X = (S^{-1/2} (x) I) W (S^{-1/2} (x) I) with S = tr_out W.
///
/// Deterministic per seed. If S is numerically singular the draw is repeated
/// with a derived sub-seed, at most 16 times.
ChoiMatrix random_cptp_choi(std::size_t d_in, std::size_t d_out, std::size_t rank,
                            RngSeed seed);

/// Random trace-preserving Kraus set: complex Gaussian operators B_k
/// followed by A_k = B_k S^{-1/2}, S = sum_k B_k^dagger B_k.
KrausRepr random_cptp_kraus(std::size_t d_in, std::size_t d_out, std::size_t count,
                            RngSeed seed);

/// Random full-rank density matrix G G^dagger / tr(G G^dagger).
DensityMatrix random_density_matrix(std::size_t d, RngSeed seed);

}  // namespace choi
