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

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "choi/channels.hpp"
#include "choi/errors.hpp"

namespace choi::io {

// Channel and state files are JSON documents. Matrices are row-major nested
// arrays of [re, im] pairs:
//
//   {"kind": "kraus", "d_in": 2, "d_out": 2, "operators": [M, M, ...]}
//   {"kind": "choi",  "d_in": 2, "d_out": 2, "matrix": M}
//   {"d": 2, "matrix": M}                                   (state file)
//
// Numbers are written with 17 significant digits, so a write/read cycle
// reproduces every double exactly.

/// Malformed document. The message names the offending field, or the
/// line/column for JSON syntax errors.
class FormatError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

using Channel = std::variant<KrausRepr, ChoiMatrix>;

Channel parse_channel(std::string_view text);
std::string serialize_channel(const Channel& channel);

/// Parses a state file and checks the density-matrix invariants at tol.
DensityMatrix parse_state(std::string_view text, double tol = 1e-8);
/// Writes any square matrix in state-file layout (no validation).
std::string serialize_state(const Matrix& m);

/// Reads the "matrix" member of any document (a choi channel file or a bare
/// {"matrix": M} object).
Matrix parse_matrix_document(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

Channel read_channel(const std::filesystem::path& path);
void write_channel(const std::filesystem::path& path, const Channel& channel);

/// Choi matrix of either representation.
ChoiMatrix to_choi(const Channel& channel);
std::size_t channel_d_in(const Channel& channel);

}  // namespace choi::io
