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

#include <stdexcept>
#include <string>

namespace choi {

// Malformed or inconsistent arguments: wrong dimensions, non-Hermitian input
// where Hermitian is required, out-of-range parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative routine hit its iteration cap. Carries the residual it had
// reached at that point.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

// A Choi matrix with an eigenvalue below the negativity tolerance, i.e. the
// map is not completely positive.
class NotCompletelyPositive : public std::domain_error {
 public:
  NotCompletelyPositive(const std::string& what, double min_eigenvalue)
      : std::domain_error(what), min_eigenvalue_(min_eigenvalue) {}

  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

}  // namespace choi
