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

#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "choi/builtin_channels.hpp"
#include "choi/channel_io.hpp"
#include "choi/channels.hpp"
#include "choi/errors.hpp"
#include "choi/optimize.hpp"

namespace choi::cli {

namespace {

constexpr double kDefaultTol = 1e-9;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* flag(bool b) { return b ? "true" : "false"; }

// Writes to the path, or to `out` when no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    io::write_text(path, text);
  }
}

struct ValidateArgs {
  std::string channel;
  double tol = kDefaultTol;
};

struct ConvertArgs {
  std::string channel;
  std::string to;
  std::string out;
  double tol = kDefaultTol;
};

struct ApplyArgs {
  std::string channel;
  std::string state;
  std::string out;
  double state_tol = 1e-8;
};

struct TensorArgs {
  std::string a;
  std::string b;
  std::string out;
};

struct OptimizeArgs {
  std::string objective;
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  int max_iter = 5000;
  double tol = kDefaultTol;
  double step0 = 1.0;
  std::optional<std::uint64_t> seed;
  bool minimize = false;
  std::string out;
};

struct RandomArgs {
  std::size_t d_in = 0;
  std::size_t d_out = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out) {
  const ChoiMatrix x = io::to_choi(io::read_channel(args.channel));
  const CptpReport r = validate_cptp(x, args.tol);
  out << "cp=" << flag(r.cp) << " tp=" << flag(r.tp) << " min_eigenvalue=" << fmt(r.min_eigenvalue)
      << " tp_defect=" << fmt(r.tp_defect) << "\n";
  return r.cp && r.tp ? kSuccess : kSemanticFailure;
}

int cmd_convert(const ConvertArgs& args, std::ostream& out, std::ostream& err) {
  const io::Channel channel = io::read_channel(args.channel);
  if (args.to == "choi") {
    emit(args.out, io::serialize_channel(io::to_choi(channel)), out);
    return kSuccess;
  }
  if (std::holds_alternative<KrausRepr>(channel)) {
    emit(args.out, io::serialize_channel(channel), out);
    return kSuccess;
  }
  const auto& x = std::get<ChoiMatrix>(channel);
  const EigDecomposition eig = hermitian_eig(x.matrix());
  const double min_eig = eig.eigenvalues.back();
  if (min_eig < -args.tol) {
    err << "convert: Choi matrix is not positive semidefinite\n";
    out << "cp=false min_eigenvalue=" << fmt(min_eig) << "\n";
    return kSemanticFailure;
  }
  // Eigenvalues within the accepted negativity are noise; drop them as rank
  // deficiency rather than rejecting the matrix.
  const double rank_tol = std::max(1e-12 * std::max(eig.eigenvalues.front(), 0.0), -min_eig);
  emit(args.out, io::serialize_channel(choi_to_kraus(x, rank_tol)), out);
  return kSuccess;
}

int cmd_apply(const ApplyArgs& args, std::ostream& out) {
  const io::Channel channel = io::read_channel(args.channel);
  DensityMatrix rho = [&] {
    try {
      return io::parse_state(io::read_text(args.state), args.state_tol);
    } catch (const io::FormatError& e) {
      throw io::FormatError(args.state + ": " + e.what());
    }
  }();
  if (rho.d() != io::channel_d_in(channel)) {
    throw InvalidInput("apply: state dimension " + std::to_string(rho.d()) +
                       " does not match channel input dimension " +
                       std::to_string(io::channel_d_in(channel)));
  }
  const Matrix result = std::visit(
      [&](const auto& c) -> Matrix {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, KrausRepr>) {
          return apply_kraus(c, rho.matrix());
        } else {
          return apply_choi(c, rho.matrix());
        }
      },
      channel);
  emit(args.out, io::serialize_state(result), out);
  return kSuccess;
}

int cmd_tensor(const TensorArgs& args, std::ostream& out) {
  const ChoiMatrix xa = io::to_choi(io::read_channel(args.a));
  const ChoiMatrix xb = io::to_choi(io::read_channel(args.b));
  emit(args.out, io::serialize_channel(product_choi(xa, xb)), out);
  return kSuccess;
}

int cmd_optimize(const OptimizeArgs& args, std::ostream& out) {
  Matrix f = [&] {
    try {
      return io::parse_matrix_document(io::read_text(args.objective));
    } catch (const io::FormatError& e) {
      throw io::FormatError(args.objective + ": " + e.what());
    }
  }();
  const std::size_t side = args.d_in * args.d_out;
  if (f.rows() != side || f.cols() != side) {
    throw InvalidInput("optimize: objective must be " + std::to_string(side) + "x" +
                       std::to_string(side));
  }
  const LinearObjective objective(std::move(f),
                                  args.minimize ? Sense::Minimize : Sense::Maximize);
  OptimizerSettings settings;
  settings.max_iter = args.max_iter;
  settings.tol = args.tol;
  settings.step0 = args.step0;

  const OptReport report =
      args.seed ? optimize_linear(objective, args.d_in, args.d_out,
                                  random_cptp_choi(args.d_in, args.d_out, side, RngSeed{*args.seed}),
                                  settings)
                : optimize_linear(objective, args.d_in, args.d_out, settings);
  char value[64];
  std::snprintf(value, sizeof value, "%.10f", report.objective_value);
  out << "objective=" << value << " iterations=" << report.iterations
      << " converged=" << flag(report.converged)
      << " min_eigenvalue=" << fmt(report.feasibility.min_eigenvalue)
      << " tp_defect=" << fmt(report.feasibility.tp_defect) << "\n";
  if (!args.out.empty()) io::write_channel(args.out, report.x_opt);
  return report.converged ? kSuccess : kSemanticFailure;
}

int cmd_random(const RandomArgs& args, std::ostream& out) {
  emit(args.out,
       io::serialize_channel(random_cptp_choi(args.d_in, args.d_out, args.rank, RngSeed{args.seed})),
       out);
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convert, validate, apply, combine and optimize quantum channels via Choi matrices",
               "choi"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check complete positivity and trace preservation");
  validate_cmd->add_option("channel", validate.channel, "Channel file")->required();
  validate_cmd->add_option("--tol", validate.tol, "Tolerance")->capture_default_str();

  ConvertArgs convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between Kraus and Choi representations");
  convert_cmd->add_option("channel", convert.channel, "Channel file")->required();
  convert_cmd->add_option("--to", convert.to, "Target representation")
      ->required()
      ->check(CLI::IsMember({"kraus", "choi"}));
  convert_cmd->add_option("--out", convert.out, "Output file (default: stdout)");
  convert_cmd->add_option("--tol", convert.tol, "Accepted negativity of the Choi spectrum")
      ->capture_default_str();

  ApplyArgs apply;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a channel to a state");
  apply_cmd->add_option("channel", apply.channel, "Channel file")->required();
  apply_cmd->add_option("state", apply.state, "State file")->required();
  apply_cmd->add_option("--out", apply.out, "Output state file (default: stdout)");
  apply_cmd->add_option("--state-tol", apply.state_tol, "Density-matrix check tolerance")
      ->capture_default_str();

  TensorArgs tensor;
  auto* tensor_cmd = app.add_subcommand("tensor", "Choi matrix of two channels in parallel");
  tensor_cmd->add_option("channel_a", tensor.a, "First channel file")->required();
  tensor_cmd->add_option("channel_b", tensor.b, "Second channel file")->required();
  tensor_cmd->add_option("--out", tensor.out, "Output file (default: stdout)");

  OptimizeArgs optimize;
  auto* optimize_cmd = app.add_subcommand("optimize", "Optimize tr(F X) over CPTP maps");
  optimize_cmd->add_option("--objective", optimize.objective, "File with a \"matrix\" member F")
      ->required();
  optimize_cmd->add_option("--d-in", optimize.d_in, "Input dimension")->required()->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--d-out", optimize.d_out, "Output dimension")->required()->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--max-iter", optimize.max_iter, "Outer iteration cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--tol", optimize.tol, "Feasibility and stopping tolerance")
      ->capture_default_str();
  optimize_cmd->add_option("--step0", optimize.step0, "Initial step size")->capture_default_str();
  optimize_cmd->add_option("--seed", optimize.seed, "Start from a random CPTP map with this seed");
  optimize_cmd->add_flag("--minimize", optimize.minimize, "Minimize instead of maximize");
  optimize_cmd->add_option("--out", optimize.out, "Write the optimal Choi matrix here");

  RandomArgs random;
  auto* random_cmd = app.add_subcommand("random", "Random CPTP channel in Choi form");
  random_cmd->add_option("--d-in", random.d_in, "Input dimension")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--d-out", random.d_out, "Output dimension")->required()->check(CLI::PositiveNumber);
  random_cmd->add_option("--rank", random.rank, "Choi rank")->required();
  random_cmd->add_option("--seed", random.seed, "RNG seed")->required();
  random_cmd->add_option("--out", random.out, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "choi: " << e.what() << "\nrun 'choi --help' for usage\n";
    return kUsageError;
  }

  try {
    if (*validate_cmd) return cmd_validate(validate, out);
    if (*convert_cmd) return cmd_convert(convert, out, err);
    if (*apply_cmd) return cmd_apply(apply, out);
    if (*tensor_cmd) return cmd_tensor(tensor, out);
    if (*optimize_cmd) return cmd_optimize(optimize, out);
    if (*random_cmd) return cmd_random(random, out);
  } catch (const NotCompletelyPositive& e) {
    err << "choi: " << e.what() << "\n";
    return kSemanticFailure;
  } catch (const ConvergenceError& e) {
    err << "choi: " << e.what() << "\n";
    return kSemanticFailure;
  } catch (const std::exception& e) {
    err << "choi: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace choi::cli
