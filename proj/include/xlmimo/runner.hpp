// SPDX-License-Identifier: Apache-2.0
//
// Experiment execution behind the command-line tool.
//
// Exit codes:
//   0  success
//   2  configuration error (bad document, bad value, command/experiment mismatch)
//   3  every grid point infeasible (results are still written)
//   4  I/O failure or any other unexpected error
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "xlmimo/config.hpp"
#include "xlmimo/output.hpp"

namespace xlmimo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitAllInfeasible = 3;
inline constexpr int kExitIoError = 4;

/// Environment variable overriding the config's output directory.
inline constexpr const char* kOutDirEnv = "XLMIMO_OUT_DIR";

enum class Command { rotation_sweep, shape_sweep, evaluate };

struct RunOptions {
  std::optional<std::string> out_dir;  // wins over the environment and the config
  unsigned threads = 0;
  std::optional<std::string> dump_matrix;  // evaluate only
};

/// Output directory precedence: options.out_dir, then $XLMIMO_OUT_DIR, then config.output_path.
std::string resolve_output_dir(const ExperimentConfig& config, const RunOptions& options);

/// Base file name for a command's outputs, e.g. "rotation_sweep".
std::string output_stem(Command command);

/// Single-configuration evaluation used by the evaluate command.
EvaluationResult evaluate_single(const ExperimentConfig& config);

int run(Command command, const ExperimentConfig& config, const RunOptions& options,
        std::ostream& out, std::ostream& err);

/// Reads and parses the config file, then runs it.
int run_file(Command command, const std::string& config_path, const RunOptions& options,
             std::ostream& out, std::ostream& err);

}  // namespace xlmimo
