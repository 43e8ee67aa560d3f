// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "xlmimo/channel.hpp"
#include "xlmimo/errors.hpp"

namespace xlmimo {
namespace {

namespace fs = std::filesystem;

class IoError : public Error {
 public:
  using Error::Error;
};

Experiment expected_experiment(Command command) {
  switch (command) {
    case Command::rotation_sweep: return Experiment::rotation;
    case Command::shape_sweep: return Experiment::shape;
    case Command::evaluate: return Experiment::single;
  }
  return Experiment::single;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os << contents;
  os.close();
  if (!os) throw IoError("failed writing " + path.string());
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

ArrayGeometry single_array(const ShapeRealization& s, const Point3& center, double theta) {
  return build_upa(s.side_a, s.side_b, s.nx, s.ny, center, theta);
}

int run_sweep(Command command, const ExperimentConfig& config, const RunOptions& options,
              std::ostream& out, std::ostream& err) {
  const SweepSpec spec = sweep_spec_from(config);
  const SweepOptions sweep_options{options.threads};
  const SweepResult result = command == Command::rotation_sweep
                                 ? rotation_sweep(spec, sweep_options)
                                 : shape_sweep(spec, sweep_options);

  std::ostringstream csv;
  if (command == Command::rotation_sweep) {
    write_rotation_csv(csv, result);
  } else {
    write_shape_csv(csv, result);
  }
  const fs::path dir = prepare_dir(resolve_output_dir(config, options));
  const std::string stem = output_stem(command);
  write_file(dir / (stem + ".csv"), csv.str());
  write_file(dir / (stem + "_summary.json"), sweep_summary(result).dump(2) + "\n");

  if (result.all_infeasible()) {
    err << "every grid point is infeasible; wrote " << (dir / (stem + ".csv")).string() << '\n';
    return kExitAllInfeasible;
  }
  out << "argmax " << to_string(spec.parameter) << '=' << format_number(result.argmax->value)
      << ' ' << to_string(spec.metric) << '=' << format_number(result.argmax->metric) << '\n';
  return kExitOk;
}

int run_evaluate(const ExperimentConfig& config, const RunOptions& options, std::ostream& out,
                 std::ostream& err) {
  const EvaluationResult result = evaluate_single(config);
  const fs::path dir = prepare_dir(resolve_output_dir(config, options));
  const std::string stem = output_stem(Command::evaluate);

  std::ostringstream csv;
  write_evaluate_csv(csv, result);
  write_file(dir / (stem + ".csv"), csv.str());
  write_file(dir / (stem + "_summary.json"), evaluation_summary(result).dump(2) + "\n");

  if (!result.feasible) {
    err << "configuration is infeasible: " << result.infeasibility_reason.value_or("") << '\n';
    return kExitAllInfeasible;
  }
  if (options.dump_matrix) {
    const ShapeRealization& s = result.shape;
    const LinkGeometry link(single_array(s, Point3{}, 0.0),
                            single_array(s, Point3{0.0, config.distance, 0.0}, config.theta_deg));
    std::ostringstream dump;
    write_matrix_dump(dump, build_los_channel(link, config.epsilon_clear));
    write_file(*options.dump_matrix, dump.str());
  }
  const MetricReport& m = *result.metrics;
  out << "result edof=" << format_number(m.edof)
      << " capacity_waterfill=" << format_number(m.capacity_waterfill)
      << " capacity_equal=" << format_number(m.capacity_equal) << '\n';
  return kExitOk;
}

}  // namespace

std::string resolve_output_dir(const ExperimentConfig& config, const RunOptions& options) {
  if (options.out_dir) return *options.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return config.output_path;
}

std::string output_stem(Command command) {
  switch (command) {
    case Command::rotation_sweep: return "rotation_sweep";
    case Command::shape_sweep: return "shape_sweep";
    case Command::evaluate: return "evaluate";
  }
  return "result";
}

EvaluationResult evaluate_single(const ExperimentConfig& config) {
  EvaluationResult r;
  r.config = config;
  if (config.n_total) {
    r.shape = realize_shape(config.alpha, *config.n_total, config.aperture);
  } else {
    r.shape.alpha_requested = config.alpha;
    r.shape.nx = config.nx;
    r.shape.ny = config.ny;
    r.shape.side_a = config.aperture * std::sqrt(config.alpha);
    r.shape.side_b = config.aperture / std::sqrt(config.alpha);
    r.shape.alpha_realized = static_cast<double>(config.nx) / config.ny;
  }

  if (!rotation_clearance(r.shape.side_a, config.theta_deg, config.distance,
                          config.epsilon_clear)) {
    r.infeasibility_reason =
        kPlaneClearanceReason;
    return r;
  }
  const LinkGeometry link(single_array(r.shape, Point3{}, 0.0),
                          single_array(r.shape, Point3{0.0, config.distance, 0.0},
                                       config.theta_deg));
  if (min_cross_distance(link) <= config.epsilon_clear) {
    r.infeasibility_reason = kPairClearanceReason;
    return r;
  }
  const ChannelMatrix h = build_los_channel(link, config.epsilon_clear);
  r.metrics = evaluate(h, snr_db_to_power(config.snr_db), 1.0, config.normalize);
  r.feasible = true;
  return r;
}

int run(Command command, const ExperimentConfig& config, const RunOptions& options,
        std::ostream& out, std::ostream& err) {
  try {
    if (config.experiment != expected_experiment(command)) {
      throw ConfigError("experiment", "'" + to_string(config.experiment) +
                                          "' does not match this command (expected '" +
                                          to_string(expected_experiment(command)) + "')");
    }
    if (command == Command::evaluate) return run_evaluate(config, options, out, err);
    return run_sweep(command, config, options, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  }
}

int run_file(Command command, const std::string& config_path, const RunOptions& options,
             std::ostream& out, std::ostream& err) {
  std::ifstream is(config_path, std::ios::binary);
  if (!is) {
    err << "error: cannot read config " << config_path << '\n';
    return kExitIoError;
  }
  std::ostringstream text;
  text << is.rdbuf();
  ExperimentConfig config;
  try {
    config = parse_config(text.str());
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return run(command, config, options, out, err);
}

}  // namespace xlmimo
