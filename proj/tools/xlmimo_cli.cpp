// SPDX-License-Identifier: Apache-2.0
//
// xlmimo rotation-sweep|shape-sweep|evaluate --config <path> [--out <dir>]
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "xlmimo/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Near-field XL-MIMO channel, EDoF and capacity analysis"};
  app.set_version_flag("--version", xlmimo::toolkit_version());
  app.require_subcommand(1);

  std::string config_path;
  xlmimo::RunOptions options;
  std::string out_dir;
  std::string dump_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides $XLMIMO_OUT_DIR and config)");
    sub->add_option("--threads", options.threads, "Worker threads, 0 = all cores");
  };
  auto* rotation = app.add_subcommand("rotation-sweep", "Capacity versus receiver rotation angle");
  auto* shape = app.add_subcommand("shape-sweep", "EDoF versus aperture shape ratio");
  auto* single = app.add_subcommand("evaluate", "Metrics for one configuration");
  add_common(rotation);
  add_common(shape);
  add_common(single);
  single->add_option("--dump-matrix", dump_path, "Write the channel matrix as r,t,re,im lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return xlmimo::kExitConfigError;
  }

  if (!out_dir.empty()) options.out_dir = out_dir;
  if (!dump_path.empty()) options.dump_matrix = dump_path;

  xlmimo::Command command = xlmimo::Command::evaluate;
  if (rotation->parsed()) command = xlmimo::Command::rotation_sweep;
  if (shape->parsed()) command = xlmimo::Command::shape_sweep;
  return xlmimo::run_file(command, config_path, options, std::cout, std::cerr);
}
