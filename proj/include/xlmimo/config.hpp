// SPDX-License-Identifier: Apache-2.0
//
// Declarative experiment configuration: a flat JSON object with a strict
// schema. Unknown keys are rejected.
//
//   key            type     default            used by
//   experiment     string   (required)         rotation | shape | single
//   L              number   (required)         aperture side, wavelengths
//   d              number   (required)         center-to-center distance
//   nx, ny         int      11, 11             rotation, single
//   N_total        int      nx * ny            shape (single: optional)
//   snr_db         number   10                 P / N0 in dB
//   normalize      bool     true               Frobenius-normalize before capacity
//   grid           [number] see below          rotation, shape
//   epsilon_clear  number   0.05               clearance margin, wavelengths
//   output_path    string   "."                output directory
//   theta_deg      number   0                  single
//   alpha          number   1                  single
//   metric         string   per experiment     capacity_waterfill | capacity_equal | edof
//   reshape        string   "both"             shape: both | tx
//
// Default grids: rotation 0..90 step 1; shape every divisor ratio nx/ny <= 1
// of N_total.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace xlmimo {

enum class Experiment { rotation, shape, single };
enum class Metric { capacity_waterfill, capacity_equal, edof };
enum class ReshapeMode { both, tx_only };

struct ExperimentConfig {
  Experiment experiment = Experiment::single;
  double aperture = 0.0;  // L
  double distance = 0.0;  // d
  int nx = 11;
  int ny = 11;
  std::optional<int> n_total;
  double snr_db = 10.0;
  bool normalize = true;
  std::vector<double> grid;
  double epsilon_clear = 0.05;
  std::string output_path = ".";
  double theta_deg = 0.0;
  double alpha = 1.0;
  Metric metric = Metric::capacity_waterfill;
  ReshapeMode reshape = ReshapeMode::both;

  /// Antenna count per array for shape experiments.
  int total_elements() const { return n_total.value_or(nx * ny); }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates a config document, applying defaults. Throws
/// ConfigError naming the offending key.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig config_from_json(const nlohmann::json& doc);

/// Fully-resolved config (defaults included); config_from_json(to_json(c)) == c.
nlohmann::json to_json(const ExperimentConfig& config);

std::string to_string(Experiment e);
std::string to_string(Metric m);
std::string to_string(ReshapeMode m);

std::vector<double> default_rotation_grid();
/// Ascending ratios nx/ny over divisor pairs nx * ny = n_total with nx <= ny.
std::vector<double> divisor_ratio_grid(int n_total);

}  // namespace xlmimo
