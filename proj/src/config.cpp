// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/config.hpp"

#include <cmath>
#include <set>

#include "xlmimo/errors.hpp"

namespace xlmimo {
namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "experiment", "L",           "d",         "nx",    "ny",     "N_total", "snr_db", "normalize",
    "grid",       "epsilon_clear", "output_path", "theta_deg", "alpha", "metric",  "reshape"};

double number(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(key, "must be finite");
  return x;
}

double positive(const json& doc, const std::string& key) {
  const double x = number(doc, key);
  if (!(x > 0.0)) throw ConfigError(key, "must be positive");
  return x;
}

int count(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < 1 || x > 1'000'000) throw ConfigError(key, "must be in [1, 1000000]");
  return static_cast<int>(x);
}

std::string text(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

Experiment parse_experiment(const std::string& s) {
  if (s == "rotation") return Experiment::rotation;
  if (s == "shape") return Experiment::shape;
  if (s == "single") return Experiment::single;
  throw ConfigError("experiment", "expected rotation, shape or single, got '" + s + "'");
}

Metric parse_metric(const std::string& s) {
  if (s == "capacity_waterfill") return Metric::capacity_waterfill;
  if (s == "capacity_equal") return Metric::capacity_equal;
  if (s == "edof") return Metric::edof;
  throw ConfigError("metric", "expected capacity_waterfill, capacity_equal or edof, got '" + s + "'");
}

ReshapeMode parse_reshape(const std::string& s) {
  if (s == "both") return ReshapeMode::both;
  if (s == "tx") return ReshapeMode::tx_only;
  throw ConfigError("reshape", "expected both or tx, got '" + s + "'");
}

std::vector<double> parse_grid(const json& doc, Experiment experiment) {
  const json& v = doc.at("grid");
  if (!v.is_array()) throw ConfigError("grid", "expected an array of numbers");
  if (v.empty()) throw ConfigError("grid", "must not be empty");
  std::vector<double> grid;
  grid.reserve(v.size());
  for (const json& item : v) {
    if (!item.is_number()) throw ConfigError("grid", "expected an array of numbers");
    const double x = item.get<double>();
    if (!std::isfinite(x)) throw ConfigError("grid", "values must be finite");
    if (experiment == Experiment::rotation && !(x >= 0.0 && x <= 90.0)) {
      throw ConfigError("grid", "rotation angles must lie in [0, 90]");
    }
    if (experiment == Experiment::shape && !(x > 0.0 && x <= 1.0)) {
      throw ConfigError("grid", "shape ratios must lie in (0, 1]");
    }
    if (!grid.empty() && !(x > grid.back())) {
      throw ConfigError("grid", "values must be strictly increasing");
    }
    grid.push_back(x);
  }
  return grid;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::rotation: return "rotation";
    case Experiment::shape: return "shape";
    case Experiment::single: return "single";
  }
  return "?";
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::capacity_waterfill: return "capacity_waterfill";
    case Metric::capacity_equal: return "capacity_equal";
    case Metric::edof: return "edof";
  }
  return "?";
}

std::string to_string(ReshapeMode m) { return m == ReshapeMode::both ? "both" : "tx"; }

std::vector<double> default_rotation_grid() {
  std::vector<double> grid;
  for (int deg = 0; deg <= 90; ++deg) grid.push_back(deg);
  return grid;
}

std::vector<double> divisor_ratio_grid(int n_total) {
  std::vector<double> grid;
  for (int nx = 1; nx * nx <= n_total; ++nx) {
    if (n_total % nx == 0) grid.push_back(static_cast<double>(nx) / (n_total / nx));
  }
  return grid;
}

ExperimentConfig parse_config(std::string_view text_doc) {
  json doc;
  try {
    doc = json::parse(text_doc);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  return config_from_json(doc);
}

ExperimentConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw ConfigError(key, "unknown key");
  }

  // Values present are checked before required keys, so a bad value is
  // reported even in an incomplete document.
  ExperimentConfig c;
  if (doc.contains("L")) c.aperture = positive(doc, "L");
  if (doc.contains("d")) c.distance = positive(doc, "d");
  for (const char* key : {"experiment", "L", "d"}) {
    if (!doc.contains(key)) throw ConfigError(key, "missing required key");
  }
  c.experiment = parse_experiment(text(doc, "experiment"));
  const bool has_nx = doc.contains("nx");
  const bool has_ny = doc.contains("ny");
  if (has_nx) c.nx = count(doc, "nx");
  if (has_ny) c.ny = count(doc, "ny");
  if (doc.contains("N_total")) {
    const int n = count(doc, "N_total");
    c.n_total = n;
    if (c.experiment == Experiment::rotation) {
      // Rotation arrays are square grids.
      const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
      if (side * side != n) throw ConfigError("N_total", "rotation arrays need a square count");
      if ((has_nx && c.nx != side) || (has_ny && c.ny != side)) {
        throw ConfigError("N_total", "conflicts with nx * ny");
      }
      c.nx = side;
      c.ny = side;
    }
  }
  if (c.experiment == Experiment::shape && !c.n_total) c.n_total = c.nx * c.ny;

  if (doc.contains("snr_db")) c.snr_db = number(doc, "snr_db");
  if (doc.contains("normalize")) {
    if (!doc.at("normalize").is_boolean()) throw ConfigError("normalize", "expected a boolean");
    c.normalize = doc.at("normalize").get<bool>();
  }
  if (doc.contains("epsilon_clear")) {
    c.epsilon_clear = number(doc, "epsilon_clear");
    if (c.epsilon_clear < 0.0) throw ConfigError("epsilon_clear", "must be nonnegative");
  }
  if (doc.contains("output_path")) {
    c.output_path = text(doc, "output_path");
    if (c.output_path.empty()) throw ConfigError("output_path", "must not be empty");
  }
  if (doc.contains("theta_deg")) {
    c.theta_deg = number(doc, "theta_deg");
    if (!(c.theta_deg >= 0.0 && c.theta_deg <= 90.0)) {
      throw ConfigError("theta_deg", "must lie in [0, 90]");
    }
  }
  if (doc.contains("alpha")) {
    c.alpha = number(doc, "alpha");
    if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw ConfigError("alpha", "must lie in (0, 1]");
  }
  if (doc.contains("reshape")) c.reshape = parse_reshape(text(doc, "reshape"));

  c.metric = c.experiment == Experiment::shape ? Metric::edof : Metric::capacity_waterfill;
  if (doc.contains("metric")) c.metric = parse_metric(text(doc, "metric"));
  if (c.experiment == Experiment::shape && c.metric != Metric::edof) {
    throw ConfigError("metric", "shape experiments optimize edof");
  }

  switch (c.experiment) {
    case Experiment::rotation:
      c.grid = doc.contains("grid") ? parse_grid(doc, c.experiment) : default_rotation_grid();
      break;
    case Experiment::shape:
      c.grid = doc.contains("grid") ? parse_grid(doc, c.experiment)
                                    : divisor_ratio_grid(*c.n_total);
      break;
    case Experiment::single:
      if (doc.contains("grid")) throw ConfigError("grid", "single experiments take no grid");
      break;
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json doc = {
      {"experiment", to_string(c.experiment)},
      {"L", c.aperture},
      {"d", c.distance},
      {"nx", c.nx},
      {"ny", c.ny},
      {"snr_db", c.snr_db},
      {"normalize", c.normalize},
      {"epsilon_clear", c.epsilon_clear},
      {"output_path", c.output_path},
      {"theta_deg", c.theta_deg},
      {"alpha", c.alpha},
      {"metric", to_string(c.metric)},
      {"reshape", to_string(c.reshape)},
  };
  if (c.n_total) doc["N_total"] = *c.n_total;
  if (c.experiment != Experiment::single) doc["grid"] = c.grid;
  return doc;
}

}  // namespace xlmimo
