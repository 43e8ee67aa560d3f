// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/output.hpp"

#include <cstdio>
#include <ostream>

#ifndef XLMIMO_VERSION
#define XLMIMO_VERSION "0.0.0"
#endif

namespace xlmimo {
namespace {

using nlohmann::json;

const char* flag(bool b) { return b ? "true" : "false"; }

json metric_value(const SweepRow& row, Metric m) {
  if (!row.metrics) return nullptr;
  return objective_for(m)(*row.metrics);
}

}  // namespace

std::string toolkit_version() { return XLMIMO_VERSION; }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_rotation_csv(std::ostream& os, const SweepResult& result) {
  os << kRotationCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    os << format_number(row.value) << ',' << flag(row.feasible);
    if (row.metrics) {
      os << ',' << format_number(row.metrics->capacity_waterfill) << ','
         << format_number(row.metrics->capacity_equal) << ',' << format_number(row.metrics->edof);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
}

void write_shape_csv(std::ostream& os, const SweepResult& result) {
  os << kShapeCsvHeader << '\n';
  for (const SweepRow& row : result.rows) {
    os << format_number(row.value) << ',';
    if (row.shape) {
      os << format_number(row.shape->alpha_realized) << ',' << row.shape->nx << ','
         << row.shape->ny;
    } else {
      os << ",,";
    }
    os << ',' << flag(row.feasible) << ',';
    if (row.metrics) os << format_number(row.metrics->edof);
    os << '\n';
  }
}

void write_evaluate_csv(std::ostream& os, const EvaluationResult& r) {
  os << kEvaluateCsvHeader << '\n';
  os << format_number(r.config.theta_deg) << ',' << format_number(r.shape.alpha_requested) << ','
     << format_number(r.shape.alpha_realized) << ',' << r.shape.nx << ',' << r.shape.ny << ','
     << flag(r.feasible);
  if (r.metrics) {
    const MetricReport& m = *r.metrics;
    os << ',' << format_number(m.capacity_waterfill) << ',' << format_number(m.capacity_equal)
       << ',' << format_number(m.capacity_waterfill_raw) << ','
       << format_number(m.capacity_equal_raw) << ',' << format_number(m.edof);
  } else {
    os << ",,,,,";
  }
  os << '\n';
}

nlohmann::json sweep_summary(const SweepResult& result) {
  const SweepSpec& spec = result.spec;
  json argmax = nullptr;
  if (result.argmax) {
    argmax = {{"parameter", to_string(spec.parameter)},
              {"value", result.argmax->value},
              {"metric", to_string(spec.metric)},
              {"metric_value", result.argmax->metric}};
  }
  std::size_t feasible = 0;
  json raw = json::array();
  for (const SweepRow& row : result.rows) {
    if (row.feasible) ++feasible;
    json entry = {{"value", row.value},
                  {"feasible", row.feasible},
                  {"metric_value", metric_value(row, spec.metric)}};
    if (row.infeasibility_reason) entry["reason"] = *row.infeasibility_reason;
    if (row.metrics) {
      entry["capacity_wf_raw_bpcu"] = row.metrics->capacity_waterfill_raw;
      entry["capacity_eq_raw_bpcu"] = row.metrics->capacity_equal_raw;
    }
    raw.push_back(std::move(entry));
  }
  return {{"toolkit", "xlmimo"},
          {"version", toolkit_version()},
          {"status", result.all_infeasible() ? "all_infeasible" : "ok"},
          {"argmax", argmax},
          {"sweep",
           {{"parameter", to_string(spec.parameter)},
            {"metric", to_string(spec.metric)},
            {"grid_size", result.rows.size()},
            {"feasible_rows", feasible}}},
          {"rows", raw},
          {"spec", to_json(spec.base)}};
}

nlohmann::json evaluation_summary(const EvaluationResult& r) {
  json metrics = nullptr;
  if (r.metrics) {
    const MetricReport& m = *r.metrics;
    metrics = {{"edof", m.edof},
               {"capacity_wf_bpcu", m.capacity_waterfill},
               {"capacity_eq_bpcu", m.capacity_equal},
               {"capacity_wf_raw_bpcu", m.capacity_waterfill_raw},
               {"capacity_eq_raw_bpcu", m.capacity_equal_raw},
               {"normalized", m.normalized},
               {"modes", m.spectrum.size()}};
  }
  json out = {{"toolkit", "xlmimo"},
              {"version", toolkit_version()},
              {"status", r.feasible ? "ok" : "all_infeasible"},
              {"metrics", metrics},
              {"shape",
               {{"alpha_requested", r.shape.alpha_requested},
                {"alpha_realized", r.shape.alpha_realized},
                {"nx", r.shape.nx},
                {"ny", r.shape.ny},
                {"side_a", r.shape.side_a},
                {"side_b", r.shape.side_b}}},
              {"spec", to_json(r.config)}};
  if (r.infeasibility_reason) out["reason"] = *r.infeasibility_reason;
  return out;
}

}  // namespace xlmimo
