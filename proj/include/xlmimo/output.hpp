// SPDX-License-Identifier: Apache-2.0
//
// Machine-readable result writers. CSV headers are fixed; floats carry 12
// significant digits. Infeasible rows leave metric cells empty.
#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "xlmimo/sweep.hpp"

namespace xlmimo {

inline constexpr const char* kRotationCsvHeader =
    "theta_deg,feasible,capacity_wf_bpcu,capacity_eq_bpcu,edof";
inline constexpr const char* kShapeCsvHeader = "alpha_requested,alpha_realized,nx,ny,feasible,edof";
inline constexpr const char* kEvaluateCsvHeader =
    "theta_deg,alpha_requested,alpha_realized,nx,ny,feasible,capacity_wf_bpcu,capacity_eq_bpcu,"
    "capacity_wf_raw_bpcu,capacity_eq_raw_bpcu,edof";

/// printf("%.12g").
std::string format_number(double v);

void write_rotation_csv(std::ostream& os, const SweepResult& result);
void write_shape_csv(std::ostream& os, const SweepResult& result);

/// Outcome of a single-configuration evaluation.
struct EvaluationResult {
  ExperimentConfig config;
  ShapeRealization shape;
  bool feasible = false;
  std::optional<std::string> infeasibility_reason;
  std::optional<MetricReport> metrics;
};

void write_evaluate_csv(std::ostream& os, const EvaluationResult& result);

/// Summary with argmax, config echo, toolkit version and raw-channel capacities.
nlohmann::json sweep_summary(const SweepResult& result);
nlohmann::json evaluation_summary(const EvaluationResult& result);

std::string toolkit_version();

}  // namespace xlmimo
