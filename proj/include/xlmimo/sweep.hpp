// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive, constraint-aware grid search over one geometry parameter.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xlmimo/config.hpp"
#include "xlmimo/geometry.hpp"
#include "xlmimo/metrics.hpp"

namespace xlmimo {

enum class SweepParameter { rotation_deg, shape_ratio, distance };

inline constexpr const char* kPlaneClearanceReason =
    "receiver plane within clearance of transmitter plane (d < L sin(theta)/2 + eps)";
inline constexpr const char* kPairClearanceReason = "element pair closer than the clearance margin";

std::string to_string(SweepParameter p);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::rotation_deg;
  std::vector<double> grid;
  ExperimentConfig base;
  Metric metric = Metric::capacity_waterfill;
};

/// A rectangular aperture of fixed area L^2 and fixed antenna count.
/// alpha_realized is the aspect ratio nx / ny of the element grid actually
/// used, so discretization against alpha_requested stays visible.
struct ShapeRealization {
  double alpha_requested = 1.0;
  int nx = 1;
  int ny = 1;
  double side_a = 0.0;
  double side_b = 0.0;
  double alpha_realized = 1.0;
};

/// side_a = L sqrt(alpha), side_b = L / sqrt(alpha); grid is the divisor pair
/// (nx <= ny) of n_total minimizing |nx/ny - alpha|, the smaller nx on ties.
ShapeRealization realize_shape(double alpha, int n_total, double aperture);

struct SweepRow {
  double value = 0.0;
  bool feasible = false;
  std::optional<std::string> infeasibility_reason;
  std::optional<MetricReport> metrics;
  std::optional<ShapeRealization> shape;  // shape sweeps only
  std::optional<double> objective;
};

struct Argmax {
  double value = 0.0;
  double metric = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<Argmax> argmax;  // empty when every row is infeasible
  SweepSpec spec;

  bool all_infeasible() const { return !argmax.has_value(); }
};

struct SweepOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
};

using Objective = std::function<double(const MetricReport&)>;

Objective objective_for(Metric metric);

/// Identical transmit and receive arrays, the receiver at (0, d, 0) rotated by theta.
LinkGeometry rotated_link(double side_a, double side_b, int nx, int ny, double distance,
                          double theta_deg);

/// Evaluates every grid point independently (possibly in parallel) and
/// assembles rows in grid order. The grid must be nonempty with distinct
/// values in the parameter's domain: rotation in [-90, 90] (clearance uses
/// |theta|), shape ratio in (0, 1], distance > 0. Ties in the argmax go to the
/// smallest parameter value, so the result does not depend on grid order.
SweepResult grid_search(const Objective& objective, const SweepSpec& spec,
                        const SweepOptions& options = {});

SweepResult rotation_sweep(const SweepSpec& spec, const SweepOptions& options = {});
SweepResult shape_sweep(const SweepSpec& spec, const SweepOptions& options = {});

/// Sweep spec for a rotation or shape experiment config.
SweepSpec sweep_spec_from(const ExperimentConfig& config);

}  // namespace xlmimo
