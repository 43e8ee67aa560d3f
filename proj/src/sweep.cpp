// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <set>
#include <thread>

#include "xlmimo/channel.hpp"
#include "xlmimo/errors.hpp"

namespace xlmimo {
namespace {

void validate_grid(const SweepSpec& spec) {
  if (spec.grid.empty()) throw InvalidArgument("sweep grid is empty");
  std::set<double> seen;
  for (double v : spec.grid) {
    if (!std::isfinite(v)) throw InvalidArgument("sweep grid values must be finite");
    if (!seen.insert(v).second) throw InvalidArgument("sweep grid has duplicate values");
    switch (spec.parameter) {
      case SweepParameter::rotation_deg:
        if (!(v >= -90.0 && v <= 90.0)) throw InvalidArgument("rotation outside [-90, 90]");
        break;
      case SweepParameter::shape_ratio:
        if (!(v > 0.0 && v <= 1.0)) throw InvalidArgument("shape ratio outside (0, 1]");
        break;
      case SweepParameter::distance:
        if (!(v > 0.0)) throw InvalidArgument("distance must be positive");
        break;
    }
  }
}

struct PointGeometry {
  std::optional<LinkGeometry> link;
  std::optional<ShapeRealization> shape;
  std::optional<std::string> reason;
};

PointGeometry rotation_point(const ExperimentConfig& base, double theta, double d) {
  PointGeometry p;
  if (!rotation_clearance(base.aperture, std::abs(theta), d, base.epsilon_clear)) {
    p.reason = kPlaneClearanceReason;
    return p;
  }
  p.link = rotated_link(base.aperture, base.aperture, base.nx, base.ny, d, theta);
  return p;
}

PointGeometry shape_point(const ExperimentConfig& base, double alpha) {
  PointGeometry p;
  const int n = base.total_elements();
  const ShapeRealization s = realize_shape(alpha, n, base.aperture);
  p.shape = s;
  ArrayGeometry tx = build_upa(s.side_a, s.side_b, s.nx, s.ny, Point3{}, 0.0);
  const Point3 rx_center{0.0, base.distance, 0.0};
  if (base.reshape == ReshapeMode::both) {
    p.link.emplace(std::move(tx), build_upa(s.side_a, s.side_b, s.nx, s.ny, rx_center, 0.0));
  } else {
    const ShapeRealization sq = realize_shape(1.0, n, base.aperture);
    p.link.emplace(std::move(tx), build_upa(sq.side_a, sq.side_b, sq.nx, sq.ny, rx_center, 0.0));
  }
  return p;
}

SweepRow evaluate_point(const Objective& objective, const SweepSpec& spec, double value) {
  const ExperimentConfig& base = spec.base;
  PointGeometry geom;
  switch (spec.parameter) {
    case SweepParameter::rotation_deg:
      geom = rotation_point(base, value, base.distance);
      break;
    case SweepParameter::distance:
      geom = rotation_point(base, base.theta_deg, value);
      break;
    case SweepParameter::shape_ratio:
      geom = shape_point(base, value);
      break;
  }

  SweepRow row;
  row.value = value;
  row.shape = geom.shape;
  if (!geom.reason && min_cross_distance(*geom.link) <= base.epsilon_clear) {
    geom.reason = kPairClearanceReason;
  }
  if (geom.reason) {
    row.infeasibility_reason = geom.reason;
    return row;
  }

  const ChannelMatrix h = build_los_channel(*geom.link, base.epsilon_clear);
  row.metrics = evaluate(h, snr_db_to_power(base.snr_db), 1.0, base.normalize);
  row.objective = objective(*row.metrics);
  row.feasible = true;
  return row;
}

}  // namespace

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::rotation_deg: return "rotation_deg";
    case SweepParameter::shape_ratio: return "shape_ratio";
    case SweepParameter::distance: return "distance";
  }
  return "?";
}

ShapeRealization realize_shape(double alpha, int n_total, double aperture) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("shape ratio must lie in (0, 1]");
  if (n_total < 1) throw InvalidArgument("antenna count must be at least 1");
  if (!(aperture > 0.0) || !std::isfinite(aperture)) {
    throw InvalidArgument("aperture must be positive");
  }

  ShapeRealization s;
  s.alpha_requested = alpha;
  const double root = std::sqrt(alpha);
  s.side_a = aperture * root;
  s.side_b = aperture / root;
  double best = std::numeric_limits<double>::infinity();
  for (int nx = 1; nx * nx <= n_total; ++nx) {
    if (n_total % nx != 0) continue;
    const int ny = n_total / nx;
    const double ratio = static_cast<double>(nx) / ny;
    const double gap = std::abs(ratio - alpha);
    if (gap < best) {
      best = gap;
      s.nx = nx;
      s.ny = ny;
      s.alpha_realized = ratio;
    }
  }
  return s;
}

Objective objective_for(Metric metric) {
  switch (metric) {
    case Metric::capacity_waterfill:
      return [](const MetricReport& r) { return r.capacity_waterfill; };
    case Metric::capacity_equal:
      return [](const MetricReport& r) { return r.capacity_equal; };
    case Metric::edof:
      return [](const MetricReport& r) { return r.edof; };
  }
  throw InvalidArgument("unknown metric");
}

LinkGeometry rotated_link(double side_a, double side_b, int nx, int ny, double distance,
                          double theta_deg) {
  return LinkGeometry(build_upa(side_a, side_b, nx, ny, Point3{}, 0.0),
                      build_upa(side_a, side_b, nx, ny, Point3{0.0, distance, 0.0}, theta_deg));
}

SweepResult grid_search(const Objective& objective, const SweepSpec& spec,
                        const SweepOptions& options) {
  validate_grid(spec);

  const std::size_t n = spec.grid.size();
  SweepResult result;
  result.spec = spec;
  result.rows.resize(n);
  std::vector<std::exception_ptr> failures(n);

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = static_cast<unsigned>(std::clamp<std::size_t>(threads, 1, n));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        result.rows[i] = evaluate_point(objective, spec, spec.grid[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  for (const SweepRow& row : result.rows) {
    if (!row.feasible || !row.objective || std::isnan(*row.objective)) continue;
    const double m = *row.objective;
    if (!result.argmax || m > result.argmax->metric ||
        (m == result.argmax->metric && row.value < result.argmax->value)) {
      result.argmax = Argmax{row.value, m};
    }
  }
  return result;
}

SweepResult rotation_sweep(const SweepSpec& spec, const SweepOptions& options) {
  if (spec.parameter != SweepParameter::rotation_deg) {
    throw InvalidArgument("rotation_sweep needs a rotation_deg spec");
  }
  return grid_search(objective_for(spec.metric), spec, options);
}

SweepResult shape_sweep(const SweepSpec& spec, const SweepOptions& options) {
  if (spec.parameter != SweepParameter::shape_ratio) {
    throw InvalidArgument("shape_sweep needs a shape_ratio spec");
  }
  return grid_search(objective_for(spec.metric), spec, options);
}

SweepSpec sweep_spec_from(const ExperimentConfig& config) {
  SweepSpec spec;
  spec.base = config;
  spec.grid = config.grid;
  spec.metric = config.metric;
  switch (config.experiment) {
    case Experiment::rotation:
      spec.parameter = SweepParameter::rotation_deg;
      break;
    case Experiment::shape:
      spec.parameter = SweepParameter::shape_ratio;
      break;
    case Experiment::single:
      throw InvalidArgument("single experiments are not sweeps");
  }
  return spec;
}

}  // namespace xlmimo
