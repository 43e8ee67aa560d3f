// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "test_util.hpp"
#include "xlmimo/runner.hpp"
#include "xlmimo/sweep.hpp"

using namespace xlmimo;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ExperimentConfig rotation_config(double d) {
  ExperimentConfig c;
  c.experiment = Experiment::rotation;
  c.aperture = 10;
  c.distance = d;
  c.nx = 11;
  c.ny = 11;
  c.snr_db = 10;
  c.grid = default_rotation_grid();
  return c;
}

const MetricReport* at(const SweepResult& r, double value) {
  for (const auto& row : r.rows)
    if (row.value == value && row.metrics) return &*row.metrics;
  return nullptr;
}

Check rotation_case(double d, double budget_s, bool check_boundary) {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  for (Metric m : {Metric::capacity_waterfill, Metric::capacity_equal}) {
    ExperimentConfig cfg = rotation_config(d);
    cfg.metric = m;
    const auto r = rotation_sweep(sweep_spec_from(cfg));
    const std::string name = to_string(m);
    c.require(r.rows.size() == 91, name + ": expected 91 rows");
    c.require(r.argmax && r.argmax->value == 0.0,
              name + ": argmax at " + (r.argmax ? fmt("%g", r.argmax->value) : "none"));

    const auto* zero = at(r, 0);
    c.require(zero != nullptr, name + ": theta=0 infeasible");
    for (double other : {30.0, 60.0}) {
      const auto* o = at(r, other);
      if (!o) continue;  // infeasible at this distance
      if (zero) {
        const auto obj = objective_for(m);
        c.require(obj(*zero) > obj(*o), name + ": C(0) not above C(" + fmt("%g", other) + ")");
      }
    }
    if (!check_boundary) {
      c.require(at(r, 30) && at(r, 60), name + ": theta 30/60 should be feasible");
    } else {
      int flagged = 0;
      for (const auto& row : r.rows) {
        const bool violates =
            10.0 * std::sin(row.value * M_PI / 180.0) / 2.0 > d - cfg.epsilon_clear;
        if (violates) {
          ++flagged;
          c.require(!row.feasible, name + ": theta " + fmt("%g", row.value) + " not flagged");
        }
        if (!row.feasible) c.require(!row.metrics, "infeasible row carries metrics");
      }
      c.require(flagged > 0, "no row violates the clearance");
      c.require(!r.rows[53].feasible && r.rows[52].feasible, "boundary not between 52 and 53");
    }
  }
  const double elapsed = seconds_since(t0);
  c.require(elapsed < budget_s, "runtime " + fmt("%.1f", elapsed) + " s");
  if (c.ok) c.detail = "argmax theta=0 under both allocations, " + fmt("%.2f s", elapsed);
  return c;
}

Check shape_case() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  cfg.experiment = Experiment::shape;
  cfg.aperture = 12;
  cfg.distance = 10;
  cfg.n_total = 144;
  cfg.metric = Metric::edof;
  cfg.grid = {1.0 / 9, 1.0 / 4, 4.0 / 9, 9.0 / 16, 16.0 / 25, 1.0};
  const auto r = shape_sweep(sweep_spec_from(cfg));
  c.require(r.argmax && r.argmax->value == 1.0,
            "argmax at " + (r.argmax ? fmt("%g", r.argmax->value) : "none"));
  const auto* square = at(r, 1.0);
  const auto* quarter = at(r, 0.25);
  c.require(square && quarter && square->edof > quarter->edof, "EDoF(1) not above EDoF(1/4)");
  for (const auto& row : r.rows) {
    c.require(row.shape && row.shape->nx * row.shape->ny == 144, "antenna count not conserved");
  }
  const double elapsed = seconds_since(t0);
  c.require(elapsed < 30.0, "runtime " + fmt("%.1f", elapsed) + " s");
  if (c.ok && square && quarter) {
    c.detail = "EDoF(1)=" + fmt("%.4f", square->edof) + " > EDoF(1/4)=" + fmt("%.4f", quarter->edof) +
               ", " + fmt("%.2f s", elapsed);
  }
  return c;
}

Check edof_oracle_case() {
  Check c;
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> size(1, 32);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int rows = size(rng), cols = size(rng);
    const auto h = oracle::random_complex(rng, rows, cols);
    const double got = edof(mode_spectrum(h));
    const double ref = oracle::gram_edof(h);
    worst = std::max(worst, std::abs(got - ref) / ref);
  }
  c.require(worst <= 1e-9, "max relative error " + fmt("%.3g", worst));
  if (c.ok) c.detail = "50 matrices, max relative error " + fmt("%.2g", worst);
  return c;
}

Check waterfill_case() {
  Check c;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> len(1, 32);
  std::uniform_real_distribution<double> expo(-4, 3), power(0.05, 500), noise(0.1, 10);
  for (int trial = 0; trial < 100; ++trial) {
    ModeSpectrum s;
    s.values.resize(static_cast<std::size_t>(len(rng)));
    for (double& v : s.values) v = std::pow(10.0, expo(rng));
    std::sort(s.values.begin(), s.values.end(), std::greater<>());
    const double p = power(rng), n0 = noise(rng);
    const auto a = waterfill(s, p, n0);
    const double mu = *a.water_level;
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double pi = a.powers[i], floor = n0 / s.values[i];
      sum += pi;
      const bool kkt = pi >= 0.0 && (pi == 0.0 ? mu <= floor + 1e-9 : std::abs(pi - (mu - floor)) < 1e-9);
      if (!kkt) c.require(false, "KKT violated in trial " + std::to_string(trial));
    }
    c.require(std::abs(sum - p) <= 1e-12 * p, "power budget violated in trial " + std::to_string(trial));
    const double wf = capacity(s, a), eq = capacity(s, equal_power(s, p, n0));
    c.require(wf >= eq - 1e-12, "equal power beats water-filling in trial " + std::to_string(trial));
  }

  struct Small {
    std::vector<double> gains;
    double p, n0;
  };
  const std::vector<Small> small = {{{4, 1}, 3, 1},        {{1, 0.01}, 1, 1},     {{2, 2}, 2, 1},
                                    {{10, 3, 0.5}, 5, 1},  {{5, 0.2, 0.1}, 2, 0.5}};
  double worst = 0.0;
  for (const auto& sm : small) {
    ModeSpectrum s;
    s.values = sm.gains;
    const double wf = capacity(s, waterfill(s, sm.p, sm.n0));
    const double grid = oracle::simplex_grid_capacity(sm.gains, sm.p, sm.n0, 1e-4);
    worst = std::max(worst, std::abs(wf - grid));
  }
  c.require(worst < 1e-6, "simplex oracle gap " + fmt("%.3g", worst) + " bits");
  if (c.ok) c.detail = "100 spectra KKT-consistent, simplex oracle gap " + fmt("%.2g", worst) + " bits";
  return c;
}

ChannelMatrix channel_10x10(double d, double theta) {
  return build_los_channel(rotated_link(10, 10, 11, 11, d, theta));
}

Check scale_case() {
  Check c;
  const auto h = channel_10x10(30, 0);
  const double base = edof(mode_spectrum(h));
  double worst = 0.0;
  for (double scale : {1e-6, 1e3}) {
    const ComplexMatrix scaled = h.entries * scale;
    worst = std::max(worst, std::abs(edof(mode_spectrum(scaled)) - base) / base);
  }
  c.require(worst <= 1e-12, "relative change " + fmt("%.3g", worst));
  if (c.ok) c.detail = "EDoF=" + fmt("%.6f", base) + ", max relative change " + fmt("%.2g", worst);
  return c;
}

Check far_field_case() {
  Check c;
  const double e = edof(mode_spectrum(channel_10x10(1e4, 0)));
  c.require(e <= 1.01, "EDoF " + fmt("%.6f", e));
  if (c.ok) c.detail = "EDoF=" + fmt("%.6f", e) + " at d=1e4";
  return c;
}

Check reciprocity_case() {
  Check c;
  double worst = 0.0;
  for (auto [d, th] : std::vector<std::pair<double, double>>{{30, 0}, {30, 45}, {4, 40}, {10, 90}}) {
    const auto link = rotated_link(10, 10, 11, 11, d, th);
    const auto h = build_los_channel(link);
    const auto hs = build_los_channel(link.swapped());
    worst = std::max(worst, (hs.entries - h.entries.transpose()).cwiseAbs().maxCoeff() /
                                h.entries.cwiseAbs().maxCoeff());
  }
  c.require(worst <= 1e-14, "transpose mismatch " + fmt("%.3g", worst));

  const std::vector<std::pair<Command, std::string>> runs = {
      {Command::rotation_sweep, R"({"experiment": "rotation", "L": 10, "d": 4})"},
      {Command::shape_sweep, R"({"experiment": "shape", "L": 12, "d": 10, "N_total": 144})"}};
  for (const auto& [cmd, doc] : runs) {
    std::string csv[2];
    for (int k = 0; k < 2; ++k) {
      testutil::TempDir dir("accept");
      testutil::write(dir.path() / "c.json", doc);
      RunOptions opts;
      opts.out_dir = dir.str();
      opts.threads = k == 0 ? 1 : 4;
      std::ostringstream out, err;
      const int code = run_file(cmd, (dir.path() / "c.json").string(), opts, out, err);
      c.require(code == kExitOk, "run exited " + std::to_string(code) + ": " + err.str());
      csv[k] = testutil::slurp(dir.path() / (output_stem(cmd) + ".csv"));
    }
    c.require(!csv[0].empty() && csv[0] == csv[1], output_stem(cmd) + " CSVs differ between runs");
  }
  if (c.ok) c.detail = "transpose identity exact to " + fmt("%.2g", worst) + ", CSVs byte-identical";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"rotation sweep, d=30: capacity peaks at theta=0", [] { return rotation_case(30, 60, false); }},
      {"rotation sweep, d=4: clearance flags, peak at theta=0", [] { return rotation_case(4, 60, true); }},
      {"shape sweep, L=12 d=10 N=144: EDoF peaks at alpha=1", shape_case},
      {"EDoF via singular values equals Gram-trace oracle", edof_oracle_case},
      {"water-filling KKT, optimality and grid oracle", waterfill_case},
      {"EDoF scale invariance", scale_case},
      {"far-field collapse to a single mode", far_field_case},
      {"reciprocity and run determinism", reciprocity_case},
  };

  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Check result;
    try {
      result = fn();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    if (!result.ok) ++failed;
    std::printf("[%s] %d. %s -- %s\n", result.ok ? "PASS" : "FAIL", index, name.c_str(),
                result.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
