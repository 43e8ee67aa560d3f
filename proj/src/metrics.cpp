// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include <Eigen/SVD>

#include "xlmimo/errors.hpp"

namespace xlmimo {
namespace {

void check_power(double total_power, double noise_density) {
  if (!(total_power > 0.0) || !std::isfinite(total_power)) {
    throw InvalidArgument("total power must be positive");
  }
  if (!(noise_density > 0.0) || !std::isfinite(noise_density)) {
    throw InvalidArgument("noise density must be positive");
  }
}

std::size_t positive_modes(const ModeSpectrum& s) {
  return static_cast<std::size_t>(
      std::count_if(s.values.begin(), s.values.end(), [](double v) { return v > 0.0; }));
}

}  // namespace

double ModeSpectrum::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

ModeSpectrum ModeSpectrum::scaled(double c) const {
  ModeSpectrum out = *this;
  const double c2 = c * c;
  for (double& v : out.values) v *= c2;
  return out;
}

ModeSpectrum mode_spectrum(const ComplexMatrix& h) {
  if (h.size() == 0) throw InvalidInput("empty channel matrix");
  if (!h.allFinite()) throw InvalidInput("channel matrix has non-finite entries");

  Eigen::BDCSVD<ComplexMatrix> svd(h);
  const auto& sv = svd.singularValues();

  ModeSpectrum s;
  s.source_shape = {h.rows(), h.cols()};
  s.values.resize(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) s.values[static_cast<std::size_t>(i)] = sv(i) * sv(i);
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

double edof(const ModeSpectrum& spectrum) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : spectrum.values) {
    sum += v;
    sum_sq += v * v;
  }
  if (!(sum_sq > 0.0)) throw UndefinedMetric("EDoF of an all-zero spectrum");
  return sum * sum / sum_sq;
}

PowerAllocation waterfill(const ModeSpectrum& spectrum, double total_power, double noise_density) {
  check_power(total_power, noise_density);
  const std::size_t positive = positive_modes(spectrum);
  if (positive == 0) throw UndefinedMetric("water-filling needs at least one positive mode");

  std::vector<double> sorted = spectrum.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Forward prefix sums of the floors N0 / l_i, strongest mode first. The
  // active set is the largest m whose weakest floor sits strictly below the
  // level (P + prefix[m]) / m.
  std::vector<double> floor(positive);
  std::vector<double> prefix(positive + 1, 0.0);
  for (std::size_t i = 0; i < positive; ++i) {
    floor[i] = noise_density / sorted[i];
    prefix[i + 1] = prefix[i] + floor[i];
  }
  std::size_t active = positive;
  auto level_for = [&](std::size_t m) { return (total_power + prefix[m]) / static_cast<double>(m); };
  double level = level_for(active);
  while (active > 1 && !(level > floor[active - 1])) {
    --active;
    level = level_for(active);
  }
  const double threshold = floor[active - 1];

  PowerAllocation a;
  a.total_power = total_power;
  a.noise_density = noise_density;
  a.water_level = level;
  a.powers.resize(spectrum.size(), 0.0);
  std::vector<std::size_t> filled;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double v = spectrum.values[i];
    if (v <= 0.0) continue;
    const double f = noise_density / v;
    if (f <= threshold) {
      a.powers[i] = std::max(0.0, level - f);
      filled.push_back(i);
    }
  }

  // level - f cancels badly when the floors dwarf the budget; spread the
  // residual over the active modes so the powers sum to P.
  for (int pass = 0; pass < 2; ++pass) {
    const double used = std::accumulate(a.powers.begin(), a.powers.end(), 0.0);
    const double share = (total_power - used) / static_cast<double>(filled.size());
    if (share == 0.0) break;
    for (std::size_t i : filled) a.powers[i] = std::max(0.0, a.powers[i] + share);
    a.water_level = *a.water_level + share;
  }
  return a;
}

PowerAllocation equal_power(const ModeSpectrum& spectrum, double total_power,
                            double noise_density) {
  check_power(total_power, noise_density);
  double strongest = 0.0;
  for (double v : spectrum.values) strongest = std::max(strongest, v);
  if (!(strongest > 0.0)) throw UndefinedMetric("equal power needs at least one positive mode");

  const double cutoff = kNullModeRatio * strongest;
  const auto counted = static_cast<double>(std::count_if(
      spectrum.values.begin(), spectrum.values.end(), [&](double v) { return v >= cutoff; }));

  PowerAllocation a;
  a.total_power = total_power;
  a.noise_density = noise_density;
  a.powers.resize(spectrum.size(), 0.0);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (spectrum.values[i] >= cutoff) a.powers[i] = total_power / counted;
  }
  return a;
}

double capacity(const ModeSpectrum& spectrum, const PowerAllocation& allocation) {
  if (spectrum.size() != allocation.powers.size()) {
    throw InvalidInput("power allocation is not aligned with the spectrum");
  }
  if (!(allocation.noise_density > 0.0)) throw InvalidInput("noise density must be positive");
  double bits = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    bits += std::log1p(allocation.powers[i] * spectrum.values[i] / allocation.noise_density);
  }
  return bits / std::log(2.0);
}

MetricReport evaluate(const ChannelMatrix& h, double total_power, double noise_density,
                      bool normalize) {
  check_power(total_power, noise_density);
  MetricReport r;
  r.normalized = normalize;
  r.spectrum = mode_spectrum(h);
  r.edof = edof(r.spectrum);

  // Singular values of c H are c times those of H, so the normalized
  // spectrum is a rescale rather than a second decomposition.
  r.capacity_spectrum = normalize ? r.spectrum.scaled(frobenius_scale(h.entries)) : r.spectrum;

  r.allocation = waterfill(r.capacity_spectrum, total_power, noise_density);
  r.capacity_waterfill = capacity(r.capacity_spectrum, r.allocation);
  r.capacity_equal =
      capacity(r.capacity_spectrum, equal_power(r.capacity_spectrum, total_power, noise_density));

  if (normalize) {
    r.capacity_waterfill_raw =
        capacity(r.spectrum, waterfill(r.spectrum, total_power, noise_density));
    r.capacity_equal_raw =
        capacity(r.spectrum, equal_power(r.spectrum, total_power, noise_density));
  } else {
    r.capacity_waterfill_raw = r.capacity_waterfill;
    r.capacity_equal_raw = r.capacity_equal;
  }
  return r;
}

double snr_db_to_power(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

}  // namespace xlmimo
