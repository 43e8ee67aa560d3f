// SPDX-License-Identifier: Apache-2.0
//
// Mode spectrum, effective degrees of freedom and Shannon capacity of a
// channel matrix.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "xlmimo/channel.hpp"

namespace xlmimo {

/// Modes below this fraction of the strongest mode count as zero when
/// splitting power equally.
inline constexpr double kNullModeRatio = 1e-14;

/// Squared singular values of H (eigenvalues of H H^H), descending.
struct ModeSpectrum {
  std::vector<double> values;
  std::pair<Eigen::Index, Eigen::Index> source_shape{0, 0};

  std::size_t size() const noexcept { return values.size(); }
  double total() const;
  /// Spectrum of c * H, i.e. every value times c^2.
  ModeSpectrum scaled(double c) const;
};

struct PowerAllocation {
  std::vector<double> powers;  // aligned with ModeSpectrum::values
  double total_power = 0.0;
  double noise_density = 0.0;
  std::optional<double> water_level;  // set by waterfill only
};

struct MetricReport {
  double edof = 0.0;
  double capacity_waterfill = 0.0;  // bits per channel use
  double capacity_equal = 0.0;
  // Capacities of the unnormalized channel, reported alongside so the gain
  // convention stays auditable. Equal to the fields above when normalize=false.
  double capacity_waterfill_raw = 0.0;
  double capacity_equal_raw = 0.0;
  bool normalized = false;
  ModeSpectrum spectrum;           // raw channel
  ModeSpectrum capacity_spectrum;  // channel the headline capacities use
  PowerAllocation allocation;      // water-filling on capacity_spectrum
};

/// Throws InvalidInput for an empty matrix or non-finite entries.
ModeSpectrum mode_spectrum(const ComplexMatrix& h);
inline ModeSpectrum mode_spectrum(const ChannelMatrix& h) { return mode_spectrum(h.entries); }

/// (sum l)^2 / sum l^2. Throws UndefinedMetric when no value is positive.
double edof(const ModeSpectrum& spectrum);

/// Optimal allocation p_i = max(0, mu - N0 / l_i) with sum p_i = P.
/// Throws InvalidArgument for P <= 0 or N0 <= 0, UndefinedMetric when no mode is positive.
PowerAllocation waterfill(const ModeSpectrum& spectrum, double total_power, double noise_density);

/// P / m on each of the m modes at or above kNullModeRatio times the strongest.
PowerAllocation equal_power(const ModeSpectrum& spectrum, double total_power,
                            double noise_density);

/// sum log2(1 + p_i l_i / N0). Throws InvalidInput on misaligned lengths.
double capacity(const ModeSpectrum& spectrum, const PowerAllocation& allocation);

/// Full metric pipeline. EDoF always uses the raw channel; with normalize the
/// headline capacities use the Frobenius-normalized channel.
MetricReport evaluate(const ChannelMatrix& h, double total_power, double noise_density,
                      bool normalize);

/// P / N0 from an SNR in dB with N0 = 1.
double snr_db_to_power(double snr_db);

}  // namespace xlmimo
