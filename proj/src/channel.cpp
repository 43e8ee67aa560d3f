// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/channel.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "xlmimo/errors.hpp"

namespace xlmimo {

ModelValidityError::ModelValidityError(std::size_t rx_index, std::size_t tx_index, double distance)
    : Error("element pair (rx " + std::to_string(rx_index) + ", tx " + std::to_string(tx_index) +
            ") at distance " + std::to_string(distance) + " is inside the clearance margin"),
      rx_index_(rx_index),
      tx_index_(tx_index),
      distance_(distance) {}

std::complex<double> free_space_gain(double d) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double phase = -two_pi * d;
  return std::complex<double>(std::cos(phase), std::sin(phase)) / (2.0 * two_pi * d);
}

ChannelMatrix build_los_channel(const LinkGeometry& link, double clearance) {
  const auto& rx = link.rx().elements();
  const auto& tx = link.tx().elements();

  ChannelMatrix h;
  h.entries.resize(static_cast<Eigen::Index>(rx.size()), static_cast<Eigen::Index>(tx.size()));
  for (std::size_t r = 0; r < rx.size(); ++r) {
    for (std::size_t t = 0; t < tx.size(); ++t) {
      const double d = distance(rx[r], tx[t]);
      if (!(d > clearance)) throw ModelValidityError(r, t, d);
      h.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)) = free_space_gain(d);
    }
  }
  h.link = LinkSummary{link.distance(),         link.rx().rotation_deg(), link.tx().side_a(),
                       link.tx().side_b(),      link.rx().side_a(),       link.rx().side_b()};
  return h;
}

double frobenius_scale(const ComplexMatrix& h) {
  const double energy = h.squaredNorm();
  if (h.size() == 0 || !(energy > 0.0)) {
    throw InvalidInput("cannot normalize an empty or all-zero channel");
  }
  if (!std::isfinite(energy)) throw InvalidInput("channel has non-finite entries");
  return std::sqrt(static_cast<double>(h.size()) / energy);
}

ChannelMatrix frobenius_normalize(const ChannelMatrix& h) {
  ChannelMatrix out = h;
  out.entries *= frobenius_scale(h.entries);
  return out;
}

void write_matrix_dump(std::ostream& os, const ChannelMatrix& h) {
  char line[128];
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index t = 0; t < h.cols(); ++t) {
      const auto v = h.entries(r, t);
      std::snprintf(line, sizeof line, "%td,%td,%.17g,%.17g\n", r, t, v.real(), v.imag());
      os << line;
    }
  }
}

}  // namespace xlmimo
