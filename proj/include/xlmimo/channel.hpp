// SPDX-License-Identifier: Apache-2.0
//
// Near-field line-of-sight channel between two planar arrays. Each entry is
// the scalar free-space Green's function exp(-j k d) / (4 pi d) evaluated at
// the exact element-pair distance (spherical wavefront, no far-field
// approximation). Units are wavelength-normalized, so k = 2 pi.
#pragma once

#include <complex>
#include <iosfwd>

#include <Eigen/Dense>

#include "xlmimo/geometry.hpp"

namespace xlmimo {

using ComplexMatrix = Eigen::MatrixXcd;

/// Summary of the link that produced a channel.
struct LinkSummary {
  double distance = 0.0;
  double rotation_deg = 0.0;  // receiver rotation
  double tx_side_a = 0.0;
  double tx_side_b = 0.0;
  double rx_side_a = 0.0;
  double rx_side_b = 0.0;
};

struct ChannelMatrix {
  ComplexMatrix entries;  // (n_rx, n_tx)
  double wavelength = 1.0;
  LinkSummary link;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Green's function gain for one pair at distance d (wavelengths).
std::complex<double> free_space_gain(double d);

/// Builds the (n_rx, n_tx) channel. Throws ModelValidityError identifying the
/// first pair (row-major scan) whose distance is not above the clearance.
ChannelMatrix build_los_channel(const LinkGeometry& link, double clearance = kDefaultClearance);

/// Returns c * H with c > 0 such that ||c H||_F^2 = n_rx * n_tx.
/// Throws InvalidInput for an all-zero or empty matrix.
ChannelMatrix frobenius_normalize(const ChannelMatrix& h);

/// Scale factor c used by frobenius_normalize.
double frobenius_scale(const ComplexMatrix& h);

/// Plain-text dump, one `r,t,re,im` line per entry, row-major, 17 significant digits.
void write_matrix_dump(std::ostream& os, const ChannelMatrix& h);

}  // namespace xlmimo
