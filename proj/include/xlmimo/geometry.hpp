// SPDX-License-Identifier: Apache-2.0
//
// Planar antenna array geometry. All lengths are in carrier wavelengths and
// all angles crossing the public interface are in degrees.
//
// Coordinate convention: an unrotated array lies in the plane y = center.y,
// with its first aperture axis along x and its second along z. Rotation is
// about the vertical (z) axis through the array center. In a link the
// transmitter sits at the origin and the receiver at (0, d, 0).
#pragma once

#include <cstddef>
#include <vector>

namespace xlmimo {

/// Default clearance margin between the two array planes, in wavelengths.
inline constexpr double kDefaultClearance = 0.05;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

Point3 operator+(const Point3& a, const Point3& b);
Point3 operator-(const Point3& a, const Point3& b);
double norm(const Point3& p);
double distance(const Point3& a, const Point3& b);

/// Rotates p about the z axis through pivot.
Point3 rotate_about_vertical(const Point3& p, const Point3& pivot, double angle_deg);

/// Uniform planar array. Elements are stored row-major over (nx, ny): element
/// (i, j) lives at index i * ny + j, i running along the first axis.
class ArrayGeometry {
 public:
  const std::vector<Point3>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  double side_a() const noexcept { return side_a_; }
  double side_b() const noexcept { return side_b_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  const Point3& center() const noexcept { return center_; }
  double rotation_deg() const noexcept { return rotation_deg_; }

 private:
  friend ArrayGeometry build_upa(double, double, int, int, const Point3&, double);

  std::vector<Point3> elements_;
  double side_a_ = 0.0;
  double side_b_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  Point3 center_;
  double rotation_deg_ = 0.0;
};

/// Endpoint-inclusive uniform grid spanning side_a x side_b. An axis with a
/// single element places it on the center line. Throws InvalidGeometry on
/// nonpositive sides or counts or non-finite inputs.
ArrayGeometry build_upa(double side_a, double side_b, int nx, int ny,
                        const Point3& center, double rotation_deg);

/// A transmit/receive array pair. The transmit distance is derived from the
/// two centers.
class LinkGeometry {
 public:
  /// Throws InvalidGeometry when the centers coincide.
  LinkGeometry(ArrayGeometry tx, ArrayGeometry rx);

  const ArrayGeometry& tx() const noexcept { return tx_; }
  const ArrayGeometry& rx() const noexcept { return rx_; }
  double distance() const noexcept { return distance_; }

  LinkGeometry swapped() const { return LinkGeometry(rx_, tx_); }

 private:
  ArrayGeometry tx_;
  ArrayGeometry rx_;
  double distance_;
};

/// True iff d >= L sin(theta) / 2 + clearance, i.e. the rotated receiver
/// plane stays clear of the transmitter plane. Requires L > 0, d > 0,
/// theta in [0, 90] and clearance >= 0; throws InvalidArgument otherwise.
bool rotation_clearance(double aperture, double theta_deg, double distance,
                        double clearance = kDefaultClearance);

/// Minimum distance over all (tx element, rx element) pairs.
double min_cross_distance(const LinkGeometry& link);

}  // namespace xlmimo
