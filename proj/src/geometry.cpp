// SPDX-License-Identifier: Apache-2.0
#include "xlmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "xlmimo/errors.hpp"

namespace xlmimo {
namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

bool finite(const Point3& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

// Local coordinate of element i along an axis of the given extent.
double grid_coordinate(double extent, int count, int i) {
  if (count == 1) return 0.0;
  return -extent / 2.0 + extent * static_cast<double>(i) / static_cast<double>(count - 1);
}

}  // namespace

Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

double norm(const Point3& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

double distance(const Point3& a, const Point3& b) { return norm(a - b); }

Point3 rotate_about_vertical(const Point3& p, const Point3& pivot, double angle_deg) {
  const double t = deg_to_rad(angle_deg);
  const double c = std::cos(t);
  const double s = std::sin(t);
  const Point3 r = p - pivot;
  return Point3{c * r.x - s * r.y, s * r.x + c * r.y, r.z} + pivot;
}

ArrayGeometry build_upa(double side_a, double side_b, int nx, int ny, const Point3& center,
                        double rotation_deg) {
  if (!(side_a > 0.0) || !(side_b > 0.0) || !std::isfinite(side_a) || !std::isfinite(side_b)) {
    throw InvalidGeometry("array sides must be positive and finite");
  }
  if (nx < 1 || ny < 1) {
    throw InvalidGeometry("element counts must be at least 1");
  }
  if (!finite(center) || !std::isfinite(rotation_deg)) {
    throw InvalidGeometry("array center and rotation must be finite");
  }
  if ((nx > 1 && !(side_a / (nx - 1) > 0.0)) || (ny > 1 && !(side_b / (ny - 1) > 0.0))) {
    throw InvalidGeometry("element spacing underflows");
  }

  ArrayGeometry g;
  g.side_a_ = side_a;
  g.side_b_ = side_b;
  g.nx_ = nx;
  g.ny_ = ny;
  g.center_ = center;
  g.rotation_deg_ = rotation_deg;
  g.elements_.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));

  const double t = deg_to_rad(rotation_deg);
  const double c = std::cos(t);
  const double s = std::sin(t);
  for (int i = 0; i < nx; ++i) {
    const double u = grid_coordinate(side_a, nx, i);
    for (int j = 0; j < ny; ++j) {
      const double w = grid_coordinate(side_b, ny, j);
      // Local point (u, 0, w) rotated about z, then translated.
      g.elements_.push_back(Point3{c * u, s * u, w} + center);
    }
  }
  return g;
}

LinkGeometry::LinkGeometry(ArrayGeometry tx, ArrayGeometry rx)
    : tx_(std::move(tx)), rx_(std::move(rx)), distance_(xlmimo::distance(tx_.center(), rx_.center())) {
  if (!(distance_ > 0.0)) {
    throw InvalidGeometry("transmitter and receiver centers coincide");
  }
}

bool rotation_clearance(double aperture, double theta_deg, double distance, double clearance) {
  if (!(aperture > 0.0) || !std::isfinite(aperture)) {
    throw InvalidArgument("aperture must be positive, got " + std::to_string(aperture));
  }
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw InvalidArgument("distance must be positive, got " + std::to_string(distance));
  }
  if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) {
    throw InvalidArgument("rotation angle must lie in [0, 90] degrees, got " +
                          std::to_string(theta_deg));
  }
  if (!(clearance >= 0.0) || !std::isfinite(clearance)) {
    throw InvalidArgument("clearance margin must be nonnegative");
  }
  return distance >= aperture * std::sin(deg_to_rad(theta_deg)) / 2.0 + clearance;
}

double min_cross_distance(const LinkGeometry& link) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point3& r : link.rx().elements()) {
    for (const Point3& t : link.tx().elements()) {
      best = std::min(best, distance(r, t));
    }
  }
  return best;
}

}  // namespace xlmimo
