#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <vector>

#include "cheesemap/errors.hpp"

namespace cheesemap {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Stable index of a point inside its owning cloud.
using PointHandle = std::uint64_t;

using PointCloud = std::vector<Point3>;

inline double squared_distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

inline double distance(const Point3& a, const Point3& b) {
  return std::sqrt(squared_distance(a, b));
}

inline double squared_distance_xy(double ax, double ay, double bx, double by) {
  const double dx = ax - bx;
  const double dy = ay - by;
  return dx * dx + dy * dy;
}

/// Axis-aligned box, closed on all faces.
struct Aabb {
  Point3 min;
  Point3 max;

  bool contains(const Point3& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y &&
           p.z >= min.z && p.z <= max.z;
  }

  bool intersects(const Aabb& o) const {
    return min.x <= o.max.x && max.x >= o.min.x && min.y <= o.max.y &&
           max.y >= o.min.y && min.z <= o.max.z && max.z >= o.min.z;
  }

  friend bool operator==(const Aabb&, const Aabb&) = default;
};

/// Per-axis min/max over all points. Throws EmptyCloudError on an empty cloud.
Aabb aabb_of_points(const PointCloud& cloud);

/// A query kernel provides its bounding box and a membership predicate.
/// Membership uses the closed-boundary convention (points on the boundary
/// belong to the kernel).
template <class K>
concept Kernel = requires(const K& k, const Point3& p) {
  { k.box() } -> std::convertible_to<Aabb>;
  { k.is_inside(p) } -> std::convertible_to<bool>;
};

struct SphereKernel {
  Point3 center;
  double radius = 0.0;

  Aabb box() const {
    return {{center.x - radius, center.y - radius, center.z - radius},
            {center.x + radius, center.y + radius, center.z + radius}};
  }

  bool is_inside(const Point3& p) const {
    return squared_distance(p, center) <= radius * radius;
  }
};

struct BoxKernel {
  Aabb aabb;

  Aabb box() const { return aabb; }
  bool is_inside(const Point3& p) const { return aabb.contains(p); }
};

/// Vertical cylinder: a 2D disk in the xy-plane with an optional z range.
/// An unbounded z range uses infinity sentinels; they are clamped to the
/// grid extent when the query range is computed.
struct CylinderKernel {
  double center_x = 0.0;
  double center_y = 0.0;
  double radius = 0.0;
  double z_lo = -std::numeric_limits<double>::infinity();
  double z_hi = std::numeric_limits<double>::infinity();

  Aabb box() const {
    return {{center_x - radius, center_y - radius, z_lo},
            {center_x + radius, center_y + radius, z_hi}};
  }

  bool is_inside(const Point3& p) const {
    return p.z >= z_lo && p.z <= z_hi &&
           squared_distance_xy(p.x, p.y, center_x, center_y) <= radius * radius;
  }
};

static_assert(Kernel<SphereKernel>);
static_assert(Kernel<BoxKernel>);
static_assert(Kernel<CylinderKernel>);

}  // namespace cheesemap
