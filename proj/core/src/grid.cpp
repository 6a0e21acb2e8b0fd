#include "cheesemap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cheesemap {

IndexRange hull(const IndexRange& a, const IndexRange& b) {
  return {{std::min(a.lo.i, b.lo.i), std::min(a.lo.j, b.lo.j),
           std::min(a.lo.k, b.lo.k)},
          {std::max(a.hi.i, b.hi.i), std::max(a.hi.j, b.hi.j),
           std::max(a.hi.k, b.hi.k)}};
}

namespace {

std::uint64_t axis_dim(double lo, double hi, double cell) {
  if (!(cell > 0.0)) {
    throw InvalidArgumentError("cell size must be strictly positive");
  }
  const double n = std::floor((hi - lo) / cell) + 1.0;
  if (n >= 9.3e18) {  // close to 2^63, reject before the cast loses meaning
    throw CapacityError("grid axis exceeds the index type capacity");
  }
  return static_cast<std::uint64_t>(n);
}

std::uint64_t axis_index(double coord, double origin, double cell,
                         std::uint64_t n) {
  const double idx = std::floor((coord - origin) / cell);
  if (idx < 0.0) {
    return 0;
  }
  const auto u = static_cast<std::uint64_t>(idx);
  return std::min(u, n - 1);
}

}  // namespace

GridParams grid_dims(const Aabb& box, const CellSize& cell, GridMode mode) {
  GridParams g;
  g.origin = box.min;
  g.cell = cell;
  g.mode = mode;
  g.bounds = box;
  g.nx = axis_dim(box.min.x, box.max.x, cell.x);
  g.ny = axis_dim(box.min.y, box.max.y, cell.y);
  g.nz = mode == GridMode::ThreeD ? axis_dim(box.min.z, box.max.z, cell.z) : 1;

  // nx*ny*nz must fit in 63 bits
  const std::uint64_t limit = std::uint64_t{1} << 63;
  if (g.ny != 0 && g.nx > limit / g.ny) {
    throw CapacityError("voxel count overflows the index type");
  }
  const std::uint64_t nxy = g.nx * g.ny;
  if (g.nz != 0 && nxy > limit / g.nz) {
    throw CapacityError("voxel count overflows the index type");
  }
  return g;
}

VoxelCoord GridParams::voxel_of(const Point3& p) const {
  if (!bounds.contains(p)) {
    throw OutOfDomainError("point lies outside the grid bounding box");
  }
  VoxelCoord v;
  v.i = axis_index(p.x, origin.x, cell.x, nx);
  v.j = axis_index(p.y, origin.y, cell.y, ny);
  v.k = mode == GridMode::ThreeD ? axis_index(p.z, origin.z, cell.z, nz) : 0;
  return v;
}

Aabb GridParams::voxel_bounds(const VoxelCoord& v) const {
  Aabb b;
  b.min.x = origin.x + static_cast<double>(v.i) * cell.x;
  b.max.x = origin.x + static_cast<double>(v.i + 1) * cell.x;
  b.min.y = origin.y + static_cast<double>(v.j) * cell.y;
  b.max.y = origin.y + static_cast<double>(v.j + 1) * cell.y;
  if (mode == GridMode::ThreeD) {
    b.min.z = origin.z + static_cast<double>(v.k) * cell.z;
    b.max.z = origin.z + static_cast<double>(v.k + 1) * cell.z;
  } else {
    b.min.z = bounds.min.z;
    b.max.z = bounds.max.z;
  }
  return b;
}

std::optional<IndexRange> GridParams::clamped_range(
    const Aabb& query_box) const {
  if (!query_box.intersects(bounds)) {
    return std::nullopt;
  }
  IndexRange r;
  r.lo.i = axis_index(std::max(query_box.min.x, bounds.min.x), origin.x,
                      cell.x, nx);
  r.hi.i = axis_index(std::min(query_box.max.x, bounds.max.x), origin.x,
                      cell.x, nx);
  r.lo.j = axis_index(std::max(query_box.min.y, bounds.min.y), origin.y,
                      cell.y, ny);
  r.hi.j = axis_index(std::min(query_box.max.y, bounds.max.y), origin.y,
                      cell.y, ny);
  if (mode == GridMode::ThreeD) {
    r.lo.k = axis_index(std::max(query_box.min.z, bounds.min.z), origin.z,
                        cell.z, nz);
    r.hi.k = axis_index(std::min(query_box.max.z, bounds.max.z), origin.z,
                        cell.z, nz);
  } else {
    r.lo.k = 0;
    r.hi.k = 0;
  }
  return r;
}

}  // namespace cheesemap
