#pragma once

#include <cstdint>
#include <optional>

#include "cheesemap/geometry.hpp"

namespace cheesemap {

enum class GridMode { TwoD, ThreeD };

/// Per-axis voxel edge lengths in meters, strictly positive.
struct CellSize {
  double x = 1.0;
  double y = 1.0;
  double z = 1.0;

  static CellSize uniform(double s) { return {s, s, s}; }
};

struct VoxelCoord {
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::uint64_t k = 0;

  friend bool operator==(const VoxelCoord&, const VoxelCoord&) = default;
};

/// Inclusive voxel-coordinate range.
struct IndexRange {
  VoxelCoord lo;
  VoxelCoord hi;

  bool contains(const VoxelCoord& v) const {
    return v.i >= lo.i && v.i <= hi.i && v.j >= lo.j && v.j <= hi.j &&
           v.k >= lo.k && v.k <= hi.k;
  }

  std::uint64_t voxel_count() const {
    return (hi.i - lo.i + 1) * (hi.j - lo.j + 1) * (hi.k - lo.k + 1);
  }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

IndexRange hull(const IndexRange& a, const IndexRange& b);

/// Grid geometry: origin at the cloud's lower bounding-box corner, voxels
/// half-open [lo, hi) per axis. The exact upper corner of the bounding box
/// maps into the last voxel.
struct GridParams {
  Point3 origin;
  CellSize cell;
  std::uint64_t nx = 1;
  std::uint64_t ny = 1;
  std::uint64_t nz = 1;
  GridMode mode = GridMode::ThreeD;
  Aabb bounds;  // full cloud bounding box (z extent used by 2D voxel bounds)

  std::uint64_t total_voxels() const { return nx * ny * nz; }

  /// Point to voxel coordinate. Throws OutOfDomainError outside the box.
  VoxelCoord voxel_of(const Point3& p) const;

  std::uint64_t global_index(const VoxelCoord& v) const {
    return v.i * (ny * nz) + v.j * nz + v.k;
  }

  /// Inverse of global_index.
  VoxelCoord coord_of(std::uint64_t g) const {
    return {g / (ny * nz), (g / nz) % ny, g % nz};
  }

  Aabb voxel_bounds(const VoxelCoord& v) const;

  /// Voxel range covered by a query box, clamped into the grid. Empty when
  /// the box is disjoint from the grid's bounding box.
  std::optional<IndexRange> clamped_range(const Aabb& query_box) const;
};

/// Grid dimensions for a bounding box: n = floor(extent / cell) + 1 per
/// indexed axis, nz = 1 in 2D mode. Throws CapacityError when the voxel
/// count does not fit the index type.
GridParams grid_dims(const Aabb& box, const CellSize& cell, GridMode mode);

}  // namespace cheesemap
