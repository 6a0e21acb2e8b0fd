#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cheesemap/grid.hpp"

namespace cheesemap {

enum class Flavor { Dense, Sparse, Mixed };

struct BuildOptions {
  Flavor flavor = Flavor::Dense;
  GridMode mode = GridMode::ThreeD;
  CellSize cell = CellSize::uniform(1.0);
  bool reorder = false;
  /// Fraction of non-empty cells at which a mixed slice densifies.
  double densify_threshold = 0.80;
  /// Dense builds above this voxel count are rejected with a CapacityError.
  std::uint64_t dense_voxel_cap = std::uint64_t{1} << 32;
};

struct SliceOccupancy {
  bool dense = false;
  std::uint64_t cells = 0;
  std::uint64_t non_empty = 0;
};

struct OccupancyStats {
  std::uint64_t total_voxels = 0;
  std::uint64_t non_empty = 0;
  double empty_fraction = 0.0;
  std::vector<SliceOccupancy> slices;  // mixed flavor only
};

/// Analytic byte accounting. handle_bytes is the 8-bytes-per-point floor;
/// structure_bytes uses the fixed per-slot/per-key cost model declared in
/// map.cpp (kDenseSlotBytes etc.), not a heap measurement.
struct MemoryReport {
  std::uint64_t handle_bytes = 0;
  std::uint64_t structure_bytes = 0;
  std::uint64_t total_bytes = 0;
};

/// Voxel-grid point index. Built once over an immutable cloud; thereafter
/// read-only and safe for concurrent queries. The map keeps a reference to
/// the cloud, which must outlive it.
class Cheesemap {
public:
  static Cheesemap build(const PointCloud& cloud, const BuildOptions& opts);

  const GridParams& grid() const { return grid_; }
  Flavor flavor() const { return opts_.flavor; }
  GridMode mode() const { return opts_.mode; }
  bool reordered() const { return opts_.reorder; }
  std::uint64_t size() const { return static_cast<std::uint64_t>(cloud_->size()); }
  const PointCloud& cloud() const { return *cloud_; }

  /// Whether the voxel is materialized. Always true for the dense flavor.
  bool voxel_present(const VoxelCoord& v) const;

  /// Handles of the points stored in a voxel; nullopt when the voxel is not
  /// materialized (sparse flavor / sparse mixed slice).
  std::optional<std::vector<PointHandle>> voxel_lookup(const VoxelCoord& v) const;

  /// Visit (handle, point) for every point of a voxel.
  template <class F>
  void for_each_in_voxel(const VoxelCoord& v, F&& f) const {
    const std::uint64_t g = grid_.global_index(v);
    if (const auto* d = std::get_if<DenseStore>(&store_)) {
      for (std::uint64_t pos = d->offsets[g]; pos < d->offsets[g + 1]; ++pos) {
        emit(d->entries[pos], pos, f);
      }
      return;
    }
    if (const auto* s = std::get_if<SparseStore>(&store_)) {
      auto it = s->table.find(g);
      if (it == s->table.end()) return;
      for (std::uint64_t pos = 0; pos < it->second.size(); ++pos) {
        emit(it->second[pos], pos, f);
      }
      return;
    }
    const auto& slice = std::get<MixedStore>(store_).slices[v.k];
    const std::uint64_t cell = v.i * grid_.ny + v.j;
    const std::vector<PointHandle>* list = nullptr;
    if (slice.dense) {
      list = &slice.cells[cell];
    } else {
      auto it = slice.table.find(cell);
      if (it == slice.table.end()) return;
      list = &it->second;
    }
    for (std::uint64_t pos = 0; pos < list->size(); ++pos) {
      emit((*list)[pos], pos, f);
    }
  }

  OccupancyStats occupancy_stats() const;
  MemoryReport memory_report() const;

  /// Test hook: reassigns one stored point to the wrong voxel so that
  /// verification harnesses can prove they detect corruption.
  void corrupt_for_testing();

private:
  // Slot entries are original point handles when reorder is off, and
  // positions into the permuted arrays when it is on.
  struct DenseStore {
    std::vector<std::uint64_t> offsets;  // total_voxels + 1
    std::vector<std::uint64_t> entries;  // grouped by global index
  };
  struct SparseStore {
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> table;
  };
  struct MixedSlice {
    bool dense = false;
    std::uint64_t non_empty = 0;
    std::vector<std::vector<std::uint64_t>> cells;              // dense form
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> table;  // sparse form
  };
  struct MixedStore {
    std::vector<MixedSlice> slices;
  };

  template <class F>
  void emit(std::uint64_t entry, std::uint64_t /*pos*/, F&& f) const {
    if (opts_.reorder) {
      f(orig_id_[entry], reordered_pts_[entry]);
    } else {
      f(entry, (*cloud_)[entry]);
    }
  }

  const PointCloud* cloud_ = nullptr;
  GridParams grid_;
  BuildOptions opts_;
  std::variant<DenseStore, SparseStore, MixedStore> store_;
  // Populated only when reorder is on: points permuted so that each voxel's
  // points are contiguous, plus the original id of each position.
  std::vector<Point3> reordered_pts_;
  std::vector<PointHandle> orig_id_;
};

/// Structure id used by the CLI and benchmarks, e.g. "dense3-reordered".
std::string structure_name(Flavor flavor, GridMode mode, bool reordered);

}  // namespace cheesemap
