#include "cheesemap/map.hpp"

#include <algorithm>
#include <numeric>

namespace cheesemap {

namespace {

// Byte-accounting model. Handles cost 8 bytes each (the per-point floor).
// Dense structures are charged for their offset table, sparse tables for a
// fixed per-entry cost (key, list header, node and bucket overhead), mixed
// slices for their chosen form plus a fixed slice header.
constexpr std::uint64_t kHandleBytes = 8;
constexpr std::uint64_t kDenseSlotBytes = 8;       // one offset per slot
constexpr std::uint64_t kSparseEntryBytes = 64;
constexpr std::uint64_t kMixedDenseCellBytes = 24;  // list header per cell
constexpr std::uint64_t kSliceHeaderBytes = 48;

}  // namespace

Cheesemap Cheesemap::build(const PointCloud& cloud, const BuildOptions& opts) {
  if (cloud.empty()) {
    throw EmptyCloudError();
  }
  if (!(opts.densify_threshold > 0.0) || opts.densify_threshold > 1.0) {
    throw InvalidArgumentError("densify threshold must be in (0, 1]");
  }

  Cheesemap map;
  map.cloud_ = &cloud;
  map.opts_ = opts;
  map.grid_ = grid_dims(aabb_of_points(cloud), opts.cell, opts.mode);
  const std::uint64_t total = map.grid_.total_voxels();
  if (opts.flavor == Flavor::Dense && total > opts.dense_voxel_cap) {
    throw CapacityError(
        "dense grid of " + std::to_string(total) +
        " voxels exceeds the cap; use the sparse or mixed flavor");
  }

  const std::uint64_t n = cloud.size();
  std::vector<std::uint64_t> gidx(n);
  for (std::uint64_t h = 0; h < n; ++h) {
    gidx[h] = map.grid_.global_index(map.grid_.voxel_of(cloud[h]));
  }

  // Insertion order: original handles, or positions of the permuted arrays.
  std::vector<std::uint64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (opts.reorder) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) {
                       return gidx[a] < gidx[b];
                     });
    map.orig_id_ = order;
    map.reordered_pts_.resize(n);
    std::vector<std::uint64_t> sorted_gidx(n);
    for (std::uint64_t pos = 0; pos < n; ++pos) {
      map.reordered_pts_[pos] = cloud[order[pos]];
      sorted_gidx[pos] = gidx[order[pos]];
    }
    gidx = std::move(sorted_gidx);
    std::iota(order.begin(), order.end(), 0);  // entries are positions now
  }

  switch (opts.flavor) {
    case Flavor::Dense: {
      DenseStore d;
      d.offsets.assign(total + 1, 0);
      for (std::uint64_t g : gidx) {
        ++d.offsets[g + 1];
      }
      std::partial_sum(d.offsets.begin(), d.offsets.end(), d.offsets.begin());
      d.entries.resize(n);
      std::vector<std::uint64_t> cursor(d.offsets.begin(), d.offsets.end() - 1);
      for (std::uint64_t e : order) {
        d.entries[cursor[gidx[e]]++] = e;
      }
      map.store_ = std::move(d);
      break;
    }
    case Flavor::Sparse: {
      SparseStore s;
      for (std::uint64_t e : order) {
        s.table[gidx[e]].push_back(e);
      }
      map.store_ = std::move(s);
      break;
    }
    case Flavor::Mixed: {
      MixedStore m;
      m.slices.resize(map.grid_.nz);
      const std::uint64_t footprint = map.grid_.nx * map.grid_.ny;
      for (std::uint64_t e : order) {
        const VoxelCoord v = map.grid_.coord_of(gidx[e]);
        MixedSlice& slice = m.slices[v.k];
        const std::uint64_t cell = v.i * map.grid_.ny + v.j;
        if (slice.dense) {
          if (slice.cells[cell].empty()) ++slice.non_empty;
          slice.cells[cell].push_back(e);
          continue;
        }
        auto [it, inserted] = slice.table.try_emplace(cell);
        if (inserted) ++slice.non_empty;
        it->second.push_back(e);
        if (static_cast<double>(slice.non_empty) /
                static_cast<double>(footprint) >=
            opts.densify_threshold) {
          slice.dense = true;
          slice.cells.resize(footprint);
          for (auto& [c, list] : slice.table) {
            slice.cells[c] = std::move(list);
          }
          slice.table.clear();
        }
      }
      map.store_ = std::move(m);
      break;
    }
  }
  return map;
}

bool Cheesemap::voxel_present(const VoxelCoord& v) const {
  if (std::holds_alternative<DenseStore>(store_)) {
    return true;
  }
  if (const auto* s = std::get_if<SparseStore>(&store_)) {
    return s->table.contains(grid_.global_index(v));
  }
  const auto& slice = std::get<MixedStore>(store_).slices[v.k];
  if (slice.dense) {
    return true;
  }
  return slice.table.contains(v.i * grid_.ny + v.j);
}

std::optional<std::vector<PointHandle>> Cheesemap::voxel_lookup(
    const VoxelCoord& v) const {
  if (!voxel_present(v)) {
    return std::nullopt;
  }
  std::vector<PointHandle> handles;
  for_each_in_voxel(v, [&](PointHandle h, const Point3&) {
    handles.push_back(h);
  });
  return handles;
}

OccupancyStats Cheesemap::occupancy_stats() const {
  OccupancyStats st;
  st.total_voxels = grid_.total_voxels();
  if (const auto* d = std::get_if<DenseStore>(&store_)) {
    for (std::uint64_t g = 0; g < st.total_voxels; ++g) {
      if (d->offsets[g + 1] > d->offsets[g]) ++st.non_empty;
    }
  } else if (const auto* s = std::get_if<SparseStore>(&store_)) {
    st.non_empty = s->table.size();
  } else {
    const auto& m = std::get<MixedStore>(store_);
    const std::uint64_t footprint = grid_.nx * grid_.ny;
    for (const MixedSlice& slice : m.slices) {
      st.non_empty += slice.non_empty;
      st.slices.push_back({slice.dense, footprint, slice.non_empty});
    }
  }
  st.empty_fraction =
      static_cast<double>(st.total_voxels - st.non_empty) /
      static_cast<double>(st.total_voxels);
  return st;
}

MemoryReport Cheesemap::memory_report() const {
  MemoryReport r;
  r.handle_bytes = kHandleBytes * size();
  if (std::holds_alternative<DenseStore>(store_)) {
    r.structure_bytes = kDenseSlotBytes * (grid_.total_voxels() + 1);
  } else if (const auto* s = std::get_if<SparseStore>(&store_)) {
    r.structure_bytes = kSparseEntryBytes * s->table.size();
  } else {
    const auto& m = std::get<MixedStore>(store_);
    const std::uint64_t footprint = grid_.nx * grid_.ny;
    for (const MixedSlice& slice : m.slices) {
      r.structure_bytes += kSliceHeaderBytes;
      r.structure_bytes += slice.dense
                               ? kMixedDenseCellBytes * footprint
                               : kSparseEntryBytes * slice.non_empty;
    }
  }
  r.total_bytes = r.handle_bytes + r.structure_bytes;
  return r;
}

void Cheesemap::corrupt_for_testing() {
  if (auto* d = std::get_if<DenseStore>(&store_)) {
    std::uint64_t g = 0;
    while (d->offsets[g + 1] == d->offsets[g]) ++g;
    d->entries.erase(d->entries.begin() +
                     static_cast<std::ptrdiff_t>(d->offsets[g]));
    for (std::uint64_t x = g + 1; x < d->offsets.size(); ++x) {
      --d->offsets[x];
    }
    return;
  }
  if (auto* s = std::get_if<SparseStore>(&store_)) {
    s->table.begin()->second.pop_back();
    return;
  }
  auto& m = std::get<MixedStore>(store_);
  for (MixedSlice& slice : m.slices) {
    if (slice.dense) {
      for (auto& list : slice.cells) {
        if (!list.empty()) {
          list.pop_back();
          return;
        }
      }
    } else if (!slice.table.empty()) {
      slice.table.begin()->second.pop_back();
      return;
    }
  }
}

std::string structure_name(Flavor flavor, GridMode mode, bool reordered) {
  std::string name;
  switch (flavor) {
    case Flavor::Dense: name = "dense"; break;
    case Flavor::Sparse: name = "sparse"; break;
    case Flavor::Mixed: name = "mixed"; break;
  }
  name += mode == GridMode::ThreeD ? "3" : "2";
  if (reordered) {
    name += "-reordered";
  }
  return name;
}

}  // namespace cheesemap
