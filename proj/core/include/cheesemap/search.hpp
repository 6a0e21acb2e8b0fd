#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cheesemap/map.hpp"

namespace cheesemap {

struct QueryStats {
  std::uint64_t voxels_visited = 0;
  std::uint64_t points_tested = 0;
  std::uint64_t growth_iterations = 0;
  double final_radius = 0.0;
};

struct Neighbor {
  PointHandle handle = 0;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Bounded, distance-sorted buffer of the best candidates seen so far.
/// Insertion keeps the list sorted (binary search + shift); once full, the
/// overflow element is dropped. Equal distances keep insertion order.
class CandidateList {
public:
  explicit CandidateList(std::size_t capacity);

  void insert(PointHandle h, double distance);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool full() const { return items_.size() == capacity_; }
  double max_distance() const { return items_.back().distance; }

  /// Number of stored candidates within distance r (closed boundary).
  std::size_t count_within(double r) const;

  std::span<const Neighbor> items() const { return items_; }
  std::vector<Neighbor> take() { return std::move(items_); }

private:
  std::size_t capacity_;
  std::vector<Neighbor> items_;
};

/// Previously visited inclusive voxel range of a k-NN query; grows
/// monotonically to the hull of all visited ranges.
struct TabooRegion {
  std::optional<IndexRange> range;

  bool covers_grid(const GridParams& g) const {
    return range && range->lo == VoxelCoord{0, 0, 0} &&
           range->hi == VoxelCoord{g.nx - 1, g.ny - 1, g.nz - 1};
  }
};

/// Visit every voxel of `next` that is not in `prev`, each exactly once.
/// `next` must contain `prev` (widen to the hull first).
template <class F>
void for_each_frontier_voxel(const std::optional<IndexRange>& prev,
                             const IndexRange& next, F&& f) {
  for (std::uint64_t i = next.lo.i; i <= next.hi.i; ++i) {
    for (std::uint64_t j = next.lo.j; j <= next.hi.j; ++j) {
      for (std::uint64_t k = next.lo.k; k <= next.hi.k; ++k) {
        const VoxelCoord v{i, j, k};
        if (prev && prev->contains(v)) {
          // skip the already-visited inner box in one stride
          k = prev->hi.k;
          continue;
        }
        f(v);
      }
    }
  }
}

std::vector<VoxelCoord> taboo_frontier(const std::optional<IndexRange>& prev,
                                       const IndexRange& next);

/// Distance from the query center to the nearest wall of its voxel,
/// minimized over the indexed axes.
double initial_radius(const Point3& c, const GridParams& g);

enum class GrowthPolicy { Density, Monotonic };

/// One radius update of the iterative k-NN search. With candidates in the
/// ball, inverts the observed density to estimate the radius expected to
/// hold k points; falls back to a fixed step s when the ball is empty, the
/// density did not change, or the estimate would not grow the radius.
struct GrowthResult {
  double radius = 0.0;
  std::optional<double> density;
};
GrowthResult grow_radius(std::size_t candidates_in_ball, double r,
                         std::size_t k, double s,
                         std::optional<double> prev_density);

/// All points inside the kernel, as handles into the indexed cloud.
template <Kernel K>
std::vector<PointHandle> kernel_search(const Cheesemap& map, const K& kernel,
                                       QueryStats* stats = nullptr) {
  std::vector<PointHandle> result;
  QueryStats st;
  const auto range = map.grid().clamped_range(kernel.box());
  if (range) {
    for (std::uint64_t i = range->lo.i; i <= range->hi.i; ++i) {
      for (std::uint64_t j = range->lo.j; j <= range->hi.j; ++j) {
        for (std::uint64_t k = range->lo.k; k <= range->hi.k; ++k) {
          ++st.voxels_visited;
          map.for_each_in_voxel({i, j, k},
                                [&](PointHandle h, const Point3& p) {
                                  ++st.points_tested;
                                  if (kernel.is_inside(p)) {
                                    result.push_back(h);
                                  }
                                });
        }
      }
    }
  }
  if (stats) *stats = st;
  return result;
}

/// The min(k, N) nearest points to c, sorted by distance. Exact: the search
/// stops only once k candidates lie within the visited region's radius.
std::vector<Neighbor> knn_search(const Cheesemap& map, const Point3& c,
                                 std::size_t k,
                                 GrowthPolicy policy = GrowthPolicy::Density,
                                 QueryStats* stats = nullptr);

}  // namespace cheesemap
