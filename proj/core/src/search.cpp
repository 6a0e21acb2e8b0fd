#include "cheesemap/search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cheesemap {

CandidateList::CandidateList(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) {
    throw InvalidArgumentError("candidate list capacity must be at least 1");
  }
  items_.reserve(capacity_);
}

void CandidateList::insert(PointHandle h, double distance) {
  if (full() && distance >= max_distance()) {
    return;
  }
  auto pos = std::upper_bound(items_.begin(), items_.end(), distance,
                              [](double d, const Neighbor& n) {
                                return d < n.distance;
                              });
  items_.insert(pos, Neighbor{h, distance});
  if (items_.size() > capacity_) {
    items_.pop_back();
  }
}

std::size_t CandidateList::count_within(double r) const {
  auto pos = std::upper_bound(items_.begin(), items_.end(), r,
                              [](double d, const Neighbor& n) {
                                return d < n.distance;
                              });
  return static_cast<std::size_t>(pos - items_.begin());
}

std::vector<VoxelCoord> taboo_frontier(const std::optional<IndexRange>& prev,
                                       const IndexRange& next) {
  std::vector<VoxelCoord> out;
  for_each_frontier_voxel(prev, next, [&](const VoxelCoord& v) {
    out.push_back(v);
  });
  return out;
}

double initial_radius(const Point3& c, const GridParams& g) {
  const Aabb b = g.voxel_bounds(g.voxel_of(c));
  double r = std::min(std::abs(c.x - b.min.x), std::abs(c.x - b.max.x));
  r = std::min(r, std::min(std::abs(c.y - b.min.y), std::abs(c.y - b.max.y)));
  if (g.mode == GridMode::ThreeD) {
    r = std::min(r,
                 std::min(std::abs(c.z - b.min.z), std::abs(c.z - b.max.z)));
  }
  return r;
}

GrowthResult grow_radius(std::size_t candidates_in_ball, double r,
                         std::size_t k, double s,
                         std::optional<double> prev_density) {
  if (candidates_in_ball == 0 || r <= 0.0) {
    return {r + s, std::nullopt};
  }
  const double volume = (4.0 / 3.0) * std::numbers::pi * r * r * r;
  const double density = static_cast<double>(candidates_in_ball) / volume;
  if (prev_density && density == *prev_density) {
    return {r + s, density};
  }
  const double estimate = std::cbrt(static_cast<double>(k) / density);
  if (estimate <= r) {
    return {r + s, density};
  }
  return {estimate, density};
}

namespace {

double distance_to_box(const Point3& p, const Aabb& b) {
  const double dx = std::max({b.min.x - p.x, 0.0, p.x - b.max.x});
  const double dy = std::max({b.min.y - p.y, 0.0, p.y - b.max.y});
  const double dz = std::max({b.min.z - p.z, 0.0, p.z - b.max.z});
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

std::vector<Neighbor> knn_search(const Cheesemap& map, const Point3& c,
                                 std::size_t k, GrowthPolicy policy,
                                 QueryStats* stats) {
  if (k == 0) {
    throw InvalidArgumentError("k must be at least 1");
  }
  const GridParams& g = map.grid();
  double step = std::max(g.cell.x, g.cell.y);
  if (g.mode == GridMode::ThreeD) {
    step = std::max(step, g.cell.z);
  }

  double r;
  if (g.bounds.contains(c)) {
    r = initial_radius(c, g);
  } else {
    r = distance_to_box(c, g.bounds) + step;
  }

  CandidateList cand(k);
  TabooRegion taboo;
  std::optional<double> prev_density;
  QueryStats st;

  for (;;) {
    const Aabb ball_box{{c.x - r, c.y - r, c.z - r},
                        {c.x + r, c.y + r, c.z + r}};
    auto range = g.clamped_range(ball_box);
    if (range) {
      const IndexRange next =
          taboo.range ? hull(*taboo.range, *range) : *range;
      for_each_frontier_voxel(taboo.range, next, [&](const VoxelCoord& v) {
        ++st.voxels_visited;
        map.for_each_in_voxel(v, [&](PointHandle h, const Point3& p) {
          ++st.points_tested;
          cand.insert(h, distance(p, c));
        });
      });
      taboo.range = next;
    }

    const std::size_t in_ball = cand.count_within(r);
    if (in_ball >= k || taboo.covers_grid(g)) {
      break;
    }

    if (policy == GrowthPolicy::Density) {
      GrowthResult gr = grow_radius(in_ball, r, k, step, prev_density);
      r = gr.radius;
      if (gr.density) prev_density = gr.density;
    } else {
      r += step;
    }
    ++st.growth_iterations;
  }

  st.final_radius = r;
  if (stats) *stats = st;
  return cand.take();
}

}  // namespace cheesemap
