#include "cheesemap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "cheesemap/search.hpp"

namespace cheesemap {

std::uint64_t DensityHistogram::total() const {
  return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

double global_density(const PointCloud& cloud) {
  const Aabb box = aabb_of_points(cloud);
  const double area = (box.max.x - box.min.x) * (box.max.y - box.min.y);
  if (!(area > 0.0)) {
    throw InvalidArgumentError("bounding rectangle has zero area");
  }
  return static_cast<double>(cloud.size()) / area;
}

WeightedDensity weighted_density(const PointCloud& cloud,
                                 std::optional<std::uint64_t> sample_size,
                                 std::uint64_t sample_seed) {
  if (cloud.empty()) {
    throw EmptyCloudError();
  }

  std::vector<PointHandle> sample;
  if (sample_size && *sample_size < cloud.size()) {
    sample.resize(cloud.size());
    std::iota(sample.begin(), sample.end(), 0);
    std::mt19937_64 eng(sample_seed);
    for (std::uint64_t i = 0; i < *sample_size; ++i) {
      const std::uint64_t j = i + eng() % (sample.size() - i);
      std::swap(sample[i], sample[j]);
    }
    sample.resize(*sample_size);
  } else {
    sample.resize(cloud.size());
    std::iota(sample.begin(), sample.end(), 0);
  }

  BuildOptions opts;
  opts.flavor = Flavor::Sparse;
  opts.mode = GridMode::TwoD;
  opts.cell = CellSize::uniform(1.0);
  const Cheesemap map = Cheesemap::build(cloud, opts);

  WeightedDensity wd;
  for (PointHandle h : sample) {
    const Point3& p = cloud[h];
    CylinderKernel kernel;
    kernel.center_x = p.x;
    kernel.center_y = p.y;
    kernel.radius = 1.0;
    std::uint64_t count = 0;
    const auto range = map.grid().clamped_range(kernel.box());
    if (range) {
      for (std::uint64_t i = range->lo.i; i <= range->hi.i; ++i) {
        for (std::uint64_t j = range->lo.j; j <= range->hi.j; ++j) {
          map.for_each_in_voxel({i, j, 0},
                                [&](PointHandle, const Point3& q) {
                                  if (kernel.is_inside(q)) ++count;
                                });
        }
      }
    }
    const double local = static_cast<double>(count) / std::numbers::pi;
    const auto bin =
        std::min<std::uint64_t>(255, static_cast<std::uint64_t>(local));
    ++wd.histogram.bins[bin];
  }

  std::uint64_t weighted_sum = 0;
  for (std::size_t b = 0; b < wd.histogram.bins.size(); ++b) {
    weighted_sum += b * wd.histogram.bins[b];
  }
  wd.value = static_cast<double>(weighted_sum) /
             static_cast<double>(wd.histogram.total());
  return wd;
}

}  // namespace cheesemap
