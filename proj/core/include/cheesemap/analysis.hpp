#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "cheesemap/geometry.hpp"

namespace cheesemap {

/// 256 counting bins indexed by the integer part of a local point density
/// in points/m^2; densities of 256 or more clamp into the last bin.
struct DensityHistogram {
  std::array<std::uint64_t, 256> bins{};

  std::uint64_t total() const;
};

/// Points per square meter of the xy bounding rectangle.
/// Throws InvalidArgumentError when the rectangle has zero area.
double global_density(const PointCloud& cloud);

struct WeightedDensity {
  double value = 0.0;
  DensityHistogram histogram;
};

/// Histogram-weighted mean of per-point local densities, each measured as
/// the neighbor count (self included) in a 1 m circular xy neighborhood
/// divided by pi, floored into an integer bin. Optionally computed over a
/// seeded uniform subsample.
WeightedDensity weighted_density(const PointCloud& cloud,
                                 std::optional<std::uint64_t> sample_size =
                                     std::nullopt,
                                 std::uint64_t sample_seed = 0);

}  // namespace cheesemap
