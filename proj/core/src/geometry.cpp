#include "cheesemap/geometry.hpp"

#include <algorithm>

namespace cheesemap {

Aabb aabb_of_points(const PointCloud& cloud) {
  if (cloud.empty()) {
    throw EmptyCloudError();
  }
  Aabb box{cloud.front(), cloud.front()};
  for (const Point3& p : cloud) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.min.z = std::min(box.min.z, p.z);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
    box.max.z = std::max(box.max.z, p.z);
  }
  return box;
}

}  // namespace cheesemap
