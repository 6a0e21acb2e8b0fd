#include "cheesemap/baseline.hpp"

#include <algorithm>
#include <cmath>

namespace cheesemap {

std::vector<Neighbor> brute_knn(const PointCloud& cloud, const Point3& c,
                                std::size_t k) {
  if (k == 0) {
    throw InvalidArgumentError("k must be at least 1");
  }
  std::vector<Neighbor> all(cloud.size());
  for (PointHandle h = 0; h < cloud.size(); ++h) {
    all[h] = {h, distance(cloud[h], c)};
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.distance != b.distance ? a.distance < b.distance
                                    : a.handle < b.handle;
  });
  if (all.size() > k) {
    all.resize(k);
  }
  return all;
}

KdTree::KdTree(const PointCloud& cloud, std::size_t leaf_capacity)
    : cloud_(&cloud), leaf_capacity_(std::max<std::size_t>(1, leaf_capacity)) {
  if (cloud.empty()) {
    throw EmptyCloudError();
  }
  handles_.resize(cloud.size());
  for (PointHandle h = 0; h < cloud.size(); ++h) {
    handles_[h] = h;
  }
  nodes_.reserve(2 * cloud.size() / leaf_capacity_ + 2);
  build(0, static_cast<std::uint32_t>(cloud.size()));
}

std::uint32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
  const auto node_id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();

  Aabb box{(*cloud_)[handles_[begin]], (*cloud_)[handles_[begin]]};
  for (std::uint32_t i = begin; i < end; ++i) {
    const Point3& p = (*cloud_)[handles_[i]];
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.min.z = std::min(box.min.z, p.z);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
    box.max.z = std::max(box.max.z, p.z);
  }
  nodes_[node_id].box = box;

  if (end - begin <= leaf_capacity_) {
    nodes_[node_id].begin = begin;
    nodes_[node_id].end = end;
    return node_id;
  }

  // split the widest axis at the median
  const double ex = box.max.x - box.min.x;
  const double ey = box.max.y - box.min.y;
  const double ez = box.max.z - box.min.z;
  int axis = 0;
  if (ey >= ex && ey >= ez) {
    axis = 1;
  } else if (ez >= ex && ez >= ey) {
    axis = 2;
  }
  auto coord = [&](PointHandle h) {
    const Point3& p = (*cloud_)[h];
    return axis == 0 ? p.x : axis == 1 ? p.y : p.z;
  };
  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(handles_.begin() + begin, handles_.begin() + mid,
                   handles_.begin() + end,
                   [&](PointHandle a, PointHandle b) {
                     return coord(a) < coord(b);
                   });
  nodes_[node_id].axis = axis;
  nodes_[node_id].split = coord(handles_[mid]);
  const std::uint32_t left = build(begin, mid);
  const std::uint32_t right = build(mid, end);
  nodes_[node_id].left = left;
  nodes_[node_id].right = right;
  return node_id;
}

void KdTree::knn_impl(std::uint32_t node_id, const Point3& c, std::size_t k,
                      std::vector<Neighbor>& best) const {
  const Node& node = nodes_[node_id];

  auto worst = [&] {
    return best.size() < k ? std::numeric_limits<double>::infinity()
                           : best.back().distance;
  };

  // prune against the node box
  const double dx = std::max({node.box.min.x - c.x, 0.0, c.x - node.box.max.x});
  const double dy = std::max({node.box.min.y - c.y, 0.0, c.y - node.box.max.y});
  const double dz = std::max({node.box.min.z - c.z, 0.0, c.z - node.box.max.z});
  if (std::sqrt(dx * dx + dy * dy + dz * dz) > worst()) {
    return;
  }

  if (node.axis < 0) {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const PointHandle h = handles_[i];
      const Neighbor n{h, distance((*cloud_)[h], c)};
      if (n.distance > worst()) {
        continue;
      }
      auto pos = std::upper_bound(best.begin(), best.end(), n,
                                  [](const Neighbor& a, const Neighbor& b) {
                                    return a.distance != b.distance
                                               ? a.distance < b.distance
                                               : a.handle < b.handle;
                                  });
      best.insert(pos, n);
      if (best.size() > k) {
        best.pop_back();
      }
    }
    return;
  }

  const double cc = node.axis == 0 ? c.x : node.axis == 1 ? c.y : c.z;
  const std::uint32_t near = cc <= node.split ? node.left : node.right;
  const std::uint32_t far = near == node.left ? node.right : node.left;
  knn_impl(near, c, k, best);
  knn_impl(far, c, k, best);
}

std::vector<Neighbor> KdTree::knn(const Point3& c, std::size_t k) const {
  if (k == 0) {
    throw InvalidArgumentError("k must be at least 1");
  }
  std::vector<Neighbor> best;
  best.reserve(k + 1);
  knn_impl(0, c, k, best);
  return best;
}

}  // namespace cheesemap
