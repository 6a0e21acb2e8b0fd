#pragma once

#include <cstddef>
#include <vector>

#include "cheesemap/search.hpp"

namespace cheesemap {

/// Linear-scan membership set. O(N) per query; the reference oracle.
template <Kernel K>
std::vector<PointHandle> brute_radius(const PointCloud& cloud,
                                      const K& kernel) {
  std::vector<PointHandle> result;
  for (PointHandle h = 0; h < cloud.size(); ++h) {
    if (kernel.is_inside(cloud[h])) {
      result.push_back(h);
    }
  }
  return result;
}

/// The min(k, N) smallest distances by full sort, ties broken by handle.
std::vector<Neighbor> brute_knn(const PointCloud& cloud, const Point3& c,
                                std::size_t k);

/// Median-split k-d tree with leaf buckets; a simple baseline, not a
/// contribution. Holds a reference to the cloud, which must outlive it.
class KdTree {
public:
  explicit KdTree(const PointCloud& cloud, std::size_t leaf_capacity = 16);

  template <Kernel K>
  std::vector<PointHandle> radius_search(const K& kernel) const {
    std::vector<PointHandle> result;
    const Aabb box = kernel.box();
    radius_impl(0, box, kernel, result);
    return result;
  }

  std::vector<Neighbor> knn(const Point3& c, std::size_t k) const;

private:
  struct Node {
    Aabb box;
    int axis = -1;          // -1 marks a leaf
    double split = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t begin = 0;  // leaf bucket range in handles_
    std::uint32_t end = 0;
  };

  std::uint32_t build(std::uint32_t begin, std::uint32_t end);

  template <Kernel K>
  void radius_impl(std::uint32_t node_id, const Aabb& kernel_box,
                   const K& kernel, std::vector<PointHandle>& result) const {
    const Node& node = nodes_[node_id];
    if (!node.box.intersects(kernel_box)) {
      return;
    }
    if (node.axis < 0) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const PointHandle h = handles_[i];
        if (kernel.is_inside((*cloud_)[h])) {
          result.push_back(h);
        }
      }
      return;
    }
    radius_impl(node.left, kernel_box, kernel, result);
    radius_impl(node.right, kernel_box, kernel, result);
  }

  void knn_impl(std::uint32_t node_id, const Point3& c, std::size_t k,
                std::vector<Neighbor>& best) const;

  const PointCloud* cloud_;
  std::size_t leaf_capacity_;
  std::vector<PointHandle> handles_;
  std::vector<Node> nodes_;
};

}  // namespace cheesemap
