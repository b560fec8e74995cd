#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "vec3.hpp"

namespace spheredepth {

// Exact nearest-neighbor index over a fixed set of 3D points. Median-split
// kd-tree; queries prune on the splitting-plane distance, so results match a
// linear scan exactly (ties resolved toward the lower point index).
class KdTree3 {
 public:
  explicit KdTree3(const std::vector<Vec3>& points) : points_(points) {
    index_.resize(points_.size());
    std::iota(index_.begin(), index_.end(), std::int32_t{0});
    nodes_.reserve(points_.size() * 2);
    root_ = build(0, static_cast<std::int64_t>(points_.size()));
  }

  std::int32_t nearest(const Vec3& query) const {
    Best best{-1, 1e300};
    search(root_, query, best);
    return best.index;
  }

 private:
  struct Node {
    int axis = -1;          // -1 marks a leaf
    double split = 0.0;
    std::int32_t left = -1, right = -1;
    std::int64_t begin = 0, end = 0;  // leaf range into index_
  };
  struct Best {
    std::int32_t index;
    double dist2;
  };

  static constexpr std::int64_t kLeafSize = 16;

  double coord(std::int32_t p, int axis) const {
    const Vec3& v = points_[static_cast<std::size_t>(p)];
    return axis == 0 ? v.x : (axis == 1 ? v.y : v.z);
  }

  std::int32_t build(std::int64_t begin, std::int64_t end) {
    Node node;
    if (end - begin <= kLeafSize) {
      node.begin = begin;
      node.end = end;
      nodes_.push_back(node);
      return static_cast<std::int32_t>(nodes_.size() - 1);
    }
    Vec3 lo{1e300, 1e300, 1e300}, hi{-1e300, -1e300, -1e300};
    for (std::int64_t i = begin; i < end; ++i) {
      const Vec3& v = points_[static_cast<std::size_t>(index_[i])];
      lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
      hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    Vec3 extent = hi - lo;
    int axis = 0;
    if (extent.y > extent.x) axis = 1;
    if (extent.z > (axis == 0 ? extent.x : extent.y)) axis = 2;

    std::int64_t mid = (begin + end) / 2;
    std::nth_element(index_.begin() + begin, index_.begin() + mid, index_.begin() + end,
                     [&](std::int32_t a, std::int32_t b) {
                       double ca = coord(a, axis), cb = coord(b, axis);
                       return ca < cb || (ca == cb && a < b);
                     });
    node.axis = axis;
    node.split = coord(index_[mid], axis);
    std::int32_t self = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(node);
    std::int32_t left = build(begin, mid);
    std::int32_t right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
  }

  void search(std::int32_t node_id, const Vec3& q, Best& best) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.axis < 0) {
      for (std::int64_t i = node.begin; i < node.end; ++i) {
        std::int32_t p = index_[i];
        Vec3 d = points_[static_cast<std::size_t>(p)] - q;
        double dist2 = d.dot(d);
        if (dist2 < best.dist2 || (dist2 == best.dist2 && p < best.index)) {
          best = {p, dist2};
        }
      }
      return;
    }
    double qc = node.axis == 0 ? q.x : (node.axis == 1 ? q.y : q.z);
    double diff = qc - node.split;
    std::int32_t near = diff < 0 ? node.left : node.right;
    std::int32_t far = diff < 0 ? node.right : node.left;
    search(near, q, best);
    if (diff * diff <= best.dist2) search(far, q, best);
  }

  const std::vector<Vec3>& points_;
  std::vector<std::int32_t> index_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace spheredepth
