#include "chaoskit/kdtree.hpp"

#include <algorithm>
#include <numeric>

#include "chaoskit/error.hpp"

namespace chaoskit {

KdTree::KdTree(std::span<const double> coords, std::size_t dimension, std::size_t leaf_size)
    : coords_(coords),
      dim_(dimension),
      count_(dimension ? coords.size() / dimension : 0),
      leaf_size_(std::max<std::size_t>(leaf_size, 1)) {
  if (dim_ == 0) throw Error(ErrorKind::kInvalidArgument, "k-d tree dimension must be >= 1");
  if (count_ > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::kInvalidArgument, "too many points for k-d tree");
  }
  order_.resize(count_);
  std::iota(order_.begin(), order_.end(), 0u);
  if (count_ > 0) {
    nodes_.reserve(2 * count_ / leaf_size_ + 1);
    build(0, static_cast<std::uint32_t>(count_));
  }
}

std::int32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  if (end - begin <= leaf_size_) return id;

  // Split along the widest axis of this subset's bounding box.
  std::size_t axis = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    double lo = coord(order_[begin], k);
    double hi = lo;
    for (std::uint32_t i = begin + 1; i < end; ++i) {
      const double v = coord(order_[i], k);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > widest) {
      widest = hi - lo;
      axis = k;
    }
  }
  if (widest <= 0.0) return id;  // all points coincide: keep as one leaf

  const std::uint32_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::uint32_t a, std::uint32_t b) { return coord(a, axis) < coord(b, axis); });
  const double split = coord(order_[mid], axis);

  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.left = left;
  node.right = right;
  node.split_axis = static_cast<std::uint32_t>(axis);
  node.split_value = split;
  return id;
}

void KdTree::search(std::int32_t id, std::span<const double> query, const Filter& admissible,
                    std::size_t& best_index, double& best_d2) const {
  const Node& node = nodes_[static_cast<std::size_t>(id)];
  if (node.left < 0) {
    for (std::uint32_t i = node.begin; i < node.end; ++i) {
      const std::size_t p = order_[i];
      if (!admissible(p)) continue;
      const double d2 = squared_distance(query, coords_.subspan(p * dim_, dim_));
      if (d2 < best_d2 || (d2 == best_d2 && p < best_index)) {
        best_d2 = d2;
        best_index = p;
      }
    }
    return;
  }
  // Left holds coordinates <= split, right holds >= split.
  const double diff = query[node.split_axis] - node.split_value;
  const std::int32_t near = diff < 0.0 ? node.left : node.right;
  const std::int32_t far = diff < 0.0 ? node.right : node.left;
  search(near, query, admissible, best_index, best_d2);
  // Equal bound must still be visited: a tie with a smaller index may live there.
  if (diff * diff <= best_d2) search(far, query, admissible, best_index, best_d2);
}

std::optional<Neighbor> KdTree::nearest(std::span<const double> query,
                                        const Filter& admissible) const {
  if (count_ == 0) return std::nullopt;
  std::size_t best_index = std::numeric_limits<std::size_t>::max();
  double best_d2 = std::numeric_limits<double>::infinity();
  search(0, query, admissible, best_index, best_d2);
  if (best_index == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return Neighbor{best_index, best_d2};
}

}  // namespace chaoskit
