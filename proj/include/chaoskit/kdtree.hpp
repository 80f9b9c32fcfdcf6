#ifndef CHAOSKIT_KDTREE_HPP
#define CHAOSKIT_KDTREE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace chaoskit {

struct Neighbor {
  std::size_t index;
  double squared_distance;
};

/// Squared Euclidean distance, accumulated in coordinate order.
inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    d2 += d * d;
  }
  return d2;
}

/**
 * @brief Static k-d tree for exact single-nearest-neighbor queries.
 *
 * The tree references (does not own) a row-major coordinate buffer. Queries
 * return the admissible point minimizing (squared distance, index)
 * lexicographically, so ties go to the smaller index exactly as a linear scan
 * would resolve them.
 */
class KdTree {
 public:
  using Filter = std::function<bool(std::size_t)>;

  KdTree(std::span<const double> coords, std::size_t dimension, std::size_t leaf_size = 8);

  std::size_t size() const noexcept { return count_; }
  std::size_t dimension() const noexcept { return dim_; }

  /// Nearest point among those with `admissible(i) == true`.
  std::optional<Neighbor> nearest(std::span<const double> query, const Filter& admissible) const;

 private:
  struct Node {
    std::uint32_t begin;
    std::uint32_t end;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::uint32_t split_axis = 0;
    double split_value = 0.0;
  };

  std::int32_t build(std::uint32_t begin, std::uint32_t end);
  void search(std::int32_t node, std::span<const double> query, const Filter& admissible,
              std::size_t& best_index, double& best_d2) const;
  double coord(std::size_t i, std::size_t k) const { return coords_[i * dim_ + k]; }

  std::span<const double> coords_;
  std::size_t dim_;
  std::size_t count_;
  std::size_t leaf_size_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

}  // namespace chaoskit

#endif  // CHAOSKIT_KDTREE_HPP
