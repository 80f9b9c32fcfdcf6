#ifndef CHAOSKIT_ENTROPY_DIMENSION_HPP
#define CHAOSKIT_ENTROPY_DIMENSION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "chaoskit/embedding.hpp"

namespace chaoskit {

using LatticeCell = std::vector<std::int64_t>;

/**
 * @brief Occupancy of the axis-aligned lattice of edge r anchored at the per-axis minimum.
 *
 * Only occupied cells are stored. Point p lands in cell floor((p_k - anchor_k) / r).
 */
struct BoxHistogram {
  double r = 0.0;
  std::vector<double> anchor;
  std::map<LatticeCell, std::size_t> occupied;
  std::size_t total = 0;
};

BoxHistogram partition_boxes(const PointCloud& cloud, double r);

/// -sum p_i log2 p_i with p_i = count_i / total.
double shannon_entropy(const BoxHistogram& hist);

/// Entropy of an arbitrary list of occupancy counts (zeros ignored).
double shannon_entropy(std::span<const std::size_t> counts);

struct ScalingPoint {
  double r;
  double bits;
};

struct EntropyScaling {
  /// r strictly decreasing.
  std::vector<ScalingPoint> entries;
};

EntropyScaling entropy_scaling(const PointCloud& cloud, std::span<const double> r_values);

struct RLadder {
  std::size_t count = 16;
  double max_fraction = 1.0 / 4.0;
  double min_fraction = 1.0 / 512.0;
};

/// Geometric ladder from extent*max_fraction down to extent*min_fraction.
std::vector<double> r_ladder(double extent, const RLadder& ladder = {});

inline constexpr double kDefaultReferenceFraction = 1.0 / 256.0;

struct FitRange {
  double r_lo;
  double r_hi;
};

struct DimensionEstimate {
  double d_i = 0.0;
  double intercept = 0.0;
  FitRange fit_range{0.0, 0.0};
  double r_squared = 0.0;
  std::size_t points_used = 0;
};

/**
 * @brief Least-squares slope of S (bits) against log2(1/r).
 *
 * With an explicit range, entries with r_lo <= r <= r_hi are fitted. Without
 * one, every window of at least 3 consecutive entries is scored by r^2 and
 * the best score wins; ties go to the widest window, then the smallest r_lo.
 */
DimensionEstimate information_dimension(const EntropyScaling& scaling,
                                        std::optional<FitRange> fit_range = std::nullopt);

}  // namespace chaoskit

#endif  // CHAOSKIT_ENTROPY_DIMENSION_HPP
