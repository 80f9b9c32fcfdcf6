#ifndef CHAOSKIT_FALSE_NEIGHBORS_HPP
#define CHAOSKIT_FALSE_NEIGHBORS_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "chaoskit/embedding.hpp"
#include "chaoskit/timeseries.hpp"

namespace chaoskit {

struct FnnParams {
  /// Distance-growth ratio above which a neighbor is declared false.
  double r_tol = 10.0;
  /// Temporal exclusion half-width; unset means "use the delay".
  std::optional<std::size_t> theiler_window;
  /// Fraction at or below which a dimension is accepted.
  double threshold = 0.01;
  std::size_t m_max = 20;

  void validate() const;
  std::size_t window_for(std::size_t delay) const { return theiler_window.value_or(delay); }
};

/// Exact nearest neighbor of point t among points i with |i - t| > w.
/// Ties go to the smaller index. Throws kNoAdmissibleNeighbor if the band covers everything.
std::size_t nearest_neighbor(const PointCloud& cloud, std::size_t t, std::size_t w);

struct FnnPoint {
  std::size_t dimension = 0;
  double fraction = 0.0;
  std::size_t false_count = 0;
  std::size_t tested = 0;
  /// Points that had no admissible neighbor outside the Theiler band.
  std::size_t skipped = 0;
};

struct FnnCurve {
  std::vector<FnnPoint> entries;
};

/**
 * @brief Fraction of false nearest neighbors when going from m to m + 1 coordinates.
 *
 * Only windows t with t + m*T < N take part, both as queries and as
 * candidates, so every (m+1)-th coordinate exists. A neighbor at distance 0
 * is false exactly when the appended coordinates differ.
 */
FnnPoint fnn_fraction(const TimeSeries& series, std::size_t delay, std::size_t dimension,
                      const FnnParams& params = {});

struct DimensionSelection {
  /// Smallest m with fraction <= threshold; empty when none up to m_max qualifies.
  std::optional<std::size_t> dimension;
  FnnCurve curve;
};

DimensionSelection embedding_dimension(const TimeSeries& series, std::size_t delay,
                                       const FnnParams& params = {});

}  // namespace chaoskit

#endif  // CHAOSKIT_FALSE_NEIGHBORS_HPP
