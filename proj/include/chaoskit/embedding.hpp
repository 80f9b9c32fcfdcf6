#ifndef CHAOSKIT_EMBEDDING_HPP
#define CHAOSKIT_EMBEDDING_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "chaoskit/timeseries.hpp"

namespace chaoskit {

struct EmbeddingParams {
  std::size_t delay = 1;
  std::size_t dimension = 1;

  /// Number of delay vectors obtainable from a series of this length (0 if none).
  std::size_t point_count(std::size_t series_length) const noexcept {
    const std::size_t span = (dimension - 1) * delay;
    return span < series_length ? series_length - span : 0;
  }

  friend bool operator==(const EmbeddingParams&, const EmbeddingParams&) = default;
};

/**
 * @brief A set of points in R^n stored row-major.
 *
 * Clouds built by delay_embed remember the parameters and the source length;
 * clouds read from files or built directly leave them empty.
 */
class PointCloud {
 public:
  PointCloud(std::size_t dimension, std::vector<double> coords,
             std::optional<EmbeddingParams> params = std::nullopt,
             std::size_t source_length = 0);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return dimension_ ? coords_.size() / dimension_ : 0; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dimension_, dimension_};
  }
  std::span<const double> coords() const noexcept { return coords_; }

  const std::optional<EmbeddingParams>& params() const noexcept { return params_; }
  std::size_t source_length() const noexcept { return source_length_; }

  /// Per-axis minimum and maximum.
  std::vector<double> axis_min() const;
  std::vector<double> axis_max() const;
  /// Largest per-axis extent.
  double extent() const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dimension_;
  std::vector<double> coords_;
  std::optional<EmbeddingParams> params_;
  std::size_t source_length_ = 0;
};

/// Point i is (x_i, x_{i+T}, ..., x_{i+(n-1)T}); values are copied untouched.
PointCloud delay_embed(const TimeSeries& series, const EmbeddingParams& params);

/// Same as delay_embed but keeps only the first `max_points` windows.
PointCloud delay_embed_prefix(std::span<const double> values, const EmbeddingParams& params,
                              std::size_t max_points);

/// Selects the given coordinates of every point; repeated axes are allowed.
PointCloud project(const PointCloud& cloud, std::span<const std::size_t> axes);

}  // namespace chaoskit

#endif  // CHAOSKIT_EMBEDDING_HPP
