#include "chaoskit/embedding.hpp"

#include <algorithm>
#include <limits>

#include "chaoskit/error.hpp"

namespace chaoskit {

PointCloud::PointCloud(std::size_t dimension, std::vector<double> coords,
                       std::optional<EmbeddingParams> params, std::size_t source_length)
    : dimension_(dimension),
      coords_(std::move(coords)),
      params_(params),
      source_length_(source_length) {
  if (dimension_ == 0) throw Error(ErrorKind::kInvalidArgument, "point dimension must be >= 1");
  if (coords_.size() % dimension_ != 0) {
    throw Error(ErrorKind::kInvalidArgument, "coordinate count is not a multiple of the dimension");
  }
}

std::vector<double> PointCloud::axis_min() const {
  std::vector<double> lo(dimension_, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t k = 0; k < dimension_; ++k) lo[k] = std::min(lo[k], coords_[i * dimension_ + k]);
  return lo;
}

std::vector<double> PointCloud::axis_max() const {
  std::vector<double> hi(dimension_, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t k = 0; k < dimension_; ++k) hi[k] = std::max(hi[k], coords_[i * dimension_ + k]);
  return hi;
}

double PointCloud::extent() const {
  if (empty()) return 0.0;
  const auto lo = axis_min();
  const auto hi = axis_max();
  double e = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) e = std::max(e, hi[k] - lo[k]);
  return e;
}

PointCloud delay_embed_prefix(std::span<const double> values, const EmbeddingParams& params,
                              std::size_t max_points) {
  if (params.delay < 1 || params.dimension < 1) {
    throw Error(ErrorKind::kInvalidArgument, "delay and dimension must be >= 1");
  }
  const std::size_t available = params.point_count(values.size());
  if (available == 0) {
    throw Error(ErrorKind::kTooShort,
                "empty embedding: (n-1)*T = " +
                    std::to_string((params.dimension - 1) * params.delay) +
                    " >= N = " + std::to_string(values.size()));
  }
  const std::size_t count = std::min(available, max_points);
  std::vector<double> coords;
  coords.reserve(count * params.dimension);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t k = 0; k < params.dimension; ++k) coords.push_back(values[i + k * params.delay]);
  return PointCloud(params.dimension, std::move(coords), params, values.size());
}

PointCloud delay_embed(const TimeSeries& series, const EmbeddingParams& params) {
  return delay_embed_prefix(series.values(), params, series.size());
}

PointCloud project(const PointCloud& cloud, std::span<const std::size_t> axes) {
  if (axes.empty()) throw Error(ErrorKind::kInvalidArgument, "projection needs at least one axis");
  for (const std::size_t a : axes) {
    if (a >= cloud.dimension()) {
      throw Error(ErrorKind::kInvalidArgument, "axis " + std::to_string(a) +
                                                   " out of range for dimension " +
                                                   std::to_string(cloud.dimension()));
    }
  }
  std::vector<double> coords;
  coords.reserve(cloud.size() * axes.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (const std::size_t a : axes) coords.push_back(p[a]);
  }
  return PointCloud(axes.size(), std::move(coords));
}

}  // namespace chaoskit
