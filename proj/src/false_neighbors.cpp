#include "chaoskit/false_neighbors.hpp"

#include <cmath>

#include "chaoskit/error.hpp"
#include "chaoskit/kdtree.hpp"

namespace chaoskit {

namespace {

bool outside_band(std::size_t i, std::size_t t, std::size_t w) {
  return (i > t ? i - t : t - i) > w;
}

}  // namespace

void FnnParams::validate() const {
  if (!(r_tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "R_tol must be > 0");
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "FNN threshold must lie in [0, 1]");
  }
  if (m_max < 1) throw Error(ErrorKind::kInvalidArgument, "m_max must be >= 1");
}

std::size_t nearest_neighbor(const PointCloud& cloud, std::size_t t, std::size_t w) {
  if (t >= cloud.size()) throw Error(ErrorKind::kInvalidArgument, "query index out of range");
  const KdTree tree(cloud.coords(), cloud.dimension());
  const auto hit = tree.nearest(cloud.point(t), [&](std::size_t i) { return outside_band(i, t, w); });
  if (!hit) {
    throw Error(ErrorKind::kNoAdmissibleNeighbor,
                "no neighbor outside Theiler window " + std::to_string(w) + " of point " +
                    std::to_string(t));
  }
  return hit->index;
}

FnnPoint fnn_fraction(const TimeSeries& series, std::size_t delay, std::size_t dimension,
                      const FnnParams& params) {
  params.validate();
  const std::size_t n = series.size();
  if (delay < 1 || dimension < 1) {
    throw Error(ErrorKind::kInvalidArgument, "delay and dimension must be >= 1");
  }
  if (dimension * delay >= n) {
    throw Error(ErrorKind::kNoTestablePoints,
                "m*T = " + std::to_string(dimension * delay) + " leaves no testable point for N = " +
                    std::to_string(n));
  }
  if (stats(series).range() == 0.0) {
    throw Error(ErrorKind::kDegenerateSeries, "constant series has no neighbor structure");
  }

  const auto x = series.values();
  const std::size_t testable = n - dimension * delay;
  const std::size_t w = params.window_for(delay);
  const std::size_t ahead = dimension * delay;
  const PointCloud cloud = delay_embed_prefix(x, {delay, dimension}, testable);
  const KdTree tree(cloud.coords(), cloud.dimension());

  FnnPoint out;
  out.dimension = dimension;
  for (std::size_t t = 0; t < testable; ++t) {
    const auto hit =
        tree.nearest(cloud.point(t), [&](std::size_t i) { return outside_band(i, t, w); });
    if (!hit) {
      ++out.skipped;
      continue;
    }
    ++out.tested;
    const double gap = std::abs(x[hit->index + ahead] - x[t + ahead]);
    const double dist = std::sqrt(hit->squared_distance);
    const bool is_false = dist == 0.0 ? gap > 0.0 : gap / dist > params.r_tol;
    if (is_false) ++out.false_count;
  }
  if (out.tested == 0) {
    throw Error(ErrorKind::kNoTestablePoints,
                "Theiler window " + std::to_string(w) + " excludes every candidate neighbor");
  }
  out.fraction = static_cast<double>(out.false_count) / static_cast<double>(out.tested);
  return out;
}

DimensionSelection embedding_dimension(const TimeSeries& series, std::size_t delay,
                                       const FnnParams& params) {
  params.validate();
  if (params.m_max * delay >= series.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "m_max*T = " + std::to_string(params.m_max * delay) + " must be < N = " +
                    std::to_string(series.size()));
  }
  DimensionSelection out;
  for (std::size_t m = 1; m <= params.m_max; ++m) {
    const FnnPoint p = fnn_fraction(series, delay, m, params);
    out.curve.entries.push_back(p);
    if (!out.dimension && p.fraction <= params.threshold) out.dimension = m;
  }
  return out;
}

}  // namespace chaoskit
