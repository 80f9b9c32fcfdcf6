#include "chaoskit/entropy_dimension.hpp"

#include <algorithm>
#include <cmath>

#include "chaoskit/error.hpp"

namespace chaoskit {

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(std::span<const ScalingPoint> pts) {
  const double n = static_cast<double>(pts.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : pts) {
    mx += std::log2(1.0 / p.r);
    my += p.bits;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& p : pts) {
    const double dx = std::log2(1.0 / p.r) - mx;
    const double dy = p.bits - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorKind::kInsufficientScalingPoints, "zero variance in log2(1/r)");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (const auto& p : pts) {
      const double e = p.bits - (fit.intercept + fit.slope * std::log2(1.0 / p.r));
      ss_res += e * e;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  // A flat S(r) explains nothing; r^2 stays 0.
  return fit;
}

DimensionEstimate make_estimate(std::span<const ScalingPoint> window) {
  const LineFit fit = fit_line(window);
  DimensionEstimate est;
  est.d_i = fit.slope;
  est.intercept = fit.intercept;
  est.r_squared = fit.r_squared;
  est.fit_range = {window.back().r, window.front().r};
  est.points_used = window.size();
  return est;
}

}  // namespace

BoxHistogram partition_boxes(const PointCloud& cloud, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorKind::kInvalidArgument, "box edge r must be a positive finite number");
  }
  if (cloud.empty()) throw Error(ErrorKind::kInvalidArgument, "cannot partition an empty cloud");

  BoxHistogram hist;
  hist.r = r;
  hist.anchor = cloud.axis_min();
  hist.total = cloud.size();
  const std::size_t dim = cloud.dimension();
  LatticeCell cell(dim);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < dim; ++k) {
      cell[k] = static_cast<std::int64_t>(std::floor((p[k] - hist.anchor[k]) / r));
    }
    ++hist.occupied[cell];
  }
  return hist;
}

double shannon_entropy(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (const std::size_t c : counts) total += c;
  if (total == 0) throw Error(ErrorKind::kInvalidArgument, "entropy of an empty distribution");
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (const std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;  // normalise -0
}

double shannon_entropy(const BoxHistogram& hist) {
  std::vector<std::size_t> counts;
  counts.reserve(hist.occupied.size());
  for (const auto& [cell, c] : hist.occupied) counts.push_back(c);
  return shannon_entropy(counts);
}

EntropyScaling entropy_scaling(const PointCloud& cloud, std::span<const double> r_values) {
  if (r_values.empty()) throw Error(ErrorKind::kInvalidArgument, "r ladder is empty");
  for (std::size_t i = 1; i < r_values.size(); ++i) {
    if (!(r_values[i] < r_values[i - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "r ladder must be strictly decreasing");
    }
  }
  EntropyScaling out;
  out.entries.reserve(r_values.size());
  for (const double r : r_values) out.entries.push_back({r, shannon_entropy(partition_boxes(cloud, r))});
  return out;
}

std::vector<double> r_ladder(double extent, const RLadder& ladder) {
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw Error(ErrorKind::kDegenerateSeries, "r ladder needs a cloud with positive extent");
  }
  if (ladder.count < 1 || !(ladder.max_fraction > ladder.min_fraction) ||
      !(ladder.min_fraction > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "r ladder needs count >= 1 and max > min > 0");
  }
  std::vector<double> rs;
  rs.reserve(ladder.count);
  const double hi = extent * ladder.max_fraction;
  if (ladder.count == 1) return {hi};
  const double ratio = ladder.min_fraction / ladder.max_fraction;
  for (std::size_t i = 0; i < ladder.count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(ladder.count - 1);
    rs.push_back(hi * std::pow(ratio, u));
  }
  return rs;
}

DimensionEstimate information_dimension(const EntropyScaling& scaling,
                                        std::optional<FitRange> fit_range) {
  const auto& e = scaling.entries;
  if (fit_range) {
    std::vector<ScalingPoint> sel;
    for (const auto& p : e) {
      if (p.r >= fit_range->r_lo && p.r <= fit_range->r_hi) sel.push_back(p);
    }
    if (sel.size() < 3) {
      throw Error(ErrorKind::kInsufficientScalingPoints,
                  "fit range holds " + std::to_string(sel.size()) + " entries, need >= 3");
    }
    return make_estimate(sel);
  }

  if (e.size() < 3) {
    throw Error(ErrorKind::kInsufficientScalingPoints,
                "scaling has " + std::to_string(e.size()) + " entries, need >= 3");
  }
  std::vector<DimensionEstimate> candidates;
  double best_r2 = -1.0;
  for (std::size_t first = 0; first + 3 <= e.size(); ++first) {
    for (std::size_t last = first + 3; last <= e.size(); ++last) {
      const std::span<const ScalingPoint> window(e.data() + first, last - first);
      candidates.push_back(make_estimate(window));
      best_r2 = std::max(best_r2, candidates.back().r_squared);
    }
  }
  const DimensionEstimate* chosen = nullptr;
  for (const auto& c : candidates) {
    if (c.r_squared < best_r2) continue;
    if (!chosen || c.points_used > chosen->points_used ||
        (c.points_used == chosen->points_used && c.fit_range.r_lo < chosen->fit_range.r_lo)) {
      chosen = &c;
    }
  }
  return *chosen;
}

}  // namespace chaoskit
