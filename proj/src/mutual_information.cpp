#include "chaoskit/mutual_information.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chaoskit/error.hpp"

namespace chaoskit {

namespace {

constexpr double kNegativeTolerance = 1e-12;

// Sorting the terms first makes the sum independent of cell traversal order,
// so a histogram and its transpose give bit-identical results.
double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (const double t : terms) sum += t;
  return sum;
}

double entropy_bits(const std::vector<std::size_t>& counts, std::size_t total) {
  std::vector<double> terms;
  const double n = static_cast<double>(total);
  for (const std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    terms.push_back(-p * std::log2(p));
  }
  return sorted_sum(terms);
}

}  // namespace

JointHistogram::JointHistogram(std::size_t bins, double x_min, double x_max)
    : bins_(bins), x_min_(x_min), x_max_(x_max), counts_(bins * bins, 0) {
  if (bins < 2) throw Error(ErrorKind::kInvalidArgument, "histogram needs at least 2 bins");
  if (!(x_max > x_min)) {
    throw Error(ErrorKind::kDegenerateSeries, "zero range: binning undefined for constant series");
  }
}

void JointHistogram::add(std::size_t h, std::size_t k) {
  ++counts_[h * bins_ + k];
  ++total_;
}

std::vector<std::size_t> JointHistogram::row_marginal() const {
  std::vector<std::size_t> m(bins_, 0);
  for (std::size_t h = 0; h < bins_; ++h)
    for (std::size_t k = 0; k < bins_; ++k) m[h] += count(h, k);
  return m;
}

std::vector<std::size_t> JointHistogram::column_marginal() const {
  std::vector<std::size_t> m(bins_, 0);
  for (std::size_t h = 0; h < bins_; ++h)
    for (std::size_t k = 0; k < bins_; ++k) m[k] += count(h, k);
  return m;
}

JointHistogram JointHistogram::transposed() const {
  JointHistogram t(bins_, x_min_, x_max_);
  for (std::size_t h = 0; h < bins_; ++h)
    for (std::size_t k = 0; k < bins_; ++k) t.counts_[k * bins_ + h] = count(h, k);
  t.total_ = total_;
  return t;
}

std::size_t bin_index(double x, double lo, double hi, std::size_t bins) {
  const double scaled = (x - lo) / (hi - lo) * static_cast<double>(bins);
  if (!(scaled > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(scaled), bins - 1);
}

JointHistogram joint_histogram(const TimeSeries& series, std::size_t lag, std::size_t bins) {
  const std::size_t n = series.size();
  if (lag < 1 || lag + 2 > n) {
    throw Error(ErrorKind::kInvalidArgument, "lag " + std::to_string(lag) +
                                                 " outside [1, N-2] for N = " + std::to_string(n));
  }
  const SeriesStats s = stats(series);
  JointHistogram hist(bins, s.x_min, s.x_max);

  std::vector<std::size_t> idx(n);
  for (std::size_t t = 0; t < n; ++t) idx[t] = bin_index(series[t], s.x_min, s.x_max, bins);
  for (std::size_t t = 0; t + lag < n; ++t) hist.add(idx[t], idx[t + lag]);
  return hist;
}

double mutual_information(const JointHistogram& hist) {
  const auto rows = hist.row_marginal();
  const auto cols = hist.column_marginal();
  const double n = static_cast<double>(hist.total());
  std::vector<double> terms;
  for (std::size_t h = 0; h < hist.bins(); ++h) {
    for (std::size_t k = 0; k < hist.bins(); ++k) {
      const std::size_t c = hist.count(h, k);
      if (c == 0) continue;
      const double cd = static_cast<double>(c);
      // c * n / (r_h * c_k) == P_hk / (P_h P_k); the product in the
      // denominator commutes, which keeps the term transpose-symmetric.
      const double ratio =
          (cd * n) / (static_cast<double>(rows[h]) * static_cast<double>(cols[k]));
      terms.push_back(cd / n * std::log2(ratio));
    }
  }
  double mi = sorted_sum(terms);
  if (mi < 0.0 && mi > -kNegativeTolerance) mi = 0.0;
  return mi;
}

double mutual_information(const TimeSeries& series, std::size_t lag, std::size_t bins) {
  return mutual_information(joint_histogram(series, lag, bins));
}

double row_entropy(const JointHistogram& hist) {
  return entropy_bits(hist.row_marginal(), hist.total());
}

double column_entropy(const JointHistogram& hist) {
  return entropy_bits(hist.column_marginal(), hist.total());
}

std::size_t default_max_lag(std::size_t series_length) {
  const std::size_t upper = series_length >= 3 ? series_length - 2 : 1;
  return std::clamp<std::size_t>(std::min<std::size_t>(series_length / 10, 100), 1, upper);
}

MICurve ami_curve(const TimeSeries& series, std::size_t max_lag, std::size_t bins) {
  if (max_lag < 1 || max_lag + 2 > series.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "max lag " + std::to_string(max_lag) + " outside [1, N-2] for N = " +
                    std::to_string(series.size()));
  }
  MICurve curve;
  curve.entries.reserve(max_lag);
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    curve.entries.push_back({lag, mutual_information(series, lag, bins)});
  }
  return curve;
}

DelaySelection first_local_minimum(const MICurve& curve) {
  const auto& e = curve.entries;
  if (e.size() < 3) {
    throw Error(ErrorKind::kInvalidArgument, "need at least 3 curve entries to find a minimum");
  }
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    if (e[i - 1].bits > e[i].bits && e[i].bits <= e[i + 1].bits) return {e[i].lag, true};
  }
  const auto best = std::min_element(e.begin(), e.end(), [](const MiPoint& a, const MiPoint& b) {
    return a.bits < b.bits;
  });
  return {best->lag, false};
}

}  // namespace chaoskit
