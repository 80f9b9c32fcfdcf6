#ifndef CHAOSKIT_MUTUAL_INFORMATION_HPP
#define CHAOSKIT_MUTUAL_INFORMATION_HPP

#include <cstddef>
#include <vector>

#include "chaoskit/timeseries.hpp"

namespace chaoskit {

inline constexpr std::size_t kDefaultBins = 16;

/**
 * @brief Equal-width j x j histogram of the pairs (x_t, x_{t+T}).
 *
 * Both axes share the full-series range [x_min, x_max]; the last bin is
 * closed on the right. Row index is the bin of x_t, column the bin of x_{t+T}.
 */
class JointHistogram {
 public:
  JointHistogram(std::size_t bins, double x_min, double x_max);

  std::size_t bins() const noexcept { return bins_; }
  std::size_t total() const noexcept { return total_; }
  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }

  std::size_t count(std::size_t h, std::size_t k) const { return counts_[h * bins_ + k]; }
  void add(std::size_t h, std::size_t k);

  std::vector<std::size_t> row_marginal() const;
  std::vector<std::size_t> column_marginal() const;
  JointHistogram transposed() const;

 private:
  std::size_t bins_;
  double x_min_;
  double x_max_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

/// Equal-width bin of `x` over [lo, hi] with `bins` bins; hi lands in the last bin.
std::size_t bin_index(double x, double lo, double hi, std::size_t bins);

JointHistogram joint_histogram(const TimeSeries& series, std::size_t lag,
                               std::size_t bins = kDefaultBins);

/// Mutual information in bits of a joint histogram (0 log 0 = 0).
double mutual_information(const JointHistogram& hist);
double mutual_information(const TimeSeries& series, std::size_t lag,
                          std::size_t bins = kDefaultBins);

/// Entropy in bits of the x_t (rows) and x_{t+T} (columns) marginals.
double row_entropy(const JointHistogram& hist);
double column_entropy(const JointHistogram& hist);

struct MiPoint {
  std::size_t lag;
  double bits;
};

struct MICurve {
  std::vector<MiPoint> entries;
};

/// min(N/10, 100), but at least 1 and at most N - 2.
std::size_t default_max_lag(std::size_t series_length);

MICurve ami_curve(const TimeSeries& series, std::size_t max_lag,
                  std::size_t bins = kDefaultBins);

/// When `found` is false the curve is monotone over the scanned range and
/// `lag` holds the argmin as a fallback suggestion.
struct DelaySelection {
  std::size_t lag = 0;
  bool found = false;
};

DelaySelection first_local_minimum(const MICurve& curve);

}  // namespace chaoskit

#endif  // CHAOSKIT_MUTUAL_INFORMATION_HPP
