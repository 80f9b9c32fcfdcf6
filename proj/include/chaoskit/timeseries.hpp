#ifndef CHAOSKIT_TIMESERIES_HPP
#define CHAOSKIT_TIMESERIES_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace chaoskit {

/**
 * @brief A finite scalar observation record in acquisition order.
 *
 * Construction validates the record: at least two samples, all finite.
 * The object is immutable afterwards and can be shared across estimators.
 */
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values, std::string label = {},
                      std::int64_t sample_index_origin = 0);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  const std::string& label() const noexcept { return label_; }
  std::int64_t sample_index_origin() const noexcept { return origin_; }

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<double> values_;
  std::string label_;
  std::int64_t origin_ = 0;
};

struct SeriesStats {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n = 0;

  double range() const noexcept { return x_max - x_min; }
};

SeriesStats stats(const TimeSeries& series);

enum class MissingPolicy { kDrop, kForwardFill };

/// Column selector: zero-based index or header name.
using ColumnRef = std::variant<std::size_t, std::string>;

struct CsvOptions {
  ColumnRef column = std::size_t{0};
  bool skip_header = false;
  MissingPolicy missing = MissingPolicy::kForwardFill;
  char delimiter = ',';
};

TimeSeries load_csv(const std::filesystem::path& path, const CsvOptions& options = {});
TimeSeries read_csv(std::istream& in, const CsvOptions& options = {},
                    std::string label = {});

/// One value per row, shortest round-trip formatting.
void write_csv(std::ostream& out, const TimeSeries& series);

// Low-level CSV helpers shared by the artifact readers.

/// Splits one record. Handles double-quoted fields and "" escapes.
std::vector<std::string> split_csv_record(const std::string& line, char delimiter = ',');

/// Reads all records, skipping blank lines and lines starting with '#'.
std::vector<std::vector<std::string>> read_csv_records(std::istream& in, char delimiter = ',');

/// Parses a full field as a double. Throws Error(kParse) on garbage.
double parse_double(const std::string& field);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

bool is_missing_marker(const std::string& field);

}  // namespace chaoskit

#endif  // CHAOSKIT_TIMESERIES_HPP
