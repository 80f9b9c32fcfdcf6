#include "chaoskit/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "chaoskit/error.hpp"

namespace chaoskit {

TimeSeries::TimeSeries(std::vector<double> values, std::string label,
                       std::int64_t sample_index_origin)
    : values_(std::move(values)), label_(std::move(label)), origin_(sample_index_origin) {
  if (values_.size() < 2) {
    throw Error(ErrorKind::kTooShort, "time series needs at least 2 values, got " +
                                          std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::kInvalidArgument,
                  "non-finite value at index " + std::to_string(i));
    }
  }
}

SeriesStats stats(const TimeSeries& series) {
  const auto values = series.values();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return SeriesStats{*lo, *hi, values.size()};
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool is_missing_marker(const std::string& field) {
  const std::string t = trim(field);
  return t.empty() || t == "NA";
}

std::vector<std::string> split_csv_record(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::vector<std::vector<std::string>> read_csv_records(std::istream& in, char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    records.push_back(split_csv_record(line, delimiter));
  }
  return records;
}

double parse_double(const std::string& field) {
  const std::string t = trim(field);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (t.empty() || ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::kParse, "not a number: '" + field + "'");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kParse, "non-finite value: '" + field + "'");
  }
  return value;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

TimeSeries read_csv(std::istream& in, const CsvOptions& options, std::string label) {
  auto records = read_csv_records(in, options.delimiter);

  std::size_t first_row = 0;
  std::size_t column = 0;
  if (options.skip_header) {
    if (records.empty()) throw Error(ErrorKind::kTooShort, "csv input is empty");
    first_row = 1;
  }
  if (const auto* name = std::get_if<std::string>(&options.column)) {
    if (!options.skip_header) {
      throw Error(ErrorKind::kInvalidArgument,
                  "column '" + *name + "' selected by name but input has no header");
    }
    const auto& header = records.front();
    const auto it = std::find_if(header.begin(), header.end(),
                                 [&](const std::string& h) { return trim(h) == *name; });
    if (it == header.end()) {
      throw Error(ErrorKind::kInvalidArgument, "column '" + *name + "' not found");
    }
    column = static_cast<std::size_t>(it - header.begin());
  } else {
    column = std::get<std::size_t>(options.column);
  }

  std::vector<double> values;
  values.reserve(records.size());
  std::optional<double> last;
  for (std::size_t r = first_row; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (column >= rec.size()) {
      throw Error(ErrorKind::kInvalidArgument, "column " + std::to_string(column) +
                                                   " not found on data row " +
                                                   std::to_string(r + 1));
    }
    if (is_missing_marker(rec[column])) {
      // Leading gaps have nothing to repeat, so they are dropped under both policies.
      if (options.missing == MissingPolicy::kForwardFill && last) values.push_back(*last);
      continue;
    }
    const double v = parse_double(rec[column]);
    values.push_back(v);
    last = v;
  }
  if (values.size() < 2) {
    throw Error(ErrorKind::kTooShort, "fewer than 2 finite values after missing-value policy");
  }
  return TimeSeries(std::move(values), std::move(label));
}

TimeSeries load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  return read_csv(in, options, path.filename().string());
}

void write_csv(std::ostream& out, const TimeSeries& series) {
  for (const double v : series.values()) out << format_double(v) << '\n';
}

}  // namespace chaoskit
