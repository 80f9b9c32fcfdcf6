#include "chaoskit/csv_artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>

#include "chaoskit/error.hpp"
#include "chaoskit/timeseries.hpp"

namespace chaoskit {

namespace {

void write_comment(std::ostream& out, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
}

bool is_numeric(const std::string& field) {
  try {
    parse_double(field);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool looks_like_header(const std::vector<std::string>& record) {
  return std::any_of(record.begin(), record.end(),
                     [](const std::string& f) { return !is_numeric(f); });
}

}  // namespace

void write_mi_curve(std::ostream& out, const MICurve& curve, const std::string& comment) {
  write_comment(out, comment);
  out << "T,I_bits\n";
  for (const auto& e : curve.entries) out << e.lag << ',' << format_double(e.bits) << '\n';
}

void write_fnn_curve(std::ostream& out, const FnnCurve& curve, const std::string& comment) {
  write_comment(out, comment);
  out << "m,fraction,tested,skipped\n";
  for (const auto& e : curve.entries) {
    out << e.dimension << ',' << format_double(e.fraction) << ',' << e.tested << ',' << e.skipped
        << '\n';
  }
}

void write_cloud(std::ostream& out, const PointCloud& cloud, const std::string& comment) {
  write_comment(out, comment);
  for (std::size_t k = 0; k < cloud.dimension(); ++k) out << (k ? ",x" : "x") << k;
  out << '\n';
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
    out << '\n';
  }
}

void write_entropy_scaling(std::ostream& out, const EntropyScaling& scaling,
                           const std::string& comment) {
  write_comment(out, comment);
  out << "r,log2_inv_r,S_bits\n";
  for (const auto& e : scaling.entries) {
    out << format_double(e.r) << ',' << format_double(std::log2(1.0 / e.r)) << ','
        << format_double(e.bits) << '\n';
  }
}

PointCloud read_cloud(std::istream& in, char delimiter) {
  auto records = read_csv_records(in, delimiter);
  std::size_t first = 0;
  if (!records.empty() && looks_like_header(records.front())) first = 1;
  if (first >= records.size()) throw Error(ErrorKind::kTooShort, "point cloud file has no rows");

  const std::size_t dim = records[first].size();
  std::vector<double> coords;
  coords.reserve((records.size() - first) * dim);
  for (std::size_t r = first; r < records.size(); ++r) {
    if (records[r].size() != dim) {
      throw Error(ErrorKind::kParse, "row " + std::to_string(r + 1) + " has " +
                                         std::to_string(records[r].size()) + " columns, expected " +
                                         std::to_string(dim));
    }
    for (const auto& f : records[r]) coords.push_back(parse_double(f));
  }
  return PointCloud(dim, std::move(coords));
}

EntropyScaling read_entropy_scaling(std::istream& in) {
  auto records = read_csv_records(in);
  std::size_t first = 0;
  std::size_t r_col = 0;
  std::optional<std::size_t> s_col;
  if (!records.empty() && looks_like_header(records.front())) {
    const auto& header = records.front();
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == "r") r_col = c;
      if (header[c] == "S_bits") s_col = c;
    }
    first = 1;
  }
  EntropyScaling out;
  for (std::size_t r = first; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::size_t sc = s_col.value_or(rec.size() - 1);
    if (rec.size() < 2 || r_col >= rec.size() || sc >= rec.size()) {
      throw Error(ErrorKind::kParse, "scaling row " + std::to_string(r + 1) + " is too short");
    }
    out.entries.push_back({parse_double(rec[r_col]), parse_double(rec[sc])});
  }
  return out;
}

}  // namespace chaoskit
