#ifndef CHAOSKIT_CSV_ARTIFACTS_HPP
#define CHAOSKIT_CSV_ARTIFACTS_HPP

#include <iosfwd>
#include <string>

#include "chaoskit/embedding.hpp"
#include "chaoskit/entropy_dimension.hpp"
#include "chaoskit/false_neighbors.hpp"
#include "chaoskit/mutual_information.hpp"

// Plot-ready CSV artifacts. Every writer emits an optional "# ..." comment
// line, then a column header, then one row per entry. Readers skip comments.

namespace chaoskit {

void write_mi_curve(std::ostream& out, const MICurve& curve, const std::string& comment = {});
void write_fnn_curve(std::ostream& out, const FnnCurve& curve, const std::string& comment = {});
void write_cloud(std::ostream& out, const PointCloud& cloud, const std::string& comment = {});
void write_entropy_scaling(std::ostream& out, const EntropyScaling& scaling,
                           const std::string& comment = {});

/// Every row is a point; a leading non-numeric row is taken as a header.
PointCloud read_cloud(std::istream& in, char delimiter = ',');

/// Reads the "r" and "S_bits" columns (by header name when present,
/// otherwise the first and last columns).
EntropyScaling read_entropy_scaling(std::istream& in);

}  // namespace chaoskit

#endif  // CHAOSKIT_CSV_ARTIFACTS_HPP
