#include "chaoskit/error.hpp"

namespace chaoskit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kTooShort: return "series too short";
    case ErrorKind::kDegenerateSeries: return "degenerate series";
    case ErrorKind::kNoAdmissibleNeighbor: return "no admissible neighbor";
    case ErrorKind::kNoTestablePoints: return "no testable points";
    case ErrorKind::kInsufficientScalingPoints: return "insufficient scaling points";
    case ErrorKind::kDivergence: return "divergent orbit";
    case ErrorKind::kNoLocalMinimum: return "no local minimum";
    case ErrorKind::kNoDimensionFound: return "no dimension found";
  }
  return "unknown error";
}

}  // namespace chaoskit
