#ifndef CHAOSKIT_ERROR_HPP
#define CHAOSKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace chaoskit {

/// Failure categories shared by every estimator. The CLI maps these onto exit codes.
enum class ErrorKind {
  kInvalidArgument,
  kIo,
  kParse,
  kTooShort,
  kDegenerateSeries,
  kNoAdmissibleNeighbor,
  kNoTestablePoints,
  kInsufficientScalingPoints,
  kDivergence,
  kNoLocalMinimum,
  kNoDimensionFound,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chaoskit

#endif  // CHAOSKIT_ERROR_HPP
