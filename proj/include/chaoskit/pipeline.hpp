#ifndef CHAOSKIT_PIPELINE_HPP
#define CHAOSKIT_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chaoskit/entropy_dimension.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/false_neighbors.hpp"
#include "chaoskit/mutual_information.hpp"
#include "chaoskit/timeseries.hpp"

namespace chaoskit {

/// Process exit codes shared by the pipeline and the CLI subcommands.
enum class ExitCode : int {
  kOk = 0,
  kError = 1,
  kUsage = 2,
  kLoadFailure = 3,
  kNoDelayMinimum = 4,
  kNoDimensionFound = 5,
  kInsufficientScalingPoints = 6,
};

ExitCode exit_code_for(ErrorKind kind);

struct PipelineConfig {
  std::filesystem::path input;
  CsvOptions csv;

  std::size_t bins = kDefaultBins;
  std::optional<std::size_t> max_lag;  ///< default_max_lag(N) when unset
  bool allow_delay_fallback = false;

  FnnParams fnn;

  RLadder ladder;
  double r_ref_fraction = kDefaultReferenceFraction;
  std::optional<FitRange> fit_range;
  std::vector<std::size_t> projection_axes;  ///< first min(n, 3) axes when empty

  std::optional<std::size_t> fixed_delay;
  std::optional<std::size_t> fixed_dimension;

  std::filesystem::path output_dir = ".";
  /// Written verbatim as generated_at; the current UTC time when unset.
  std::optional<std::string> timestamp;

  void validate() const;
};

struct StageFailure {
  std::string stage;
  ErrorKind kind;
  std::string message;
};

struct PipelineReport {
  std::optional<std::size_t> selected_delay;
  bool delay_fallback_used = false;
  bool delay_estimated = false;
  std::optional<std::size_t> selected_dimension;
  bool dimension_found = false;
  bool dimension_estimated = false;
  std::optional<double> entropy_bits;
  std::optional<double> r_ref;
  std::optional<DimensionEstimate> dimension_estimate;
  std::size_t series_length = 0;

  /// Artifact name -> file name inside output_dir.
  std::map<std::string, std::string> artifacts;
  std::optional<StageFailure> failure;
  ExitCode exit_code = ExitCode::kOk;
  std::string generated_at;

  /// Full JSON document, including the config echo and toolkit version.
  std::string json;
};

/**
 * @brief Runs load -> delay -> dimension -> embed -> entropy scaling -> D_I.
 *
 * Stage failures do not throw: they are recorded in the report, which is
 * still written together with every artifact produced so far. Invalid
 * configuration throws Error(kInvalidArgument) before anything runs.
 */
PipelineReport run_pipeline(const PipelineConfig& config);

/// Runs the pipeline on an already loaded series; `config.input` is only echoed.
PipelineReport run_pipeline(const PipelineConfig& config, const TimeSeries& series);

}  // namespace chaoskit

#endif  // CHAOSKIT_PIPELINE_HPP
