#include "chaoskit/pipeline.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "chaoskit/csv_artifacts.hpp"
#include "chaoskit/embedding.hpp"
#include "chaoskit/version.hpp"

namespace chaoskit {

namespace {

using Json = nlohmann::ordered_json;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json config_json(const PipelineConfig& c) {
  Json csv;
  if (const auto* idx = std::get_if<std::size_t>(&c.csv.column)) {
    csv["column"] = *idx;
  } else {
    csv["column"] = std::get<std::string>(c.csv.column);
  }
  csv["skip_header"] = c.csv.skip_header;
  csv["missing"] = c.csv.missing == MissingPolicy::kDrop ? "drop" : "forward_fill";
  csv["delimiter"] = std::string(1, c.csv.delimiter);

  Json j;
  j["input"] = c.input.string();
  j["csv"] = csv;
  j["j_bins"] = c.bins;
  j["T_max"] = optional_json(c.max_lag);
  j["allow_delay_fallback"] = c.allow_delay_fallback;
  j["m_max"] = c.fnn.m_max;
  j["R_tol"] = c.fnn.r_tol;
  j["theiler_window"] = optional_json(c.fnn.theiler_window);
  j["fnn_threshold"] = c.fnn.threshold;
  j["r_count"] = c.ladder.count;
  j["r_max_fraction"] = c.ladder.max_fraction;
  j["r_min_fraction"] = c.ladder.min_fraction;
  j["r_ref_fraction"] = c.r_ref_fraction;
  j["fit_range"] = c.fit_range ? Json::array({c.fit_range->r_lo, c.fit_range->r_hi}) : Json(nullptr);
  j["projection_axes"] = c.projection_axes;
  j["fixed_delay"] = optional_json(c.fixed_delay);
  j["fixed_dimension"] = optional_json(c.fixed_dimension);
  j["output_dir"] = c.output_dir.string();
  return j;
}

std::string comment_for(const std::string& stage, const Json& params) {
  std::string out = "stage=" + stage;
  for (const auto& [key, value] : params.items()) out += ' ' + key + '=' + value.dump();
  return out;
}

class Runner {
 public:
  Runner(const PipelineConfig& config, PipelineReport& report)
      : config_(config), report_(report) {}

  /// Runs `body`; on failure records it and returns false.
  bool stage(const std::string& name, const std::function<void()>& body) {
    try {
      body();
      return true;
    } catch (const Error& e) {
      fail(name, e.kind(), e.what());
    } catch (const std::exception& e) {
      report_.failure = StageFailure{name, ErrorKind::kInvalidArgument, e.what()};
      report_.exit_code = ExitCode::kError;
    }
    return false;
  }

  void fail(const std::string& stage, ErrorKind kind, const std::string& message) {
    report_.failure = StageFailure{stage, kind, message};
    report_.exit_code = stage == "load" ? ExitCode::kLoadFailure : exit_code_for(kind);
  }

  template <typename Writer>
  void artifact(const std::string& key, const std::string& file, Writer&& write) {
    const auto path = config_.output_dir / file;
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
    write(out);
    out.close();
    if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
    report_.artifacts[key] = file;
  }

 private:
  const PipelineConfig& config_;
  PipelineReport& report_;
};

void finalize(const PipelineConfig& config, PipelineReport& report) {
  report.generated_at = config.timestamp.value_or(utc_now());

  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["toolkit"] = "chaoskit";
  j["toolkit_version"] = kVersion;
  j["generated_at"] = report.generated_at;
  j["status"] = report.failure ? "failed" : "ok";
  j["exit_code"] = static_cast<int>(report.exit_code);
  j["series_length"] = report.series_length;
  j["selected_delay"] = optional_json(report.selected_delay);
  j["delay_estimated"] = report.delay_estimated;
  j["delay_fallback_used"] = report.delay_fallback_used;
  j["selected_dimension"] = optional_json(report.selected_dimension);
  j["dimension_estimated"] = report.dimension_estimated;
  j["dimension_found"] = report.dimension_found;
  j["entropy_bits"] = optional_json(report.entropy_bits);
  j["r_ref"] = optional_json(report.r_ref);
  if (report.dimension_estimate) {
    const auto& d = *report.dimension_estimate;
    j["information_dimension"] = {{"D_I", d.d_i},
                                  {"intercept", d.intercept},
                                  {"r_squared", d.r_squared},
                                  {"fit_range", {d.fit_range.r_lo, d.fit_range.r_hi}},
                                  {"points_used", d.points_used}};
  } else {
    j["information_dimension"] = nullptr;
  }
  j["artifacts"] = report.artifacts;
  if (report.failure) {
    j["error"] = {{"stage", report.failure->stage},
                  {"kind", std::string(to_string(report.failure->kind))},
                  {"message", report.failure->message}};
  } else {
    j["error"] = nullptr;
  }
  j["config"] = config_json(config);
  report.json = j.dump(2) + "\n";

  const auto path = config.output_dir / "report.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  out << report.json;
}

void run_stages(const PipelineConfig& config, const TimeSeries& series, PipelineReport& report) {
  Runner run(config, report);
  report.series_length = series.size();

  std::size_t delay = 0;
  if (!run.stage("delay", [&] {
        if (config.fixed_delay) {
          delay = *config.fixed_delay;
          return;
        }
        report.delay_estimated = true;
        const std::size_t max_lag = config.max_lag.value_or(default_max_lag(series.size()));
        const MICurve curve = ami_curve(series, max_lag, config.bins);
        run.artifact("mi_curve", "mi_curve.csv", [&](std::ostream& out) {
          write_mi_curve(out, curve,
                         comment_for("ami", {{"j_bins", config.bins}, {"T_max", max_lag}}));
        });
        const DelaySelection sel = first_local_minimum(curve);
        if (!sel.found && !config.allow_delay_fallback) {
          throw Error(ErrorKind::kNoLocalMinimum,
                      "mutual information has no local minimum up to T = " +
                          std::to_string(max_lag) + " (argmin T = " + std::to_string(sel.lag) +
                          ")");
        }
        delay = sel.lag;
        report.delay_fallback_used = !sel.found;
      })) {
    return;
  }
  report.selected_delay = delay;

  std::size_t dimension = 0;
  if (!run.stage("dimension", [&] {
        if (config.fixed_dimension) {
          dimension = *config.fixed_dimension;
          report.dimension_found = true;
          return;
        }
        report.dimension_estimated = true;
        const DimensionSelection sel = embedding_dimension(series, delay, config.fnn);
        const std::size_t w = config.fnn.window_for(delay);
        run.artifact("fnn_curve", "fnn_curve.csv", [&](std::ostream& out) {
          write_fnn_curve(out, sel.curve,
                          comment_for("fnn", {{"T", delay},
                                              {"R_tol", config.fnn.r_tol},
                                              {"theiler_window", w},
                                              {"fnn_threshold", config.fnn.threshold},
                                              {"m_max", config.fnn.m_max}}));
        });
        if (!sel.dimension) {
          throw Error(ErrorKind::kNoDimensionFound,
                      "false-neighbor fraction never fell to " +
                          format_double(config.fnn.threshold) + " for m <= " +
                          std::to_string(config.fnn.m_max));
        }
        dimension = *sel.dimension;
        report.dimension_found = true;
      })) {
    return;
  }
  report.selected_dimension = dimension;

  std::optional<PointCloud> cloud;
  if (!run.stage("embed", [&] {
        cloud = delay_embed(series, {delay, dimension});
        std::vector<std::size_t> axes = config.projection_axes;
        if (axes.empty()) {
          for (std::size_t k = 0; k < std::min<std::size_t>(dimension, 3); ++k) axes.push_back(k);
        }
        const PointCloud projected = project(*cloud, axes);
        run.artifact("cloud_projection", "cloud_projection.csv", [&](std::ostream& out) {
          write_cloud(out, projected,
                      comment_for("embed", {{"T", delay}, {"n", dimension}, {"axes", axes}}));
        });
      })) {
    return;
  }

  EntropyScaling scaling;
  if (!run.stage("entropy", [&] {
        const double extent = cloud->extent();
        scaling = entropy_scaling(*cloud, r_ladder(extent, config.ladder));
        run.artifact("entropy_scaling", "entropy_scaling.csv", [&](std::ostream& out) {
          write_entropy_scaling(out, scaling,
                                comment_for("entropy", {{"extent", extent},
                                                        {"r_count", config.ladder.count},
                                                        {"r_max_fraction", config.ladder.max_fraction},
                                                        {"r_min_fraction", config.ladder.min_fraction}}));
        });
        const double r_ref = extent * config.r_ref_fraction;
        report.r_ref = r_ref;
        report.entropy_bits = shannon_entropy(partition_boxes(*cloud, r_ref));
      })) {
    return;
  }

  run.stage("information_dimension", [&] {
    report.dimension_estimate = information_dimension(scaling, config.fit_range);
  });
}

}  // namespace

ExitCode exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNoLocalMinimum: return ExitCode::kNoDelayMinimum;
    case ErrorKind::kNoDimensionFound: return ExitCode::kNoDimensionFound;
    case ErrorKind::kInsufficientScalingPoints: return ExitCode::kInsufficientScalingPoints;
    case ErrorKind::kIo:
    case ErrorKind::kParse:
    case ErrorKind::kTooShort: return ExitCode::kLoadFailure;
    default: return ExitCode::kError;
  }
}

void PipelineConfig::validate() const {
  const auto bad = [](const std::string& what) { throw Error(ErrorKind::kInvalidArgument, what); };
  if (bins < 2) bad("j_bins must be >= 2");
  if (max_lag && *max_lag < 1) bad("T_max must be >= 1");
  fnn.validate();
  if (ladder.count < 3) bad("r_count must be >= 3 to fit a dimension");
  if (!(ladder.min_fraction > 0.0 && ladder.max_fraction > ladder.min_fraction)) {
    bad("r ladder fractions need 0 < r_min_fraction < r_max_fraction");
  }
  if (!(r_ref_fraction > 0.0)) bad("r_ref_fraction must be > 0");
  if (fit_range && !(fit_range->r_lo > 0.0 && fit_range->r_hi >= fit_range->r_lo)) {
    bad("fit range needs 0 < r_lo <= r_hi");
  }
  if (fixed_delay && *fixed_delay < 1) bad("fixed delay must be >= 1");
  if (fixed_dimension && *fixed_dimension < 1) bad("fixed dimension must be >= 1");
  if (output_dir.empty()) bad("output_dir must not be empty");
}

PipelineReport run_pipeline(const PipelineConfig& config, const TimeSeries& series) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  PipelineReport report;
  run_stages(config, series, report);
  finalize(config, report);
  return report;
}

PipelineReport run_pipeline(const PipelineConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.output_dir);
  PipelineReport report;
  std::optional<TimeSeries> series;
  Runner run(config, report);
  if (run.stage("load", [&] { series = load_csv(config.input, config.csv); })) {
    run_stages(config, *series, report);
  }
  finalize(config, report);
  return report;
}

}  // namespace chaoskit
