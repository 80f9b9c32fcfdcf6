// chaoskit: delay-embedding and information-dimension toolkit.
//
//   chaoskit ami       -i series.csv            -> T,I_bits curve + {selected_delay, fallback_used}
//   chaoskit fnn       -i series.csv --delay T  -> m,fraction,tested,skipped + {m_selected}
//   chaoskit embed     -i series.csv --delay T --dim n [--axes 0,2]
//   chaoskit entropy   -i cloud.csv             -> r,log2_inv_r,S_bits
//   chaoskit dimension -i scaling.csv           -> {D_I, intercept, r_squared, fit_range}
//   chaoskit synth     --kind henon --length N  -> one value per row
//   chaoskit run       --input series.csv       -> full pipeline, artifacts + report.json

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "chaoskit/csv_artifacts.hpp"
#include "chaoskit/embedding.hpp"
#include "chaoskit/entropy_dimension.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/false_neighbors.hpp"
#include "chaoskit/mutual_information.hpp"
#include "chaoskit/pipeline.hpp"
#include "chaoskit/synthetic.hpp"
#include "chaoskit/timeseries.hpp"
#include "chaoskit/version.hpp"

namespace ck = chaoskit;
using Json = nlohmann::ordered_json;

namespace {

int code(ck::ExitCode c) { return static_cast<int>(c); }

struct SeriesInput {
  std::string path = "-";
  std::string column = "0";
  bool header = false;
  std::string missing = "forward_fill";
  char delimiter = ',';

  void add_to(CLI::App* app) {
    app->add_option("-i,--input", path, "Input CSV ('-' for stdin)")->capture_default_str();
    app->add_option("--column", column, "Zero-based column index or header name")
        ->capture_default_str();
    app->add_flag("--header", header, "First row is a header");
    app->add_option("--missing", missing, "Missing-value policy")
        ->check(CLI::IsMember({"drop", "forward_fill"}))
        ->capture_default_str();
    app->add_option("--delimiter", delimiter, "Field delimiter");
  }

  ck::CsvOptions options() const {
    ck::CsvOptions o;
    const bool numeric = !column.empty() && column.find_first_not_of("0123456789") == std::string::npos;
    if (numeric) {
      o.column = static_cast<std::size_t>(std::stoull(column));
    } else {
      o.column = column;
    }
    o.skip_header = header;
    o.missing = missing == "drop" ? ck::MissingPolicy::kDrop : ck::MissingPolicy::kForwardFill;
    o.delimiter = delimiter;
    return o;
  }

  ck::TimeSeries load() const {
    if (path == "-") return ck::read_csv(std::cin, options(), "stdin");
    return ck::load_csv(path, options());
  }
};

std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) throw ck::Error(ck::ErrorKind::kIo, "cannot read '" + path + "'");
  return file;
}

/// Writes to stdout for "-", else to the named file.
template <typename Writer>
void emit(const std::string& path, Writer&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw ck::Error(ck::ErrorKind::kIo, "cannot write '" + path + "'");
  write(out);
}

/// Summaries go to a file when requested, to stderr otherwise, so stdout stays pure CSV.
void emit_summary(const std::string& path, const Json& summary) {
  if (path.empty()) {
    std::cerr << summary.dump() << '\n';
  } else {
    emit(path, [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
  }
}

std::vector<std::size_t> parse_axes(const std::string& text) {
  std::vector<std::size_t> axes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ck::Error(ck::ErrorKind::kInvalidArgument, "bad axis list '" + text + "'");
    }
    axes.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return axes;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Splices "key=value" lines of a `run --config FILE` into the argument list
/// ahead of the command-line flags, which therefore win (options take the last
/// value). Returns the arguments in CLI11's reversed order.
std::vector<std::string> expand_run_config(int argc, char** argv) {
  std::vector<std::string> in(argv + 1, argv + argc);
  std::vector<std::string> out;
  const auto run_pos = std::find(in.begin(), in.end(), "run");
  std::string config_path;
  for (auto it = run_pos; it != in.end(); ++it) {
    if (*it == "--config" && it + 1 != in.end()) config_path = *(it + 1);
    if (it->rfind("--config=", 0) == 0) config_path = it->substr(9);
  }
  if (run_pos == in.end() || config_path.empty()) {
    out = in;
  } else {
    std::ifstream file(config_path);
    if (!file) throw ck::Error(ck::ErrorKind::kIo, "cannot read config '" + config_path + "'");
    out.assign(in.begin(), run_pos + 1);
    std::string line;
    while (std::getline(file, line)) {
      const std::string t = trim(line);
      if (t.empty() || t.front() == '#' || t.front() == ';' || t.front() == '[') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw ck::Error(ck::ErrorKind::kParse, "config line '" + t + "' is not key=value");
      }
      std::string key = trim(t.substr(0, eq));
      if (key.rfind("--", 0) != 0) key = "--" + key;
      out.push_back(key + "=" + trim(t.substr(eq + 1)));
    }
    out.insert(out.end(), run_pos + 1, in.end());
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay embedding, mutual information, false nearest neighbors, entropy and information dimension"};
  app.set_version_flag("--version", ck::kVersion);
  app.require_subcommand(1);

  // ami
  SeriesInput ami_in;
  std::size_t ami_bins = ck::kDefaultBins;
  std::optional<std::size_t> ami_tmax;
  std::string ami_out = "-";
  std::string ami_summary;
  auto* ami = app.add_subcommand("ami", "Average mutual information curve and first-minimum delay");
  ami_in.add_to(ami);
  ami->add_option("--j_bins", ami_bins, "Histogram bins per axis")->capture_default_str();
  ami->add_option("--T_max", ami_tmax, "Largest lag (default min(N/10, 100))");
  ami->add_option("-o,--output", ami_out, "Curve CSV ('-' for stdout)");
  ami->add_option("--summary", ami_summary, "Write the JSON summary here instead of stderr");

  // fnn
  SeriesInput fnn_in;
  std::size_t fnn_delay = 1;
  ck::FnnParams fnn_params;
  std::optional<std::size_t> fnn_window;
  std::string fnn_out = "-";
  std::string fnn_summary;
  auto* fnn = app.add_subcommand("fnn", "False nearest neighbor curve and embedding dimension");
  fnn_in.add_to(fnn);
  fnn->add_option("-T,--delay", fnn_delay, "Delay in samples")->required();
  fnn->add_option("--R_tol", fnn_params.r_tol, "Distance-growth tolerance")->capture_default_str();
  fnn->add_option("--theiler_window", fnn_window, "Temporal exclusion (default: delay)");
  fnn->add_option("--fnn_threshold", fnn_params.threshold, "Acceptance fraction")->capture_default_str();
  fnn->add_option("--m_max", fnn_params.m_max, "Largest dimension tested")->capture_default_str();
  fnn->add_option("-o,--output", fnn_out, "Curve CSV ('-' for stdout)");
  fnn->add_option("--summary", fnn_summary, "Write the JSON summary here instead of stderr");

  // embed
  SeriesInput emb_in;
  std::size_t emb_delay = 1;
  std::size_t emb_dim = 2;
  std::string emb_axes;
  std::string emb_out = "-";
  auto* embed = app.add_subcommand("embed", "Delay-coordinate point cloud (optionally projected)");
  emb_in.add_to(embed);
  embed->add_option("-T,--delay", emb_delay, "Delay in samples")->required();
  embed->add_option("-n,--dim", emb_dim, "Embedding dimension")->required();
  embed->add_option("--axes", emb_axes, "Comma-separated coordinates to keep, e.g. 0,2");
  embed->add_option("-o,--output", emb_out, "Cloud CSV ('-' for stdout)");

  // entropy
  std::string ent_in = "-";
  ck::RLadder ent_ladder;
  std::vector<double> ent_rs;
  double ent_ref = ck::kDefaultReferenceFraction;
  std::string ent_out = "-";
  std::string ent_summary;
  auto* entropy = app.add_subcommand("entropy", "Box-partition Shannon entropy S(r) of a point cloud");
  entropy->add_option("-i,--input", ent_in, "Cloud CSV ('-' for stdin)")->capture_default_str();
  entropy->add_option("--r_count", ent_ladder.count, "Ladder length")->capture_default_str();
  entropy->add_option("--r_max_fraction", ent_ladder.max_fraction, "Largest r / extent")->capture_default_str();
  entropy->add_option("--r_min_fraction", ent_ladder.min_fraction, "Smallest r / extent")->capture_default_str();
  entropy->add_option("--r", ent_rs, "Explicit strictly decreasing r values (overrides the ladder)")
      ->delimiter(',');
  entropy->add_option("--r_ref_fraction", ent_ref, "Reference resolution / extent for H")->capture_default_str();
  entropy->add_option("-o,--output", ent_out, "Scaling CSV ('-' for stdout)");
  entropy->add_option("--summary", ent_summary, "Write the JSON summary here instead of stderr");

  // dimension
  std::string dim_in = "-";
  std::optional<double> dim_lo;
  std::optional<double> dim_hi;
  std::string dim_out = "-";
  auto* dimension = app.add_subcommand("dimension", "Information dimension from an entropy scaling CSV");
  dimension->add_option("-i,--input", dim_in, "Scaling CSV ('-' for stdin)")->capture_default_str();
  dimension->add_option("--fit_lo", dim_lo, "Smallest r in the fit");
  dimension->add_option("--fit_hi", dim_hi, "Largest r in the fit");
  dimension->add_option("-o,--output", dim_out, "JSON output ('-' for stdout)");

  // synth
  std::string syn_kind = "henon";
  std::size_t syn_len = 5000;
  std::vector<std::string> syn_params;
  std::uint64_t syn_seed = 0;
  std::size_t syn_transient = ck::synth::kDefaultTransient;
  std::string syn_out = "-";
  auto* synth = app.add_subcommand("synth", "Generate a series from a known system");
  synth->add_option("--kind", syn_kind, "Generator")
      ->check(CLI::IsMember({"henon", "logistic", "lorenz", "sine", "white_noise"}))
      ->capture_default_str();
  synth->add_option("-N,--length", syn_len, "Number of samples")->capture_default_str();
  synth->add_option("-p,--param", syn_params, "Generator parameter key=value (repeatable)");
  synth->add_option("--seed", syn_seed, "Noise seed")->capture_default_str();
  synth->add_option("--transient", syn_transient, "Leading samples discarded")->capture_default_str();
  synth->add_option("-o,--output", syn_out, "Series CSV ('-' for stdout)");

  // run
  SeriesInput run_in;
  ck::PipelineConfig cfg;
  std::optional<std::size_t> run_tmax, run_window, run_fixed_delay, run_fixed_dim;
  std::optional<double> run_fit_lo, run_fit_hi;
  std::string run_axes;
  std::string run_outdir = ".";
  std::optional<std::string> run_timestamp;
  auto* run = app.add_subcommand("run", "Full pipeline: delay, dimension, embedding, entropy, D_I");
  std::string run_config;
  run->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  run->add_option("--config", run_config, "key=value config file; command-line flags take precedence");
  run_in.add_to(run);
  run->add_option("--j_bins", cfg.bins, "Histogram bins per axis")->capture_default_str();
  run->add_option("--T_max", run_tmax, "Largest lag scanned (default min(N/10, 100))");
  run->add_flag("--allow_delay_fallback", cfg.allow_delay_fallback,
                "Use the argmin when I(T) has no local minimum");
  run->add_option("--m_max", cfg.fnn.m_max, "Largest dimension tested")->capture_default_str();
  run->add_option("--R_tol", cfg.fnn.r_tol, "Distance-growth tolerance")->capture_default_str();
  run->add_option("--theiler_window", run_window, "Temporal exclusion (default: delay)");
  run->add_option("--fnn_threshold", cfg.fnn.threshold, "Acceptance fraction")->capture_default_str();
  run->add_option("--r_count", cfg.ladder.count, "Ladder length")->capture_default_str();
  run->add_option("--r_max_fraction", cfg.ladder.max_fraction, "Largest r / extent")->capture_default_str();
  run->add_option("--r_min_fraction", cfg.ladder.min_fraction, "Smallest r / extent")->capture_default_str();
  run->add_option("--r_ref_fraction", cfg.r_ref_fraction, "Reference resolution / extent for H")
      ->capture_default_str();
  run->add_option("--fit_lo", run_fit_lo, "Smallest r in the D_I fit (with --fit_hi)");
  run->add_option("--fit_hi", run_fit_hi, "Largest r in the D_I fit (with --fit_lo)");
  run->add_option("--axes", run_axes, "Projection axes for the cloud artifact");
  run->add_option("--fixed_delay", run_fixed_delay, "Skip the delay estimator and use this T");
  run->add_option("--fixed_dimension", run_fixed_dim, "Skip the FNN estimator and use this n");
  run->add_option("--output_dir", run_outdir, "Artifact directory")
      ->envname("CHAOSKIT_OUTPUT_DIR")
      ->capture_default_str();
  run->add_option("--timestamp", run_timestamp, "Pin generated_at (for reproducible reports)");

  std::vector<std::string> args;
  try {
    args = expand_run_config(argc, argv);
  } catch (const ck::Error& e) {
    std::cerr << "chaoskit: " << e.what() << '\n';
    return code(ck::ExitCode::kUsage);
  }

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : code(ck::ExitCode::kUsage);
  }

  try {
    if (*ami) {
      const ck::TimeSeries series = ami_in.load();
      const std::size_t tmax = ami_tmax.value_or(ck::default_max_lag(series.size()));
      const ck::MICurve curve = ck::ami_curve(series, tmax, ami_bins);
      emit(ami_out, [&](std::ostream& out) {
        ck::write_mi_curve(out, curve,
                           "stage=ami j_bins=" + std::to_string(ami_bins) + " T_max=" + std::to_string(tmax));
      });
      Json summary;
      if (curve.entries.size() >= 3) {
        const ck::DelaySelection sel = ck::first_local_minimum(curve);
        summary["selected_delay"] = sel.lag;
        summary["fallback_used"] = !sel.found;
      } else {
        summary["selected_delay"] = nullptr;
        summary["fallback_used"] = false;
      }
      emit_summary(ami_summary, summary);
      return 0;
    }

    if (*fnn) {
      const ck::TimeSeries series = fnn_in.load();
      fnn_params.theiler_window = fnn_window;
      const ck::DimensionSelection sel = ck::embedding_dimension(series, fnn_delay, fnn_params);
      emit(fnn_out, [&](std::ostream& out) {
        ck::write_fnn_curve(out, sel.curve,
                            "stage=fnn T=" + std::to_string(fnn_delay) + " R_tol=" +
                                ck::format_double(fnn_params.r_tol) + " theiler_window=" +
                                std::to_string(fnn_params.window_for(fnn_delay)) +
                                " fnn_threshold=" + ck::format_double(fnn_params.threshold));
      });
      Json summary;
      summary["m_selected"] = sel.dimension ? Json(*sel.dimension) : Json(nullptr);
      emit_summary(fnn_summary, summary);
      return sel.dimension ? 0 : code(ck::ExitCode::kNoDimensionFound);
    }

    if (*embed) {
      const ck::TimeSeries series = emb_in.load();
      ck::PointCloud cloud = ck::delay_embed(series, {emb_delay, emb_dim});
      std::string comment = "stage=embed T=" + std::to_string(emb_delay) + " n=" + std::to_string(emb_dim);
      if (!emb_axes.empty()) {
        cloud = ck::project(cloud, parse_axes(emb_axes));
        comment += " axes=" + emb_axes;
      }
      emit(emb_out, [&](std::ostream& out) { ck::write_cloud(out, cloud, comment); });
      return 0;
    }

    if (*entropy) {
      std::ifstream file;
      const ck::PointCloud cloud = ck::read_cloud(open_input(ent_in, file));
      const double extent = cloud.extent();
      const std::vector<double> rs = ent_rs.empty() ? ck::r_ladder(extent, ent_ladder) : ent_rs;
      const ck::EntropyScaling scaling = ck::entropy_scaling(cloud, rs);
      emit(ent_out, [&](std::ostream& out) {
        ck::write_entropy_scaling(out, scaling, "stage=entropy points=" + std::to_string(cloud.size()) +
                                                    " extent=" + ck::format_double(extent));
      });
      Json summary;
      if (extent > 0.0) {
        const double r_ref = extent * ent_ref;
        summary["r_ref"] = r_ref;
        summary["entropy_bits"] = ck::shannon_entropy(ck::partition_boxes(cloud, r_ref));
      } else {
        summary["r_ref"] = nullptr;
        summary["entropy_bits"] = 0.0;
      }
      emit_summary(ent_summary, summary);
      return 0;
    }

    if (*dimension) {
      std::ifstream file;
      const ck::EntropyScaling scaling = ck::read_entropy_scaling(open_input(dim_in, file));
      std::optional<ck::FitRange> range;
      if (dim_lo || dim_hi) {
        range = ck::FitRange{dim_lo.value_or(0.0),
                             dim_hi.value_or(std::numeric_limits<double>::infinity())};
      }
      const ck::DimensionEstimate est = ck::information_dimension(scaling, range);
      Json j;
      j["D_I"] = est.d_i;
      j["intercept"] = est.intercept;
      j["r_squared"] = est.r_squared;
      j["fit_range"] = {est.fit_range.r_lo, est.fit_range.r_hi};
      j["points_used"] = est.points_used;
      emit(dim_out, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
      return 0;
    }

    if (*synth) {
      ck::synth::GeneratorSpec spec;
      spec.kind = ck::synth::parse_kind(syn_kind);
      spec.length = syn_len;
      spec.seed = syn_seed;
      spec.transient = syn_transient;
      std::string comment = "stage=synth kind=" + syn_kind + " N=" + std::to_string(syn_len);
      for (const auto& kv : syn_params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
          throw ck::Error(ck::ErrorKind::kInvalidArgument, "parameter '" + kv + "' is not key=value");
        }
        spec.parameters[kv.substr(0, eq)] = ck::parse_double(kv.substr(eq + 1));
        comment += ' ' + kv;
      }
      if (spec.kind == ck::synth::Kind::kWhiteNoise) {
        comment += " seed=" + std::to_string(syn_seed) +
                   " generator=v" + std::to_string(ck::synth::kNoiseGeneratorVersion);
      } else if (spec.kind != ck::synth::Kind::kSine) {
        comment += " transient=" + std::to_string(syn_transient);
      }
      const ck::TimeSeries series = ck::synth::generate(spec);
      emit(syn_out, [&](std::ostream& out) {
        out << "# " << comment << '\n';
        ck::write_csv(out, series);
      });
      return 0;
    }

    if (*run) {
      cfg.input = run_in.path;
      cfg.csv = run_in.options();
      cfg.max_lag = run_tmax;
      cfg.fnn.theiler_window = run_window;
      cfg.fixed_delay = run_fixed_delay;
      cfg.fixed_dimension = run_fixed_dim;
      if (run_fit_lo || run_fit_hi) {
        if (!run_fit_lo || !run_fit_hi) {
          throw ck::Error(ck::ErrorKind::kInvalidArgument, "--fit_lo and --fit_hi go together");
        }
        cfg.fit_range = ck::FitRange{*run_fit_lo, *run_fit_hi};
      }
      if (!run_axes.empty()) cfg.projection_axes = parse_axes(run_axes);
      cfg.output_dir = run_outdir;
      cfg.timestamp = run_timestamp;

      ck::PipelineReport report;
      if (run_in.path == "-") {
        std::optional<ck::TimeSeries> series;
        try {
          series = ck::read_csv(std::cin, cfg.csv, "stdin");
        } catch (const ck::Error& e) {
          std::cerr << "chaoskit: stage load: " << e.what() << '\n';
          return code(ck::ExitCode::kLoadFailure);
        }
        report = ck::run_pipeline(cfg, *series);
      } else {
        report = ck::run_pipeline(cfg);
      }
      std::cout << report.json;
      if (report.failure) {
        std::cerr << "chaoskit: stage " << report.failure->stage << ": " << report.failure->message
                  << '\n';
      }
      return code(report.exit_code);
    }
  } catch (const ck::Error& e) {
    std::cerr << "chaoskit: " << ck::to_string(e.kind()) << ": " << e.what() << '\n';
    const ck::ExitCode ec = ck::exit_code_for(e.kind());
    return code(ec);
  } catch (const std::exception& e) {
    std::cerr << "chaoskit: " << e.what() << '\n';
    return code(ck::ExitCode::kError);
  }
  return 0;
}
