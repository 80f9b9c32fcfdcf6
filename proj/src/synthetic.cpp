#include "chaoskit/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "chaoskit/error.hpp"

namespace chaoskit::synth {

namespace {

constexpr double kDivergenceBound = 1e6;

void require_length(std::size_t n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "generated series needs N >= 2");
}

void check_bounded(double x, std::size_t iteration) {
  if (!std::isfinite(x) || std::abs(x) >= kDivergenceBound) {
    throw Error(ErrorKind::kDivergence,
                "orbit diverged at iteration " + std::to_string(iteration));
  }
}

}  // namespace

TimeSeries henon(std::size_t n, double a, double b, double x0, double y0, std::size_t transient) {
  require_length(n);
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x0) || !std::isfinite(y0)) {
    throw Error(ErrorKind::kInvalidArgument, "Henon parameters must be finite");
  }
  std::vector<double> out;
  out.reserve(n);
  double x = x0;
  double y = y0;
  for (std::size_t it = 0; out.size() < n; ++it) {
    if (it >= transient) out.push_back(x);
    const double xn = 1.0 - a * x * x + y;
    y = b * x;
    x = xn;
    check_bounded(x, it + 1);
  }
  return TimeSeries(std::move(out), "henon");
}

TimeSeries logistic(std::size_t n, double r, double x0, std::size_t transient) {
  require_length(n);
  if (!(x0 > 0.0 && x0 < 1.0)) throw Error(ErrorKind::kInvalidArgument, "logistic x0 must lie in (0, 1)");
  if (!(r > 0.0 && r <= 4.0)) throw Error(ErrorKind::kInvalidArgument, "logistic r must lie in (0, 4]");
  std::vector<double> out;
  out.reserve(n);
  double x = x0;
  for (std::size_t it = 0; out.size() < n; ++it) {
    if (it >= transient) out.push_back(x);
    x = r * x * (1.0 - x);
  }
  return TimeSeries(std::move(out), "logistic");
}

TimeSeries lorenz(std::size_t n, const LorenzParams& p, std::size_t transient) {
  require_length(n);
  if (!(p.dt > 0.0 && p.dt <= 0.05)) throw Error(ErrorKind::kInvalidArgument, "lorenz dt must lie in (0, 0.05]");

  using State = std::array<double, 3>;
  const auto f = [&](const State& s) -> State {
    return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
  };
  const auto axpy = [](const State& s, double h, const State& k) -> State {
    return {s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]};
  };

  std::vector<double> out;
  out.reserve(n);
  State s = p.initial;
  const double h = p.dt;
  for (std::size_t it = 0; out.size() < n; ++it) {
    if (it >= transient) out.push_back(s[0]);
    const State k1 = f(s);
    const State k2 = f(axpy(s, h / 2, k1));
    const State k3 = f(axpy(s, h / 2, k2));
    const State k4 = f(axpy(s, h, k3));
    for (std::size_t i = 0; i < 3; ++i) {
      s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      check_bounded(s[i], it + 1);
    }
  }
  return TimeSeries(std::move(out), "lorenz");
}

TimeSeries sine(std::size_t n, double period, double amplitude, double phase) {
  require_length(n);
  if (!(period >= 2.0)) throw Error(ErrorKind::kInvalidArgument, "sine period must be >= 2 samples");
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) {
    // fmod is exact, so samples at the same phase are bit-identical.
    const double cycle = std::fmod(static_cast<double>(t), period) / period;
    out[t] = amplitude * std::sin(2.0 * std::numbers::pi * cycle + phase);
  }
  return TimeSeries(std::move(out), "sine");
}

TimeSeries white_noise(std::size_t n, std::uint64_t seed, double mean, double stddev) {
  require_length(n);
  if (!(stddev > 0.0)) throw Error(ErrorKind::kInvalidArgument, "noise stddev must be > 0");
  std::mt19937_64 engine(seed);
  const auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  std::vector<double> out;
  out.reserve(n + 1);
  while (out.size() < n) {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    out.push_back(mean + stddev * radius * std::cos(angle));
    out.push_back(mean + stddev * radius * std::sin(angle));
  }
  out.resize(n);
  return TimeSeries(std::move(out), "white_noise");
}

Kind parse_kind(const std::string& name) {
  if (name == "henon") return Kind::kHenon;
  if (name == "logistic") return Kind::kLogistic;
  if (name == "lorenz") return Kind::kLorenz;
  if (name == "sine") return Kind::kSine;
  if (name == "white_noise" || name == "noise") return Kind::kWhiteNoise;
  throw Error(ErrorKind::kInvalidArgument, "unknown generator kind '" + name + "'");
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::kHenon: return "henon";
    case Kind::kLogistic: return "logistic";
    case Kind::kLorenz: return "lorenz";
    case Kind::kSine: return "sine";
    case Kind::kWhiteNoise: return "white_noise";
  }
  return "unknown";
}

TimeSeries generate(const GeneratorSpec& spec) {
  const auto allowed = [&]() -> std::set<std::string> {
    switch (spec.kind) {
      case Kind::kHenon: return {"a", "b", "x0", "y0"};
      case Kind::kLogistic: return {"r", "x0"};
      case Kind::kLorenz: return {"dt", "sigma", "rho", "beta", "x0", "y0", "z0"};
      case Kind::kSine: return {"period", "amplitude", "phase"};
      case Kind::kWhiteNoise: return {"mean", "stddev"};
    }
    return {};
  }();
  for (const auto& [key, value] : spec.parameters) {
    if (!allowed.contains(key)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "parameter '" + key + "' does not apply to " + to_string(spec.kind));
    }
  }
  const auto get = [&](const char* key, double fallback) {
    const auto it = spec.parameters.find(key);
    return it == spec.parameters.end() ? fallback : it->second;
  };

  switch (spec.kind) {
    case Kind::kHenon:
      return henon(spec.length, get("a", 1.4), get("b", 0.3), get("x0", 0.1), get("y0", 0.1),
                   spec.transient);
    case Kind::kLogistic:
      return logistic(spec.length, get("r", 4.0), get("x0", 0.4), spec.transient);
    case Kind::kLorenz: {
      LorenzParams p;
      p.dt = get("dt", p.dt);
      p.sigma = get("sigma", p.sigma);
      p.rho = get("rho", p.rho);
      p.beta = get("beta", p.beta);
      p.initial = {get("x0", 1.0), get("y0", 1.0), get("z0", 1.0)};
      return lorenz(spec.length, p, spec.transient);
    }
    case Kind::kSine:
      if (!spec.parameters.contains("period")) {
        throw Error(ErrorKind::kInvalidArgument, "sine needs a period parameter");
      }
      return sine(spec.length, get("period", 0.0), get("amplitude", 1.0), get("phase", 0.0));
    case Kind::kWhiteNoise:
      return white_noise(spec.length, spec.seed, get("mean", 0.0), get("stddev", 1.0));
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown generator kind");
}

}  // namespace chaoskit::synth
