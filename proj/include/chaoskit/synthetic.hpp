#ifndef CHAOSKIT_SYNTHETIC_HPP
#define CHAOSKIT_SYNTHETIC_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "chaoskit/timeseries.hpp"

namespace chaoskit::synth {

inline constexpr std::size_t kDefaultTransient = 1000;

/// x-component of x' = 1 - a x^2 + y, y' = b x. Sample 0 is the state after
/// `transient` iterations. Throws kDivergence once |x| reaches 1e6.
TimeSeries henon(std::size_t n, double a = 1.4, double b = 0.3, double x0 = 0.1,
                 double y0 = 0.1, std::size_t transient = kDefaultTransient);

/// x' = r x (1 - x).
TimeSeries logistic(std::size_t n, double r = 4.0, double x0 = 0.4,
                    std::size_t transient = kDefaultTransient);

struct LorenzParams {
  double dt = 0.01;
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  std::array<double, 3> initial{1.0, 1.0, 1.0};
};

/// x-component of the Lorenz flow integrated with fixed-step classic RK4,
/// one sample per step.
TimeSeries lorenz(std::size_t n, const LorenzParams& params = {},
                  std::size_t transient = kDefaultTransient);

/// amplitude * sin(2 pi t / period + phase), t = 0, 1, ...
TimeSeries sine(std::size_t n, double period, double amplitude = 1.0, double phase = 0.0);

/**
 * @brief Seeded Gaussian noise, reproducible bit-for-bit from the seed.
 *
 * Generator (version 1): std::mt19937_64 seeded with `seed`. Each 64-bit draw
 * w becomes u = (w >> 11) * 2^-53 in [0, 1). Normals come in pairs from the
 * Box-Muller transform with u1 = 1 - u_a (so u1 is in (0, 1]) and u2 = u_b:
 * z0 = sqrt(-2 ln u1) cos(2 pi u2), z1 = sqrt(-2 ln u1) sin(2 pi u2),
 * emitted in that order. Output is mean + stddev * z.
 */
TimeSeries white_noise(std::size_t n, std::uint64_t seed, double mean = 0.0, double stddev = 1.0);

inline constexpr int kNoiseGeneratorVersion = 1;

enum class Kind { kHenon, kLogistic, kLorenz, kSine, kWhiteNoise };

Kind parse_kind(const std::string& name);
std::string to_string(Kind kind);

/// Generator description used by the CLI. Unknown parameter names are rejected.
struct GeneratorSpec {
  Kind kind = Kind::kHenon;
  std::map<std::string, double> parameters;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  std::size_t transient = kDefaultTransient;
};

TimeSeries generate(const GeneratorSpec& spec);

}  // namespace chaoskit::synth

#endif  // CHAOSKIT_SYNTHETIC_HPP
