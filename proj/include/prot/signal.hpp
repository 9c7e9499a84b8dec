#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prot {

// How a signal was produced; carried along so runs can be reproduced and
// reports can echo the generator settings.
struct SignalMeta {
  std::string kind;
  std::string params;
  std::uint64_t seed = 0;
  double declared_max_rate = 0.0;  // generator slope bound, noise excluded
  bool noisy = false;
  double noise_amplitude = 0.0;
  std::uint64_t noise_seed = 0;
};

// Uniformly sampled real-valued time series.
struct Signal {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> samples;
  SignalMeta meta;

  std::size_t size() const { return samples.size(); }
  double time_at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
};

// samples[i] = x0 + rate * i * dt, one sample per step over [0, duration).
Signal ramp(double rate, double x0, double duration, double dt);

// Piecewise-linear rise/fall between min and max. period/2 must be a whole
// number of steps so peaks and troughs land exactly on samples; the final
// sample closes the last cycle back at min.
Signal triangle(double min, double max, double period, double dt, int cycles);

// One trapezoidal pulse per rate (rise at the rate, hold, fall at the same
// rate), separated by gaps at `low`, with a leading and trailing gap.
Signal trapezoid_pulses(const std::vector<double>& rates, double low, double high,
                        double plateau, double gap, double dt);

// Sum of 8 sinusoids with seeded random phases and log-spaced frequencies,
// rescaled to [lo, hi], then slope-limited to max_rate. Bit-identical for a
// given parameter set.
Signal smooth_random(std::uint64_t seed, double lo, double hi, double max_rate,
                     double duration, double dt);

// Adds per-sample uniform noise from [-amplitude, +amplitude].
Signal add_noise(const Signal& s, double amplitude, std::uint64_t seed);

}  // namespace prot
