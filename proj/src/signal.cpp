#include "prot/signal.hpp"

#include "prot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace prot {
namespace {

void require_step(double dt) {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    std::ostringstream os;
    os << "signal step must be positive and finite, got " << dt;
    throw ConfigError(os.str());
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string("signal parameter '") + name + "' must be finite");
  }
}

// 53-bit uniform in [0, 1); engine output is pinned by the standard, so the
// stream is identical across platforms.
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::string format_params(const std::ostringstream& os) { return os.str(); }

}  // namespace

Signal ramp(double rate, double x0, double duration, double dt) {
  require_step(dt);
  require_finite(rate, "rate");
  require_finite(x0, "x0");
  if (!(std::isfinite(duration) && duration >= dt)) {
    std::ostringstream os;
    os << "ramp duration must be at least dt, got duration=" << duration << " dt=" << dt;
    throw ConfigError(os.str());
  }
  const auto n = static_cast<std::size_t>(std::llround(duration / dt));
  Signal s;
  s.dt = dt;
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.samples[i] = x0 + rate * static_cast<double>(i) * dt;
  }
  std::ostringstream os;
  os << "rate=" << rate << " x0=" << x0 << " duration=" << duration;
  s.meta = SignalMeta{"ramp", format_params(os), 0, std::abs(rate)};
  return s;
}

Signal triangle(double min, double max, double period, double dt, int cycles) {
  require_step(dt);
  require_finite(min, "min");
  require_finite(max, "max");
  require_finite(period, "period");
  if (!(max > min)) {
    std::ostringstream os;
    os << "triangle requires max > min, got min=" << min << " max=" << max;
    throw ConfigError(os.str());
  }
  if (!(period >= 4.0 * dt)) {
    std::ostringstream os;
    os << "triangle period must be at least 4*dt, got period=" << period << " dt=" << dt;
    throw ConfigError(os.str());
  }
  if (cycles < 1) throw ConfigError("triangle needs at least one cycle");
  const double half = period / 2.0;
  const auto n_half = static_cast<std::size_t>(std::llround(half / dt));
  if (std::abs(static_cast<double>(n_half) * dt - half) > 1e-9 * period) {
    std::ostringstream os;
    os << "triangle period/2 must be a whole number of steps (period=" << period
       << ", dt=" << dt << ")";
    throw ConfigError(os.str());
  }
  Signal s;
  s.dt = dt;
  s.samples.reserve(static_cast<std::size_t>(cycles) * 2 * n_half + 1);
  const double span = max - min;
  for (int c = 0; c < cycles; ++c) {
    for (std::size_t i = 0; i < n_half; ++i)
      s.samples.push_back(min + span * static_cast<double>(i) / static_cast<double>(n_half));
    for (std::size_t i = 0; i < n_half; ++i)
      s.samples.push_back(max - span * static_cast<double>(i) / static_cast<double>(n_half));
  }
  s.samples.push_back(min);
  std::ostringstream os;
  os << "min=" << min << " max=" << max << " period=" << period << " cycles=" << cycles;
  s.meta = SignalMeta{"triangle", format_params(os), 0, span / half};
  return s;
}

Signal trapezoid_pulses(const std::vector<double>& rates, double low, double high,
                        double plateau, double gap, double dt) {
  require_step(dt);
  require_finite(low, "low");
  require_finite(high, "high");
  require_finite(plateau, "plateau");
  require_finite(gap, "gap");
  if (rates.empty()) throw ConfigError("trapezoid needs at least one rate");
  for (double r : rates) {
    if (!(std::isfinite(r) && r > 0.0)) {
      std::ostringstream os;
      os << "trapezoid rates must be positive, got " << r;
      throw ConfigError(os.str());
    }
  }
  if (!(high > low)) {
    std::ostringstream os;
    os << "trapezoid requires high > low, got low=" << low << " high=" << high;
    throw ConfigError(os.str());
  }
  if (plateau < 0.0 || gap < 0.0) throw ConfigError("trapezoid plateau and gap must be >= 0");

  struct Segment {
    double duration;
    double start_value;
    double slope;
  };
  std::vector<Segment> segments;
  segments.push_back({gap, low, 0.0});
  for (double r : rates) {
    const double rise = (high - low) / r;
    segments.push_back({rise, low, r});
    segments.push_back({plateau, high, 0.0});
    segments.push_back({rise, high, -r});
    segments.push_back({gap, low, 0.0});
  }
  double total = 0.0;
  for (const auto& seg : segments) total += seg.duration;

  Signal s;
  s.dt = dt;
  const auto n = static_cast<std::size_t>(std::llround(total / dt)) + 1;
  s.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    double acc = 0.0;
    double v = low;
    for (const auto& seg : segments) {
      if (t < acc + seg.duration) {
        v = seg.start_value + seg.slope * (t - acc);
        break;
      }
      acc += seg.duration;
    }
    s.samples[i] = v;
  }
  std::ostringstream os;
  os << "rates=";
  for (std::size_t i = 0; i < rates.size(); ++i) os << (i ? "," : "") << rates[i];
  os << " low=" << low << " high=" << high << " plateau=" << plateau << " gap=" << gap;
  s.meta = SignalMeta{"trapezoid", format_params(os), 0,
                      *std::max_element(rates.begin(), rates.end())};
  return s;
}

Signal smooth_random(std::uint64_t seed, double lo, double hi, double max_rate,
                     double duration, double dt) {
  require_step(dt);
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (!(hi > lo)) {
    std::ostringstream os;
    os << "smooth_random requires hi > lo, got lo=" << lo << " hi=" << hi;
    throw ConfigError(os.str());
  }
  if (!(std::isfinite(max_rate) && max_rate > 0.0)) {
    std::ostringstream os;
    os << "smooth_random max_rate must be positive, got " << max_rate;
    throw ConfigError(os.str());
  }
  if (!(std::isfinite(duration) && duration >= dt)) {
    std::ostringstream os;
    os << "smooth_random duration must be at least dt, got " << duration;
    throw ConfigError(os.str());
  }

  constexpr int kComponents = 8;
  std::mt19937_64 eng(seed);
  double phases[kComponents];
  for (double& p : phases) p = 2.0 * std::numbers::pi * uniform01(eng);

  // Frequencies well above the slope the limiter allows, so band crossings
  // happen at the limit rate rather than hovering near turning points.
  const double f_lo = 2.0 / duration;
  const double f_hi = 32.0 / duration;
  double freqs[kComponents];
  for (int k = 0; k < kComponents; ++k) {
    freqs[k] = f_lo * std::pow(f_hi / f_lo,
                               static_cast<double>(k) / (kComponents - 1));
  }

  const auto n = static_cast<std::size_t>(std::llround(duration / dt)) + 1;
  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    double v = 0.0;
    for (int k = 0; k < kComponents; ++k)
      v += std::sin(2.0 * std::numbers::pi * freqs[k] * t + phases[k]);
    raw[i] = v;
  }
  const auto [mn_it, mx_it] = std::minmax_element(raw.begin(), raw.end());
  const double mn = *mn_it, mx = *mx_it;
  if (!(mx > mn)) throw ConfigError("smooth_random produced a degenerate waveform");

  Signal s;
  s.dt = dt;
  s.samples.resize(n);
  const double step = max_rate * dt;
  s.samples[0] = lo + (hi - lo) * (raw[0] - mn) / (mx - mn);
  for (std::size_t i = 1; i < n; ++i) {
    const double target = lo + (hi - lo) * (raw[i] - mn) / (mx - mn);
    s.samples[i] = std::clamp(target, s.samples[i - 1] - step, s.samples[i - 1] + step);
  }
  std::ostringstream os;
  os << "seed=" << seed << " lo=" << lo << " hi=" << hi << " max_rate=" << max_rate
     << " duration=" << duration;
  s.meta = SignalMeta{"smooth_random", format_params(os), seed, max_rate};
  return s;
}

Signal add_noise(const Signal& s, double amplitude, std::uint64_t seed) {
  if (!(std::isfinite(amplitude) && amplitude >= 0.0)) {
    std::ostringstream os;
    os << "noise amplitude must be >= 0, got " << amplitude;
    throw ConfigError(os.str());
  }
  Signal out = s;
  out.meta.noisy = true;
  out.meta.noise_amplitude = amplitude;
  out.meta.noise_seed = seed;
  if (amplitude == 0.0) return out;
  std::mt19937_64 eng(seed);
  for (double& v : out.samples) v += amplitude * (2.0 * uniform01(eng) - 1.0);
  return out;
}

}  // namespace prot
