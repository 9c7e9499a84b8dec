#pragma once

#include "prot/stack.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace prot {

enum class DeviceKind { Proteretic, Hysteretic, Comparator };
enum class SignalKind { Ramp, Triangle, Trapezoid, SmoothRandom };

struct RunParams {
  double dt = 0.0;
  double duration = 0.0;
  bool has_duration = false;
  std::uint64_t seed = 0;
  double xcorr_max_lag = 0.6;  // seconds
};

struct DeviceParams {
  DeviceKind kind = DeviceKind::Proteretic;
  int levels = 1;
  double band = kDefaultBand;
  std::map<int, CellOffset> offsets;
};

struct SignalParams {
  SignalKind kind = SignalKind::Ramp;
  // ramp
  double rate = 0.0;
  bool has_rate = false;
  double x0 = 0.0;
  // ramp sweeps and trapezoid pulses
  std::vector<double> rates;
  // triangle
  double min = 0.0;
  double max = 0.0;
  double period = 0.0;
  int cycles = 1;
  // trapezoid
  double low = 0.0;
  double high = 0.0;
  double plateau = 0.0;
  double gap = 0.0;
  // smooth_random
  double lo = 0.0;
  double hi = 0.0;
  double max_rate = 0.0;
  // noise applies to any kind
  double noise_amplitude = 0.0;
  std::uint64_t noise_seed = 0;

  // Slope bound declared by the generator parameters (noise excluded).
  double declared_max_rate() const;
};

struct OutputParams {
  std::string csv;
  std::string svg;
  std::vector<std::string> columns;  // empty = all columns of the experiment
};

// Parsed experiment description: [run] / [device] / [signal] / [output]
// sections of key = value lines, # comments, order-insensitive within a
// section, unknown keys rejected. The sampling-adequacy rule
// dt <= band / (4 * max_rate) is enforced at load for banded devices.
struct ExperimentConfig {
  RunParams run;
  DeviceParams device;
  SignalParams signal;
  OutputParams output;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

const char* device_kind_name(DeviceKind kind);
const char* signal_kind_name(SignalKind kind);

}  // namespace prot
