#pragma once

#include "prot/analysis.hpp"
#include "prot/config.hpp"
#include "prot/signal.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace prot {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct RunReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<Check> checks;
  std::vector<std::string> warnings;

  bool all_passed() const;
  std::string to_text() const;
};

// Generates the configured input signal, before any noise.
Signal make_signal(const ExperimentConfig& cfg);

// One device behind the three [device] kinds; comparator is stateless.
class QuantizerDevice {
 public:
  explicit QuantizerDevice(const DeviceParams& params);
  int step(double x);
  std::vector<int> run(std::span<const double> xs);
  int levels() const { return params_.levels; }

 private:
  DeviceParams params_;
  std::vector<MultinaryStack> stack_;        // 0 or 1 element
  std::vector<HystereticStack> hysteretic_;  // 0 or 1 element
};

// Periodic transfer orbit: loop area and orientation of the (input, output)
// curve over one period.
struct TransferOutcome {
  RunReport report;
  double area = 0.0;
  std::string orientation;  // clockwise | counterclockwise | degenerate
};
TransferOutcome run_transfer(const ExperimentConfig& cfg);

// Quantizer on a seeded smooth-random input; global shift of the output
// against the mid-band comparator estimated by cross-correlation.
struct DodecanaryOutcome {
  RunReport report;
  double xcorr_lead = 0.0;  // seconds; positive = output leads the comparator
};
DodecanaryOutcome run_dodecanary(const ExperimentConfig& cfg);

// Constant-rate triangles through all bands, one per rate; transition leads
// against the comparator tabulated next to band/(2|R|).
struct SweepRow {
  double rate = 0.0;
  int from_level = 0;
  int to_level = 0;
  double measured = 0.0;
  double predicted = 0.0;
};
struct SweepOutcome {
  RunReport report;
  std::vector<SweepRow> rows;
  double max_abs_deviation = 0.0;
};
SweepOutcome run_rate_sweep(const ExperimentConfig& cfg, const std::vector<double>& rates);

// Clean and noisy trapezoid pulse trains through the device, transition-count
// comparison plus clean per-pulse leads, with a memoryless comparator run for
// contrast. Check failures here are informative (CLI still exits 0).
struct NoiseOutcome {
  RunReport report;
  long clean_count = 0;
  long noisy_count = 0;
  long comparator_clean_count = 0;
  long comparator_noisy_count = 0;
  std::vector<LeadPair> clean_pairs;
};
NoiseOutcome run_noise_pulses(const ExperimentConfig& cfg);

// Sample-for-sample equivalence campaign between the composed cell, its
// closed-form transcription, and the block-network form.
struct VerifyOptions {
  long trials = 1000;
  std::uint64_t seed = 0;
  bool step_b_first = false;  // deliberately stale evaluation order, for testing
  double a = 0.2;
  double b = 0.8;
  double lo = -0.6;
  double hi = 1.8;
  double max_rate = 3.0;
  double duration = 3.0;
  double dt = 0.01;
};
struct VerifyDivergence {
  std::uint64_t trial_seed = 0;
  std::size_t sample_index = 0;
  int cell_output = 0;
  int reference_output = 0;
  int network_output = 0;
};
struct VerifyOutcome {
  RunReport report;
  long trials = 0;
  long divergent_trials = 0;
  std::vector<VerifyDivergence> divergences;  // first divergence per trial, capped
};
VerifyOutcome run_verify(const VerifyOptions& options);

}  // namespace prot
