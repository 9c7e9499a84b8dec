#pragma once

#include "prot/signal.hpp"

#include <span>
#include <vector>

namespace prot {

// Memoryless mid-band comparator: number of thresholds {m - 0.5 : m = 1..M}
// at or below x, i.e. clamp(floor(x + 0.5), 0, M). Half-way values round up.
int reference_quantize(double x, int levels);

std::vector<int> reference_quantize_series(std::span<const double> xs, int levels);

// One level change in a quantized series.
struct Transition {
  std::size_t index = 0;
  double time = 0.0;
  int from_level = 0;
  int to_level = 0;
};

std::vector<Transition> extract_transitions(std::span<const int> levels, double t0,
                                            double dt);

long transition_count(std::span<const int> levels);

// Lead of a band-(a, b) device over the mid-band comparator on a constant
// slope R: (b - a) / (2|R|). Diverges as R -> 0; rejected there.
double predicted_lead(double a, double b, double rate);

// A device transition paired with the matching comparator transition.
struct LeadPair {
  Transition device;
  Transition reference;
  double lead = 0.0;              // reference.time - device.time; positive = device first
  double rate_at_crossing = 0.0;  // central difference of the input at the reference crossing
  double predicted = 0.0;         // band / (2 |rate_at_crossing|)
};

struct LeadReport {
  std::vector<LeadPair> pairs;
  std::vector<Transition> unmatched_device;
  std::vector<Transition> unmatched_reference;

  double max_abs_deviation() const;  // max |lead - predicted| over pairs
};

// Greedy in-order matching of equal (from, to) transitions between the device
// series and the reference series. Unmatched transitions are reported, never
// dropped.
LeadReport measure_leads(const std::vector<Transition>& device,
                         const std::vector<Transition>& reference,
                         const Signal& input, double band);

// Lag k* maximizing the mean product of y against y_ref shifted k samples
// later, k in [-max_lag, max_lag]; returns k* . dt. Positive means y leads
// y_ref. Ties break toward the smallest |k|, positive before negative.
double delay_by_xcorr(std::span<const int> y, std::span<const int> y_ref, int max_lag,
                      double dt);

// Trapezoidal loop integral of y dx over one period with periodic indexing.
// Positive area = clockwise traversal of the (x, y) plane.
double orbit_signed_area(const Signal& x, std::span<const int> y,
                         std::size_t period_samples);

}  // namespace prot
