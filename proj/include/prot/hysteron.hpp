#pragma once

#include "prot/errors.hpp"

#include <cmath>
#include <span>
#include <sstream>
#include <vector>

namespace prot {

enum class Polarity { Noninverting, Inverting };

// Threshold pair of a bi-stable relay. set_threshold drives the output to 1,
// reset_threshold drives it to 0; between them the previous output is held.
//
// For Polarity::Noninverting:
//   - output -> 1 when x > set_threshold
//   - output -> 0 when x < reset_threshold
//   - requires set_threshold >= reset_threshold
//
// For Polarity::Inverting:
//   - output -> 1 when x < set_threshold
//   - output -> 0 when x > reset_threshold
//   - requires set_threshold <= reset_threshold
//
// Comparisons are strict: a sample exactly on a threshold holds state.
struct RelaySpec {
  Polarity polarity = Polarity::Noninverting;
  double set_threshold = 0.0;
  double reset_threshold = 0.0;

  static RelaySpec noninverting(double set, double reset) {
    return RelaySpec{Polarity::Noninverting, set, reset};
  }
  static RelaySpec inverting(double set, double reset) {
    return RelaySpec{Polarity::Inverting, set, reset};
  }

  void validate() const {
    if (!std::isfinite(set_threshold) || !std::isfinite(reset_threshold)) {
      throw ConfigError("relay thresholds must be finite");
    }
    if (polarity == Polarity::Noninverting && set_threshold < reset_threshold) {
      std::ostringstream os;
      os << "noninverting relay requires set_threshold >= reset_threshold, got set="
         << set_threshold << " reset=" << reset_threshold;
      throw ConfigError(os.str());
    }
    if (polarity == Polarity::Inverting && set_threshold > reset_threshold) {
      std::ostringstream os;
      os << "inverting relay requires set_threshold <= reset_threshold, got set="
         << set_threshold << " reset=" << reset_threshold;
      throw ConfigError(os.str());
    }
  }
};

// A single relay with its bi-stable state. Plain mutable value; step() is the
// whole update rule.
class RelayUnit {
 public:
  RelayUnit(const RelaySpec& spec, int initial_output)
      : spec_(spec), output_(initial_output ? 1 : 0) {
    spec_.validate();
  }

  // State the relay settles into if x0 is held forever. Strictly on the set
  // side -> 1, strictly on the reset side -> 0, inside the retention band
  // (thresholds included) -> in_band_default.
  static RelayUnit from_input(const RelaySpec& spec, double x0, int in_band_default) {
    spec.validate();
    if (!std::isfinite(x0)) throw InputError("relay initial input must be finite");
    int out = in_band_default ? 1 : 0;
    if (spec.polarity == Polarity::Noninverting) {
      if (x0 > spec.set_threshold) out = 1;
      else if (x0 < spec.reset_threshold) out = 0;
    } else {
      if (x0 < spec.set_threshold) out = 1;
      else if (x0 > spec.reset_threshold) out = 0;
    }
    return RelayUnit(spec, out);
  }

  int step(double x) {
    if (!std::isfinite(x)) throw InputError("relay input must be finite");
    if (spec_.polarity == Polarity::Noninverting) {
      if (x > spec_.set_threshold) output_ = 1;
      else if (x < spec_.reset_threshold) output_ = 0;
    } else {
      if (x < spec_.set_threshold) output_ = 1;
      else if (x > spec_.reset_threshold) output_ = 0;
    }
    return output_;
  }

  std::vector<int> run(std::span<const double> xs) {
    if (xs.empty()) throw InputError("relay input sequence must be non-empty");
    std::vector<int> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back(step(x));
    return out;
  }

  const RelaySpec& spec() const { return spec_; }
  int output() const { return output_; }

 private:
  RelaySpec spec_;
  int output_;
};

}  // namespace prot
