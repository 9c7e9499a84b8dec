#pragma once

#include "prot/hysteron.hpp"

#include <utility>

namespace prot {

// Two-relay feedforward cell with a clockwise (anticipatory) loop.
//
//   x ----> A (inverting, set=a, reset=b) --+
//    \                                      v
//     +----------------------------------> sum --> B (noninverting,
//                                                      set=1+a, reset=b) --> y
//
// A holds 1 while the input sits below the band and re-arms the adder; B then
// fires as soon as x rises above a (u = x + 1 > 1 + a) and releases at the
// first drop below b once A has let go. Net effect: on-threshold a, off-
// threshold b with a < b, the reverse of a plain relay over the same band.
//
// A direction reversal inside (a, b) is latched: the cell only re-engages at
// x > 1 + a and only lets go below x < b - 1.
class ProtereticCell {
 public:
  // Initial relay states are derived from holding x0; in-band defaults are
  // A=1, B=0 (the state reached by approaching x0 from below).
  ProtereticCell(double a, double b, double x0)
      : a_(a),
        b_(b),
        relay_a(make_relay_a(a, b, x0)),
        relay_b(make_relay_b(a, b, x0, relay_a.output())) {}

  int step(double x) {
    const int ya = relay_a.step(x);      // A first: B must see this sample's arm state
    return relay_b.step(x + ya);
  }

  double on_threshold() const { return a_; }
  double off_threshold() const { return b_; }
  int output() const { return relay_b.output(); }

  RelayUnit relay_a;
  RelayUnit relay_b;

 private:
  static void validate_band(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw ConfigError("cell thresholds must be finite");
    }
    if (!(a < b)) {
      std::ostringstream os;
      os << "cell requires a < b, got a=" << a << " b=" << b;
      throw ConfigError(os.str());
    }
    if (!(b - a < 1.0)) {
      std::ostringstream os;
      os << "cell band width must be < 1, got b-a=" << (b - a);
      throw ConfigError(os.str());
    }
  }

  static RelayUnit make_relay_a(double a, double b, double x0) {
    validate_band(a, b);
    return RelayUnit::from_input(RelaySpec::inverting(a, b), x0, 1);
  }

  static RelayUnit make_relay_b(double a, double b, double x0, int a_output) {
    return RelayUnit::from_input(RelaySpec::noninverting(1.0 + a, b), x0 + a_output, 0);
  }

  double a_;
  double b_;
};

// Joint relay state of a cell, for the closed-form transcription below.
struct CellState {
  int a_state = 0;
  int b_state = 0;
  bool operator==(const CellState&) const = default;
};

// Monolithic one-step transcription of the cell, kept independent of
// ProtereticCell so the two can cross-check each other. Must agree with
// ProtereticCell::step sample for sample.
inline std::pair<CellState, int> cell_reference_step(CellState state, double a,
                                                     double b, double x) {
  if (!std::isfinite(x)) throw InputError("cell input must be finite");
  int an = state.a_state;
  if (x < a) an = 1;
  else if (x > b) an = 0;
  const double u = x + an;
  int bn = state.b_state;
  if (u > 1.0 + a) bn = 1;
  else if (u < b) bn = 0;
  return {CellState{an, bn}, bn};
}

}  // namespace prot
