#pragma once

#include "prot/cell.hpp"

#include <map>
#include <vector>

namespace prot {

// Per-level threshold adjustment, added to the default band edges of level m.
struct CellOffset {
  double da = 0.0;
  double db = 0.0;
};

inline constexpr double kDefaultBand = 0.6;

// M parallel anticipatory cells summed into an integer quantizer with levels
// 0..M. Level m switches on at m - 0.5 - band/2 and off at m - 0.5 + band/2;
// with the default band 0.6 that is m - 0.8 and m - 0.2. All cells start from
// a held input of 0 (everything off, arms set).
class MultinaryStack {
 public:
  explicit MultinaryStack(int levels, double band = kDefaultBand,
                          const std::map<int, CellOffset>& offsets = {}) {
    if (levels < 1) throw ConfigError("stack requires at least one level");
    if (!(band > 0.0 && band < 1.0)) {
      std::ostringstream os;
      os << "stack band must lie in (0, 1), got " << band;
      throw ConfigError(os.str());
    }
    for (const auto& [m, off] : offsets) {
      if (m < 1 || m > levels) {
        std::ostringstream os;
        os << "threshold override for level " << m << " outside 1.." << levels;
        throw ConfigError(os.str());
      }
      (void)off;
    }
    cells_.reserve(levels);
    double prev_a = 0.0, prev_b = 0.0;
    for (int m = 1; m <= levels; ++m) {
      double a = m - 0.5 - band / 2.0;
      double b = m - 0.5 + band / 2.0;
      if (auto it = offsets.find(m); it != offsets.end()) {
        a += it->second.da;
        b += it->second.db;
      }
      try {
        cells_.emplace_back(a, b, 0.0);
      } catch (const ConfigError& e) {
        std::ostringstream os;
        os << "stack level " << m << ": " << e.what();
        throw ConfigError(os.str());
      }
      if (m > 1 && !(a > prev_a && b > prev_b)) {
        std::ostringstream os;
        os << "stack level " << m << ": thresholds must increase with level";
        throw ConfigError(os.str());
      }
      prev_a = a;
      prev_b = b;
    }
  }

  int step(double x) {
    int sum = 0;
    for (auto& cell : cells_) sum += cell.step(x);
    return sum;
  }

  int output() const {
    int sum = 0;
    for (const auto& cell : cells_) sum += cell.output();
    return sum;
  }

  int levels() const { return static_cast<int>(cells_.size()); }
  const std::vector<ProtereticCell>& cells() const { return cells_; }
  std::vector<ProtereticCell>& cells() { return cells_; }

 private:
  std::vector<ProtereticCell> cells_;
};

// The counterclockwise comparison stack: one plain relay per level with the
// band mirrored about m - 0.5 (set = m - 0.5 + band/2, reset = m - 0.5 -
// band/2). Switches late where the anticipatory stack switches early.
class HystereticStack {
 public:
  explicit HystereticStack(int levels, double band = kDefaultBand) {
    if (levels < 1) throw ConfigError("stack requires at least one level");
    if (!(band > 0.0 && band < 1.0)) {
      std::ostringstream os;
      os << "stack band must lie in (0, 1), got " << band;
      throw ConfigError(os.str());
    }
    relays_.reserve(levels);
    for (int m = 1; m <= levels; ++m) {
      const double set = m - 0.5 + band / 2.0;
      const double reset = m - 0.5 - band / 2.0;
      relays_.push_back(RelayUnit::from_input(RelaySpec::noninverting(set, reset), 0.0, 0));
    }
  }

  int step(double x) {
    int sum = 0;
    for (auto& r : relays_) sum += r.step(x);
    return sum;
  }

  int output() const {
    int sum = 0;
    for (const auto& r : relays_) sum += r.output();
    return sum;
  }

  int levels() const { return static_cast<int>(relays_.size()); }

 private:
  std::vector<RelayUnit> relays_;
};

}  // namespace prot
