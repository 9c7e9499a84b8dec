#include "prot/analysis.hpp"

#include "prot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prot {

int reference_quantize(double x, int levels) {
  const double rounded = std::floor(x + 0.5);
  if (rounded < 0.0) return 0;
  if (rounded > levels) return levels;
  return static_cast<int>(rounded);
}

std::vector<int> reference_quantize_series(std::span<const double> xs, int levels) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(reference_quantize(x, levels));
  return out;
}

std::vector<Transition> extract_transitions(std::span<const int> levels, double t0,
                                            double dt) {
  if (levels.empty()) throw InputError("transition extraction needs a non-empty series");
  std::vector<Transition> out;
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] != levels[i - 1]) {
      out.push_back({i, t0 + static_cast<double>(i) * dt, levels[i - 1], levels[i]});
    }
  }
  return out;
}

long transition_count(std::span<const int> levels) {
  if (levels.empty()) throw InputError("transition count needs a non-empty series");
  long count = 0;
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != levels[i - 1]) ++count;
  return count;
}

double predicted_lead(double a, double b, double rate) {
  if (!(b > a)) {
    std::ostringstream os;
    os << "predicted lead requires b > a, got a=" << a << " b=" << b;
    throw InputError(os.str());
  }
  if (!(std::isfinite(rate)) || rate == 0.0) {
    throw InputError("lead is undefined at rate 0: a constant input never crosses");
  }
  return (b - a) / (2.0 * std::abs(rate));
}

double LeadReport::max_abs_deviation() const {
  double worst = 0.0;
  for (const auto& p : pairs) worst = std::max(worst, std::abs(p.lead - p.predicted));
  return worst;
}

namespace {

double rate_at(const Signal& input, std::size_t i) {
  const auto n = input.samples.size();
  if (n < 2) return 0.0;
  if (i == 0) return (input.samples[1] - input.samples[0]) / input.dt;
  if (i + 1 >= n) return (input.samples[n - 1] - input.samples[n - 2]) / input.dt;
  return (input.samples[i + 1] - input.samples[i - 1]) / (2.0 * input.dt);
}

}  // namespace

LeadReport measure_leads(const std::vector<Transition>& device,
                         const std::vector<Transition>& reference,
                         const Signal& input, double band) {
  LeadReport report;
  std::size_t j = 0;
  for (const auto& d : device) {
    std::size_t k = j;
    while (k < reference.size() && (reference[k].from_level != d.from_level ||
                                    reference[k].to_level != d.to_level)) {
      ++k;
    }
    if (k == reference.size()) {
      report.unmatched_device.push_back(d);
      continue;
    }
    for (std::size_t s = j; s < k; ++s) report.unmatched_reference.push_back(reference[s]);
    const Transition& r = reference[k];
    LeadPair pair;
    pair.device = d;
    pair.reference = r;
    pair.lead = r.time - d.time;
    pair.rate_at_crossing = rate_at(input, r.index);
    pair.predicted = band / (2.0 * std::abs(pair.rate_at_crossing));
    report.pairs.push_back(pair);
    j = k + 1;
  }
  for (std::size_t s = j; s < reference.size(); ++s)
    report.unmatched_reference.push_back(reference[s]);
  return report;
}

double delay_by_xcorr(std::span<const int> y, std::span<const int> y_ref, int max_lag,
                      double dt) {
  if (y.size() != y_ref.size()) throw InputError("cross-correlation needs equal lengths");
  const auto n = static_cast<long>(y.size());
  if (max_lag < 0 || 2L * max_lag >= n) {
    std::ostringstream os;
    os << "cross-correlation max_lag must satisfy 0 <= max_lag < length/2, got max_lag="
       << max_lag << " length=" << n;
    throw InputError(os.str());
  }
  const auto constant = [](std::span<const int> s) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] != s[0]) return false;
    return true;
  };
  if (constant(y) || constant(y_ref)) {
    throw InputError("cross-correlation is undefined for a constant series");
  }

  // Mean product over the overlap window, so shorter overlaps at large lags
  // are not penalized by the missing terms.
  const auto score = [&](long k) {
    const long i0 = std::max(0L, -k);
    const long i1 = std::min(n, n - k);
    double s = 0.0;
    for (long i = i0; i < i1; ++i)
      s += static_cast<double>(y[static_cast<std::size_t>(i)]) *
           static_cast<double>(y_ref[static_cast<std::size_t>(i + k)]);
    return s / static_cast<double>(i1 - i0);
  };

  long best_k = 0;
  double best = score(0);
  for (long k = 1; k <= max_lag; ++k) {
    for (long signed_k : {k, -k}) {
      const double s = score(signed_k);
      if (s > best) {
        best = s;
        best_k = signed_k;
      }
    }
  }
  return static_cast<double>(best_k) * dt;
}

double orbit_signed_area(const Signal& x, std::span<const int> y,
                         std::size_t period_samples) {
  if (period_samples < 3) throw InputError("orbit area needs at least 3 samples per period");
  if (x.samples.size() < period_samples || y.size() < period_samples) {
    std::ostringstream os;
    os << "orbit area needs at least one full period (" << period_samples
       << " samples), got " << std::min(x.samples.size(), y.size());
    throw InputError(os.str());
  }
  const std::size_t p = period_samples;
  double area = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    const double next = x.samples[(i + 1) % p];
    const double prev = x.samples[(i + p - 1) % p];
    area += static_cast<double>(y[i]) * (next - prev) / 2.0;
  }
  return area;
}

}  // namespace prot
