#include "prot/experiments.hpp"

#include "prot/csv.hpp"
#include "prot/errors.hpp"
#include "prot/network.hpp"
#include "prot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace prot {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string noisy_csv_path(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_noisy";
  }
  return path.substr(0, dot) + "_noisy" + path.substr(dot);
}

void maybe_write_csv(const OutputParams& out, const std::string& path,
                     const std::vector<CsvColumn>& columns) {
  if (path.empty()) return;
  if (out.columns.empty()) {
    write_csv(path, columns);
  } else {
    write_csv(path, select_columns(columns, out.columns));
  }
}

void adequacy_warning(RunReport& report, const ExperimentConfig& cfg) {
  if (cfg.device.kind == DeviceKind::Comparator) return;
  const double max_rate = cfg.signal.declared_max_rate();
  if (max_rate <= 0.0) return;
  const double bound = cfg.device.band / (4.0 * max_rate);
  if (cfg.run.dt > bound) {
    std::ostringstream os;
    os << "sampling adequacy violated: dt=" << fmt(cfg.run.dt)
       << " exceeds band/(4*max_rate)=" << fmt(bound);
    report.warnings.push_back(os.str());
  }
}

void add_device_info(RunReport& report, const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << device_kind_name(cfg.device.kind) << " levels=" << cfg.device.levels
     << " band=" << fmt(cfg.device.band);
  report.info.emplace_back("device", os.str());
}

std::vector<double> times(const Signal& s) {
  std::vector<double> t(s.samples.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = s.time_at(i);
  return t;
}

std::vector<double> to_real(std::span<const int> levels) {
  return {levels.begin(), levels.end()};
}

}  // namespace

bool RunReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "experiment: " << experiment << "\n";
  for (const auto& [key, value] : info) os << "  " << key << ": " << value << "\n";
  for (const auto& w : warnings) os << "  warning: " << w << "\n";
  for (const auto& c : checks) {
    os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << "result: " << (all_passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

Signal make_signal(const ExperimentConfig& cfg) {
  const SignalParams& s = cfg.signal;
  switch (s.kind) {
    case SignalKind::Ramp:
      if (!s.has_rate) {
        throw ConfigError("ramp signal needs 'rate' outside of a rate sweep");
      }
      return ramp(s.rate, s.x0, cfg.run.duration, cfg.run.dt);
    case SignalKind::Triangle:
      return triangle(s.min, s.max, s.period, cfg.run.dt, s.cycles);
    case SignalKind::Trapezoid:
      return trapezoid_pulses(s.rates, s.low, s.high, s.plateau, s.gap, cfg.run.dt);
    case SignalKind::SmoothRandom:
      return smooth_random(cfg.run.seed, s.lo, s.hi, s.max_rate, cfg.run.duration,
                           cfg.run.dt);
  }
  throw ConfigError("unknown signal kind");
}

QuantizerDevice::QuantizerDevice(const DeviceParams& params) : params_(params) {
  switch (params.kind) {
    case DeviceKind::Proteretic:
      stack_.emplace_back(params.levels, params.band, params.offsets);
      break;
    case DeviceKind::Hysteretic:
      hysteretic_.emplace_back(params.levels, params.band);
      break;
    case DeviceKind::Comparator:
      break;
  }
}

int QuantizerDevice::step(double x) {
  switch (params_.kind) {
    case DeviceKind::Proteretic: return stack_.front().step(x);
    case DeviceKind::Hysteretic: return hysteretic_.front().step(x);
    case DeviceKind::Comparator: return reference_quantize(x, params_.levels);
  }
  return 0;
}

std::vector<int> QuantizerDevice::run(std::span<const double> xs) {
  std::vector<int> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(step(x));
  return out;
}

TransferOutcome run_transfer(const ExperimentConfig& cfg) {
  if (cfg.signal.kind != SignalKind::Triangle) {
    throw ConfigError("transfer experiment needs a periodic (triangle) signal");
  }
  TransferOutcome outcome;
  RunReport& report = outcome.report;
  report.experiment = "transfer";
  add_device_info(report, cfg);
  adequacy_warning(report, cfg);

  Signal input = make_signal(cfg);
  report.info.emplace_back("signal", input.meta.kind + " " + input.meta.params);
  if (cfg.signal.noise_amplitude > 0.0) {
    input = add_noise(input, cfg.signal.noise_amplitude, cfg.signal.noise_seed);
    report.info.emplace_back("noise", "amplitude=" + fmt(cfg.signal.noise_amplitude) +
                                          " seed=" + std::to_string(cfg.signal.noise_seed));
  }

  QuantizerDevice device(cfg.device);
  const std::vector<int> y = device.run(input.samples);
  const auto period_samples =
      static_cast<std::size_t>(std::llround(cfg.signal.period / cfg.run.dt));
  outcome.area = orbit_signed_area(input, y, period_samples);

  constexpr double kDegenerate = 0.01;
  if (outcome.area > kDegenerate) outcome.orientation = "clockwise";
  else if (outcome.area < -kDegenerate) outcome.orientation = "counterclockwise";
  else outcome.orientation = "degenerate";

  report.info.emplace_back("orbit_area", fmt(outcome.area));
  report.info.emplace_back("orientation", outcome.orientation);

  std::string expected;
  switch (cfg.device.kind) {
    case DeviceKind::Proteretic: expected = "clockwise"; break;
    case DeviceKind::Hysteretic: expected = "counterclockwise"; break;
    case DeviceKind::Comparator: expected = "degenerate"; break;
  }
  report.checks.push_back({"loop orientation matches device kind",
                           outcome.orientation == expected,
                           "expected " + expected + ", area=" + fmt(outcome.area)});

  if (!cfg.output.csv.empty()) {
    maybe_write_csv(cfg.output, cfg.output.csv,
                    {CsvColumn::real("x", input.samples), CsvColumn::integer("y", y)});
  }
  if (!cfg.output.svg.empty()) {
    write_svg_chart(cfg.output.svg, "transfer orbit",
                    {{"output vs input", "red", input.samples, to_real(y)}});
  }
  return outcome;
}

DodecanaryOutcome run_dodecanary(const ExperimentConfig& cfg) {
  if (cfg.signal.kind != SignalKind::SmoothRandom) {
    throw ConfigError("dodecanary experiment needs a smooth_random signal");
  }
  DodecanaryOutcome outcome;
  RunReport& report = outcome.report;
  report.experiment = "dodecanary";
  add_device_info(report, cfg);
  adequacy_warning(report, cfg);

  Signal input = make_signal(cfg);
  report.info.emplace_back("signal", input.meta.kind + " " + input.meta.params);
  if (cfg.signal.noise_amplitude > 0.0) {
    input = add_noise(input, cfg.signal.noise_amplitude, cfg.signal.noise_seed);
    report.info.emplace_back("noise", "amplitude=" + fmt(cfg.signal.noise_amplitude) +
                                          " seed=" + std::to_string(cfg.signal.noise_seed));
  }

  QuantizerDevice device(cfg.device);
  const std::vector<int> y = device.run(input.samples);
  const std::vector<int> ref = reference_quantize_series(input.samples, cfg.device.levels);

  const auto n = static_cast<long>(y.size());
  long max_lag = std::llround(cfg.run.xcorr_max_lag / cfg.run.dt);
  max_lag = std::min(max_lag, (n - 1) / 2);
  max_lag = std::max(max_lag, 1L);

  bool estimated = true;
  try {
    outcome.xcorr_lead = delay_by_xcorr(y, ref, static_cast<int>(max_lag), cfg.run.dt);
  } catch (const InputError& e) {
    estimated = false;
    report.checks.push_back({"cross-correlation lead", false, e.what()});
  }
  if (estimated) {
    report.info.emplace_back("xcorr_lead_s", fmt(outcome.xcorr_lead));
    switch (cfg.device.kind) {
      case DeviceKind::Proteretic:
        report.checks.push_back({"output leads reference (xcorr > 0)",
                                 outcome.xcorr_lead > 0.0,
                                 "lead=" + fmt(outcome.xcorr_lead) + " s"});
        break;
      case DeviceKind::Hysteretic:
        report.checks.push_back({"output lags reference (xcorr < 0)",
                                 outcome.xcorr_lead < 0.0,
                                 "lead=" + fmt(outcome.xcorr_lead) + " s"});
        break;
      case DeviceKind::Comparator:
        report.checks.push_back({"output aligned with reference (xcorr == 0)",
                                 outcome.xcorr_lead == 0.0,
                                 "lead=" + fmt(outcome.xcorr_lead) + " s"});
        break;
    }
  }

  const auto [mn, mx] = std::minmax_element(y.begin(), y.end());
  report.checks.push_back(
      {"output within 0..levels", *mn >= 0 && *mx <= cfg.device.levels,
       "min=" + std::to_string(*mn) + " max=" + std::to_string(*mx)});

  if (!cfg.output.csv.empty()) {
    maybe_write_csv(cfg.output, cfg.output.csv,
                    {CsvColumn::real("t", times(input)),
                     CsvColumn::real("x", input.samples), CsvColumn::integer("y", y),
                     CsvColumn::integer("ref", ref)});
  }
  if (!cfg.output.svg.empty()) {
    write_svg_chart(cfg.output.svg, "quantizer output vs input",
                    {{"input", "blue", times(input), input.samples},
                     {"output", "red", times(input), to_real(y)}});
  }
  return outcome;
}

SweepOutcome run_rate_sweep(const ExperimentConfig& cfg, const std::vector<double>& rates) {
  if (cfg.signal.kind != SignalKind::Ramp) {
    throw ConfigError("rate sweep needs a ramp signal");
  }
  if (rates.empty()) throw ConfigError("rate sweep needs at least one rate");
  for (double r : rates) {
    if (!(std::isfinite(r)) || r == 0.0) {
      throw ConfigError("rate sweep rates must be nonzero (lead diverges at rate 0)");
    }
  }

  SweepOutcome outcome;
  RunReport& report = outcome.report;
  report.experiment = "sweep";
  add_device_info(report, cfg);
  {
    std::ostringstream os;
    for (std::size_t i = 0; i < rates.size(); ++i) os << (i ? "," : "") << rates[i];
    report.info.emplace_back("rates", os.str());
  }

  const double dt = cfg.run.dt;
  const int levels = cfg.device.levels;
  bool all_matched = true;
  for (double rate : rates) {
    const double span = static_cast<double>(levels) + 1.0;
    const auto n_half =
        static_cast<long long>(std::ceil(span / (std::abs(rate) * dt)));
    const double min = -0.5;
    const double max = min + std::abs(rate) * static_cast<double>(n_half) * dt;
    const double period = 2.0 * static_cast<double>(n_half) * dt;
    const Signal input = triangle(min, max, period, dt, 1);

    QuantizerDevice device(cfg.device);
    const std::vector<int> y = device.run(input.samples);
    const std::vector<int> ref = reference_quantize_series(input.samples, levels);
    const auto dev_trans = extract_transitions(y, input.t0, dt);
    const auto ref_trans = extract_transitions(ref, input.t0, dt);
    const LeadReport leads = measure_leads(dev_trans, ref_trans, input, cfg.device.band);
    if (!leads.unmatched_device.empty() || !leads.unmatched_reference.empty()) {
      all_matched = false;
      std::ostringstream os;
      os << "rate " << fmt(rate) << ": " << leads.unmatched_device.size()
         << " device / " << leads.unmatched_reference.size()
         << " reference transitions unmatched";
      report.warnings.push_back(os.str());
    }
    for (const auto& p : leads.pairs) {
      outcome.rows.push_back({rate, p.device.from_level, p.device.to_level, p.lead,
                              p.predicted});
      outcome.max_abs_deviation =
          std::max(outcome.max_abs_deviation, std::abs(p.lead - p.predicted));
    }
  }

  report.info.emplace_back("matched_pairs", std::to_string(outcome.rows.size()));
  report.info.emplace_back("max_abs_deviation_s", fmt(outcome.max_abs_deviation));
  report.checks.push_back({"all transitions matched", all_matched, ""});
  report.checks.push_back({"leads within 2*dt of band/(2|R|)",
                           outcome.max_abs_deviation <= 2.0 * dt,
                           "max deviation " + fmt(outcome.max_abs_deviation) + " s vs " +
                               fmt(2.0 * dt) + " s"});

  if (!cfg.output.csv.empty()) {
    std::vector<double> col_rate, col_meas, col_pred, col_dev;
    std::vector<int> col_from, col_to;
    for (const auto& row : outcome.rows) {
      col_rate.push_back(row.rate);
      col_from.push_back(row.from_level);
      col_to.push_back(row.to_level);
      col_meas.push_back(row.measured);
      col_pred.push_back(row.predicted);
      col_dev.push_back(row.measured - row.predicted);
    }
    maybe_write_csv(cfg.output, cfg.output.csv,
                    {CsvColumn::real("rate", col_rate), CsvColumn::integer("from_level", col_from),
                     CsvColumn::integer("to_level", col_to),
                     CsvColumn::real("measured_lead", col_meas),
                     CsvColumn::real("predicted_lead", col_pred),
                     CsvColumn::real("deviation", col_dev)});
  }
  if (!cfg.output.svg.empty()) {
    std::vector<double> xs, measured, predicted;
    for (const auto& row : outcome.rows) {
      xs.push_back(std::abs(row.rate));
      measured.push_back(row.measured);
      predicted.push_back(row.predicted);
    }
    write_svg_chart(cfg.output.svg, "lead vs rate",
                    {{"predicted", "blue", xs, predicted}, {"measured", "red", xs, measured}});
  }
  return outcome;
}

NoiseOutcome run_noise_pulses(const ExperimentConfig& cfg) {
  if (cfg.signal.kind != SignalKind::Trapezoid) {
    throw ConfigError("noise experiment needs a trapezoid signal");
  }
  NoiseOutcome outcome;
  RunReport& report = outcome.report;
  report.experiment = "noise";
  add_device_info(report, cfg);
  adequacy_warning(report, cfg);

  const Signal clean = make_signal(cfg);
  const Signal noisy = add_noise(clean, cfg.signal.noise_amplitude, cfg.signal.noise_seed);
  report.info.emplace_back("signal", clean.meta.kind + " " + clean.meta.params);
  report.info.emplace_back("noise", "amplitude=" + fmt(cfg.signal.noise_amplitude) +
                                        " seed=" + std::to_string(cfg.signal.noise_seed));
  const double half_band = cfg.device.band / 2.0;
  if (cfg.signal.noise_amplitude >= half_band) {
    report.warnings.push_back("noise amplitude " + fmt(cfg.signal.noise_amplitude) +
                              " is not below half-band " + fmt(half_band) +
                              "; immunity is not expected to hold");
  }

  QuantizerDevice clean_device(cfg.device);
  QuantizerDevice noisy_device(cfg.device);
  const std::vector<int> y_clean = clean_device.run(clean.samples);
  const std::vector<int> y_noisy = noisy_device.run(noisy.samples);
  const std::vector<int> ref_clean =
      reference_quantize_series(clean.samples, cfg.device.levels);
  const std::vector<int> ref_noisy =
      reference_quantize_series(noisy.samples, cfg.device.levels);

  outcome.clean_count = transition_count(y_clean);
  outcome.noisy_count = transition_count(y_noisy);
  outcome.comparator_clean_count = transition_count(ref_clean);
  outcome.comparator_noisy_count = transition_count(ref_noisy);

  report.info.emplace_back("clean_transitions", std::to_string(outcome.clean_count));
  report.info.emplace_back("noisy_transitions", std::to_string(outcome.noisy_count));
  report.info.emplace_back("comparator_clean_transitions",
                           std::to_string(outcome.comparator_clean_count));
  report.info.emplace_back("comparator_noisy_transitions",
                           std::to_string(outcome.comparator_noisy_count));

  report.checks.push_back(
      {"noisy transition count equals clean count",
       outcome.noisy_count == outcome.clean_count,
       std::to_string(outcome.noisy_count) + " vs " + std::to_string(outcome.clean_count)});

  // Leads are taken from the clean run; noise moves individual crossing times
  // by up to amplitude/|R|, far beyond the 2*dt budget of the law itself.
  const auto dev_trans = extract_transitions(y_clean, clean.t0, clean.dt);
  const auto ref_trans = extract_transitions(ref_clean, clean.t0, clean.dt);
  const LeadReport leads = measure_leads(dev_trans, ref_trans, clean, cfg.device.band);
  outcome.clean_pairs = leads.pairs;
  const bool leads_ok =
      leads.unmatched_device.empty() && leads.unmatched_reference.empty() &&
      !leads.pairs.empty() && leads.max_abs_deviation() <= 2.0 * clean.dt;
  report.checks.push_back({"clean per-pulse leads within 2*dt of band/(2|R|)", leads_ok,
                           "max deviation " + fmt(leads.max_abs_deviation()) + " s"});

  report.checks.push_back({"comparator spurs on the same noise",
                           outcome.comparator_noisy_count > outcome.comparator_clean_count,
                           std::to_string(outcome.comparator_noisy_count) + " vs " +
                               std::to_string(outcome.comparator_clean_count)});

  if (!cfg.output.csv.empty()) {
    maybe_write_csv(cfg.output, cfg.output.csv,
                    {CsvColumn::real("t", times(clean)), CsvColumn::real("x", clean.samples),
                     CsvColumn::integer("y", y_clean), CsvColumn::integer("ref", ref_clean)});
    maybe_write_csv(cfg.output, noisy_csv_path(cfg.output.csv),
                    {CsvColumn::real("t", times(noisy)), CsvColumn::real("x", noisy.samples),
                     CsvColumn::integer("y", y_noisy), CsvColumn::integer("ref", ref_noisy)});
  }
  if (!cfg.output.svg.empty()) {
    write_svg_chart(cfg.output.svg, "noisy pulses",
                    {{"input", "blue", times(noisy), noisy.samples},
                     {"output", "red", times(noisy), to_real(y_noisy)}});
  }
  return outcome;
}

VerifyOutcome run_verify(const VerifyOptions& options) {
  if (options.trials < 1) throw ConfigError("verify needs at least one trial");

  VerifyOutcome outcome;
  RunReport& report = outcome.report;
  report.experiment = "verify";
  {
    std::ostringstream os;
    os << "trials=" << options.trials << " seed=" << options.seed << " a=" << options.a
       << " b=" << options.b << " range=[" << options.lo << "," << options.hi
       << "] max_rate=" << options.max_rate << " dt=" << options.dt;
    report.info.emplace_back("campaign", os.str());
  }
  if (options.step_b_first) {
    report.info.emplace_back("mode", "deliberately stale evaluation order (B before A)");
  }

  constexpr std::size_t kMaxRecorded = 8;
  std::mt19937_64 seeder(options.seed);
  const std::string netlist = cell_network_description(options.a, options.b, 0.0);

  for (long trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t trial_seed = seeder();
    const Signal input = smooth_random(trial_seed, options.lo, options.hi,
                                       options.max_rate, options.duration, options.dt);
    ProtereticCell cell(options.a, options.b, 0.0);
    CellState state{cell.relay_a.output(), cell.relay_b.output()};
    BlockNetwork net = BlockNetwork::build(netlist);

    for (std::size_t i = 0; i < input.samples.size(); ++i) {
      const double x = input.samples[i];
      int cell_out;
      if (options.step_b_first) {
        cell_out = cell.relay_b.step(x + cell.relay_a.output());
        cell.relay_a.step(x);
      } else {
        cell_out = cell.step(x);
      }
      const auto [next_state, ref_out] =
          cell_reference_step(state, options.a, options.b, x);
      state = next_state;
      const int net_out = static_cast<int>(net.step(x));
      if (cell_out != ref_out || cell_out != net_out) {
        ++outcome.divergent_trials;
        if (outcome.divergences.size() < kMaxRecorded) {
          outcome.divergences.push_back({trial_seed, i, cell_out, ref_out, net_out});
        }
        break;
      }
    }
  }
  outcome.trials = options.trials;

  std::ostringstream os;
  os << outcome.divergent_trials << " divergent trials of " << outcome.trials;
  if (!outcome.divergences.empty()) {
    const auto& d = outcome.divergences.front();
    os << "; first: trial_seed=" << d.trial_seed << " sample=" << d.sample_index
       << " cell=" << d.cell_output << " reference=" << d.reference_output
       << " network=" << d.network_output;
  }
  report.checks.push_back(
      {"cell == reference == network on every sample", outcome.divergent_trials == 0,
       os.str()});
  return outcome;
}

}  // namespace prot
