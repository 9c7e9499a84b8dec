#include "prot/config.hpp"

#include "prot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace prot {

double SignalParams::declared_max_rate() const {
  switch (kind) {
    case SignalKind::Ramp: {
      double r = has_rate ? std::abs(rate) : 0.0;
      for (double v : rates) r = std::max(r, std::abs(v));
      return r;
    }
    case SignalKind::Triangle:
      return (max - min) / (period / 2.0);
    case SignalKind::Trapezoid: {
      double r = 0.0;
      for (double v : rates) r = std::max(r, v);
      return r;
    }
    case SignalKind::SmoothRandom:
      return max_rate;
  }
  return 0.0;
}

const char* device_kind_name(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Proteretic: return "proteretic";
    case DeviceKind::Hysteretic: return "hysteretic";
    case DeviceKind::Comparator: return "comparator";
  }
  return "?";
}

const char* signal_kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::Ramp: return "ramp";
    case SignalKind::Triangle: return "triangle";
    case SignalKind::Trapezoid: return "trapezoid";
    case SignalKind::SmoothRandom: return "smooth_random";
  }
  return "?";
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool consumed = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(int line, const std::string& message) {
  std::ostringstream os;
  os << "config line " << line << ": " << message;
  throw ConfigError(os.str());
}

[[noreturn]] void fail_key(const std::string& section, const std::string& key,
                           const std::string& message) {
  std::ostringstream os;
  os << "config [" << section << "] " << key << ": " << message;
  throw ConfigError(os.str());
}

class ConfigReader {
 public:
  explicit ConfigReader(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line_no = 0;
    std::string section;
    while (std::getline(is, raw)) {
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail_line(line_no, "unterminated section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section != "run" && section != "device" && section != "signal" &&
            section != "output") {
          fail_line(line_no, "unknown section [" + section + "]");
        }
        sections_.try_emplace(section);
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail_line(line_no, "expected 'key = value'");
      if (section.empty()) fail_line(line_no, "key outside any [section]");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail_line(line_no, "empty key");
      if (value.empty()) fail_line(line_no, "empty value for key '" + key + "'");
      auto [it, inserted] = sections_[section].try_emplace(key, Entry{value, line_no});
      if (!inserted) {
        fail_line(line_no, "duplicate key '" + key + "' in [" + section + "]");
      }
    }
  }

  bool has(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
  }

  Entry* find(const std::string& section, const std::string& key) {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.consumed = true;
    return &k->second;
  }

  std::string require_string(const std::string& section, const std::string& key) {
    Entry* e = find(section, key);
    if (!e) {
      throw ConfigError("config: missing required key '" + key + "' in [" + section + "]");
    }
    return e->value;
  }

  double require_real(const std::string& section, const std::string& key) {
    return parse_real(section, key, require_string(section, key));
  }

  double optional_real(const std::string& section, const std::string& key,
                       double fallback) {
    Entry* e = find(section, key);
    return e ? parse_real(section, key, e->value) : fallback;
  }

  long long require_int(const std::string& section, const std::string& key) {
    return parse_int(section, key, require_string(section, key));
  }

  long long optional_int(const std::string& section, const std::string& key,
                         long long fallback) {
    Entry* e = find(section, key);
    return e ? parse_int(section, key, e->value) : fallback;
  }

  std::string optional_string(const std::string& section, const std::string& key,
                              std::string fallback) {
    Entry* e = find(section, key);
    return e ? e->value : std::move(fallback);
  }

  Section* section(const std::string& name) {
    auto s = sections_.find(name);
    return s == sections_.end() ? nullptr : &s->second;
  }

  void reject_unconsumed() const {
    for (const auto& [name, sec] : sections_) {
      for (const auto& [key, entry] : sec) {
        if (!entry.consumed) {
          std::ostringstream os;
          os << "config line " << entry.line << ": unknown key '" << key << "' in ["
             << name << "]";
          throw ConfigError(os.str());
        }
      }
    }
  }

  static double parse_real(const std::string& section, const std::string& key,
                           const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
      fail_key(section, key, "expected a finite number, got '" + text + "'");
    }
    return v;
  }

  static long long parse_int(const std::string& section, const std::string& key,
                             const std::string& text) {
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0') {
      fail_key(section, key, "expected an integer, got '" + text + "'");
    }
    return v;
  }

 private:
  std::map<std::string, Section> sections_;
};

std::vector<double> parse_real_list(const std::string& section, const std::string& key,
                                    const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    out.push_back(ConfigReader::parse_real(section, key, trim(item)));
  }
  if (out.empty()) fail_key(section, key, "expected a comma-separated list of numbers");
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    const std::string name = trim(item);
    if (!name.empty()) out.push_back(name);
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ConfigReader reader(text);
  ExperimentConfig cfg;

  cfg.run.dt = reader.require_real("run", "dt");
  if (!(cfg.run.dt > 0.0)) fail_key("run", "dt", "must be positive");
  if (reader.has("run", "duration")) {
    cfg.run.duration = reader.optional_real("run", "duration", 0.0);
    cfg.run.has_duration = true;
    if (!(cfg.run.duration > 0.0)) fail_key("run", "duration", "must be positive");
  }
  cfg.run.seed = static_cast<std::uint64_t>(reader.optional_int("run", "seed", 0));
  cfg.run.xcorr_max_lag = reader.optional_real("run", "xcorr_max_lag", 0.6);
  if (!(cfg.run.xcorr_max_lag > 0.0)) fail_key("run", "xcorr_max_lag", "must be positive");

  const std::string kind = reader.require_string("device", "kind");
  if (kind == "proteretic") cfg.device.kind = DeviceKind::Proteretic;
  else if (kind == "hysteretic") cfg.device.kind = DeviceKind::Hysteretic;
  else if (kind == "comparator") cfg.device.kind = DeviceKind::Comparator;
  else fail_key("device", "kind", "must be proteretic, hysteretic or comparator");

  cfg.device.levels = static_cast<int>(reader.require_int("device", "levels"));
  if (cfg.device.levels < 1) fail_key("device", "levels", "must be >= 1");
  cfg.device.band = reader.optional_real("device", "band", kDefaultBand);
  if (!(cfg.device.band > 0.0 && cfg.device.band < 1.0)) {
    std::ostringstream os;
    os << "band out of range: got " << cfg.device.band << ", need 0 < band < 1";
    fail_key("device", "band", os.str());
  }
  if (Section* dev = reader.section("device")) {
    for (auto& [key, entry] : *dev) {
      const bool is_da = key.rfind("da_", 0) == 0;
      const bool is_db = key.rfind("db_", 0) == 0;
      if (!is_da && !is_db) continue;
      entry.consumed = true;
      if (cfg.device.kind != DeviceKind::Proteretic) {
        fail_key("device", key, "threshold overrides apply to the proteretic device only");
      }
      const long long m = ConfigReader::parse_int("device", key, key.substr(3));
      if (m < 1 || m > cfg.device.levels) {
        fail_key("device", key, "level outside 1..levels");
      }
      const double v = ConfigReader::parse_real("device", key, entry.value);
      auto& off = cfg.device.offsets[static_cast<int>(m)];
      (is_da ? off.da : off.db) = v;
    }
  }

  const std::string skind = reader.require_string("signal", "kind");
  if (skind == "ramp") cfg.signal.kind = SignalKind::Ramp;
  else if (skind == "triangle") cfg.signal.kind = SignalKind::Triangle;
  else if (skind == "trapezoid") cfg.signal.kind = SignalKind::Trapezoid;
  else if (skind == "smooth_random") cfg.signal.kind = SignalKind::SmoothRandom;
  else fail_key("signal", "kind", "must be ramp, triangle, trapezoid or smooth_random");

  switch (cfg.signal.kind) {
    case SignalKind::Ramp: {
      if (reader.has("signal", "rate")) {
        cfg.signal.rate = reader.optional_real("signal", "rate", 0.0);
        cfg.signal.has_rate = true;
      }
      if (reader.has("signal", "rates")) {
        cfg.signal.rates =
            parse_real_list("signal", "rates", reader.require_string("signal", "rates"));
      }
      if (!cfg.signal.has_rate && cfg.signal.rates.empty()) {
        throw ConfigError("config: signal kind ramp needs 'rate' (or 'rates' for sweeps)");
      }
      cfg.signal.x0 = reader.optional_real("signal", "x0", 0.0);
      if (cfg.signal.has_rate && !cfg.run.has_duration) {
        throw ConfigError("config: ramp signals need [run] duration");
      }
      break;
    }
    case SignalKind::Triangle: {
      cfg.signal.min = reader.require_real("signal", "min");
      cfg.signal.max = reader.require_real("signal", "max");
      cfg.signal.period = reader.require_real("signal", "period");
      cfg.signal.cycles = static_cast<int>(reader.optional_int("signal", "cycles", 1));
      if (!(cfg.signal.max > cfg.signal.min)) fail_key("signal", "max", "must exceed min");
      if (!(cfg.signal.period > 0.0)) fail_key("signal", "period", "must be positive");
      if (cfg.signal.cycles < 1) fail_key("signal", "cycles", "must be >= 1");
      break;
    }
    case SignalKind::Trapezoid: {
      cfg.signal.rates =
          parse_real_list("signal", "rates", reader.require_string("signal", "rates"));
      for (double r : cfg.signal.rates) {
        if (!(r > 0.0)) fail_key("signal", "rates", "pulse rates must be positive");
      }
      cfg.signal.low = reader.optional_real("signal", "low", 0.0);
      cfg.signal.high = reader.require_real("signal", "high");
      cfg.signal.plateau = reader.require_real("signal", "plateau");
      cfg.signal.gap = reader.require_real("signal", "gap");
      if (!(cfg.signal.high > cfg.signal.low)) fail_key("signal", "high", "must exceed low");
      break;
    }
    case SignalKind::SmoothRandom: {
      cfg.signal.lo = reader.require_real("signal", "lo");
      cfg.signal.hi = reader.require_real("signal", "hi");
      cfg.signal.max_rate = reader.require_real("signal", "max_rate");
      if (!(cfg.signal.hi > cfg.signal.lo)) fail_key("signal", "hi", "must exceed lo");
      if (!(cfg.signal.max_rate > 0.0)) fail_key("signal", "max_rate", "must be positive");
      if (!cfg.run.has_duration) {
        throw ConfigError("config: smooth_random signals need [run] duration");
      }
      break;
    }
  }
  cfg.signal.noise_amplitude = reader.optional_real("signal", "noise_amplitude", 0.0);
  if (cfg.signal.noise_amplitude < 0.0) {
    fail_key("signal", "noise_amplitude", "must be >= 0");
  }
  cfg.signal.noise_seed =
      static_cast<std::uint64_t>(reader.optional_int("signal", "noise_seed", 0));

  cfg.output.csv = reader.optional_string("output", "csv", "");
  cfg.output.svg = reader.optional_string("output", "svg", "");
  if (reader.has("output", "columns")) {
    cfg.output.columns = parse_name_list(reader.require_string("output", "columns"));
  }

  // Adequacy gate: a banded device must see several samples per band crossing
  // or the discrete run diverges from the continuous-time semantics.
  if (cfg.device.kind != DeviceKind::Comparator) {
    const double max_rate = cfg.signal.declared_max_rate();
    if (max_rate > 0.0) {
      const double bound = cfg.device.band / (4.0 * max_rate);
      if (cfg.run.dt > bound) {
        std::ostringstream os;
        os << "sampling adequacy violated: dt=" << cfg.run.dt
           << " exceeds band/(4*max_rate)=" << bound << " (band=" << cfg.device.band
           << ", max_rate=" << max_rate << ")";
        throw ConfigError(os.str());
      }
    }
  }

  reader.reject_unconsumed();
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config file: " + path);
  std::ostringstream os;
  os << file.rdbuf();
  return parse_config(os.str());
}

}  // namespace prot
