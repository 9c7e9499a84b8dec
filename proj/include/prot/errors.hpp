#pragma once

#include <stdexcept>
#include <string>

namespace prot {

// Invalid configuration: bad thresholds, bad generator parameters, bad
// experiment description. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid runtime input to an otherwise valid object (non-finite sample,
// empty signal, degenerate series).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed block-network description (cycle, dangling wire, missing
// input/output block).
class BuildError : public std::runtime_error {
 public:
  explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace prot
