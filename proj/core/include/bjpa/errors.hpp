#pragma once

#include <stdexcept>
#include <string>

namespace bjpa {

/// Invalid user input: bad design parameters, malformed configuration,
/// schema violations. Maps to exit code 2 in the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A well-formed request that cannot be computed: singular operating point,
/// unreachable gain target, coverage gap. Maps to exit code 1 in the CLI.
class ComputeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bjpa
