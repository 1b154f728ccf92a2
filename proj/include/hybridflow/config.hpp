#pragma once

#include "hybridflow/params.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hybridflow {

// Anything wrong with the config file itself: unreadable, unparsable, missing
// or unknown keys, values out of range. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct McConfig {
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
};

struct SweepConfig {
  std::string parameter;  // lambda_slow, a, mu, sigma, lambda_fast, delta_p, eta
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t steps = 0;
  // lambda_slow sweeps move mu or a; a sweeps hold lambda_slow or mu fixed
  std::string vary = "mu";
  std::string hold = "lambda_slow";
};

struct OutputConfig {
  std::string path;    // empty = stdout
  std::string format;  // empty = command default
};

struct ExperimentConfig {
  FloorParams floor;
  FastParams fast;
  TraderParams trader;
  std::optional<McConfig> mc;
  std::optional<SweepConfig> sweep;
  std::optional<OutputConfig> output;
};

// Parses and validates a single JSON experiment file. Unknown keys anywhere
// are errors, as are missing blocks, wrong types, and parameter values the
// model rejects. Throws ConfigError with a message naming the offender.
ExperimentConfig load_config(const std::string& path);

}  // namespace hybridflow
