#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace hybridflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;    // config/file/parse problems
inline constexpr int kExitDomain = 3;    // model domain violations
inline constexpr int kExitStatGate = 4;  // a statistical check failed

struct Options {
  std::string config_path;
  std::string mode = "hybrid";         // optimize only: fast | floor | hybrid
  std::optional<std::uint64_t> seed;   // overrides mc.seed and HYBRIDFLOW_SEED
  std::string out_path;                // overrides output.path; empty = config/stdout
  std::string format;                  // overrides output.format; empty = default
  int threads = 0;                     // simulate only; never echoed in reports
};

// Each command loads the config, runs, and writes its report to `out` or to
// the resolved output path. Diagnostics go to `err`. Returns an exit code.
// Reports are byte-identical across runs and thread counts for a fixed
// (config, seed).
int run_validate(const Options& opt, std::ostream& out, std::ostream& err);
int run_optimize(const Options& opt, std::ostream& out, std::ostream& err);
int run_sweep(const Options& opt, std::ostream& out, std::ostream& err);
int run_curves(const Options& opt, std::ostream& out, std::ostream& err);
int run_simulate(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace hybridflow::cli
