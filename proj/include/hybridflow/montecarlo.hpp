#pragma once

#include "hybridflow/impact.hpp"
#include "hybridflow/params.hpp"

#include <cstdint>
#include <functional>

namespace hybridflow::mc {

// Sample summary of an estimator run. The invariant stderr_mean =
// sqrt(variance / n) always holds; stderr_variance is the large-sample
// standard error of the sample variance, sqrt((m4 - s^4) / n) with m4 the
// fourth central moment, and is 0 where it has no meaning (transformed
// estimates).
struct SampleStats {
  double mean = 0.0;
  double variance = 0.0;
  double stderr_mean = 0.0;
  double stderr_variance = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
};

// threads: 0 = library default worker count, 1 = plain serial loop (the
// reference path), k > 1 = exactly k workers. Samples are generated in fixed
// 65536-draw chunks, chunk i from substream(i) of the seed's master stream,
// and chunk summaries are merged in chunk order, so results are bit-identical
// for every threads value.
struct McRun {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  int threads = 0;
};

SampleStats estimate_delay_moments(double q, const FloorParams& p, const McRun& run);
SampleStats estimate_impact_moments(double q, const ImpactLaw& law, const McRun& run);

// mean/variance of exp(s * tau(q)) resp. exp(s * I(q)). The estimator's own
// variance is finite only for s below half the MGF domain edge; beyond that
// the estimate still converges but its reported stderr understates the noise.
SampleStats estimate_delay_mgf(double s, double q, const FloorParams& p, const McRun& run);
SampleStats estimate_impact_mgf(double s, double q, const ImpactLaw& law, const McRun& run);

// Certainty-equivalent utility gain of buying q on the floor:
// -log E exp(-eta*q*(delta_p - I(q))). mean is the gain; variance and
// stderr_mean come from the delta method on the exponential average (the
// stderr_mean = sqrt(variance/n) invariant is preserved; stderr_variance is
// 0). Requires eta*q inside the cumulant domain. Throws std::overflow_error
// instead of clipping when an exponent exceeds the cap or the average
// underflows to zero.
SampleStats estimate_utility_gain(double q, const TraderParams& t, const ImpactLaw& law,
                                  const McRun& run);

// exponent cap for the exponential-average estimators
inline constexpr double kExpCap = 700.0;

// z-score of a sample MGF mean against exp(target_cumulant), computed on the
// log scale by the delta method: z = (log mean - target) / (stderr / mean).
double log_mgf_zscore(const SampleStats& s, double target_cumulant);

// Exhaustive scan of [lo, hi] at the given step (endpoints included), then
// golden-section refinement of the winning bracket down to 1e-8. max_value
// is the objective at the refined argmax. Non-finite objective values are
// skipped during the scan.
struct OracleResult {
  double argmax = 0.0;
  double max_value = 0.0;
  double grid_step = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

OracleResult grid_search(const std::function<double(double)>& objective, double lo, double hi,
                         double step);

// Same idea on a rectangle: full scan at the given step, then repeated 21x21
// zooms around the incumbent until the local step falls below 1e-8.
struct OracleResult2D {
  double argmax_x = 0.0;
  double argmax_y = 0.0;
  double max_value = 0.0;
  double grid_step = 0.0;
};

OracleResult2D grid_search_2d(const std::function<double(double, double)>& objective,
                              double x_lo, double x_hi, double y_lo, double y_hi, double step);

}  // namespace hybridflow::mc
