#include "hybridflow/montecarlo.hpp"

#include "hybridflow/rng.hpp"
#include "hybridflow/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hybridflow::mc {

namespace {

constexpr std::uint64_t kChunkSize = 1u << 16;

struct ChunkMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;  // centered power sums
  double m3 = 0.0;
  double m4 = 0.0;
  bool overflow = false;
};

ChunkMoments moments_of(std::span<const double> xs) {
  ChunkMoments out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  double c2 = 0.0, c3 = 0.0, c4 = 0.0;
  for (double x : xs) {
    const double d = x - out.mean;
    const double d2 = d * d;
    c2 += d2;
    c3 += d2 * d;
    c4 += d2 * d2;
  }
  out.m2 = c2;
  out.m3 = c3;
  out.m4 = c4;
  return out;
}

// pairwise combination of centered power sums (Pebay's update)
void merge_into(ChunkMoments& a, const ChunkMoments& b) {
  a.overflow = a.overflow || b.overflow;
  if (b.n == 0) return;
  if (a.n == 0) {
    const bool of = a.overflow;
    a = b;
    a.overflow = of;
    return;
  }
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  const double n = na + nb;
  const double d = b.mean - a.mean;
  const double d2 = d * d;
  const double m2 = a.m2 + b.m2 + d2 * na * nb / n;
  const double m3 = a.m3 + b.m3 + d * d2 * na * nb * (na - nb) / (n * n) +
                    3.0 * d * (na * b.m2 - nb * a.m2) / n;
  const double m4 = a.m4 + b.m4 +
                    d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * d2 * (na * na * b.m2 + nb * nb * a.m2) / (n * n) +
                    4.0 * d * (na * b.m3 - nb * a.m3) / n;
  a.mean += d * nb / n;
  a.m2 = m2;
  a.m3 = m3;
  a.m4 = m4;
  a.n += b.n;
}

template <typename Kernel>  // double(RngStream&, bool& overflow)
ChunkMoments run_chunks(const McRun& run, Kernel&& kernel) {
  if (run.n == 0) {
    throw std::invalid_argument("monte carlo run: n must be >= 1");
  }
  if (run.threads < 0) {
    throw std::invalid_argument("monte carlo run: threads must be >= 0");
  }
  const std::uint64_t n_chunks = (run.n + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkMoments> partials(n_chunks);
  const RngStream root(run.seed);

  auto one_chunk = [&](std::uint64_t c) {
    const std::uint64_t lo = c * kChunkSize;
    const std::uint64_t len = std::min<std::uint64_t>(kChunkSize, run.n - lo);
    RngStream stream = root.substream(c);
    std::vector<double> buf(len);
    bool overflow = false;
    for (double& x : buf) x = kernel(stream, overflow);
    partials[c] = moments_of(buf);
    partials[c].overflow = overflow;
  };

  if (run.threads == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) one_chunk(c);
  } else {
#ifdef _OPENMP
    const int workers = run.threads > 0 ? run.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(n_chunks); ++c) {
      one_chunk(static_cast<std::uint64_t>(c));
    }
#else
    for (std::uint64_t c = 0; c < n_chunks; ++c) one_chunk(c);
#endif
  }

  ChunkMoments total;  // merged in chunk order, independent of the worker count
  for (const ChunkMoments& p : partials) merge_into(total, p);
  return total;
}

SampleStats stats_from(const ChunkMoments& m, std::uint64_t seed) {
  SampleStats s;
  s.n = m.n;
  s.seed = seed;
  s.mean = m.mean;
  const double n = static_cast<double>(m.n);
  if (m.n > 1) {
    s.variance = m.m2 / (n - 1.0);
    s.stderr_mean = std::sqrt(s.variance / n);
    const double m2n = m.m2 / n;
    const double m4n = m.m4 / n;
    s.stderr_variance = std::sqrt(std::max(0.0, m4n - m2n * m2n) / n);
  }
  return s;
}

double checked_exp(double e, bool& overflow) {
  if (e > kExpCap) {
    overflow = true;
    return 0.0;
  }
  return std::exp(e);
}

}  // namespace

SampleStats estimate_delay_moments(double q, const FloorParams& p, const McRun& run) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("estimate_delay_moments: q must be > 0");
  }
  auto total = run_chunks(run, [&](RngStream& s, bool&) { return sample_delay(q, p, s); });
  return stats_from(total, run.seed);
}

SampleStats estimate_impact_moments(double q, const ImpactLaw& law, const McRun& run) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("estimate_impact_moments: q must be > 0");
  }
  auto total = run_chunks(run, [&](RngStream& s, bool&) { return sample_impact(q, law, s); });
  return stats_from(total, run.seed);
}

SampleStats estimate_delay_mgf(double s, double q, const FloorParams& p, const McRun& run) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("estimate_delay_mgf: q must be > 0");
  }
  delay_kernel(s, p);  // domain check up front
  auto total = run_chunks(run, [&](RngStream& g, bool& of) {
    return checked_exp(s * sample_delay(q, p, g), of);
  });
  if (total.overflow) {
    throw std::overflow_error("estimate_delay_mgf: exponent exceeded the cap");
  }
  return stats_from(total, run.seed);
}

SampleStats estimate_impact_mgf(double s, double q, const ImpactLaw& law, const McRun& run) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("estimate_impact_mgf: q must be > 0");
  }
  impact_cumulant(s, law);  // domain check up front
  auto total = run_chunks(run, [&](RngStream& g, bool& of) {
    return checked_exp(s * sample_impact(q, law, g), of);
  });
  if (total.overflow) {
    throw std::overflow_error("estimate_impact_mgf: exponent exceeded the cap");
  }
  return stats_from(total, run.seed);
}

SampleStats estimate_utility_gain(double q, const TraderParams& t, const ImpactLaw& law,
                                  const McRun& run) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("estimate_utility_gain: q must be > 0");
  }
  if (!(t.eta * q < law.cumulant_sup())) {
    throw std::domain_error("estimate_utility_gain: eta*q outside the cumulant domain");
  }
  auto total = run_chunks(run, [&](RngStream& g, bool& of) {
    const double impact = sample_impact(q, law, g);
    return checked_exp(-t.eta * q * (t.delta_p - impact), of);
  });
  if (total.overflow) {
    throw std::overflow_error("estimate_utility_gain: exponent exceeded the cap");
  }
  const SampleStats raw = stats_from(total, run.seed);
  if (!(raw.mean > 0.0)) {
    throw std::overflow_error("estimate_utility_gain: exponential average underflowed to zero");
  }
  SampleStats out;
  out.n = raw.n;
  out.seed = raw.seed;
  out.mean = -std::log(raw.mean);
  out.variance = raw.variance / (raw.mean * raw.mean);
  out.stderr_mean = std::sqrt(out.variance / static_cast<double>(out.n));
  out.stderr_variance = 0.0;
  return out;
}

double log_mgf_zscore(const SampleStats& s, double target_cumulant) {
  // se(log mean) ~= stderr_mean / mean by the delta method
  return (std::log(s.mean) - target_cumulant) * s.mean / s.stderr_mean;
}

OracleResult grid_search(const std::function<double(double)>& objective, double lo, double hi,
                         double step) {
  if (!(hi > lo) || !(step > 0.0)) {
    throw std::invalid_argument("grid_search: need hi > lo and step > 0");
  }
  OracleResult out;
  out.grid_step = step;
  out.lo = lo;
  out.hi = hi;

  double best_x = lo;
  double best_v = -std::numeric_limits<double>::infinity();
  const auto n_steps = static_cast<std::uint64_t>(std::floor((hi - lo) / step));
  for (std::uint64_t i = 0; i <= n_steps; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    const double v = objective(x);
    if (std::isfinite(v) && v > best_v) {
      best_v = v;
      best_x = x;
    }
  }
  {
    const double v = objective(hi);
    if (std::isfinite(v) && v > best_v) {
      best_v = v;
      best_x = hi;
    }
  }

  // golden-section refinement of the winning bracket
  double a = std::max(lo, best_x - step);
  double b = std::min(hi, best_x + step);
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > 1e-8) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  out.argmax = 0.5 * (a + b);
  out.max_value = objective(out.argmax);
  if (best_v > out.max_value) {  // refinement never loses to the scan
    out.argmax = best_x;
    out.max_value = best_v;
  }
  return out;
}

OracleResult2D grid_search_2d(const std::function<double(double, double)>& objective,
                              double x_lo, double x_hi, double y_lo, double y_hi, double step) {
  if (!(x_hi > x_lo) || !(y_hi > y_lo) || !(step > 0.0)) {
    throw std::invalid_argument("grid_search_2d: need nonempty rectangle and step > 0");
  }
  OracleResult2D out;
  out.grid_step = step;

  double best_x = x_lo, best_y = y_lo;
  double best_v = -std::numeric_limits<double>::infinity();
  auto scan = [&](double ax, double bx, double ay, double by, double h) {
    const auto nx = static_cast<std::uint64_t>(std::floor((bx - ax) / h));
    const auto ny = static_cast<std::uint64_t>(std::floor((by - ay) / h));
    for (std::uint64_t i = 0; i <= nx + 1; ++i) {
      const double x = i <= nx ? ax + static_cast<double>(i) * h : bx;
      for (std::uint64_t j = 0; j <= ny + 1; ++j) {
        const double y = j <= ny ? ay + static_cast<double>(j) * h : by;
        const double v = objective(x, y);
        if (std::isfinite(v) && v > best_v) {
          best_v = v;
          best_x = x;
          best_y = y;
        }
      }
    }
  };

  scan(x_lo, x_hi, y_lo, y_hi, step);
  double h = step;
  while (h > 1e-8) {
    const double next = h / 10.0;
    scan(std::max(x_lo, best_x - h), std::min(x_hi, best_x + h),
         std::max(y_lo, best_y - h), std::min(y_hi, best_y + h), next);
    h = next;
  }
  out.argmax_x = best_x;
  out.argmax_y = best_y;
  out.max_value = best_v;
  return out;
}

}  // namespace hybridflow::mc
