#include "hybridflow/solver.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace hybridflow {

namespace {

// Root of a continuous, eventually decreasing function with f(lo) > 0.
// If f(hi) is still positive, hi creeps toward hi_cap (an asymptote where
// f -> -inf) until the sign flips.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double hi_cap, double tol) {
  double f_hi = f(hi);
  for (int expand = 0; f_hi >= 0.0 && expand < 64; ++expand) {
    lo = hi;
    hi = hi_cap - (hi_cap - hi) / 8.0;
    f_hi = f(hi);
  }
  if (f_hi >= 0.0) {
    throw std::runtime_error("bisect_root: no sign change located");
  }
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string_view to_string(Corner c) {
  switch (c) {
    case Corner::kInterior: return "interior";
    case Corner::kAllFloor: return "all_floor";
    case Corner::kAllFast: return "all_fast";
  }
  return "unknown";
}

double sweep_profit(double q, const TraderParams& t, const FastParams& f) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("sweep_profit: q must be >= 0");
  }
  return q * t.delta_p - 0.5 * f.lambda_fast * q * q;
}

double floor_gain(double q, const TraderParams& t, const ImpactLaw& law) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("floor_gain: q must be >= 0");
  }
  if (q == 0.0) {
    return 0.0;
  }
  return t.eta * q * t.delta_p - q * impact_cumulant(t.eta * q, law);
}

double hybrid_gain(double q_fast, double q_floor, const TraderParams& t,
                   const FastParams& f, const ImpactLaw& law) {
  if (!(q_fast >= 0.0) || !(q_floor >= 0.0)) {
    throw std::invalid_argument("hybrid_gain: leg sizes must be >= 0");
  }
  const double q_total = q_fast + q_floor;
  double g = t.eta * q_total * t.delta_p - 0.5 * t.eta * f.lambda_fast * q_fast * q_fast -
             t.eta * q_floor * f.lambda_fast * q_fast;
  if (q_floor > 0.0) {
    g -= q_floor * impact_cumulant(t.eta * q_floor, law);
  }
  return g;
}

FastTrade fast_optimal(const TraderParams& t, const FastParams& f) {
  const double q = t.delta_p / f.lambda_fast;
  return {q, 0.5 * t.delta_p * t.delta_p / f.lambda_fast};
}

FloorTrade floor_optimal(const TraderParams& t, const ImpactLaw& law) {
  const double q_sup = feasible_size_sup(t.eta, law);
  auto residual = [&](double q) {
    const double s = t.eta * q;
    return t.eta * t.delta_p - impact_cumulant(s, law) - q * t.eta * impact_cumulant_d1(s, law);
  };
  const double q = bisect_root(residual, 0.0, 0.999 * q_sup, q_sup, 1e-12 * q_sup);
  return {q, floor_gain(q, t, law)};
}

bool floor_participation(double lambda_slow, const FastParams& f) {
  return lambda_slow < 0.5 * f.lambda_fast;
}

HybridSplit hybrid_optimal(const TraderParams& t, const FastParams& f, const ImpactLaw& law) {
  const double q_book = t.delta_p / f.lambda_fast;
  if (!floor_participation(law.lambda_slow(), f)) {
    return {q_book, q_book, 0.0, t.eta * fast_optimal(t, f).profit, Corner::kAllFast};
  }

  const double q_sup = feasible_size_sup(t.eta, law);
  // Marginal value of routing the next share through the floor instead of the
  // book, divided by q to lift the double root at zero. Strictly decreasing,
  // starts at eta*(lambda_fast - 2*lambda_slow) > 0 here.
  auto shift_value = [&](double q) {
    if (q == 0.0) {
      return t.eta * (f.lambda_fast - 2.0 * law.lambda_slow());
    }
    const double s = t.eta * q;
    return t.eta * f.lambda_fast - impact_cumulant(s, law) / q - t.eta * impact_cumulant_d1(s, law);
  };

  if (q_book < q_sup && shift_value(q_book) >= 0.0) {
    // shifting is still worthwhile at the full book size: the book leg closes
    const FloorTrade ft = floor_optimal(t, law);
    return {ft.q_floor, 0.0, ft.q_floor, ft.gain, Corner::kAllFloor};
  }

  const double hi = std::min(q_book, 0.999 * q_sup);
  const double q_floor = bisect_root(shift_value, 0.0, hi, q_sup, 1e-12 * q_sup);
  const double q_fast = q_book - q_floor;
  if (!(q_fast > 1e-12 * q_book)) {
    const FloorTrade ft = floor_optimal(t, law);
    return {ft.q_floor, 0.0, ft.q_floor, ft.gain, Corner::kAllFloor};
  }
  return {q_book, q_fast, q_floor, hybrid_gain(q_fast, q_floor, t, f, law), Corner::kInterior};
}

double max_informed_trading(const TraderParams& t, double lambda_slow) {
  if (!(lambda_slow > 0.0)) {
    throw std::invalid_argument("max_informed_trading: lambda_slow must be > 0");
  }
  return t.delta_p / lambda_slow;
}

double new_trader_gain(double q_prior, double q_j, const TraderParams& t, const ImpactLaw& law) {
  if (!(q_prior >= 0.0) || !(q_j >= 0.0)) {
    throw std::invalid_argument("new_trader_gain: sizes must be >= 0");
  }
  if (q_j == 0.0) {
    return 0.0;
  }
  return t.eta * q_j * t.delta_p - (q_prior + q_j) * impact_cumulant(t.eta * q_j, law);
}

}  // namespace hybridflow
