#pragma once

#include "hybridflow/impact.hpp"
#include "hybridflow/params.hpp"

#include <string_view>

namespace hybridflow {

enum class Corner { kInterior, kAllFloor, kAllFast };

std::string_view to_string(Corner c);

// Sweep the fast book only. profit is in dollars; the certainty-equivalent
// utility gain of this riskless trade is eta * profit.
struct FastTrade {
  double q_fast = 0.0;
  double profit = 0.0;
};

// Trade the floor only. gain is in utility units.
struct FloorTrade {
  double q_floor = 0.0;
  double gain = 0.0;
};

struct HybridSplit {
  double q_total = 0.0;
  double q_fast = 0.0;
  double q_floor = 0.0;
  double gain = 0.0;  // utility units
  Corner corner = Corner::kAllFast;
};

// Objectives, exposed so oracles can scan them directly.

// q * delta_p - 0.5 * lambda_fast * q^2, dollars
double sweep_profit(double q, const TraderParams& t, const FastParams& f);

// eta * q * delta_p - q * K(eta*q), utility units; 0 at q = 0
double floor_gain(double q, const TraderParams& t, const ImpactLaw& law);

// Certainty-equivalent gain of sweeping q_fast and then working q_floor on
// the floor. The sweep moves the benchmark price under the floor order, so
// the legs interact through the cross term eta * q_floor * lambda_fast * q_fast.
double hybrid_gain(double q_fast, double q_floor, const TraderParams& t,
                   const FastParams& f, const ImpactLaw& law);

// Closed form: q_fast = delta_p / lambda_fast, profit = delta_p^2 / (2 lambda_fast).
FastTrade fast_optimal(const TraderParams& t, const FastParams& f);

// Unique root of the floor first-order condition
//   eta*delta_p = K(eta*q) + q*eta*K'(eta*q),
// found by bisection to well under 1e-10 * feasible_size_sup.
FloorTrade floor_optimal(const TraderParams& t, const ImpactLaw& law);

// The floor leg of an optimal hybrid trade is active iff lambda_slow <
// lambda_fast / 2 (strict). Breadth at or above half the book's depth prices
// the floor out completely.
bool floor_participation(double lambda_slow, const FastParams& f);

// Jointly optimal split. Whenever the floor participates, q_total is exactly
// delta_p / lambda_fast regardless of (a, mu, sigma): the floor leg only
// displaces book volume, it never changes the total.
HybridSplit hybrid_optimal(const TraderParams& t, const FastParams& f, const ImpactLaw& law);

// Largest total position any mix of informed traders can profitably absorb:
// delta_p / lambda_slow.
double max_informed_trading(const TraderParams& t, double lambda_slow);

// Utility gain of a newcomer adding q_j on top of q_prior already being
// worked by identical traders: eta*q_j*delta_p - (q_prior + q_j) * K(eta*q_j).
// At q_prior = max_informed_trading the marginal value of entry is <= 0.
double new_trader_gain(double q_prior, double q_j, const TraderParams& t, const ImpactLaw& law);

}  // namespace hybridflow
