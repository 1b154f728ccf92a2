#pragma once

#include "hybridflow/impact.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace hybridflow {

// Economics of buying floor liquidity under CARA risk aversion eta. A size-q
// order costs the certainty-equivalent price P_q = K(eta*q) per share, in
// utility units. P_0 = 0 (price takers trade free), P is strictly increasing
// and convex, and diverges as q approaches feasible_size_sup(eta, law).

// P_q = K(eta*q). Requires 0 <= q < feasible_size_sup; std::domain_error at
// or beyond the supremum.
double price_of_liquidity(double q, double eta, const ImpactLaw& law);

// dP/dq = eta * K'(eta*q): supply curve slope, eta*lambda_slow at q = 0.
double marginal_price(double q, double eta, const ImpactLaw& law);

struct SupplyPoint {
  double q = 0.0;
  double avg_cost = 0.0;          // P_q
  double marginal_cost = 0.0;     // P_q + q * dP/dq
  double marginal_revenue = 0.0;  // eta * delta_p, flat in q
};

std::vector<SupplyPoint> supply_curve(std::span<const double> q_grid, double eta,
                                      double delta_p, const ImpactLaw& law);

// Round-number grid 0, h, 2h, ... covering [0, guard * feasible_size_sup]
// with at least min_points points; h is the largest 1/2.5/5 x 10^k step that
// fits, so familiar sizes like 0.5 land exactly on the grid.
std::vector<double> supply_grid(double eta, const ImpactLaw& law,
                                std::size_t min_points = 100, double guard = 0.999);

}  // namespace hybridflow
