#include "hybridflow/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace hybridflow {

double price_of_liquidity(double q, double eta, const ImpactLaw& law) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("price_of_liquidity: q must be >= 0");
  }
  if (!(q < feasible_size_sup(eta, law))) {
    throw std::domain_error("price_of_liquidity: q at or beyond the feasible supremum");
  }
  return impact_cumulant(eta * q, law);
}

double marginal_price(double q, double eta, const ImpactLaw& law) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("marginal_price: q must be >= 0");
  }
  if (!(q < feasible_size_sup(eta, law))) {
    throw std::domain_error("marginal_price: q at or beyond the feasible supremum");
  }
  return eta * impact_cumulant_d1(eta * q, law);
}

std::vector<SupplyPoint> supply_curve(std::span<const double> q_grid, double eta,
                                      double delta_p, const ImpactLaw& law) {
  if (!(delta_p > 0.0)) {
    throw std::invalid_argument("supply_curve: delta_p must be > 0");
  }
  std::vector<SupplyPoint> rows;
  rows.reserve(q_grid.size());
  const double mr = eta * delta_p;
  for (double q : q_grid) {
    const double ac = price_of_liquidity(q, eta, law);
    const double slope = marginal_price(q, eta, law);
    rows.push_back({q, ac, ac + q * slope, mr});
  }
  return rows;
}

std::vector<double> supply_grid(double eta, const ImpactLaw& law,
                                std::size_t min_points, double guard) {
  if (min_points < 2 || !(guard > 0.0) || !(guard < 1.0)) {
    throw std::invalid_argument("supply_grid: need min_points >= 2 and guard in (0,1)");
  }
  const double hi = guard * feasible_size_sup(eta, law);
  const double target = hi / static_cast<double>(min_points);
  const double base = std::pow(10.0, std::floor(std::log10(target)));
  double step = base;
  for (double m : {2.5, 5.0}) {
    if (m * base <= target) step = m * base;
  }
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double q = static_cast<double>(i) * step;
    if (q > hi) break;
    grid.push_back(q);
  }
  return grid;
}

}  // namespace hybridflow
