#pragma once

#include "hybridflow/params.hpp"
#include "hybridflow/rng.hpp"

namespace hybridflow {

// Price impact of a size-q floor order: I(q) = mu * tau(q) + sigma * W(tau(q)),
// Brownian motion subordinated by the Gamma execution delay, i.e. a Variance
// Gamma process in order size. Impacts of disjoint slices add.
class ImpactLaw {
 public:
  explicit ImpactLaw(FloorParams p);

  const FloorParams& params() const { return params_; }

  // expected impact per share, mu / a
  double lambda_slow() const { return lambda_slow_; }

  // upper end of the cumulant domain: the positive root of
  // a - mu*s - 0.5*sigma^2*s^2, or a/mu when sigma = 0
  double cumulant_sup() const { return s_max_; }

 private:
  FloorParams params_;
  double lambda_slow_;
  double s_max_;
};

// Per-share cumulant K(s) = K_tau(mu*s + 0.5*sigma^2*s^2): the moment
// generating function of I(q) is exp(q * K(s)). Finite exactly on
// s < cumulant_sup(); throws std::domain_error outside. Zero at zero,
// strictly increasing and convex on s >= 0.
double impact_cumulant(double s, const ImpactLaw& law);

// dK/ds = (mu + sigma^2 s) / (a - z) with z = mu*s + 0.5*sigma^2*s^2;
// equals lambda_slow at s = 0.
double impact_cumulant_d1(double s, const ImpactLaw& law);

// d2K/ds2 = sigma^2/(a - z) + (mu + sigma^2 s)^2/(a - z)^2; equals
// lambda_slow^2 + sigma^2/a at s = 0.
double impact_cumulant_d2(double s, const ImpactLaw& law);

// mean lambda_slow * q, variance (lambda_slow^2 + sigma^2/a) * q.
Moments impact_moments(double q, const ImpactLaw& law);

// One exact draw: Gamma delay, then a normal increment over it. Always
// consumes the delay draws and one normal, even when sigma = 0.
double sample_impact(double q, const ImpactLaw& law, RngStream& stream);

// Largest order size with a finite liquidity price: cumulant_sup() / eta.
double feasible_size_sup(double eta, const ImpactLaw& law);

}  // namespace hybridflow
