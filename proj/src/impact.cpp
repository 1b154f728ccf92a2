#include "hybridflow/impact.hpp"

#include "hybridflow/subordinator.hpp"

#include <cmath>
#include <stdexcept>

namespace hybridflow {

namespace {

double time_change(double s, const FloorParams& p) {
  return p.mu * s + 0.5 * p.sigma * p.sigma * s * s;
}

}  // namespace

ImpactLaw::ImpactLaw(FloorParams p) : params_(p), lambda_slow_(p.mu / p.a) {
  if (p.sigma > 0.0) {
    const double s2 = p.sigma * p.sigma;
    s_max_ = (-p.mu + std::sqrt(p.mu * p.mu + 2.0 * s2 * p.a)) / s2;
  } else {
    s_max_ = p.a / p.mu;
  }
}

// the sup itself is out: rounding can put the time change a hair below a
// even at s = cumulant_sup, so both conditions are enforced
double impact_cumulant(double s, const ImpactLaw& law) {
  const FloorParams& p = law.params();
  const double z = time_change(s, p);
  if (!(s < law.cumulant_sup()) || !(z < p.a)) {
    throw std::domain_error("impact_cumulant: s is outside the finite-MGF range");
  }
  return -std::log1p(-z / p.a);
}

double impact_cumulant_d1(double s, const ImpactLaw& law) {
  const FloorParams& p = law.params();
  const double z = time_change(s, p);
  if (!(s < law.cumulant_sup()) || !(z < p.a)) {
    throw std::domain_error("impact_cumulant_d1: s is outside the finite-MGF range");
  }
  return (p.mu + p.sigma * p.sigma * s) / (p.a - z);
}

double impact_cumulant_d2(double s, const ImpactLaw& law) {
  const FloorParams& p = law.params();
  const double z = time_change(s, p);
  if (!(s < law.cumulant_sup()) || !(z < p.a)) {
    throw std::domain_error("impact_cumulant_d2: s is outside the finite-MGF range");
  }
  const double d = p.a - z;
  const double g = p.mu + p.sigma * p.sigma * s;
  return p.sigma * p.sigma / d + g * g / (d * d);
}

Moments impact_moments(double q, const ImpactLaw& law) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("impact_moments: q must be >= 0");
  }
  const FloorParams& p = law.params();
  const double ls = law.lambda_slow();
  return {ls * q, (ls * ls + p.sigma * p.sigma / p.a) * q};
}

double sample_impact(double q, const ImpactLaw& law, RngStream& stream) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("sample_impact: q must be > 0");
  }
  const FloorParams& p = law.params();
  const double tau = sample_gamma(q, p.a, stream);
  const double z = stream.normal();  // drawn unconditionally to keep streams aligned
  return p.mu * tau + p.sigma * std::sqrt(tau) * z;
}

double feasible_size_sup(double eta, const ImpactLaw& law) {
  if (!(eta > 0.0)) {
    throw std::invalid_argument("feasible_size_sup: eta must be > 0");
  }
  return law.cumulant_sup() / eta;
}

}  // namespace hybridflow
