#pragma once

#include "hybridflow/params.hpp"
#include "hybridflow/rng.hpp"

namespace hybridflow {

// Execution delay of a size-q floor order: tau(q) ~ Gamma(shape q, rate a).
// Delays of disjoint order slices add, so tau is a subordinator in q and its
// law is pinned down by the cumulant kernel below.

// K_tau(s) = -log(1 - s/a), the per-share cumulant of the delay: the moment
// generating function of tau(q) is exp(q * K_tau(s)). Defined for s < a;
// zero at zero, strictly increasing and convex. Throws std::domain_error at
// or beyond s = a. Computed through log1p so tiny s keeps full relative
// precision.
double delay_kernel(double s, const FloorParams& p);

// dK_tau/ds = 1/(a - s) and d2K_tau/ds2 = 1/(a - s)^2. Same domain rules.
double delay_kernel_d1(double s, const FloorParams& p);
double delay_kernel_d2(double s, const FloorParams& p);

// mean q/a, variance q/a^2. Requires q >= 0.
Moments delay_moments(double q, const FloorParams& p);

// One exact Gamma(shape q, rate a) draw. Requires q > 0.
double sample_delay(double q, const FloorParams& p, RngStream& stream);

// Exact Gamma(shape, rate) variate for any real shape > 0. Marsaglia-Tsang
// squeeze for shape >= 1; smaller shapes are boosted by one and scaled back
// with a uniform power.
double sample_gamma(double shape, double rate, RngStream& stream);

}  // namespace hybridflow
