#pragma once

namespace hybridflow {

// Slow-market primitives. The floor fills orders at Poisson-like rate a
// (shares per unit time); while an order is waiting, the price drifts at mu
// and diffuses at sigma. The market's breadth lambda_slow = mu / a is the
// expected impact per share and is derived, never stored.
struct FloorParams {
  double a;
  double mu;
  double sigma;

  FloorParams(double a, double mu, double sigma);

  double lambda_slow() const { return mu / a; }
};

// Fast-market depth: sweeping x shares of the book moves the price by
// lambda_fast * x.
struct FastParams {
  double lambda_fast;

  explicit FastParams(double lambda_fast);
};

// Informed trader with CARA utility. wealth is carried through reports but
// never changes a decision.
struct TraderParams {
  double eta;
  double delta_p;
  double wealth;

  TraderParams(double eta, double delta_p, double wealth = 0.0);
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

}  // namespace hybridflow
