#include "hybridflow/subordinator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hybridflow {

double delay_kernel(double s, const FloorParams& p) {
  if (!(s < p.a)) {
    throw std::domain_error("delay_kernel: s must satisfy s < a");
  }
  return -std::log1p(-s / p.a);
}

double delay_kernel_d1(double s, const FloorParams& p) {
  if (!(s < p.a)) {
    throw std::domain_error("delay_kernel_d1: s must satisfy s < a");
  }
  return 1.0 / (p.a - s);
}

double delay_kernel_d2(double s, const FloorParams& p) {
  if (!(s < p.a)) {
    throw std::domain_error("delay_kernel_d2: s must satisfy s < a");
  }
  const double d = p.a - s;
  return 1.0 / (d * d);
}

Moments delay_moments(double q, const FloorParams& p) {
  if (!(q >= 0.0)) {
    throw std::invalid_argument("delay_moments: q must be >= 0");
  }
  return {q / p.a, q / (p.a * p.a)};
}

double sample_gamma(double shape, double rate, RngStream& stream) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::invalid_argument("sample_gamma: shape and rate must be > 0");
  }
  double boost = 1.0;
  if (shape < 1.0) {
    boost = std::pow(stream.uniform(), 1.0 / shape);
    shape += 1.0;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      const double g = boost * d * v / rate;
      // delays are strictly positive; guard the boost underflow at tiny shapes
      return g > 0.0 ? g : std::numeric_limits<double>::min();
    }
  }
}

double sample_delay(double q, const FloorParams& p, RngStream& stream) {
  if (!(q > 0.0)) {
    throw std::invalid_argument("sample_delay: q must be > 0");
  }
  return sample_gamma(q, p.a, stream);
}

}  // namespace hybridflow
