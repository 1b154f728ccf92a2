#include "hybridflow/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hybridflow {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be non-negative and finite");
  }
}

}  // namespace

FloorParams::FloorParams(double a_, double mu_, double sigma_) : a(a_), mu(mu_), sigma(sigma_) {
  require_positive(a, "a");
  require_positive(mu, "mu");
  require_non_negative(sigma, "sigma");
}

FastParams::FastParams(double lambda_fast_) : lambda_fast(lambda_fast_) {
  require_positive(lambda_fast, "lambda_fast");
}

TraderParams::TraderParams(double eta_, double delta_p_, double wealth_)
    : eta(eta_), delta_p(delta_p_), wealth(wealth_) {
  require_positive(eta, "eta");
  require_positive(delta_p, "delta_p");
  if (!std::isfinite(wealth)) {
    throw std::invalid_argument("wealth must be finite");
  }
}

}  // namespace hybridflow
