#include "doctest.h"

#include "hybridflow/impact.hpp"
#include "hybridflow/montecarlo.hpp"
#include "hybridflow/solver.hpp"
#include "hybridflow/subordinator.hpp"

#include <cmath>
#include <stdexcept>

using namespace hybridflow;

namespace {

const FloorParams kFloor(4.0, 2.0, 1.0);
const ImpactLaw kLaw{kFloor};
const TraderParams kTrader(1.0, 1.0);

bool same_stats(const mc::SampleStats& a, const mc::SampleStats& b) {
  return a.mean == b.mean && a.variance == b.variance && a.stderr_mean == b.stderr_mean &&
         a.stderr_variance == b.stderr_variance && a.n == b.n && a.seed == b.seed;
}

}  // namespace

TEST_CASE("stats invariants and determinism") {
  const mc::McRun run{250000, 42, 0};
  const auto a = mc::estimate_delay_moments(2.0, kFloor, run);
  const auto b = mc::estimate_delay_moments(2.0, kFloor, run);
  CHECK(same_stats(a, b));
  CHECK(a.n == 250000);
  CHECK(a.seed == 42);
  CHECK(a.stderr_mean == std::sqrt(a.variance / static_cast<double>(a.n)));
  CHECK(a.stderr_variance > 0.0);
}

TEST_CASE("worker count never changes the result") {
  // n chosen to span multiple chunks with a ragged tail
  const std::uint64_t n = 3 * 65536 + 12345;
  const auto serial = mc::estimate_impact_moments(1.5, kLaw, {n, 77, 1});
  for (int threads : {0, 2, 4}) {
    const auto par = mc::estimate_impact_moments(1.5, kLaw, {n, 77, threads});
    CHECK(same_stats(serial, par));
  }
  const auto util_serial = mc::estimate_utility_gain(0.5, kTrader, kLaw, {n, 78, 1});
  for (int threads : {0, 2, 4}) {
    const auto par = mc::estimate_utility_gain(0.5, kTrader, kLaw, {n, 78, threads});
    CHECK(same_stats(util_serial, par));
  }
}

TEST_CASE("different seeds give different estimates") {
  const auto a = mc::estimate_delay_moments(2.0, kFloor, {65536, 1, 0});
  const auto b = mc::estimate_delay_moments(2.0, kFloor, {65536, 2, 0});
  CHECK(a.mean != b.mean);
}

TEST_CASE("delay moment estimates hit the closed form") {
  const auto st = mc::estimate_delay_moments(5.0, kFloor, {400000, 11, 0});
  const Moments m = delay_moments(5.0, kFloor);
  CHECK(std::abs(st.mean - m.mean) < 3.0 * st.stderr_mean);
  CHECK(std::abs(st.variance - m.variance) < 3.0 * st.stderr_variance);
}

TEST_CASE("utility gain estimate matches the closed form") {
  // the worked q=0.5 value: 0.5 - 0.5*log(4/2.875)
  const double q = 0.5;
  const double target = floor_gain(q, kTrader, kLaw);
  CHECK(target == doctest::Approx(0.5 - 0.5 * std::log(4.0 / 2.875)).epsilon(1e-14));
  CHECK(target == doctest::Approx(0.334879).epsilon(1e-6));
  const auto st = mc::estimate_utility_gain(q, kTrader, kLaw, {1000000, 5, 0});
  CHECK(std::abs(st.mean - target) < 3.0 * st.stderr_mean);
  CHECK(st.stderr_mean == std::sqrt(st.variance / static_cast<double>(st.n)));
  CHECK(st.stderr_mean < 0.01);
}

TEST_CASE("utility gain vanishes with the order") {
  const auto st = mc::estimate_utility_gain(1e-8, kTrader, kLaw, {65536, 3, 0});
  CHECK(std::abs(st.mean) < 1e-6);
}

TEST_CASE("estimator rejects bad runs") {
  CHECK_THROWS_AS(mc::estimate_delay_moments(2.0, kFloor, {0, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(mc::estimate_delay_moments(0.0, kFloor, {100, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(mc::estimate_utility_gain(2.0, kTrader, kLaw, {100, 1, 0}), std::domain_error);
  CHECK_THROWS_AS(mc::estimate_impact_mgf(kLaw.cumulant_sup(), 1.0, kLaw, {100, 1, 0}),
                  std::domain_error);
}

TEST_CASE("overflow is an error, never a silent clip") {
  // legal s, astronomically large order: the true MGF exceeds double range,
  // so the estimator must refuse rather than cap the samples
  CHECK_THROWS_AS(mc::estimate_impact_mgf(0.5 * kLaw.cumulant_sup(), 1e6, kLaw, {4096, 9, 0}),
                  std::overflow_error);
  CHECK_THROWS_AS(mc::estimate_delay_mgf(3.9, 1e6, kFloor, {4096, 9, 0}), std::overflow_error);
}

TEST_CASE("statistical gate: 3-sigma identity checks almost never fail") {
  // pooled across 100 seeds x 8 checks per seed; at 3 sigma the expected
  // failure rate is ~0.3%, the gate allows 1%
  const mc::McRun base{20000, 0, 0};
  int checks = 0, failures = 0;
  auto tally = [&](double z) {
    ++checks;
    if (std::abs(z) > 3.0) ++failures;
  };
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    mc::McRun run = base;
    run.seed = seed;
    {
      const auto st = mc::estimate_delay_moments(2.0, kFloor, run);
      const Moments m = delay_moments(2.0, kFloor);
      tally((st.mean - m.mean) / st.stderr_mean);
      tally((st.variance - m.variance) / st.stderr_variance);
    }
    {
      const auto st = mc::estimate_impact_moments(1.0, kLaw, run);
      const Moments m = impact_moments(1.0, kLaw);
      tally((st.mean - m.mean) / st.stderr_mean);
      tally((st.variance - m.variance) / st.stderr_variance);
    }
    for (double frac : {0.2, 0.5}) {
      const double s = frac * kLaw.cumulant_sup();
      const auto st = mc::estimate_impact_mgf(s, 1.0, kLaw, run);
      tally(mc::log_mgf_zscore(st, impact_cumulant(s, kLaw)));
    }
    {
      const double s = 0.4 * kFloor.a;
      const auto st = mc::estimate_delay_mgf(s, 1.0, kFloor, run);
      tally(mc::log_mgf_zscore(st, delay_kernel(s, kFloor)));
    }
    {
      const auto st = mc::estimate_utility_gain(0.5, kTrader, kLaw, run);
      tally((st.mean - floor_gain(0.5, kTrader, kLaw)) / st.stderr_mean);
    }
  }
  CHECK(checks == 800);
  CHECK(static_cast<double>(failures) <= 0.01 * static_cast<double>(checks));
}

TEST_CASE("grid oracle: quadratic with a known peak") {
  const auto r = mc::grid_search([](double x) { return -(x - 0.37) * (x - 0.37); }, 0.0, 1.0, 1e-3);
  CHECK(std::abs(r.argmax - 0.37) < 1e-7);
  CHECK(std::abs(r.max_value) < 1e-13);
  CHECK(r.grid_step == 1e-3);
  CHECK(r.lo == 0.0);
  CHECK(r.hi == 1.0);
}

TEST_CASE("grid oracle: peak at the boundary stays in bounds") {
  const auto r = mc::grid_search([](double x) { return x; }, 0.0, 1.0, 1e-3);
  CHECK(r.argmax <= 1.0);
  CHECK(std::abs(r.argmax - 1.0) < 1e-7);
}

TEST_CASE("grid oracle skips non-finite patches") {
  const ImpactLaw law = kLaw;
  const double q_bar = feasible_size_sup(1.0, law);
  const auto r = mc::grid_search(
      [&](double q) {
        return q < q_bar ? floor_gain(q, kTrader, law) : std::nan("");
      },
      0.0, 2.0 * q_bar, 1e-4);
  CHECK(std::abs(r.argmax - 0.5933427921) < 2e-4);
  CHECK_THROWS_AS(mc::grid_search([](double x) { return x; }, 1.0, 0.0, 1e-3),
                  std::invalid_argument);
}

TEST_CASE("2-d grid oracle: separable quadratic") {
  const auto r = mc::grid_search_2d(
      [](double x, double y) { return -(x - 0.3) * (x - 0.3) - (y - 1.7) * (y - 1.7); }, 0.0, 1.0,
      0.0, 2.0, 1e-2);
  CHECK(std::abs(r.argmax_x - 0.3) < 1e-6);
  CHECK(std::abs(r.argmax_y - 1.7) < 1e-6);
  CHECK(std::abs(r.max_value) < 1e-12);
}
