#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstring>

#include "hwm/montecarlo.hpp"
#include "hwm/pricing.hpp"

using namespace hwm;

namespace {

FundParameters block_params(double hwm, double strike) {
  FundParameters p;
  p.spot = 100.0;
  p.high_water_mark = hwm;
  p.strike = strike;
  p.maturity = 1.0;
  p.rate = 0.02;
  p.excess_return = 0.10;
  p.management_fee = 0.02;
  p.incentive_fraction = 0.20;
  p.mean_return = 0.15;
  p.volatility = 0.20;
  return p;
}

}  // namespace

TEST_CASE("fixed seed reproduces bit-identically") {
  const FundParameters p = block_params(100.0, 100.0);
  McConfig cfg;
  cfg.paths = 2000;
  cfg.steps_per_year = 100;
  cfg.seed = 7;
  const auto a = simulate_price(p, McPayoff::call, cfg);
  const auto b = simulate_price(p, McPayoff::call, cfg);
  CHECK(std::memcmp(&a, &b, sizeof(a)) == 0);

  cfg.paths = 1;
  const auto single_a = simulate_price(p, McPayoff::call, cfg);
  const auto single_b = simulate_price(p, McPayoff::call, cfg);
  CHECK(single_a.price_mean == single_b.price_mean);
  CHECK(single_a.std_error == 0.0);

  McConfig other = cfg;
  other.paths = 2000;
  other.seed = 8;
  CHECK(simulate_price(p, McPayoff::call, other).price_mean != a.price_mean);
}

TEST_CASE("fee-free estimate brackets the dividend-yield closed form") {
  FundParameters p = block_params(100.0, 90.0);
  p.excess_return = 0.0;
  p.incentive_fraction = 0.0;
  p.mean_return = 0.0;
  p.management_fee = 0.003;
  p.maturity = 0.5;
  McConfig cfg;
  cfg.paths = 200'000;
  cfg.steps_per_year = 500;
  cfg.seed = 11;
  const auto stats = simulate_price(p, McPayoff::call, cfg);
  const double exact = merton_reference(100.0, 90.0, 0.5, 0.02, 0.003, 0.20);
  CHECK(std::abs(stats.price_mean - exact) <= 3.0 * stats.std_error);
  CHECK(stats.std_error > 0.0);
}

TEST_CASE("estimate agrees with the transform route at the standard block") {
  const FundParameters p = block_params(100.0, 100.0);
  McConfig cfg;
  cfg.paths = 200'000;
  cfg.steps_per_year = 500;
  cfg.seed = 13;
  const auto stats = simulate_price(p, McPayoff::call, cfg);
  const double analytic = price_call(p).value;  // 12.5923 at this block
  CHECK(std::abs(stats.price_mean - analytic) <= 3.0 * stats.std_error);
  CHECK(stats.barrier_hit_fraction == 1.0);  // starts at the trigger
  CHECK(stats.occupation_above_fraction > 0.3);
  CHECK(stats.occupation_above_fraction < 0.7);
}

TEST_CASE("antithetic halves agree with plain sampling") {
  const FundParameters p = block_params(115.0, 100.0);
  McConfig on;
  on.paths = 120'000;
  on.steps_per_year = 200;
  on.seed = 17;
  McConfig off = on;
  off.antithetic = false;
  off.seed = 23;
  const auto a = simulate_price(p, McPayoff::call, on);
  const auto b = simulate_price(p, McPayoff::call, off);
  const double gap = std::abs(a.price_mean - b.price_mean);
  CHECK(gap <= 3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error));
  CHECK(a.std_error < b.std_error);  // pairing must not hurt here
}

TEST_CASE("halving the step keeps the estimate within the noise") {
  FundParameters p = block_params(100.0, 100.0);
  p.maturity = 0.5;
  McConfig coarse;
  coarse.paths = 150'000;
  coarse.steps_per_year = 250;
  coarse.seed = 29;
  McConfig fine = coarse;
  fine.steps_per_year = 500;
  fine.seed = 31;
  const auto a = simulate_price(p, McPayoff::call, coarse);
  const auto b = simulate_price(p, McPayoff::call, fine);
  CHECK(std::abs(a.price_mean - b.price_mean) <=
        3.0 * std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error));
}

TEST_CASE("call, put and forward estimates satisfy parity") {
  const FundParameters p = block_params(100.0, 100.0);
  McConfig cfg;
  cfg.paths = 120'000;
  cfg.steps_per_year = 250;
  cfg.seed = 37;
  const auto call = simulate_price(p, McPayoff::call, cfg);
  cfg.seed = 41;
  const auto put = simulate_price(p, McPayoff::put, cfg);
  cfg.seed = 43;
  const auto fwd = simulate_price(p, McPayoff::forward, cfg);
  const double strike_pv = p.strike * std::exp(-p.rate * p.maturity);
  const double residual = call.price_mean - put.price_mean -
                          (fwd.price_mean - strike_pv);
  const double se = std::sqrt(call.std_error * call.std_error +
                              put.std_error * put.std_error +
                              fwd.std_error * fwd.std_error);
  CHECK(std::abs(residual) <= 3.0 * se);
}

TEST_CASE("density check: unit mean within the noise") {
  // The banded local-time estimator biases like sqrt(dt); the step is chosen
  // fine enough that the bias sits well inside the 3-SE resolution.
  const FundParameters p = block_params(100.0, 100.0);
  McConfig cfg;
  cfg.paths = 30'000;
  cfg.steps_per_year = 12'800;
  cfg.seed = 47;
  const auto report = simulate_radon_nikodym_check(p, cfg, 0.5);
  CHECK(std::abs(report.z_mean - 1.0) <= 3.0 * report.std_error);
  CHECK(report.occupation_identity_error == 0.0);
  CHECK(report.mean_local_time > 0.0);

  // drift-only degeneration: no local-time factor at all
  FundParameters plain = p;
  plain.incentive_fraction = 0.0;
  plain.mean_return = 0.0;
  const auto degenerate = simulate_radon_nikodym_check(plain, cfg, 0.5);
  CHECK(std::abs(degenerate.z_mean - 1.0) <= 3.0 * degenerate.std_error);

  // off-trigger start exercises the prefactor branch
  const FundParameters below = block_params(85.0, 100.0);
  const auto shifted = simulate_radon_nikodym_check(below, cfg, 0.5);
  CHECK(std::abs(shifted.z_mean - 1.0) <= 3.0 * shifted.std_error);
}

TEST_CASE("config validation") {
  const FundParameters p = block_params(100.0, 100.0);
  McConfig cfg;
  cfg.paths = 0;
  CHECK_THROWS_AS(simulate_price(p, McPayoff::call, cfg), std::invalid_argument);
  cfg.paths = 10;
  cfg.steps_per_year = 0;
  CHECK_THROWS_AS(simulate_price(p, McPayoff::call, cfg), std::invalid_argument);
  cfg.steps_per_year = 10;
  CHECK_THROWS_AS(simulate_radon_nikodym_check(p, cfg, 0.0), std::invalid_argument);
}
