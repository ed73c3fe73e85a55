#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "hwm/coefficients.hpp"
#include "hwm/lifetime.hpp"
#include "hwm/normal.hpp"
#include "hwm/quadrature.hpp"

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

// E[1{passage after u} h(W_u)] by quadrature of the joint law of the
// endpoint and the running extremum; independent of the reflection formula
// the implementation uses.
double joint_density_oracle(const std::function<double(double)>& h, double a,
                            double u) {
  REQUIRE(a > 0.0);
  auto inner = [&](double b) {
    return integrate(
               [&](double x) {
                 const double q = 2.0 * b - x;
                 return h(x) * 2.0 * q / std::sqrt(2.0 * M_PI * u * u * u) *
                        std::exp(-q * q / (2.0 * u));
               },
               b - 12.0 * std::sqrt(u), b, 1e-12, 1e-10)
        .value;
  };
  return integrate(inner, 0.0, a, 1e-11, 1e-9).value;
}

}  // namespace

TEST_CASE("first passage cdf") {
  CHECK(first_passage_cdf(0.0, 1.0) == 1.0);
  CHECK(first_passage_cdf(1.0, 1.0) ==
        doctest::Approx(0.31731050786291410).epsilon(1e-14));
  CHECK(first_passage_cdf(-1.0, 1.0) ==
        doctest::Approx(0.31731050786291410).epsilon(1e-14));
  CHECK(first_passage_cdf(0.5, 1e-12) == doctest::Approx(0.0));
}

TEST_CASE("restricted expectation: unit payoff matches the survival mass") {
  const double v = restricted_expectation([](double) { return 1.0; }, 1.0, 1.0);
  CHECK(v == doctest::Approx(1.0 - first_passage_cdf(1.0, 1.0)).epsilon(1e-10));
  CHECK(v == doctest::Approx(0.68268949213708590).epsilon(1e-10));
}

TEST_CASE("restricted expectation: identity payoff against the joint-density oracle") {
  auto identity = [](double x) { return x; };
  const double v = restricted_expectation(identity, 1.0, 1.0);
  // frozen from a 30-digit evaluation of the joint-density route
  CHECK(v == doctest::Approx(-0.31731050786291410).epsilon(1e-9));
  CHECK(v == doctest::Approx(joint_density_oracle(identity, 1.0, 1.0)).epsilon(1e-7));

  // a second point with an asymmetric payoff and level
  auto expy = [](double x) { return std::exp(0.3 * x); };
  const double w = restricted_expectation(expy, 0.8, 0.7);
  CHECK(w == doctest::Approx(joint_density_oracle(expy, 0.8, 0.7)).epsilon(1e-7));
}

TEST_CASE("restricted expectation basics") {
  CHECK(restricted_expectation([](double) { return 1.0; }, 0.0, 1.0) == 0.0);
  const double v =
      restricted_expectation([](double x) { return std::abs(x); }, -0.7, 0.5);
  CHECK(v >= 0.0);
  CHECK_THROWS_AS(restricted_expectation([](double) { return 1.0; }, 1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("restricted + complement = unconditional, by quadrature") {
  // Gaussian payoff; the complement uses the reflected endpoint density.
  auto h = [](double x) { return std::exp(-x * x); };
  const double a = 0.9, u = 0.8;
  const double root = std::sqrt(u);
  const double restricted = restricted_expectation(h, a, u);
  const double complement =
      integrate([&](double x) { return h(x) * norm_pdf((2.0 * a - x) / root) / root; },
                a - 12.0 * root, a, 1e-13, 1e-11)
          .value +
      integrate([&](double x) { return h(x) * norm_pdf(x / root) / root; }, a,
                a + 12.0 * root, 1e-13, 1e-11)
          .value;
  const double unconditional =
      integrate([&](double x) { return h(x) * norm_pdf(x / root) / root; },
                -12.0 * root, 12.0 * root, 1e-13, 1e-11)
          .value;
  CHECK(restricted + complement == doctest::Approx(unconditional).epsilon(1e-8));
}

TEST_CASE("pre-hit component vanishes when the strike caps the corridor") {
  const FundParameters p = block_params(115.0, 115.0);
  const Coefficients co = derive_coefficients(p);
  CHECK(pre_hit_price(p, co, p.spot, 0.5) == 0.0);
  const FundParameters q = block_params(115.0, 120.0);
  CHECK(pre_hit_price(q, derive_coefficients(q), q.spot, 0.5) == 0.0);
}

TEST_CASE("pre-hit component against restricted-expectation quadrature") {
  // trigger above the spot: weight exp(b x) under the corridor
  {
    const FundParameters p = block_params(115.0, 90.0);
    const Coefficients co = derive_coefficients(p);
    const double s = 0.5;
    auto h = [&](double x) {
      const double intrinsic = p.spot * std::exp(p.volatility * x) - p.strike;
      return intrinsic > 0.0 ? std::exp(co.drift * x) * intrinsic : 0.0;
    };
    const double oracle = std::exp(-(p.rate + co.decay_below) * s) *
                          restricted_expectation(h, co.log_barrier, s);
    CHECK(pre_hit_price(p, co, p.spot, s) == doctest::Approx(oracle).epsilon(1e-9));
  }
  // trigger below the spot: the incentive drag shifts the weight exponent
  for (double strike : {80.0, 90.0}) {  // strike below and above the trigger
    const FundParameters p = block_params(85.0, strike);
    const Coefficients co = derive_coefficients(p);
    const double s = 0.5;
    const double shifted = co.drift - 2.0 * co.local_time_weight;
    auto h = [&](double x) {
      const double intrinsic = p.spot * std::exp(p.volatility * x) - p.strike;
      return intrinsic > 0.0 ? std::exp(shifted * x) * intrinsic : 0.0;
    };
    const double oracle = std::exp(-(p.rate + co.decay_above) * s) *
                          restricted_expectation(h, co.log_barrier, s);
    CHECK(pre_hit_price(p, co, p.spot, s) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("pre-hit component converges to intrinsic as maturity shrinks") {
  const FundParameters p = block_params(115.0, 90.0);  // strike < spot < trigger
  const Coefficients co = derive_coefficients(p);
  const double v = pre_hit_price(p, co, p.spot, 1e-8);
  CHECK(v == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("lifetime price at the trigger equals the inception price") {
  const FundParameters p = block_params(100.0, 100.0);
  const Coefficients co = derive_coefficients(p);
  const PriceQuote at_trigger = lifetime_call_price(p, co, p.spot, 1.0);
  const BarrierSplit split = split_components(p, co, p.spot, 1.0);
  CHECK(split.side == TauSide::at_barrier);
  CHECK(split.pre_hit == 0.0);
  CHECK(at_trigger.value == doctest::Approx(split.post_hit).epsilon(1e-12));
}

TEST_CASE("lifetime prices reproduce the reference grid entries") {
  {
    const FundParameters p = block_params(85.0, 100.0);
    const Coefficients co = derive_coefficients(p);
    const PriceQuote q = lifetime_call_price(p, co, p.spot, 1.0);
    CHECK(q.value == doctest::Approx(12.1470).epsilon(2e-4));
  }
  {
    const FundParameters p = block_params(115.0, 110.0);
    const Coefficients co = derive_coefficients(p);
    const PriceQuote q = lifetime_call_price(p, co, p.spot, 0.5);
    CHECK(q.value == doctest::Approx(3.7084).epsilon(2e-4));
  }
}

TEST_CASE("lifetime price is increasing in the trigger and decreasing in strike") {
  double prev = 0.0;
  for (double hwm : {85.0, 100.0, 115.0}) {
    const FundParameters p = block_params(hwm, 100.0);
    const Coefficients co = derive_coefficients(p);
    const double v = lifetime_call_price(p, co, p.spot, 1.0).value;
    CHECK(v > prev);
    prev = v;
  }
  prev = 1e9;
  for (double strike : {90.0, 100.0, 110.0, 130.0}) {
    const FundParameters p = block_params(115.0, strike);
    const Coefficients co = derive_coefficients(p);
    const double v = lifetime_call_price(p, co, p.spot, 1.0).value;
    CHECK(v < prev);
    prev = v;
  }
}
