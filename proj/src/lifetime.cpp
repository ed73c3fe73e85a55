#include "hwm/lifetime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hwm/normal.hpp"
#include "hwm/quadrature.hpp"
#include "hwm/transforms.hpp"

namespace hwm {

namespace {

constexpr double kBarrierEps = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Integration window for standard-normal-weighted integrands.
constexpr double kGaussCut = 12.0;

}  // namespace

double first_passage_cdf(double level, double u) {
  if (level == 0.0) return 1.0;
  if (!(u > 0.0)) return 0.0;
  return 2.0 * (1.0 - norm_cdf(std::abs(level) / std::sqrt(u)));
}

double restricted_expectation(const std::function<double(double)>& h,
                              double level, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("restricted_expectation: u must be positive");
  if (level == 0.0) return 0.0;  // passage happens immediately

  const double root = std::sqrt(u);
  const double a = level;
  // Direct part minus the reflected part (shifted by 2a), each a standard
  // normal integral over a half-line. Integrated piecewise so narrow payoff
  // slivers near the upper limit cannot fall between quadrature nodes.
  auto weighted = [&](double upper, const std::function<double(double)>& g) {
    const double hi = std::min(upper, kGaussCut);
    if (hi <= -kGaussCut) return 0.0;
    auto f = [&](double v) { return norm_pdf(v) * g(v); };
    double total = 0.0;
    double seg_hi = hi;
    double width = 0.5;
    while (seg_hi > -kGaussCut) {
      const double seg_lo = std::max(-kGaussCut, seg_hi - width);
      total += integrate(f, seg_lo, seg_hi, 1e-14, 1e-11, 24).value;
      seg_hi = seg_lo;
      width *= 2.0;
    }
    return total;
  };
  if (a > 0.0) {
    return weighted(a / root, [&](double v) { return h(v * root); }) -
           weighted(-a / root, [&](double v) { return h(v * root + 2.0 * a); });
  }
  return weighted(-a / root, [&](double v) { return h(-v * root); }) -
         weighted(a / root, [&](double v) { return h(-v * root + 2.0 * a); });
}

double pre_hit_price(const FundParameters& p, const Coefficients& co,
                     double spot_at_valuation, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("pre_hit_price: s must be positive");
  if (std::abs(co.log_barrier) <= kBarrierEps) return 0.0;

  const double spot = spot_at_valuation;
  const double strike = p.strike;
  const double trigger = p.high_water_mark;
  const double vol = p.volatility;
  const double rate = p.hwm_mode == HwmMode::fixed ? p.rate : 0.0;
  const double b = co.drift;
  const double lb = co.log_barrier;
  const double lk = strike == 0.0 ? -kInf : std::log(strike / spot) / vol;
  const double root = std::sqrt(s);

  if (lb > 0.0) {
    // Trigger above the spot: payoff region must stay under the trigger.
    if (strike >= trigger) return 0.0;
    auto band = [&](double g) {
      // E over the corridor (lk, lb) with exponential weight e^{g*x},
      // reflected copy removed.
      const double direct = norm_cdf_diff(lb / root - root * g, lk / root - root * g);
      const double mirrored =
          norm_cdf_diff(-lb / root - root * g, (lk - 2.0 * lb) / root - root * g);
      return direct - std::exp(2.0 * g * lb) * mirrored;
    };
    double value = spot * std::exp(0.5 * s * (b + vol) * (b + vol)) * band(b + vol);
    if (strike > 0.0) value -= strike * std::exp(0.5 * s * b * b) * band(b);
    return std::exp(-(rate + co.decay_below) * s) * value;
  }

  // Trigger below the spot: paths must stay above it; the incentive drag
  // applies the whole time, shifting the drift by twice the local-time weight.
  const double bl = b - 2.0 * co.local_time_weight;
  double d1 = lb, d2 = lb;
  if (strike > trigger) {
    d1 = lk;
    d2 = 2.0 * lb - lk;
  }
  auto wing = [&](double g) {
    return norm_cdf(-d1 / root + root * g) -
           std::exp(2.0 * g * lb) * norm_cdf(d2 / root + root * g);
  };
  double value = spot * std::exp(0.5 * s * (bl + vol) * (bl + vol)) * wing(bl + vol);
  if (strike > 0.0) value -= strike * std::exp(0.5 * s * bl * bl) * wing(bl);
  return std::exp(-(rate + co.decay_above) * s) * value;
}

BarrierSplit split_components(const FundParameters& p, const Coefficients& co,
                              double spot_at_valuation, double s,
                              const InversionConfig& cfg) {
  BarrierSplit split;
  if (std::abs(co.log_barrier) <= kBarrierEps) {
    split.side = TauSide::at_barrier;
  } else {
    split.side = co.log_barrier > 0.0 ? TauSide::barrier_above : TauSide::barrier_below;
    split.pre_hit = pre_hit_price(p, co, spot_at_valuation, s);
  }
  const TransformHandle post =
      split.side == TauSide::at_barrier
          ? (p.strike > 0.0 ? inception_call_transform(p, co) : forward_transform(p, co))
          : post_hit_transform(p, co, spot_at_valuation);
  const InversionResult inv = invert(post, s, cfg);
  split.post_hit = inv.value;
  split.inversion_error = inv.error_estimate;
  return split;
}

PriceQuote lifetime_call_price(const FundParameters& p, const Coefficients& co,
                               double spot_at_valuation, double s,
                               const InversionConfig& cfg) {
  if (!(s > 0.0))
    throw std::invalid_argument("lifetime_call_price: s must be positive");
  const BarrierSplit split = split_components(p, co, spot_at_valuation, s, cfg);

  PriceQuote quote;
  quote.value = split.pre_hit + split.post_hit;
  quote.method = Method::laplace_inversion;
  quote.error_estimate = split.inversion_error;
  if (split.side != TauSide::at_barrier) {
    quote.diagnostics["pre_hit"] = std::to_string(split.pre_hit);
    quote.diagnostics["post_hit"] = std::to_string(split.post_hit);
  }
  return quote;
}

}  // namespace hwm
