#include "hwm/pricing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hwm/coefficients.hpp"
#include "hwm/lifetime.hpp"
#include "hwm/normal.hpp"
#include "hwm/transforms.hpp"

namespace hwm {

namespace {

void flag_long_maturity(const FundParameters& p, PriceQuote& q) {
  if (p.time_to_maturity() > 1.0)
    q.diagnostics["maturity_note"] =
        "time to maturity exceeds one year; trigger-level resets are not modeled";
}

FundParameters deflated_rate_zero(const FundParameters& p) {
  FundParameters d = p;
  d.spot = p.spot * std::exp(-p.rate * p.valuation_offset);
  d.rate = 0.0;
  d.hwm_mode = HwmMode::fixed;
  return d;
}

}  // namespace

PriceQuote price_call(const FundParameters& p, const InversionConfig& cfg) {
  require_valid(p);
  if (p.hwm_mode == HwmMode::accruing_at_r) return price_moving_hwm_call(p, cfg);

  const Coefficients co = derive_coefficients(p);
  PriceQuote q = lifetime_call_price(p, co, p.spot, p.time_to_maturity(), cfg);
  if (p.strike == 0.0) q.diagnostics["payoff_note"] = "zero strike: forward value";
  flag_long_maturity(p, q);
  return q;
}

PriceQuote forward_value(const FundParameters& p, const InversionConfig& cfg) {
  FundParameters f = p;
  f.strike = 0.0;
  return price_call(f, cfg);
}

PriceQuote price_put(const FundParameters& p, const InversionConfig& cfg) {
  require_valid(p);
  const PriceQuote call = price_call(p, cfg);
  const PriceQuote fwd = forward_value(p, cfg);
  const double s = p.time_to_maturity();
  // Cash strike discounted to the valuation date; with an accruing trigger
  // the contract strike is K*exp(r*T).
  const double strike_pv = p.hwm_mode == HwmMode::fixed
                               ? p.strike * std::exp(-p.rate * s)
                               : p.strike * std::exp(p.rate * p.valuation_offset);
  PriceQuote q;
  q.value = call.value - fwd.value + strike_pv;
  q.method = Method::parity;
  q.error_estimate = call.error_estimate + fwd.error_estimate;
  q.diagnostics["call_value"] = std::to_string(call.value);
  q.diagnostics["forward_value"] = std::to_string(fwd.value);
  flag_long_maturity(p, q);
  return q;
}

PriceQuote price_moving_hwm_call(const FundParameters& p,
                                 const InversionConfig& cfg) {
  require_valid(p);
  if (p.hwm_mode != HwmMode::accruing_at_r)
    throw std::invalid_argument(
        "price_moving_hwm_call: requires an accruing trigger");

  // Rate-zero substitution on the deflated spot; the trigger accrual and
  // the discounting cancel, leaving a compounding factor at the valuation
  // date (1 at inception).
  PriceQuote q = price_call(deflated_rate_zero(p), cfg);
  const double factor = std::exp(p.rate * p.valuation_offset);
  q.value *= factor;
  q.error_estimate *= factor;
  q.diagnostics["mode"] = "accruing trigger (rate-zero substitution)";
  flag_long_maturity(p, q);
  return q;
}

double merton_reference(double spot, double strike, double maturity, double rate,
                        double dividend_yield, double vol) {
  if (!(spot > 0.0) || strike < 0.0 || !(maturity > 0.0) || !(vol >= 0.0))
    throw std::invalid_argument("merton_reference: invalid inputs");
  const double carry = spot * std::exp(-dividend_yield * maturity);
  const double cash = strike * std::exp(-rate * maturity);
  if (strike == 0.0) return carry;
  if (vol == 0.0) return std::max(carry - cash, 0.0);
  const double sd = vol * std::sqrt(maturity);
  const double d1 =
      (std::log(spot / strike) + (rate - dividend_yield + 0.5 * vol * vol) * maturity) /
      sd;
  const double d2 = d1 - sd;
  return carry * norm_cdf(d1) - cash * norm_cdf(d2);
}

double merton_put_reference(double spot, double strike, double maturity,
                            double rate, double dividend_yield, double vol) {
  const double call = merton_reference(spot, strike, maturity, rate, dividend_yield, vol);
  return call - spot * std::exp(-dividend_yield * maturity) +
         strike * std::exp(-rate * maturity);
}

}  // namespace hwm
