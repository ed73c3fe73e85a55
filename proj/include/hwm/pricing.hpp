#pragma once
/**
 * @file pricing.hpp
 * @brief Orchestration facade: routes requests to the inception, lifetime
 *        and accruing-trigger pricers, prices puts via parity, and provides
 *        the dividend-yield Black-Scholes-Merton reference.
 */

#include "hwm/inversion.hpp"
#include "hwm/types.hpp"

namespace hwm {

/**
 * European call on the NAV. At the trigger the inception transform is
 * inverted directly; away from it the price is the barrier split
 * (closed form + inversion). Accruing-trigger contracts are rerouted
 * through price_moving_hwm_call. Maturities beyond one year are accepted
 * but flagged in the diagnostics (trigger resets are not modeled).
 */
PriceQuote price_call(const FundParameters& p, const InversionConfig& cfg = {});

/// Put via parity: P = C - forward_value + discounted cash strike.
/// The error estimate sums the two inversion estimates.
PriceQuote price_put(const FundParameters& p, const InversionConfig& cfg = {});

/**
 * Call with a trigger accruing at the risk-free rate and payoff
 * (S_T - K*exp(r*T))+. Priced by the rate-zero substitution: run the fixed
 * pipeline with rate 0 on the deflated spot S_t*exp(-r*t), then scale by
 * exp(r*t) (factor 1 at inception). Requires hwm_mode = accruing_at_r.
 */
PriceQuote price_moving_hwm_call(const FundParameters& p,
                                 const InversionConfig& cfg = {});

/// Discounted NAV expectation over the remaining life (the parity forward).
PriceQuote forward_value(const FundParameters& p, const InversionConfig& cfg = {});

/// Black-Scholes-Merton call with a continuous dividend yield.
double merton_reference(double spot, double strike, double maturity,
                        double rate, double dividend_yield, double vol);

/// Matching put.
double merton_put_reference(double spot, double strike, double maturity,
                            double rate, double dividend_yield, double vol);

}  // namespace hwm
