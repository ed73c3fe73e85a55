#pragma once
/**
 * @file coefficients.hpp
 * @brief Derived model coefficients shared by every pricing formula.
 */

#include "hwm/types.hpp"

namespace hwm {

/// Pure functions of the inputs; recomputing is bit-identical.
struct Coefficients {
  double drift;              ///< log-NAV drift in volatility units
  double local_time_weight;  ///< mu * a / (2 * sigma), weight of the local-time factor
  double log_barrier;        ///< ln(H / S_t) / sigma, level the driving BM must reach
  double log_strike;         ///< ln(K / S_t) / sigma; -infinity when K == 0
  double decay_above;        ///< occupation decay rate while above the mark
  double decay_below;        ///< occupation decay rate while below the mark
  double validity_abscissa;  ///< transforms certified for Re(theta) above this
};

/**
 * Derives all coefficients at the given valuation spot.
 *
 * With a fixed trigger, drift = (r + alpha - c - sigma^2/2) / sigma; with an
 * accruing trigger the rate drops out, drift = (alpha - c - sigma^2/2) / sigma,
 * and the abscissa is computed with the rate set to zero as well.
 *
 * Throws std::invalid_argument on invalid parameters and std::domain_error
 * when a derived value overflows to a non-finite number (the message names
 * the offending field). log_strike = -infinity for K == 0 is the one
 * permitted non-finite value.
 */
Coefficients derive_coefficients(const FundParameters& p, double spot_at_valuation);

/// Same, with the valuation spot taken from p.spot.
Coefficients derive_coefficients(const FundParameters& p);

}  // namespace hwm
