#pragma once
/**
 * @file lifetime.hpp
 * @brief Valuation during the life of the contract, when the NAV differs
 *        from the trigger level.
 *
 * The price splits at the first time the driving Brownian motion reaches the
 * trigger: the component from paths that never reach it has a closed form
 * (only the normal CDF), and the complementary component is recovered by
 * inverting post_hit_transform. The split is kept because the first leg is
 * exact; only the second needs numerical inversion.
 */

#include <functional>

#include "hwm/coefficients.hpp"
#include "hwm/inversion.hpp"
#include "hwm/types.hpp"

namespace hwm {

/// P[tau_level <= u] for a standard Brownian motion (reflection identity).
double first_passage_cdf(double level, double u);

/**
 * E[ 1{tau_level > u} h(W_u) ] via the two-Gaussian-integral reflection
 * formula, computed by adaptive quadrature. level = 0 returns 0 (the
 * passage time is 0). Requires u > 0.
 */
double restricted_expectation(const std::function<double(double)>& h,
                              double level, double u);

enum class TauSide { barrier_above, barrier_below, at_barrier };

/// The two value components around the first trigger passage.
struct BarrierSplit {
  double pre_hit = 0.0;   ///< closed form; 0 when starting at the trigger
  double post_hit = 0.0;  ///< from transform inversion
  TauSide side = TauSide::at_barrier;
  double inversion_error = 0.0;
};

/**
 * Closed form for the pre-passage component at time-to-maturity s.
 *
 * Trigger above the spot: zero whenever strike >= trigger (the payoff region
 * is unreachable without crossing). Trigger below: the strike-vs-trigger
 * position selects the integration limits. CDF differences are evaluated in
 * complementary form to control cancellation. Requires s > 0; at the trigger
 * the component is identically 0 and callers bypass.
 */
double pre_hit_price(const FundParameters& p, const Coefficients& co,
                     double spot_at_valuation, double s);

/// Computes both components (pre_hit closed form + inverted post_hit).
BarrierSplit split_components(const FundParameters& p, const Coefficients& co,
                              double spot_at_valuation, double s,
                              const InversionConfig& cfg = {});

/**
 * Full call value at time-to-maturity s for the given valuation spot.
 * At the trigger (log_barrier ~ 0) this is the inception price; strike = 0
 * routes to the forward transform.
 */
PriceQuote lifetime_call_price(const FundParameters& p, const Coefficients& co,
                               double spot_at_valuation, double s,
                               const InversionConfig& cfg = {});

}  // namespace hwm
