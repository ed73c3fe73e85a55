#pragma once
/**
 * @file types.hpp
 * @brief Contract/market inputs for options on a hedge-fund NAV under the
 *        high-water-mark incentive-fee rule, plus shared result types.
 *
 * Conventions: prices in currency units, times in years, rates as decimals
 * per year (0.02, not 2%). Percent parsing belongs to the CLI layer.
 */

#include <map>
#include <string>
#include <vector>

namespace hwm {

/// How the fee-trigger level behaves through time.
enum class HwmMode {
  fixed,          ///< trigger stays at the contractual level H
  accruing_at_r,  ///< trigger accrues at the risk-free rate, H*exp(r*t)
};

/// Market and contract inputs. Treat instances as immutable values; all
/// operations on them are pure and safe to share across threads.
struct FundParameters {
  double spot = 100.0;              ///< NAV at the valuation date
  double high_water_mark = 100.0;   ///< fee-trigger level H
  double strike = 100.0;            ///< strike K; K = 0 prices the forward
  double maturity = 1.0;            ///< T, years from contract inception
  double valuation_offset = 0.0;    ///< t, years since inception, 0 <= t < T
  double rate = 0.0;                ///< risk-free rate r
  double excess_return = 0.0;       ///< manager excess return alpha
  double management_fee = 0.0;      ///< proportional fee c (dividend-like)
  double incentive_fraction = 0.0;  ///< incentive share a, typically 0.05-0.20
  double mean_return = 0.0;         ///< observed mean NAV return mu
  double volatility = 0.0;          ///< sigma, must be > 0
  HwmMode hwm_mode = HwmMode::fixed;

  double time_to_maturity() const { return maturity - valuation_offset; }
};

/// Returns every violated constraint, not just the first. Empty means valid.
/// Total function: never throws.
std::vector<std::string> validate(const FundParameters& p);

/// Throws std::invalid_argument listing all violations.
void require_valid(const FundParameters& p);

enum class Method { closed_form, laplace_inversion, monte_carlo, parity };
const char* to_string(Method m);

/// A priced result with provenance and an absolute error estimate.
/// Invariant: value >= -error_estimate for call/put/forward payoffs.
struct PriceQuote {
  double value = 0.0;
  Method method = Method::closed_form;
  double error_estimate = 0.0;
  std::map<std::string, std::string> diagnostics;
};

}  // namespace hwm
