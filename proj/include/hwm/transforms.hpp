#pragma once
/**
 * @file transforms.hpp
 * @brief Closed-form Laplace transforms of the discounted option value as a
 *        function of time to maturity.
 *
 * Transforms use the scaled variable theta with kernel exp(-theta*t/2); the
 * inversion module converts to the standard variable s = theta/2 in one
 * place. Evaluators accept complex theta with Re(theta) right of the
 * validity abscissa and use principal-branch square roots, so no branch cut
 * is crossed on a vertical contour placed right of the abscissa.
 *
 * All handles are immutable and their evaluators pure; concurrent evaluation
 * at many theta values is the expected use.
 */

#include <complex>
#include <functional>
#include <string>

#include "hwm/coefficients.hpp"
#include "hwm/types.hpp"

namespace hwm {

struct TransformHandle {
  std::function<std::complex<double>(std::complex<double>)> evaluator;
  double validity_abscissa = 0.0;
  std::string description;

  /// Evaluates at theta; throws std::domain_error at or below the abscissa.
  std::complex<double> operator()(std::complex<double> theta) const;
};

/// Payoff weight h(x) = exp(drift*x - 2*ltw*(x - log_barrier)+)
///                      * (spot*exp(vol*x) - strike)+.
/// At inception log_barrier = 0. Nonnegative and continuous everywhere.
struct PayoffWeight {
  double spot;
  double strike;
  double drift;
  double local_time_weight;
  double vol;
  double log_barrier;

  double operator()(double x) const;

  /// Exponential growth rate of h as x -> +infinity.
  double growth_rate() const { return drift - 2.0 * local_time_weight + vol; }
};

/**
 * Numeric-quadrature version of the occupation-time kernel
 *
 *   2 * ( I[e^{-x*sqrt(theta+2*decay_pos)} h(x)]
 *       + I[e^{-x*sqrt(theta+2*decay_neg)} h(-x)] )
 *     / ( sqrt(theta+2*decay_pos) + sqrt(theta+2*decay_neg) - 2*ltw )
 *
 * with I[...] the integral over x in [0, inf), truncated at X = 40 over the
 * residual decay rate (kernel rate minus growth_hint). Used to cross-check
 * the closed forms; not on any pricing path.
 *
 * Throws std::domain_error when the denominator is not positive or a
 * radicand is negative, and std::runtime_error when the quadrature fails to
 * converge (the message carries the residual estimate). If tail_bound is
 * non-null it receives the truncation-tail estimate.
 */
double excursion_kernel(const std::function<double(double)>& h,
                        double local_time_weight, double decay_pos,
                        double decay_neg, double theta,
                        double growth_hint = 0.0, double* tail_bound = nullptr);

/**
 * Transform of the call value at inception, where the trigger equals the
 * spot. Dispatches on spot vs strike (the two branches agree at the
 * boundary). Requires |log_barrier| ~ 0 and strike > 0; strike = 0 contracts
 * are handled by forward_transform.
 */
TransformHandle inception_call_transform(const FundParameters& p,
                                         const Coefficients& co);

/// Transform of the discounted NAV expectation (strike plays no role).
TransformHandle forward_transform(const FundParameters& p,
                                  const Coefficients& co);

/**
 * Transform of the value component that accrues after the NAV first reaches
 * the trigger level. Valid for any log_barrier sign; at log_barrier = 0 it
 * coincides with the inception transform. Requires strike >= 0.
 */
TransformHandle post_hit_transform(const FundParameters& p,
                                   const Coefficients& co,
                                   double spot_at_valuation);

}  // namespace hwm
