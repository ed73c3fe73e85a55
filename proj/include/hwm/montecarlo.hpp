#pragma once
/**
 * @file montecarlo.hpp
 * @brief Independent Monte Carlo oracle for the NAV dynamics.
 *
 * Log-Euler scheme on ln(S): exact between drift-regime switches, so the
 * only discretization error is regime misclassification near the trigger.
 * Path blocks are embarrassingly parallel with per-block jump-ahead RNG
 * streams and a fixed reduction order: a given (paths, steps_per_year, seed,
 * antithetic) reproduces bit-identically at any thread count.
 */

#include <cstdint>

#include "hwm/types.hpp"

namespace hwm {

struct McConfig {
  long long paths = 1'000'000;
  int steps_per_year = 2000;
  std::uint64_t seed = 0x853c49e6748fea9bULL;
  bool antithetic = true;
};

enum class McPayoff { call, put, forward };

struct PathBatchStats {
  double price_mean = 0.0;
  double std_error = 0.0;                 ///< antithetic pairs counted once
  double occupation_above_fraction = 0.0; ///< mean fraction of time above the trigger
  double barrier_hit_fraction = 0.0;      ///< fraction of paths reaching the trigger
  long long paths = 0;
  int steps = 0;
};

/**
 * Simulates the discounted payoff over the remaining life [t, T].
 *
 * Per step: d(ln S) = (r + alpha - c - mu*a*1{S > H_t} - sigma^2/2) dt
 *                     + sigma sqrt(dt) Z, with H_t the trigger level (fixed,
 * or accruing at the rate). In accruing mode the cash strike is K*exp(r*T),
 * matching the contract the analytic route prices. Antithetic pairs share
 * the draw with opposite signs.
 *
 * Throws std::runtime_error if a path value turns non-finite (impossible for
 * valid parameters).
 */
PathBatchStats simulate_price(const FundParameters& p, McPayoff payoff,
                              const McConfig& cfg);

struct DensityCheckReport {
  double z_mean = 0.0;       ///< should be 1 within a few std errors
  double std_error = 0.0;
  double occupation_identity_error = 0.0;  ///< max |time above + time below - t|
  double mean_local_time = 0.0;
  long long paths = 0;
  int steps = 0;
};

/**
 * Simulates the driving Brownian motion directly and averages the
 * change-of-measure density built from a banded local-time estimator
 * (band eps = sqrt(dt)) and the occupation times. The density is a
 * martingale with unit mean, which the report lets callers verify.
 */
DensityCheckReport simulate_radon_nikodym_check(const FundParameters& p,
                                                const McConfig& cfg, double t);

}  // namespace hwm
