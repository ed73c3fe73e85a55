#include "hwm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hwm/coefficients.hpp"
#include "hwm/rng.hpp"

namespace hwm {

namespace {

struct BlockAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
  double occupation = 0.0;  // summed per-leg time-above fractions
  long long hits = 0;       // legs that reached the trigger
  long long legs = 0;
};

struct StepPlan {
  int steps;
  double dt;
  double sqrt_dt;
  double drift_below;   // per-step log increment below the trigger
  double drift_above;   // per-step log increment above the trigger
  double vol_step;
  double log_trigger0;  // trigger in log space at the valuation date
  double trigger_slope; // per-step growth of the log trigger (accruing mode)
  double discount;
  double strike_cash;   // cash strike paid at maturity
  double log_spot;
};

StepPlan make_plan(const FundParameters& p, const McConfig& cfg) {
  const double s = p.time_to_maturity();
  StepPlan plan{};
  plan.steps = std::max(1, static_cast<int>(std::ceil(cfg.steps_per_year * s)));
  plan.dt = s / plan.steps;
  plan.sqrt_dt = std::sqrt(plan.dt);
  const double base = p.rate + p.excess_return - p.management_fee -
                      0.5 * p.volatility * p.volatility;
  plan.drift_below = base * plan.dt;
  plan.drift_above = (base - p.mean_return * p.incentive_fraction) * plan.dt;
  plan.vol_step = p.volatility * plan.sqrt_dt;
  plan.log_spot = std::log(p.spot);
  plan.discount = std::exp(-p.rate * s);
  if (p.hwm_mode == HwmMode::fixed) {
    plan.log_trigger0 = std::log(p.high_water_mark);
    plan.trigger_slope = 0.0;
    plan.strike_cash = p.strike;
  } else {
    plan.log_trigger0 = std::log(p.high_water_mark) + p.rate * p.valuation_offset;
    plan.trigger_slope = p.rate * plan.dt;
    plan.strike_cash = p.strike * std::exp(p.rate * p.maturity);
  }
  return plan;
}

struct LegResult {
  double payoff;
  double occupation_fraction;
  bool hit;
};

inline double payoff_value(McPayoff kind, double terminal, double strike) {
  switch (kind) {
    case McPayoff::call: return std::max(terminal - strike, 0.0);
    case McPayoff::put: return std::max(strike - terminal, 0.0);
    case McPayoff::forward: return terminal;
  }
  return 0.0;
}

}  // namespace

PathBatchStats simulate_price(const FundParameters& p, McPayoff payoff,
                              const McConfig& cfg) {
  require_valid(p);
  if (cfg.paths < 1) throw std::invalid_argument("simulate_price: paths must be >= 1");
  if (cfg.steps_per_year < 1)
    throw std::invalid_argument("simulate_price: steps_per_year must be >= 1");

  const StepPlan plan = make_plan(p, cfg);
  const bool anti = cfg.antithetic;
  const long long units = anti ? (cfg.paths + 1) / 2 : cfg.paths;

  constexpr long long kBlockUnits = 8192;
  const long long blocks = (units + kBlockUnits - 1) / kBlockUnits;
  std::vector<BlockAccum> accum(static_cast<std::size_t>(blocks));

  const bool start_below = plan.log_spot < plan.log_trigger0;
  const bool start_at = plan.log_spot == plan.log_trigger0;

  auto run_block = [&](long long block, Xoshiro256pp stream) {
    NormalSampler normal(stream);
    BlockAccum acc;
    const long long first = block * kBlockUnits;
    const long long last = std::min(units, first + kBlockUnits);
    for (long long unit = first; unit < last; ++unit) {
      double x_pos = plan.log_spot;
      double x_neg = plan.log_spot;
      long long above_pos = 0, above_neg = 0;
      bool hit_pos = start_at, hit_neg = start_at;
      double trigger = plan.log_trigger0;
      for (int i = 0; i < plan.steps; ++i) {
        const bool up_pos = x_pos > trigger;
        const bool up_neg = x_neg > trigger;
        above_pos += up_pos;
        above_neg += up_neg;
        const double z = normal() * plan.vol_step;
        x_pos += (up_pos ? plan.drift_above : plan.drift_below) + z;
        x_neg += (up_neg ? plan.drift_above : plan.drift_below) - z;
        trigger += plan.trigger_slope;
        if (start_below) {
          hit_pos |= x_pos >= trigger;
          hit_neg |= x_neg >= trigger;
        } else {
          hit_pos |= x_pos <= trigger;
          hit_neg |= x_neg <= trigger;
        }
      }
      const double g_pos =
          plan.discount * payoff_value(payoff, std::exp(x_pos), plan.strike_cash);
      if (!std::isfinite(g_pos))
        throw std::runtime_error("simulate_price: non-finite path value");
      if (anti) {
        const double g_neg =
            plan.discount * payoff_value(payoff, std::exp(x_neg), plan.strike_cash);
        const double pair_mean = 0.5 * (g_pos + g_neg);
        acc.sum += pair_mean;
        acc.sum_sq += pair_mean * pair_mean;
        acc.occupation += (above_pos + above_neg) / static_cast<double>(plan.steps);
        acc.hits += hit_pos + hit_neg;
        acc.legs += 2;
      } else {
        acc.sum += g_pos;
        acc.sum_sq += g_pos * g_pos;
        acc.occupation += above_pos / static_cast<double>(plan.steps);
        acc.hits += hit_pos;
        acc.legs += 1;
      }
    }
    accum[static_cast<std::size_t>(block)] = acc;
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<long long>(hw, blocks));
  std::atomic<bool> failed{false};
  auto worker = [&](unsigned tid) {
    Xoshiro256pp stream(cfg.seed);
    long long jumped = 0;
    for (long long block = 0; block < blocks; ++block) {
      // Advance to this block's stream; strictly increasing, so each jump
      // happens once per worker pass.
      while (jumped < block) {
        stream.jump();
        ++jumped;
      }
      if (block % workers == tid) {
        try {
          run_block(block, stream);
        } catch (...) {
          failed = true;
          return;
        }
      }
    }
  };
  if (workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned tid = 0; tid < workers; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
  }
  if (failed)
    throw std::runtime_error("simulate_price: non-finite path value");

  // Fixed-order reduction keeps results independent of the thread count.
  double sum = 0.0, sum_sq = 0.0, occupation = 0.0;
  long long hits = 0, legs = 0;
  for (const auto& acc : accum) {
    sum += acc.sum;
    sum_sq += acc.sum_sq;
    occupation += acc.occupation;
    hits += acc.hits;
    legs += acc.legs;
  }

  PathBatchStats stats;
  stats.paths = legs;
  stats.steps = plan.steps;
  const double n = static_cast<double>(units);
  stats.price_mean = sum / n;
  if (units > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    stats.std_error = std::sqrt(var / n);
  }
  stats.occupation_above_fraction = occupation / static_cast<double>(legs);
  stats.barrier_hit_fraction = static_cast<double>(hits) / static_cast<double>(legs);
  return stats;
}

DensityCheckReport simulate_radon_nikodym_check(const FundParameters& p,
                                                const McConfig& cfg, double t) {
  require_valid(p);
  if (!(t > 0.0))
    throw std::invalid_argument("simulate_radon_nikodym_check: t must be positive");

  const Coefficients co = derive_coefficients(p);
  const int steps = std::max(1, static_cast<int>(std::ceil(cfg.steps_per_year * t)));
  const double dt = t / steps;
  const double sqrt_dt = std::sqrt(dt);
  const double band = sqrt_dt;  // local-time band epsilon
  const double level = co.log_barrier;
  const double b = co.drift;
  const double ltw = co.local_time_weight;
  const double prefactor = 2.0 * ltw * std::max(-level, 0.0);

  const bool anti = cfg.antithetic;
  const long long units = anti ? (cfg.paths + 1) / 2 : cfg.paths;
  constexpr long long kBlockUnits = 8192;
  const long long blocks = (units + kBlockUnits - 1) / kBlockUnits;

  struct Acc {
    double sum = 0.0, sum_sq = 0.0, local_time = 0.0;
    double identity_err = 0.0;
    long long legs = 0;
  };
  std::vector<Acc> accum(static_cast<std::size_t>(blocks));

  auto leg_density = [&](double w, long long in_band, long long above) {
    const double local_time = static_cast<double>(in_band) * dt / (2.0 * band);
    const double over = w - level;
    const double a_above = static_cast<double>(above) * dt;
    const double a_below = static_cast<double>(steps - above) * dt;
    return std::exp(prefactor + b * w - 2.0 * ltw * std::max(over, 0.0) +
                    ltw * local_time - co.decay_above * a_above -
                    co.decay_below * a_below);
  };

  auto run_block = [&](long long block, Xoshiro256pp stream) {
    NormalSampler normal(stream);
    Acc acc;
    const long long first = block * kBlockUnits;
    const long long last = std::min(units, first + kBlockUnits);
    for (long long unit = first; unit < last; ++unit) {
      double w_pos = 0.0, w_neg = 0.0;
      long long band_pos = 0, band_neg = 0, above_pos = 0, above_neg = 0;
      long long below_pos = 0, below_neg = 0;
      for (int i = 0; i < steps; ++i) {
        band_pos += std::abs(w_pos - level) <= band;
        band_neg += std::abs(w_neg - level) <= band;
        above_pos += w_pos >= level;
        above_neg += w_neg >= level;
        below_pos += w_pos < level;
        below_neg += w_neg < level;
        const double z = normal() * sqrt_dt;
        w_pos += z;
        w_neg -= z;
      }
      // occupation identity: the above/below counts partition the steps
      const double ident =
          std::max(std::abs(static_cast<double>(above_pos + below_pos - steps)),
                   std::abs(static_cast<double>(above_neg + below_neg - steps))) *
          dt;
      acc.identity_err = std::max(acc.identity_err, ident);
      const double z_pos = leg_density(w_pos, band_pos, above_pos);
      if (anti) {
        const double z_neg = leg_density(w_neg, band_neg, above_neg);
        const double pair = 0.5 * (z_pos + z_neg);
        acc.sum += pair;
        acc.sum_sq += pair * pair;
        acc.local_time += (static_cast<double>(band_pos) + band_neg) * dt / (2.0 * band);
        acc.legs += 2;
      } else {
        acc.sum += z_pos;
        acc.sum_sq += z_pos * z_pos;
        acc.local_time += static_cast<double>(band_pos) * dt / (2.0 * band);
        acc.legs += 1;
      }
    }
    accum[static_cast<std::size_t>(block)] = acc;
  };

  Xoshiro256pp stream(cfg.seed);
  for (long long block = 0; block < blocks; ++block) {
    run_block(block, stream);
    stream.jump();
  }

  double sum = 0.0, sum_sq = 0.0, local_time = 0.0, ident = 0.0;
  long long legs = 0;
  for (const auto& acc : accum) {
    sum += acc.sum;
    sum_sq += acc.sum_sq;
    local_time += acc.local_time;
    ident = std::max(ident, acc.identity_err);
    legs += acc.legs;
  }

  DensityCheckReport report;
  report.paths = legs;
  report.steps = steps;
  const double n = static_cast<double>(units);
  report.z_mean = sum / n;
  if (units > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    report.std_error = std::sqrt(var / n);
  }
  report.mean_local_time = local_time / static_cast<double>(legs);
  report.occupation_identity_error = ident;
  return report;
}

}  // namespace hwm
