#include "hwm/coefficients.hpp"
#include "hwm/types.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hwm {

std::vector<std::string> validate(const FundParameters& p) {
  std::vector<std::string> v;
  auto finite = [](double x) { return std::isfinite(x); };

  if (!finite(p.spot) || p.spot <= 0.0) v.push_back("spot must be positive");
  if (!finite(p.high_water_mark) || p.high_water_mark <= 0.0)
    v.push_back("high-water mark must be positive");
  if (!finite(p.strike) || p.strike < 0.0) v.push_back("strike must be nonnegative");
  if (!finite(p.volatility) || p.volatility <= 0.0)
    v.push_back("volatility must be positive");
  if (!finite(p.maturity) || !finite(p.valuation_offset) ||
      !(p.maturity - p.valuation_offset > 0.0))
    v.push_back("time to maturity must be positive");
  if (finite(p.valuation_offset) && p.valuation_offset < 0.0)
    v.push_back("valuation offset must be nonnegative");
  if (!finite(p.incentive_fraction) || p.incentive_fraction < 0.0 ||
      p.incentive_fraction > 1.0)
    v.push_back("incentive fraction must lie in [0, 1]");
  if (!finite(p.management_fee) || p.management_fee < 0.0)
    v.push_back("management fee must be nonnegative");
  if (!finite(p.rate)) v.push_back("rate must be finite");
  if (!finite(p.excess_return)) v.push_back("excess return must be finite");
  if (!finite(p.mean_return)) v.push_back("mean return must be finite");
  return v;
}

void require_valid(const FundParameters& p) {
  auto v = validate(p);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid parameters:";
  for (const auto& msg : v) os << " [" << msg << "]";
  throw std::invalid_argument(os.str());
}

const char* to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::laplace_inversion: return "laplace-inversion";
    case Method::monte_carlo: return "monte-carlo";
    case Method::parity: return "parity";
  }
  return "unknown";
}

Coefficients derive_coefficients(const FundParameters& p, double spot_at_valuation) {
  require_valid(p);
  if (!(spot_at_valuation > 0.0) || !std::isfinite(spot_at_valuation))
    throw std::invalid_argument("spot at valuation must be positive");

  const double sigma = p.volatility;
  const double r_eff = p.hwm_mode == HwmMode::fixed ? p.rate : 0.0;

  Coefficients co{};
  co.drift = (r_eff + p.excess_return - p.management_fee - 0.5 * sigma * sigma) / sigma;
  co.local_time_weight = p.mean_return * p.incentive_fraction / (2.0 * sigma);
  co.log_barrier = std::log(p.high_water_mark / spot_at_valuation) / sigma;
  co.log_strike = p.strike == 0.0 ? -std::numeric_limits<double>::infinity()
                                  : std::log(p.strike / spot_at_valuation) / sigma;
  const double b = co.drift;
  const double lt = co.local_time_weight;
  co.decay_above = 2.0 * lt * lt + 0.5 * b * b - 2.0 * lt * b;
  co.decay_below = 0.5 * b * b;
  const double edge = sigma + b - 2.0 * lt;
  co.validity_abscissa = edge * edge - 2.0 * (r_eff + co.decay_above);

  auto check = [](double x, const char* name) {
    if (!std::isfinite(x))
      throw std::domain_error(std::string("derived coefficient overflowed: ") + name);
  };
  check(co.drift, "drift");
  check(co.local_time_weight, "local_time_weight");
  check(co.log_barrier, "log_barrier");
  if (p.strike > 0.0) check(co.log_strike, "log_strike");
  check(co.decay_above, "decay_above");
  check(co.decay_below, "decay_below");
  check(co.validity_abscissa, "validity_abscissa");
  return co;
}

Coefficients derive_coefficients(const FundParameters& p) {
  return derive_coefficients(p, p.spot);
}

}  // namespace hwm
