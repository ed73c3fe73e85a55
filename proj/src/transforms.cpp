#include "hwm/transforms.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hwm/quadrature.hpp"

namespace hwm {

namespace {

using cplx = std::complex<double>;

constexpr double kBarrierEps = 1e-12;

// base^e for a positive real base (principal branch).
inline cplx rpow(double base, cplx e) { return std::exp(e * std::log(base)); }

// Scalars every evaluator needs; captured by value so handles stay pure.
struct Core {
  double rate_above;  // r + decay_above, radicand shift above the mark
  double rate_below;  // r + decay_below, radicand shift below the mark
  double drift;
  double ltw;
  double vol;
};

Core make_core(const FundParameters& p, const Coefficients& co) {
  if (p.hwm_mode != HwmMode::fixed)
    throw std::invalid_argument(
        "transforms take fixed-trigger parameters; accruing contracts are "
        "priced through the rate-zero substitution in the pricing layer");
  return Core{p.rate + co.decay_above, p.rate + co.decay_below, co.drift,
              co.local_time_weight, p.volatility};
}

// If a structural denominator is about to vanish, nudge theta off the point.
// Only reachable on a measure-zero parameter set; the abscissa keeps the
// contour away from all true singularities.
inline cplx guard_theta(cplx theta, const Core& c) {
  const cplx rp = std::sqrt(theta + 2.0 * c.rate_above);
  const cplx rm = std::sqrt(theta + 2.0 * c.rate_below);
  const double scale = 1.0 + std::abs(theta);
  auto tiny = [&](cplx d) { return std::abs(d) < 1e-13 * scale; };
  if (tiny(rp + 2.0 * c.ltw - c.vol - c.drift) || tiny(rp + 2.0 * c.ltw - c.drift) ||
      tiny(rm + c.vol + c.drift) || tiny(rm + c.drift) ||
      tiny(rp + rm - 2.0 * c.ltw)) {
    return theta + cplx(1e-9 * scale, 1e-9 * scale);
  }
  return theta;
}

// Shared half-sum denominator.
inline cplx kernel_denominator(cplx rp, cplx rm, double ltw) {
  return 0.5 * (rp + rm - 2.0 * ltw);
}

// Numerator when the payoff region lies entirely above the mark
// (spot_level <= strike). spot_level is the level the diffusion restarts
// from: the valuation spot at inception, the trigger after a hit.
cplx above_mark_numerator(cplx rp, double spot_level, double strike, const Core& c) {
  const cplx e1 = rp + 2.0 * c.ltw - c.vol - c.drift;
  const cplx e2 = rp + 2.0 * c.ltw - c.drift;
  const double ratio = spot_level / strike;
  return spot_level / e1 * rpow(ratio, e1 / c.vol) -
         strike / e2 * rpow(ratio, e2 / c.vol);
}

// Numerator pair when the payoff region straddles the mark
// (spot_level >= strike). strike = 0 keeps only the surviving terms.
cplx straddling_numerator(cplx rp, cplx rm, double spot_level, double strike,
                          const Core& c) {
  const cplx e1 = rp + 2.0 * c.ltw - c.vol - c.drift;
  const cplx e2 = rp + 2.0 * c.ltw - c.drift;
  cplx n1 = spot_level / e1;
  cplx n2 = spot_level / (rm + c.vol + c.drift);
  if (strike > 0.0) {
    const double ratio = strike / spot_level;
    n1 -= strike / e2;
    n2 *= 1.0 - rpow(ratio, (rm + c.vol + c.drift) / c.vol);
    n2 -= strike / (rm + c.drift) *
          (1.0 - rpow(ratio, (rm + c.drift) / c.vol));
  }
  return n1 + n2;
}

cplx call_numerator(cplx rp, cplx rm, double spot_level, double strike,
                    const Core& c) {
  return spot_level <= strike ? above_mark_numerator(rp, spot_level, strike, c)
                              : straddling_numerator(rp, rm, spot_level, strike, c);
}

// Smallest Re(theta) at which every radicand, structural denominator and
// decay exponent stays in its valid regime on the contour.
double structural_abscissa(const FundParameters& p, const Coefficients& co,
                           bool post_hit) {
  const Core c = make_core(p, co);
  double a = co.validity_abscissa;
  a = std::max(a, -2.0 * c.rate_above);
  a = std::max(a, -2.0 * c.rate_below);
  const double b = c.drift;
  if (b < 0.0) a = std::max(a, b * b - 2.0 * c.rate_below);
  if (b + c.vol < 0.0) a = std::max(a, (b + c.vol) * (b + c.vol) - 2.0 * c.rate_below);
  if (b - 2.0 * c.ltw > 0.0)
    a = std::max(a, (b - 2.0 * c.ltw) * (b - 2.0 * c.ltw) - 2.0 * c.rate_above);
  if (post_hit) {
    // Exponential prefactor must decay toward the trigger.
    if (co.log_barrier > 0.0 && b > 0.0)
      a = std::max(a, b * b - 2.0 * c.rate_below);
    if (co.log_barrier < 0.0 && 2.0 * c.ltw - b > 0.0)
      a = std::max(a, (2.0 * c.ltw - b) * (2.0 * c.ltw - b) - 2.0 * c.rate_above);
  }
  if (c.ltw > 0.0) {
    // Raise the bound past any real zero of the shared denominator.
    auto den = [&](double th) {
      return std::sqrt(th + 2.0 * c.rate_above) + std::sqrt(th + 2.0 * c.rate_below) -
             2.0 * c.ltw;
    };
    double lo = a;
    if (den(lo + 1e-12 * (1.0 + std::abs(lo))) <= 0.0) {
      double hi = lo + 1.0;
      while (den(hi) <= 0.0) hi = lo + 2.0 * (hi - lo);
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (den(mid) <= 0.0 ? lo : hi) = mid;
      }
      a = hi;
    }
  }
  return a;
}

}  // namespace

std::complex<double> TransformHandle::operator()(std::complex<double> theta) const {
  if (!(theta.real() > validity_abscissa)) {
    std::ostringstream os;
    os << description << ": Re(theta)=" << theta.real()
       << " is at or below the validity abscissa " << validity_abscissa;
    throw std::domain_error(os.str());
  }
  return evaluator(theta);
}

double PayoffWeight::operator()(double x) const {
  const double intrinsic = spot * std::exp(vol * x) - strike;
  if (intrinsic <= 0.0) return 0.0;
  const double over = x - log_barrier;
  return std::exp(drift * x - 2.0 * local_time_weight * (over > 0.0 ? over : 0.0)) *
         intrinsic;
}

double excursion_kernel(const std::function<double(double)>& h,
                        double local_time_weight, double decay_pos,
                        double decay_neg, double theta, double growth_hint,
                        double* tail_bound) {
  const double rad_p = theta + 2.0 * decay_pos;
  const double rad_n = theta + 2.0 * decay_neg;
  if (rad_p < 0.0 || rad_n < 0.0)
    throw std::domain_error("excursion_kernel: negative radicand at this theta");
  const double kp = std::sqrt(rad_p);
  const double kn = std::sqrt(rad_n);
  const double den = kp + kn - 2.0 * local_time_weight;
  if (!(den > 0.0))
    throw std::domain_error("excursion_kernel: denominator not positive");

  const double resid_p = kp - growth_hint;
  const double resid_n = kn - growth_hint;
  if (!(resid_p > 0.0) || !(resid_n > 0.0))
    throw std::domain_error("excursion_kernel: kernel does not dominate the integrand");
  const double cut = std::min(resid_p, resid_n);
  const double trunc = 40.0 / cut;

  auto fp = [&](double x) { return std::exp(-x * kp) * h(x); };
  auto fn = [&](double x) { return std::exp(-x * kn) * h(-x); };
  // Geometrically growing panels: narrow features near the origin (payoff
  // kinks, compact support) stay visible to the nodes even when the
  // truncated domain is long.
  auto piecewise = [&](const std::function<double(double)>& f) {
    QuadResult total;
    total.converged = true;
    double lo = 0.0;
    double width = std::min(0.5, trunc);
    while (lo < trunc) {
      const double hi = std::min(trunc, lo + width);
      const QuadResult q = integrate(f, lo, hi, 1e-15, 1e-11, 24);
      total.value += q.value;
      total.error_estimate += q.error_estimate;
      total.panels += q.panels;
      total.converged = total.converged && q.converged;
      lo = hi;
      width *= 2.0;
    }
    return total;
  };
  QuadResult qp = piecewise(fp);
  QuadResult qn = piecewise(fn);

  const double tail = std::abs(h(trunc)) * std::exp(-kp * trunc) / resid_p +
                      std::abs(h(-trunc)) * std::exp(-kn * trunc) / resid_n;
  if (tail_bound) *tail_bound = tail;
  const double residual = qp.error_estimate + qn.error_estimate + tail;
  const double scale = std::abs(qp.value) + std::abs(qn.value) + tail;
  if (residual > 1e-9 * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os << "excursion_kernel: quadrature did not converge (residual " << residual
       << ", tail " << tail << ")";
    throw std::runtime_error(os.str());
  }
  return 2.0 * (qp.value + qn.value) / den;
}

TransformHandle inception_call_transform(const FundParameters& p,
                                         const Coefficients& co) {
  const Core c = make_core(p, co);
  if (std::abs(co.log_barrier) > kBarrierEps)
    throw std::invalid_argument(
        "inception_call_transform: requires the trigger at the spot");
  if (!(p.strike > 0.0))
    throw std::invalid_argument(
        "inception_call_transform: strike must be positive (use forward_transform)");

  const double spot = p.high_water_mark;  // == valuation spot here
  const double strike = p.strike;
  TransformHandle handle;
  handle.validity_abscissa = structural_abscissa(p, co, false);
  handle.description = spot <= strike ? "inception call transform (spot at or below strike)"
                                      : "inception call transform (spot above strike)";
  handle.evaluator = [c, spot, strike](cplx theta) {
    theta = guard_theta(theta, c);
    const cplx rp = std::sqrt(theta + 2.0 * c.rate_above);
    const cplx rm = std::sqrt(theta + 2.0 * c.rate_below);
    return call_numerator(rp, rm, spot, strike, c) / kernel_denominator(rp, rm, c.ltw);
  };
  return handle;
}

TransformHandle forward_transform(const FundParameters& p, const Coefficients& co) {
  const Core c = make_core(p, co);
  if (std::abs(co.log_barrier) > kBarrierEps)
    throw std::invalid_argument("forward_transform: requires the trigger at the spot");

  const double spot = p.high_water_mark;
  TransformHandle handle;
  handle.validity_abscissa = structural_abscissa(p, co, false);
  handle.description = "forward transform";
  handle.evaluator = [c, spot](cplx theta) {
    theta = guard_theta(theta, c);
    const cplx rp = std::sqrt(theta + 2.0 * c.rate_above);
    const cplx rm = std::sqrt(theta + 2.0 * c.rate_below);
    return straddling_numerator(rp, rm, spot, 0.0, c) /
           kernel_denominator(rp, rm, c.ltw);
  };
  return handle;
}

TransformHandle post_hit_transform(const FundParameters& p, const Coefficients& co,
                                   double spot_at_valuation) {
  const Core c = make_core(p, co);
  if (!(spot_at_valuation > 0.0))
    throw std::invalid_argument("post_hit_transform: spot must be positive");
  if (p.strike < 0.0)
    throw std::invalid_argument("post_hit_transform: strike must be nonnegative");

  const double trigger = p.high_water_mark;
  const double strike = p.strike;
  const double log_barrier = co.log_barrier;
  const double barrier_ratio =
      log_barrier > 0.0 ? trigger / spot_at_valuation : spot_at_valuation / trigger;

  TransformHandle handle;
  handle.validity_abscissa = structural_abscissa(p, co, true);
  handle.description = "post-hit transform";
  handle.evaluator = [c, trigger, strike, log_barrier, barrier_ratio](cplx theta) {
    theta = guard_theta(theta, c);
    const cplx rp = std::sqrt(theta + 2.0 * c.rate_above);
    const cplx rm = std::sqrt(theta + 2.0 * c.rate_below);
    cplx reach{1.0, 0.0};  // first-passage discount to the trigger level
    if (log_barrier > 0.0)
      reach = rpow(barrier_ratio, (c.drift - rm) / c.vol);
    else if (log_barrier < 0.0)
      reach = rpow(barrier_ratio, (2.0 * c.ltw - c.drift - rp) / c.vol);
    return reach * call_numerator(rp, rm, trigger, strike, c) /
           kernel_denominator(rp, rm, c.ltw);
  };
  return handle;
}

}  // namespace hwm
