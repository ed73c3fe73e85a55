#pragma once
// Standard normal helpers. The barrier formulas difference nearly-equal CDF
// values at large arguments, so differences go through complementary forms.

#include <cmath>

namespace hwm {

inline double norm_pdf(double x) {
  constexpr double kInvSqrt2Pi = 0.3989422804014326779;  // 1/sqrt(2*pi)
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

/// N(x) via erfc; absolute error <= 1e-15 over the real line.
inline double norm_cdf(double x) {
  return 0.5 * std::erfc(-x * M_SQRT1_2);
}

/// N(hi) - N(lo) without forming near-one intermediates when both arguments
/// sit in the same tail. Negative when hi < lo.
double norm_cdf_diff(double hi, double lo);

}  // namespace hwm
