#include "hwm/normal.hpp"

namespace hwm {

double norm_cdf_diff(double hi, double lo) {
  if (hi < lo) return -norm_cdf_diff(lo, hi);
  // Same-tail differences go through erfc of positive arguments so the
  // near-one parts never materialize.
  if (lo >= 0.0) return 0.5 * (std::erfc(lo * M_SQRT1_2) - std::erfc(hi * M_SQRT1_2));
  if (hi <= 0.0) return 0.5 * (std::erfc(-hi * M_SQRT1_2) - std::erfc(-lo * M_SQRT1_2));
  return norm_cdf(hi) - norm_cdf(lo);  // straddles zero, both parts moderate
}

}  // namespace hwm
