#include "hwm/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace hwm {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1] (QUADPACK constants).
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kWeights[7] * f(mid);
  double gauss = kGaussWeights[3] * f(mid);
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double pair = f(mid - dx) + f(mid + dx);
    kronrod += kWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

void refine(const std::function<double(double)>& f, double a, double b,
            Panel panel, double tol, int depth, int max_depth, QuadResult& out) {
  if (depth >= max_depth || panel.error <= tol) {
    out.value += panel.value;
    out.error_estimate += panel.error;
    out.panels += 1;
    if (panel.error > tol && depth >= max_depth) out.converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  refine(f, a, mid, gk15(f, a, mid), 0.5 * tol, depth + 1, max_depth, out);
  refine(f, mid, b, gk15(f, mid, b), 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_depth) {
  if (!(b >= a)) throw std::invalid_argument("integrate: requires b >= a");
  QuadResult out;
  out.converged = true;
  if (a == b) return out;
  Panel whole = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * std::abs(whole.value));
  refine(f, a, b, whole, tol, 0, max_depth, out);
  if (!std::isfinite(out.value)) throw std::runtime_error("integrate: non-finite integrand");
  return out;
}

}  // namespace hwm
