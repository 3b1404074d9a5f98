#include "qeraser/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace qeraser {

namespace {

constexpr int kMaxDepth = 40;

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
  if (depth > kMaxDepth)
    throw std::runtime_error("integrate: no convergence");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double refined = left + right;
  const double err = refined - whole;
  if (std::abs(err) <= 15.0 * tol * std::max(std::abs(refined), 1e-300))
    return refined + err / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, tol, depth + 1) +
         adapt(f, m, b, fm, frm, fb, right, tol, depth + 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(fa, fm, fb, b - a);
  return adapt(f, a, b, fa, fm, fb, whole, rel_tol, 0);
}

double integrate2d(const std::function<double(double, double)>& f, double ax,
                   double bx, double ay, double by, double rel_tol) {
  // Inner integrals are resolved a bit tighter so the outer estimate is not
  // polluted by inner truncation error.
  const double inner_tol = rel_tol * 0.1;
  return integrate(
      [&](double x) {
        return integrate([&](double y) { return f(x, y); }, ay, by, inner_tol);
      },
      ax, bx, rel_tol);
}

}  // namespace qeraser
