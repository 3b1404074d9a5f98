#ifndef QERASER_QUADRATURE_HPP
#define QERASER_QUADRATURE_HPP

#include <functional>

namespace qeraser {

/// Adaptive Simpson integration of f over [a, b] to the given relative
/// tolerance. Deterministic subdivision; throws std::runtime_error when the
/// recursion depth limit is hit without convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol);

/// Nested adaptive Simpson over the rectangle [ax, bx] x [ay, by].
double integrate2d(const std::function<double(double, double)>& f, double ax,
                   double bx, double ay, double by, double rel_tol);

}  // namespace qeraser

#endif
