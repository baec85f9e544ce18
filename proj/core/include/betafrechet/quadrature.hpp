#ifndef BETAFRECHET_QUADRATURE_HPP
#define BETAFRECHET_QUADRATURE_HPP

#include <functional>

#include "betafrechet/errors.hpp"

namespace bf::quadrature {

struct QuadResult {
    double value;
    double error_estimate;
    int subdivisions;
    bool converged;
};

// Adaptive Gauss-Kronrod 15(7) on [lo, hi]. Bisects the worst interval
// first until |error| <= max(abs_tol, rel_tol*|value|) or the interval
// budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol = 1e-12, double rel_tol = 1e-12,
                     int max_intervals = 4000);

// Same, but throws convergence_error instead of returning converged=false.
double integrate_or_throw(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol = 1e-12, double rel_tol = 1e-12,
                          int max_intervals = 4000);

// [lo, inf) via the map x = lo + t/(1-t).
QuadResult integrate_to_inf(const std::function<double(double)>& f, double lo,
                            double abs_tol = 1e-12, double rel_tol = 1e-12,
                            int max_intervals = 4000);

} // namespace bf::quadrature

#endif
