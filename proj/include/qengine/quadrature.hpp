#pragma once

// Numerical cross-checks for the closed forms: adaptive Simpson quadrature for
// work integrals and a central finite difference for the pressure.

#include <functional>

#include "qengine/well.hpp"

namespace qengine {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_depth = 50;

    /// Throws InvariantError on non-positive tolerances or max_depth < 1.
    void validate() const;
};

/// Signed integral of f over [a, b]. integrate(f, b, a) is exactly -integrate(f, a, b).
///
/// Adaptive Simpson with Richardson extrapolation; subintervals are refined
/// left before right so the result is bit-reproducible for a given config.
/// Throws ConvergenceError, carrying the whole-interval estimate and summed error
/// bound, when any subinterval reaches max_depth unconverged;
/// DomainError when f returns a non-finite value.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg = {});

/// -(E(L + h) - E(L - h)) / (2h) with h = h_rel * L.
double finite_diff_pressure(const WellState& state, const UnitSystem& units, double h_rel = 1e-5);

}  // namespace qengine
