#include "qengine/quadrature.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qengine/errors.hpp"

namespace qengine {

namespace {

// Differences below this multiple of |S| are rounding noise, not truncation error.
constexpr double kRoundingFloor = 64.0 * std::numeric_limits<double>::epsilon();

class AdaptiveSimpson {
public:
    AdaptiveSimpson(const std::function<double(double)>& f, const QuadratureConfig& cfg)
        : f_(f), cfg_(cfg) {}

    double run(double a, double b) {
        const double fa = eval(a);
        const double fm = eval(0.5 * (a + b));
        const double fb = eval(b);
        const double whole = simpson(a, b, fa, fm, fb);
        const double tol = std::max(cfg_.abs_tol, cfg_.rel_tol * std::abs(whole));
        const double result = refine(a, b, fa, fm, fb, whole, tol, 0);
        if (unconverged_ > 0) {
            throw ConvergenceError("adaptive quadrature on [" + std::to_string(a) + ", " +
                                       std::to_string(b) + "] hit max_depth in " +
                                       std::to_string(unconverged_) + " subinterval(s)",
                                   result, error_bound_);
        }
        return result;
    }

private:
    static double simpson(double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }

    double eval(double x) const {
        const double y = f_(x);
        if (!std::isfinite(y)) {
            throw DomainError("integrand is not finite at x = " + std::to_string(x));
        }
        return y;
    }

    double refine(double a, double b, double fa, double fm, double fb, double whole, double tol,
                  int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = eval(lm);
        const double frm = eval(rm);
        const double left = simpson(a, m, fa, flm, fm);
        const double right = simpson(m, b, fm, frm, fb);
        const double halves = left + right;
        const double delta = halves - whole;

        if (std::abs(delta) <= 15.0 * tol || std::abs(delta) <= kRoundingFloor * std::abs(halves)) {
            return halves + delta / 15.0;
        }
        if (depth + 1 >= cfg_.max_depth) {
            // Keep the local estimate so the caller gets a whole-interval best guess.
            ++unconverged_;
            error_bound_ += std::abs(delta) / 15.0;
            return halves + delta / 15.0;
        }
        return refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }

    const std::function<double(double)>& f_;
    const QuadratureConfig& cfg_;
    int unconverged_ = 0;
    double error_bound_ = 0.0;
};

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0)) throw InvariantError("quadrature rel_tol must be positive");
    if (!(abs_tol > 0.0)) throw InvariantError("quadrature abs_tol must be positive");
    if (max_depth < 1) throw InvariantError("quadrature max_depth must be >= 1");
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureConfig& cfg) {
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("integration bounds must be finite");
    }
    if (a == b) return 0.0;
    if (a > b) return -integrate(f, b, a, cfg);
    return AdaptiveSimpson(f, cfg).run(a, b);
}

double finite_diff_pressure(const WellState& state, const UnitSystem& units, double h_rel) {
    const double L = state.width();
    const double h = h_rel * L;
    if (!(h > 0.0) || !(L - h > 0.0)) {
        throw DomainError("finite-difference step must satisfy 0 < h < L");
    }
    const double e_plus = state_energy(state.with_width(L + h), units);
    const double e_minus = state_energy(state.with_width(L - h), units);
    return -(e_plus - e_minus) / (2.0 * h);
}

}  // namespace qengine
