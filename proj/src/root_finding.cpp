#include "gutkin/root_finding.hpp"

#include <cmath>
#include <tuple>

#include "gutkin/errors.hpp"

namespace gutkin::detail {

double safe_newton(const std::function<std::pair<double, double>(double)>& fdf, double lo, double hi, double xtol,
                   int max_iter) {
    auto [flo, dlo] = fdf(lo);
    auto [fhi, dhi] = fdf(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw ConvergenceFailure("safe_newton: endpoints do not bracket a root");
    }
    // Orient so that f(lo) < 0.
    if (flo > 0.0) std::swap(lo, hi);

    double x = 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    auto [f, df] = fdf(x);
    for (int it = 0; it < max_iter; ++it) {
        const bool newton_leaves = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
        const bool newton_slow = std::abs(2.0 * f) > std::abs(dx_old * df);
        dx_old = dx;
        if (newton_leaves || newton_slow || df == 0.0) {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx = f / df;
            x -= dx;
        }
        if (std::abs(dx) < xtol) return x;
        std::tie(f, df) = fdf(x);
        if (f == 0.0) return x;
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        if (std::abs(hi - lo) < xtol) return 0.5 * (lo + hi);
    }
    throw ConvergenceFailure("safe_newton: iteration limit reached");
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol, int max_iter) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw ConvergenceFailure("bisect: endpoints do not bracket a root");
    }
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(hi - lo) < xtol || mid == lo || mid == hi) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace gutkin::detail
