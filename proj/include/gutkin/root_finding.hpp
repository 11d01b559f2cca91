#pragma once

#include <functional>
#include <utility>

namespace gutkin::detail {

/// Safeguarded Newton iteration on a sign-changing bracket [lo, hi].
///
/// fdf returns (f(x), f'(x)). Newton steps that leave the current bracket or
/// fail to halve it fall back to bisection. Stops when the bracket is narrower
/// than xtol or |f| vanishes. Throws ConvergenceFailure if f(lo), f(hi) do
/// not bracket a root.
double safe_newton(const std::function<std::pair<double, double>(double)>& fdf, double lo, double hi,
                   double xtol = 1e-15, int max_iter = 200);

/// Plain bisection for functions without a cheap derivative.
double bisect(const std::function<double(double)>& f, double lo, double hi, double xtol = 1e-15,
              int max_iter = 200);

}  // namespace gutkin::detail
