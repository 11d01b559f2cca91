#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gutkin::detail {

/// Samples lost at each end by the five-point stencils below.
inline constexpr std::size_t kStencilMargin = 2;

/// Fourth-order central first derivative on a uniform grid. The first and
/// last kStencilMargin entries are copied from their nearest interior
/// neighbour and must not be used as derivatives.
template <class T>
std::vector<T> central_d1(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2 * kStencilMargin + 1) throw std::invalid_argument("central_d1: need at least 5 samples");
    std::vector<T> d(n);
    for (std::size_t i = kStencilMargin; i + kStencilMargin < n; ++i) {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    for (std::size_t i = 0; i < kStencilMargin; ++i) {
        d[i] = d[kStencilMargin];
        d[n - 1 - i] = d[n - 1 - kStencilMargin];
    }
    return d;
}

/// Fourth-order central second derivative; same margin convention.
template <class T>
std::vector<T> central_d2(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 2 * kStencilMargin + 1) throw std::invalid_argument("central_d2: need at least 5 samples");
    std::vector<T> d(n);
    for (std::size_t i = kStencilMargin; i + kStencilMargin < n; ++i) {
        d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
    }
    for (std::size_t i = 0; i < kStencilMargin; ++i) {
        d[i] = d[kStencilMargin];
        d[n - 1 - i] = d[n - 1 - kStencilMargin];
    }
    return d;
}

}  // namespace gutkin::detail
