#ifndef RADSHOCK_DETAIL_FD_HPP
#define RADSHOCK_DETAIL_FD_HPP

#include <cstddef>
#include <vector>

namespace radshock::detail {

// First derivative on a (possibly non-uniform) grid: three-point stencils,
// centered in the interior and one-sided at the ends. O(h^2) for smooth y.
inline std::vector<double> derivative(const std::vector<double>& x,
                                      const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = x[i] - x[i - 1];
        const double hp = x[i + 1] - x[i];
        d[i] = -hp / (hm * (hm + hp)) * y[i - 1] +
               (hp - hm) / (hm * hp) * y[i] +
               hm / (hp * (hm + hp)) * y[i + 1];
    }
    auto one_sided = [&](std::size_t i0, std::size_t i1, std::size_t i2) {
        const double d1 = x[i1] - x[i0];
        const double d2 = x[i2] - x[i0];
        return -(d1 + d2) / (d1 * d2) * y[i0] +
               d2 / (d1 * (d2 - d1)) * y[i1] -
               d1 / (d2 * (d2 - d1)) * y[i2];
    };
    d[0] = one_sided(0, 1, 2);
    d[n - 1] = one_sided(n - 1, n - 2, n - 3);
    return d;
}

// Second derivative, interior points only (ends copied from neighbors).
inline std::vector<double> second_derivative(const std::vector<double>& x,
                                             const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hm = x[i] - x[i - 1];
        const double hp = x[i + 1] - x[i];
        d[i] = 2.0 * (y[i - 1] / (hm * (hm + hp)) - y[i] / (hm * hp) +
                      y[i + 1] / (hp * (hm + hp)));
    }
    d[0] = d[1];
    d[n - 1] = d[n - 2];
    return d;
}

// Derivative at 0 of the quadratic through (x1,y1), (x2,y2), (x3,y3).
inline double quadratic_derivative_at_zero(double x1, double y1, double x2,
                                           double y2, double x3, double y3) {
    return y1 * (-(x2 + x3)) / ((x1 - x2) * (x1 - x3)) +
           y2 * (-(x1 + x3)) / ((x2 - x1) * (x2 - x3)) +
           y3 * (-(x1 + x2)) / ((x3 - x1) * (x3 - x2));
}

// Value at 0 of the quadratic through three points.
inline double quadratic_value_at_zero(double x1, double y1, double x2,
                                      double y2, double x3, double y3) {
    return y1 * (x2 * x3) / ((x1 - x2) * (x1 - x3)) +
           y2 * (x1 * x3) / ((x2 - x1) * (x2 - x3)) +
           y3 * (x1 * x2) / ((x3 - x1) * (x3 - x2));
}

} // namespace radshock::detail

#endif
