#pragma once

// Independent numerical oracles used by tests only: composite quadrature
// rules and closed-form derivatives evaluated without going through the
// library's own integration paths.

#include <cmath>
#include <functional>

#include "triwave/analytic.hpp"
#include "triwave/geometry.hpp"
#include "triwave/numeric.hpp"

namespace oracles {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr double kGaussNodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr double kGaussWeights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

inline double composite_gauss(const std::function<double(double)>& f, double a, double b,
                              int panels) {
    triwave::KahanSum sum;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int q = 0; q < 8; ++q) {
            sum.add(0.5 * h * kGaussWeights[q] * f(mid + 0.5 * h * kGaussNodes[q]));
        }
    }
    return sum.value();
}

inline double composite_trapezoid(const std::function<double(double)>& f, double a, double b,
                                  long long intervals) {
    triwave::KahanSum sum;
    const double h = (b - a) / intervals;
    sum.add(0.5 * f(a));
    for (long long i = 1; i < intervals; ++i) {
        sum.add(f(a + i * h));
    }
    sum.add(0.5 * f(b));
    return h * sum.value();
}

// Side quadrature of |normal derivative|^2 for an isosceles-triangle mode,
// by composite Gauss-Legendre along the side (64 panels x 8 points).
inline double side_flux_square_quadrature(const triwave::IsoscelesMode& mode, int side) {
    const triwave::Triangle& tri = triwave::IsoscelesMode::domain();
    const triwave::Vec2 p0 = tri.side_start(side);
    const triwave::Vec2 p1 = tri.side_end(side);
    const double len = tri.side_length(side);
    triwave::Vec2 normal = triwave::perp(p1 - p0);
    normal = (1.0 / triwave::norm(normal)) * normal;
    if (triwave::dot(normal, 0.5 * (p0 + p1) - tri.centroid()) < 0.0) {
        normal = -1.0 * normal;
    }
    return composite_gauss(
        [&](double s) {
            const triwave::Vec2 p = p0 + (s / len) * (p1 - p0);
            const double flux = triwave::dot(mode.gradient(p), normal);
            return flux * flux;
        },
        0.0, len, 64);
}

// Closed-form second derivatives of the isosceles mode, for checking the
// eigenvalue equation pointwise.
inline double mode_laplacian(const triwave::IsoscelesMode& mode, triwave::Vec2 p) {
    const double norm_factor = 2.0 / 3.14159265358979323846;
    const int m = mode.m();
    const int n = mode.n();
    const double phi_xx = norm_factor * (-m * m * std::sin(m * p.x) * std::sin(n * p.y) +
                                         n * n * std::sin(n * p.x) * std::sin(m * p.y));
    const double phi_yy = norm_factor * (-n * n * std::sin(m * p.x) * std::sin(n * p.y) +
                                         m * m * std::sin(n * p.x) * std::sin(m * p.y));
    return phi_xx + phi_yy;
}

}  // namespace oracles
