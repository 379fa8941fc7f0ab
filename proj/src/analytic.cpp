#include "triwave/analytic.hpp"

#include <cmath>

namespace triwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Integrals over [0, T] of products of cos/sin at angular frequencies p, q > 0.
double int_cos_cos(double p, double q, double T) {
    if (p == q) return 0.5 * T + std::sin(2.0 * p * T) / (4.0 * p);
    return std::sin((p - q) * T) / (2.0 * (p - q)) + std::sin((p + q) * T) / (2.0 * (p + q));
}

double int_sin_sin(double p, double q, double T) {
    if (p == q) return 0.5 * T - std::sin(2.0 * p * T) / (4.0 * p);
    return std::sin((p - q) * T) / (2.0 * (p - q)) - std::sin((p + q) * T) / (2.0 * (p + q));
}

// Integral of cos(p t) sin(q t).
double int_cos_sin(double p, double q, double T) {
    if (p == q) {
        const double s = std::sin(p * T);
        return s * s / (2.0 * p);
    }
    return (1.0 - std::cos((q + p) * T)) / (2.0 * (q + p)) +
           (1.0 - std::cos((q - p) * T)) / (2.0 * (q - p));
}

}  // namespace

IsoscelesMode::IsoscelesMode(int m, int n) : m_(m), n_(n) {
    if (m <= 0 || n <= 0 || m == n) {
        throw std::invalid_argument("mode indices must be distinct positive integers");
    }
}

const Triangle& IsoscelesMode::domain() {
    static const Triangle tri({0.0, 0.0}, {kPi, 0.0}, {kPi, kPi});
    return tri;
}

double IsoscelesMode::frequency() const { return std::sqrt(eigenvalue()); }

double IsoscelesMode::value(Vec2 p) const {
    const double norm_factor = 2.0 / kPi;
    return norm_factor * (std::sin(m_ * p.x) * std::sin(n_ * p.y) -
                          std::sin(n_ * p.x) * std::sin(m_ * p.y));
}

Vec2 IsoscelesMode::gradient(Vec2 p) const {
    const double norm_factor = 2.0 / kPi;
    return {norm_factor * (m_ * std::cos(m_ * p.x) * std::sin(n_ * p.y) -
                           n_ * std::cos(n_ * p.x) * std::sin(m_ * p.y)),
            norm_factor * (n_ * std::sin(m_ * p.x) * std::cos(n_ * p.y) -
                           m_ * std::sin(n_ * p.x) * std::cos(m_ * p.y))};
}

IsoscelesMode::Eval IsoscelesMode::evaluate(double t, Vec2 p) const {
    const double tol = 1e-9;
    if (p.y < -tol || p.x > kPi + tol || p.y > p.x + tol) {
        throw OutsideDomain("point lies outside the closed reference triangle");
    }
    const double w = frequency();
    const double phi = value(p);
    const Vec2 grad_phi = gradient(p);
    Eval e;
    e.u = std::sin(t * w) * phi;
    e.du_dt = w * std::cos(t * w) * phi;
    e.grad = std::sin(t * w) * grad_phi;
    return e;
}

double IsoscelesMode::boundary_integral_exact(int side, double T) const {
    const double ell = altitude(domain(), side);
    const double w = frequency();
    return (T / ell) * eigenvalue() * (1.0 - std::sin(2.0 * T * w) / (2.0 * T * w));
}

SineSeries1D::SineSeries1D(double ell, std::vector<Mode> modes)
    : ell_(ell), modes_(std::move(modes)) {
    if (!(ell > 0.0)) {
        throw std::invalid_argument("interval length must be positive");
    }
    for (const Mode& mode : modes_) {
        if (mode.k <= 0) throw std::invalid_argument("mode numbers must be positive");
    }
}

SineSeries1D::Eval SineSeries1D::evaluate(double t) const {
    Eval e{0.0, 0.0};
    for (const Mode& mode : modes_) {
        const double w = mode.k * kPi / ell_;
        const double c = std::cos(w * t);
        const double s = std::sin(w * t);
        const double time_factor = mode.a * c + mode.b * s;
        const double time_factor_dot = w * (-mode.a * s + mode.b * c);
        // d/dx sin(k pi x / ell) at x = ell is w cos(k pi) = w (-1)^k.
        const double sign = (mode.k % 2 == 0) ? 1.0 : -1.0;
        e.endpoint_flux += sign * w * time_factor;
        // integral of sin^2 and cos^2 over the interval is ell/2
        e.energy += 0.5 * ell_ * (time_factor_dot * time_factor_dot +
                                  w * w * time_factor * time_factor);
    }
    return e;
}

double SineSeries1D::boundary_integral(double T) const {
    double total = 0.0;
    for (const Mode& mj : modes_) {
        const double wj = mj.k * kPi / ell_;
        const double sj = (mj.k % 2 == 0) ? 1.0 : -1.0;
        for (const Mode& mk : modes_) {
            const double wk = mk.k * kPi / ell_;
            const double sk = (mk.k % 2 == 0) ? 1.0 : -1.0;
            const double factor = sj * sk * wj * wk;
            total += factor * (mj.a * mk.a * int_cos_cos(wj, wk, T) +
                               mj.b * mk.b * int_sin_sin(wj, wk, T) +
                               mj.a * mk.b * int_cos_sin(wj, wk, T) +
                               mj.b * mk.a * int_cos_sin(wk, wj, T));
        }
    }
    return total;
}

SquareModeResult square_exact(int n, double T) {
    if (n < 1) throw std::invalid_argument("mode number must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    const double w = std::sqrt(1.0 + static_cast<double>(n) * n);
    SquareModeResult r;
    r.boundary_integral = T / (2.0 * kPi) - std::sin(2.0 * T * w) / (4.0 * kPi * w);
    r.energy = 1.0 + static_cast<double>(n) * n;
    r.ratio_per_energy = r.boundary_integral / r.energy;
    return r;
}

}  // namespace triwave
