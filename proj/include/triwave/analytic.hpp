#pragma once

#include <stdexcept>
#include <vector>

#include "triwave/geometry.hpp"

namespace triwave {

struct OutsideDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dirichlet eigenfunction family on the right isosceles triangle with
/// vertices (0,0), (pi,0), (pi,pi):
///   phi(x,y) = (2/pi) (sin(m x) sin(n y) - sin(n x) sin(m y)),  m != n,
/// which vanishes on y=0, x=pi and y=x, satisfies -Laplace(phi) =
/// (m^2+n^2) phi, and has unit L2 norm. The standing wave is
/// u(t,x,y) = sin(t w) phi(x,y) with w = sqrt(m^2+n^2).
class IsoscelesMode {
public:
    IsoscelesMode(int m, int n);

    static const Triangle& domain();

    int m() const { return m_; }
    int n() const { return n_; }
    double eigenvalue() const { return static_cast<double>(m_ * m_ + n_ * n_); }
    double frequency() const;

    double value(Vec2 p) const;
    Vec2 gradient(Vec2 p) const;

    struct Eval {
        double u;
        double du_dt;
        Vec2 grad;
    };
    /// Standing-wave value, time derivative and spatial gradient; p must
    /// lie in the closed triangle.
    Eval evaluate(double t, Vec2 p) const;

    /// Closed form for the time-integrated squared normal-derivative flux
    /// through one side: (T/altitude) * lambda^2 * (1 - sin(2Tw)/(2Tw)).
    double boundary_integral_exact(int side, double T) const;

private:
    int m_;
    int n_;
};

/// Finite sine series on [0, ell] with Dirichlet ends:
///   u(t,x) = sum_k (a_k cos(w_k t) + b_k sin(w_k t)) sin(k pi x / ell),
/// w_k = k pi / ell.
class SineSeries1D {
public:
    struct Mode {
        int k;
        double a;
        double b;
    };

    SineSeries1D(double ell, std::vector<Mode> modes);

    double length() const { return ell_; }
    const std::vector<Mode>& modes() const { return modes_; }

    struct Eval {
        double endpoint_flux;  // du/dx at x = ell
        double energy;         // integral of |u_t|^2 + |u_x|^2, evaluated at t
    };
    Eval evaluate(double t) const;

    /// Exact integral of |du/dx(t, ell)|^2 over [0, T] (finite trig sums,
    /// cross terms included).
    double boundary_integral(double T) const;

private:
    double ell_;
    std::vector<Mode> modes_;
};

/// Separable Dirichlet mode on the square [0, 2pi]^2,
///   u(t,x,y) = sin(t sqrt(1+n^2)) (1/pi) sin(x) sin(n y),
/// measured through the right edge {x = 2pi}. The time antiderivative of
/// the squared flux gives
///   integral = T/(2pi) - sin(2T sqrt(1+n^2)) / (4 pi sqrt(1+n^2)),
/// while the initial energy grows as 1 + n^2, so the per-energy yield
/// decays like 1/(1+n^2).
struct SquareModeResult {
    double boundary_integral;
    double energy;            // E(0) = 1 + n^2
    double ratio_per_energy;  // boundary_integral / energy
};

SquareModeResult square_exact(int n, double T);

}  // namespace triwave
