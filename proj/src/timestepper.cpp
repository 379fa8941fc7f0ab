#include "triwave/timestepper.hpp"

#include <cmath>

#include "triwave/random.hpp"

namespace triwave {

double cfl_dt(const Mesh&, const DiscretePair& pair, double safety) {
    if (!(safety > 0.0 && safety <= 1.0)) {
        throw std::invalid_argument("cfl safety factor must be in (0, 1]");
    }
    if (!pair.lumped) {
        throw std::invalid_argument("cfl_dt requires a lumped mass");
    }
    const int n = pair.stiffness.rows();
    SplitMix64 rng(0x5eeded ^ static_cast<std::uint64_t>(n));
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform_pm1();

    std::vector<double> y(n);
    for (int it = 0; it < 30; ++it) {
        pair.stiffness.multiply(x, y);
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            y[i] /= pair.mass_diag[i];
            norm_sq += y[i] * y[i];
        }
        const double scale = 1.0 / std::sqrt(norm_sq);
        for (int i = 0; i < n; ++i) x[i] = y[i] * scale;
    }
    pair.stiffness.multiply(x, y);
    double xKx = 0.0;
    double xMx = 0.0;
    for (int i = 0; i < n; ++i) {
        xKx += x[i] * y[i];
        xMx += x[i] * x[i] * pair.mass_diag[i];
    }
    const double lambda_max = 1.01 * (xKx / xMx);
    return safety * 2.0 / std::sqrt(lambda_max);
}

LeapfrogIntegrator::LeapfrogIntegrator(const DiscretePair& pair, double dt)
    : pair_(&pair), dt_(dt) {
    if (!pair.lumped) {
        throw std::invalid_argument("leapfrog requires a lumped mass");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dt must be positive");
    }
}

void LeapfrogIntegrator::acceleration(const NodalField& u, NodalField& ku, NodalField& a,
                                      double& uKu) const {
    pair_->stiffness.multiply(u, ku);
    a.resize(u.size());
    uKu = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        a[i] = -ku[i] / pair_->mass_diag[i];
        uKu += u[i] * ku[i];
    }
}

double LeapfrogIntegrator::energy_from_parts(const NodalField& v_half, const NodalField& a,
                                             double uKu) const {
    double vMv = 0.0;
    double aMa = 0.0;
    const double half_dt = 0.5 * dt_;
    for (std::size_t i = 0; i < v_half.size(); ++i) {
        const double v_sync = v_half[i] + half_dt * a[i];
        vMv += v_sync * v_sync * pair_->mass_diag[i];
        aMa += a[i] * a[i] * pair_->mass_diag[i];
    }
    return vMv + uKu - 0.25 * dt_ * dt_ * aMa;
}

WaveState LeapfrogIntegrator::initial_state(const NodalField& u0, const NodalField& u1) const {
    if (u0.size() != u1.size() || static_cast<int>(u0.size()) != pair_->stiffness.rows()) {
        throw DimensionMismatch("initial data does not match operator dimension");
    }
    WaveState state;
    state.t = 0.0;
    state.u = u0;
    // v at -dt/2, so that the first kick lands on v(+dt/2) = u1 - (dt/2) M^{-1} K u0.
    NodalField ku, a;
    double uKu = 0.0;
    acceleration(u0, ku, a, uKu);
    state.v_half.resize(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) {
        state.v_half[i] = u1[i] - 0.5 * dt_ * a[i];
    }
    return state;
}

double LeapfrogIntegrator::step(WaveState& state) {
    double uKu = 0.0;
    acceleration(state.u, ku_, a_, uKu);
    const double e = energy_from_parts(state.v_half, a_, uKu);
    for (std::size_t i = 0; i < state.u.size(); ++i) {
        state.v_half[i] += dt_ * a_[i];
        state.u[i] += dt_ * state.v_half[i];
    }
    state.t += dt_;
    return e;
}

double LeapfrogIntegrator::energy(const WaveState& state) const {
    NodalField ku, a;
    double uKu = 0.0;
    acceleration(state.u, ku, a, uKu);
    return energy_from_parts(state.v_half, a, uKu);
}

NodalField LeapfrogIntegrator::synchronized_velocity(const WaveState& state) const {
    NodalField ku, a;
    double uKu = 0.0;
    acceleration(state.u, ku, a, uKu);
    NodalField v(state.u.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = state.v_half[i] + 0.5 * dt_ * a[i];
    }
    return v;
}

}  // namespace triwave
