#include "triwave/observability.hpp"

#include <algorithm>
#include <cmath>

#include "triwave/numeric.hpp"

namespace triwave {

namespace {

// Constant gradient of the linear interpolant on one element.
Vec2 element_gradient(const std::vector<double>& values, const Mesh& mesh, int element) {
    const auto& el = mesh.elements()[element];
    const Vec2 p0 = mesh.nodes()[el[0]];
    const Vec2 p1 = mesh.nodes()[el[1]];
    const Vec2 p2 = mesh.nodes()[el[2]];
    const double twice_area = cross(p1 - p0, p2 - p0);
    Vec2 g{0.0, 0.0};
    const Vec2 grads[3] = {perp(p2 - p1), perp(p0 - p2), perp(p1 - p0)};
    for (int k = 0; k < 3; ++k) {
        g = g + values[el[k]] * grads[k];
    }
    return (1.0 / twice_area) * g;
}

// Precomputed per-edge functionals for constrained (zero-boundary) fields:
// only the edge's opposite node contributes to the adjacent gradient, so
// flux and X-product reduce to a single coefficient each.
struct EdgeFunctionals {
    struct Edge {
        int interior_idx;   // -1 when the opposite node is also boundary
        double flux_coef;   // flux = flux_coef * u[interior_idx]
        double xu_coef;     // Xu at midpoint = xu_coef * u[interior_idx]
        double length;
    };
    std::array<std::vector<Edge>, 3> sides;

    EdgeFunctionals(const Mesh& mesh, const SideFrame& frame) {
        for (const BoundaryEdge& be : mesh.boundary_edges()) {
            Edge e;
            e.interior_idx = mesh.interior_index(be.opposite_node);
            e.length = be.length;
            if (e.interior_idx < 0) {
                e.flux_coef = 0.0;
                e.xu_coef = 0.0;
            } else {
                const auto& el = mesh.elements()[be.element];
                const Vec2 p0 = mesh.nodes()[el[0]];
                const Vec2 p1 = mesh.nodes()[el[1]];
                const Vec2 p2 = mesh.nodes()[el[2]];
                const double twice_area = cross(p1 - p0, p2 - p0);
                int local = 0;
                while (el[local] != be.opposite_node) ++local;
                const Vec2 edge_vec =
                    mesh.nodes()[el[(local + 2) % 3]] - mesh.nodes()[el[(local + 1) % 3]];
                const Vec2 grad = (1.0 / twice_area) * perp(edge_vec);
                e.flux_coef = dot(grad, be.normal);
                e.xu_coef = dot(be.midpoint - frame.origin, grad);
            }
            sides[be.side].push_back(e);
        }
    }

    void sample(const NodalField& u, std::array<double, 3>& flux_sq,
                std::array<double, 3>& x_prod) const {
        for (int s = 0; s < 3; ++s) {
            double fsq = 0.0;
            double xp = 0.0;
            for (const Edge& e : sides[s]) {
                const double value = e.interior_idx >= 0 ? u[e.interior_idx] : 0.0;
                const double flux = e.flux_coef * value;
                fsq += flux * flux * e.length;
                xp += (e.xu_coef * value) * flux * e.length;
            }
            flux_sq[s] = fsq;
            x_prod[s] = xp;
        }
    }
};

// Integral over the mesh of v u + 2 v (Xu) for piecewise-linear v, u.
// The integrand is quadratic on each element, so the edge-midpoint rule
// is exact.
double volume_terms(const NodalField& v_int, const NodalField& u_int, const Mesh& mesh,
                    const SideFrame& frame) {
    const std::vector<double> v = scatter_to_all_nodes(mesh, v_int);
    const std::vector<double> u = scatter_to_all_nodes(mesh, u_int);
    KahanSum total;
    for (int e = 0; e < static_cast<int>(mesh.elements().size()); ++e) {
        const auto& el = mesh.elements()[e];
        const Vec2 p[3] = {mesh.nodes()[el[0]], mesh.nodes()[el[1]], mesh.nodes()[el[2]]};
        const Vec2 grad_u = element_gradient(u, mesh, e);
        const double area = mesh.element_area(e);
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
            const int i = (k + 1) % 3;
            const int j = (k + 2) % 3;
            const Vec2 mid = 0.5 * (p[i] + p[j]);
            const double v_mid = 0.5 * (v[el[i]] + v[el[j]]);
            const double u_mid = 0.5 * (u[el[i]] + u[el[j]]);
            const double xu_mid = dot(mid - frame.origin, grad_u);
            acc += v_mid * u_mid + 2.0 * v_mid * xu_mid;
        }
        total.add(area / 3.0 * acc);
    }
    return total.value();
}

double trapezoid_to(const Trajectory& traj, const std::vector<double>& samples, double T) {
    const int last = traj.sample_index_at(T);
    const double h = traj.dt * traj.sample_stride;
    KahanSum sum;
    for (int i = 1; i <= last; ++i) {
        sum.add(0.5 * h * (samples[i - 1] + samples[i]));
    }
    return sum.value();
}

}  // namespace

std::vector<double> neumann_trace(const std::vector<double>& all_node_values, const Mesh& mesh,
                                  int side) {
    std::vector<double> fluxes;
    for (const BoundaryEdge& be : boundary_restriction(mesh, side)) {
        const Vec2 g = element_gradient(all_node_values, mesh, be.element);
        fluxes.push_back(dot(g, be.normal));
    }
    return fluxes;
}

std::vector<double> neumann_trace(const WaveState& state, const Mesh& mesh, int side) {
    return neumann_trace(scatter_to_all_nodes(mesh, state.u), mesh, side);
}

double flux_square_on_side(const std::vector<double>& all_node_values, const Mesh& mesh,
                           int side) {
    double total = 0.0;
    for (const BoundaryEdge& be : boundary_restriction(mesh, side)) {
        const Vec2 g = element_gradient(all_node_values, mesh, be.element);
        const double flux = dot(g, be.normal);
        total += flux * flux * be.length;
    }
    return total;
}

double x_product_on_side(const std::vector<double>& all_node_values, const Mesh& mesh,
                         const SideFrame& frame, int side) {
    double total = 0.0;
    for (const BoundaryEdge& be : boundary_restriction(mesh, side)) {
        const Vec2 g = element_gradient(all_node_values, mesh, be.element);
        const double flux = dot(g, be.normal);
        const double xu = dot(be.midpoint - frame.origin, g);
        total += xu * flux * be.length;
    }
    return total;
}

double x_product_on_side(const WaveState& state, const Mesh& mesh, const SideFrame& frame,
                         int side) {
    return x_product_on_side(scatter_to_all_nodes(mesh, state.u), mesh, frame, side);
}

const Trajectory::Snapshot& Trajectory::snapshot_at(double t) const {
    for (const Snapshot& s : snapshots) {
        if (std::abs(s.t - t) <= 0.5 * dt * sample_stride) return s;
    }
    throw EmptyTrajectory("no snapshot stored at the requested time");
}

int Trajectory::sample_index_at(double t) const {
    if (times.empty()) throw EmptyTrajectory("trajectory has no samples");
    const double h = dt * sample_stride;
    const int idx = static_cast<int>(std::llround(t / h));
    if (idx < 0 || idx >= static_cast<int>(times.size()) || std::abs(times[idx] - t) > 0.5 * h) {
        throw EmptyTrajectory("requested time is outside the sampled range");
    }
    return idx;
}

Trajectory run_trajectory(const Mesh& mesh, const DiscretePair& lumped_pair,
                          const SideFrame& frame, const NodalField& u0, const NodalField& u1,
                          const RunConfig& config,
                          const std::vector<double>& extra_report_times) {
    if (!(config.T > 0.0)) {
        throw EmptyTrajectory("final time T must be positive");
    }
    if (config.sample_stride < 1) {
        throw std::invalid_argument("sample stride must be >= 1");
    }
    std::vector<double> report_times = extra_report_times;
    report_times.push_back(config.T);
    const int sample_stride = config.sample_stride;

    Trajectory traj;
    traj.dt = config.dt > 0.0 ? config.dt : cfl_dt(mesh, lumped_pair, config.cfl_safety);
    traj.sample_stride = sample_stride;

    // Snap report times to sample steps (at least one interval each).
    const double sample_dt = traj.dt * sample_stride;
    std::vector<long long> report_steps;
    for (double t : report_times) {
        if (!(t > 0.0)) throw std::invalid_argument("report times must be positive");
        report_steps.push_back(std::max(1LL, std::llround(t / sample_dt)) * sample_stride);
    }
    std::sort(report_steps.begin(), report_steps.end());
    report_steps.erase(std::unique(report_steps.begin(), report_steps.end()),
                       report_steps.end());
    const long long total_steps = report_steps.back();

    LeapfrogIntegrator stepper(lumped_pair, traj.dt);
    WaveState state = stepper.initial_state(u0, u1);

    traj.E0 = stepper.energy(state);
    if (traj.E0 <= 0.0) {
        throw ZeroEnergy("initial data has zero energy");
    }

    EdgeFunctionals functionals(mesh, frame);
    auto record_sample = [&]() {
        std::array<double, 3> fsq;
        std::array<double, 3> xp;
        functionals.sample(state.u, fsq, xp);
        traj.times.push_back(state.t);
        for (int s = 0; s < 3; ++s) {
            traj.flux_square[s].push_back(fsq[s]);
            traj.x_product[s].push_back(xp[s]);
        }
    };
    auto record_snapshot = [&]() {
        Trajectory::Snapshot snap;
        snap.t = state.t;
        snap.u = state.u;
        snap.v = stepper.synchronized_velocity(state);
        traj.snapshots.push_back(std::move(snap));
    };

    record_sample();
    record_snapshot();  // t = 0
    std::size_t next_report = 0;
    for (long long n = 0; n < total_steps; ++n) {
        const double energy = stepper.step(state);
        if (!std::isfinite(energy)) {
            throw NumericalFailure("non-finite energy during time stepping");
        }
        traj.max_energy_drift =
            std::max(traj.max_energy_drift, std::abs(energy - traj.E0) / traj.E0);
        const long long step_done = n + 1;
        if (step_done % sample_stride == 0) {
            record_sample();
        }
        if (next_report < report_steps.size() && step_done == report_steps[next_report]) {
            record_snapshot();
            ++next_report;
        }
    }
    const double final_energy = stepper.energy(state);
    if (!std::isfinite(final_energy)) {
        throw NumericalFailure("non-finite energy at final time");
    }
    traj.max_energy_drift =
        std::max(traj.max_energy_drift, std::abs(final_energy - traj.E0) / traj.E0);
    return traj;
}

double boundary_integral(const Trajectory& traj, int side, double T) {
    return trapezoid_to(traj, traj.flux_square[side], T);
}

double x_product_integral(const Trajectory& traj, int side, double T) {
    return trapezoid_to(traj, traj.x_product[side], T);
}

double observability_ratio(double boundary_integral_value, double T, double E0, double ell) {
    if (!(E0 > 0.0)) throw ZeroEnergy("observability ratio requires positive energy");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    return ell * boundary_integral_value / (T * E0);
}

double commutator_balance(const Trajectory& traj, const Mesh& mesh, const SideFrame& frame,
                          double T) {
    // All terms are evaluated at the sample time nearest to T.
    const double t_end = traj.times[traj.sample_index_at(T)];
    double lhs = 0.0;
    for (int s = 0; s < 3; ++s) {
        lhs += x_product_integral(traj, s, t_end);
    }
    const Trajectory::Snapshot& initial = traj.snapshot_at(0.0);
    const Trajectory::Snapshot& final_snap = traj.snapshot_at(t_end);
    const double v0 = volume_terms(initial.v, initial.u, mesh, frame);
    const double vT = volume_terms(final_snap.v, final_snap.u, mesh, frame);
    const double rhs = t_end * traj.E0 + (vT - v0);
    return std::abs(lhs - rhs);
}

std::pair<double, double> poincare_check(const NodalField& field, const Mesh& mesh,
                                         const SideFrame& frame) {
    const std::vector<double> u = scatter_to_all_nodes(mesh, field);
    KahanSum l2_sq;
    KahanSum dx_sq;
    for (int e = 0; e < static_cast<int>(mesh.elements().size()); ++e) {
        const auto& el = mesh.elements()[e];
        const double area = mesh.element_area(e);
        double mid_sq = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double u_mid = 0.5 * (u[el[(k + 1) % 3]] + u[el[(k + 2) % 3]]);
            mid_sq += u_mid * u_mid;
        }
        l2_sq.add(area / 3.0 * mid_sq);
        const Vec2 g = element_gradient(u, mesh, e);
        const double gx = dot(g, frame.axis_x);
        dx_sq.add(area * gx * gx);
    }
    const double lhs = std::sqrt(l2_sq.value());
    const double big_l = longest_side(mesh.triangle());
    const double rhs = big_l * std::sqrt(std::exp(1.0) - 1.0) * std::sqrt(dx_sq.value());
    return {lhs, rhs};
}

ObservabilityReport make_report(const Trajectory& traj, const Mesh& mesh, const SideFrame& frame,
                                double T) {
    ObservabilityReport rep;
    rep.side = frame.side;
    rep.level = mesh.level();
    rep.h_max = mesh.h_max();
    rep.dt = traj.dt;
    rep.T = traj.times[traj.sample_index_at(T)];
    rep.E0 = traj.E0;
    rep.boundary_integral = boundary_integral(traj, frame.side, T);
    rep.ratio = observability_ratio(rep.boundary_integral, rep.T, rep.E0, frame.altitude);
    for (int k = 0; k < 3; ++k) {
        rep.x_products[k] = x_product_integral(traj, (frame.side + k) % 3, T);
    }
    rep.commutator_residual = commutator_balance(traj, mesh, frame, T);
    return rep;
}

}  // namespace triwave
