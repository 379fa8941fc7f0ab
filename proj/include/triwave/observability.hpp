#pragma once

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "triwave/discretization.hpp"
#include "triwave/geometry.hpp"
#include "triwave/mesh.hpp"
#include "triwave/timestepper.hpp"

namespace triwave {

struct EmptyTrajectory : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroEnergy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-edge normal-derivative flux on one side, recovered from the unique
/// adjacent element's constant gradient. Ordered as boundary_restriction.
/// `all_node_values` holds the field at every node (boundary included).
std::vector<double> neumann_trace(const std::vector<double>& all_node_values, const Mesh& mesh,
                                  int side);
std::vector<double> neumann_trace(const WaveState& state, const Mesh& mesh, int side);

/// Spatial integral over one side of |flux|^2 at a single time.
double flux_square_on_side(const std::vector<double>& all_node_values, const Mesh& mesh, int side);

/// Spatial integral over one side of (Xu)(flux) at a single time, where X
/// is the radial field centered at the frame's origin (the vertex opposite
/// the studied side). The frame stays fixed while `side` varies.
double x_product_on_side(const std::vector<double>& all_node_values, const Mesh& mesh,
                         const SideFrame& frame, int side);
double x_product_on_side(const WaveState& state, const Mesh& mesh, const SideFrame& frame,
                         int side);

/// One run of the semi-discrete wave equation with per-sample boundary
/// functionals for all three sides and full-field snapshots at requested
/// report times. Sample times are uniform (stride * dt); report times are
/// snapped to the sampling grid.
struct Trajectory {
    double dt = 0.0;
    int sample_stride = 1;
    double E0 = 0.0;
    double max_energy_drift = 0.0;  // max over steps of |E - E0| / E0

    std::vector<double> times;                      // sample times, starting at 0
    std::array<std::vector<double>, 3> flux_square; // per side, per sample
    std::array<std::vector<double>, 3> x_product;   // per side, per sample

    struct Snapshot {
        double t = 0.0;
        NodalField u;
        NodalField v;  // synchronized velocity
    };
    std::vector<Snapshot> snapshots;  // at t=0 and each report time

    const Snapshot& snapshot_at(double t) const;
    int sample_index_at(double t) const;  // index into times, or throws
};

/// Runs up to config.T; intermediate report times get snapshots as well.
/// With config.dt <= 0 the step size comes from cfl_dt at config.cfl_safety.
Trajectory run_trajectory(const Mesh& mesh, const DiscretePair& lumped_pair,
                          const SideFrame& frame, const NodalField& u0, const NodalField& u1,
                          const RunConfig& config,
                          const std::vector<double>& extra_report_times = {});

/// Trapezoid-in-time integral of the per-sample side flux square up to T.
double boundary_integral(const Trajectory& traj, int side, double T);

/// Trapezoid-in-time integral of the per-sample side X-product up to T.
double x_product_integral(const Trajectory& traj, int side, double T);

/// R = ell * boundary_integral / (T * E0).
double observability_ratio(double boundary_integral_value, double T, double E0, double ell);

/// |LHS - RHS| of the integrated commutator identity at time T:
///   LHS = sum over sides of the time-integrated X-products,
///   RHS = T*E0 + [ integral of v u + 2 v (Xu) dV ] between t=0 and t=T,
/// with the volume terms evaluated by the exact midpoint rule for
/// piecewise-linear fields.
double commutator_balance(const Trajectory& traj, const Mesh& mesh, const SideFrame& frame,
                          double T);

/// Left side ||u||_L2 and right side L sqrt(e-1) ||du/dx_frame||_L2 of the
/// frame-direction Poincare bound for constrained fields.
std::pair<double, double> poincare_check(const NodalField& field, const Mesh& mesh,
                                         const SideFrame& frame);

struct ObservabilityReport {
    int side = 0;
    int level = 0;
    double h_max = 0.0;
    double dt = 0.0;
    double T = 0.0;
    double E0 = 0.0;
    double boundary_integral = 0.0;
    double ratio = 0.0;
    // X-products for sides (side, side+1, side+2) mod 3, in that order.
    std::array<double, 3> x_products{};
    double commutator_residual = 0.0;
};

ObservabilityReport make_report(const Trajectory& traj, const Mesh& mesh, const SideFrame& frame,
                                double T);

}  // namespace triwave
