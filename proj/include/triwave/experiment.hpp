#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "triwave/analytic.hpp"
#include "triwave/discretization.hpp"
#include "triwave/geometry.hpp"
#include "triwave/mesh.hpp"

namespace triwave {

struct ConfigParse : std::runtime_error {
    ConfigParse(int line, int column, const std::string& message)
        : std::runtime_error("config error: line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line(line),
          column(column) {}
    int line;
    int column;
};

struct TooFewLevels : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InitKind { Eigenmode, RandomSmooth, Bump };

/// Flat key = value experiment description; repeated keys build lists.
struct ExperimentConfig {
    std::vector<Vec2> vertices;  // exactly three for mesh-based commands
    int side = 0;

    InitKind init_kind = InitKind::RandomSmooth;
    int mode_m = 1;
    int mode_n = 2;
    std::uint64_t seed = 1;
    Vec2 bump_center{0.0, 0.0};
    double bump_radius = 1.0;
    double bump_amplitude = 1.0;

    std::vector<int> levels;
    std::vector<double> times;
    double cfl_safety = 0.5;
    int sample_stride = 1;

    // oned-demo
    double ell = 3.14159265358979323846;
    std::vector<SineSeries1D::Mode> series_modes;

    // square-demo
    std::vector<int> square_modes;

    // poincare
    int trials = 0;
};

ExperimentConfig parse_config(const std::string& text);

/// Command entry points; each returns the complete CSV text (header
/// included). The optional seed overrides the config seed.
std::string cmd_simulate(const ExperimentConfig& config, std::optional<std::uint64_t> seed = {});
std::string cmd_convergence(const ExperimentConfig& config,
                            std::optional<std::uint64_t> seed = {});
std::string cmd_square_demo(const ExperimentConfig& config);
std::string cmd_oned_demo(const ExperimentConfig& config);
std::string cmd_eigen_demo(const ExperimentConfig& config);
std::string cmd_poincare(const ExperimentConfig& config, std::optional<std::uint64_t> seed = {});

/// Random interior nodal field with entries in [-1, 1); used by the
/// poincare command and property tests.
NodalField random_interior_field(const Mesh& mesh, std::uint64_t seed);

/// Initial displacement/velocity per the config's init selector,
/// interpolated on the mesh.
std::pair<NodalField, NodalField> build_initial_data(const ExperimentConfig& config,
                                                     const Mesh& mesh, std::uint64_t seed);

}  // namespace triwave
