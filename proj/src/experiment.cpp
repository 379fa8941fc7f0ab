#include "triwave/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <utility>

#include "triwave/observability.hpp"
#include "triwave/random.hpp"
#include "triwave/timestepper.hpp"

namespace triwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string token;
    while (in >> token) parts.push_back(token);
    return parts;
}

struct KeyValue {
    int line;
    int value_column;
    std::string key;
    std::string value;
};

std::vector<KeyValue> tokenize_config(const std::string& text) {
    std::vector<KeyValue> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigParse(line_no, static_cast<int>(first) + 1,
                              "expected 'key = value'");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        KeyValue kv;
        kv.line = line_no;
        kv.key = trim(line.substr(0, eq));
        kv.value = trim(line.substr(eq + 1));
        const auto value_start = line.find_first_not_of(" \t", eq + 1);
        kv.value_column = value_start == std::string::npos ? static_cast<int>(eq) + 2
                                                           : static_cast<int>(value_start) + 1;
        if (kv.key.empty()) {
            throw ConfigParse(line_no, 1, "empty key");
        }
        if (kv.value.empty()) {
            throw ConfigParse(line_no, kv.value_column, "empty value for key '" + kv.key + "'");
        }
        entries.push_back(kv);
    }
    return entries;
}

double parse_double(const KeyValue& kv, const std::string& token) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigParse(kv.line, kv.value_column,
                          "expected a number, got '" + token + "' for key '" + kv.key + "'");
    }
}

long long parse_int(const KeyValue& kv, const std::string& token) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(token, &pos);
        if (pos != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigParse(kv.line, kv.value_column,
                          "expected an integer, got '" + token + "' for key '" + kv.key + "'");
    }
}

class CsvWriter {
public:
    explicit CsvWriter(std::string header) { out_ = std::move(header) + "\n"; }

    void begin_row() { first_ = true; }
    void field(double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        append(buf);
    }
    void field(int v) { append(std::to_string(v)); }
    void field(long long v) { append(std::to_string(v)); }
    void field(const std::string& s) { append(s); }
    void end_row() { out_ += "\n"; }

    const std::string& str() const { return out_; }

private:
    void append(const std::string& s) {
        if (!first_) out_ += ",";
        first_ = false;
        out_ += s;
    }
    std::string out_;
    bool first_ = true;
};

Triangle config_triangle(const ExperimentConfig& config) {
    if (config.vertices.size() != 3) {
        throw ConfigParse(0, 0, "exactly three 'vertex' entries are required");
    }
    return Triangle(config.vertices[0], config.vertices[1], config.vertices[2]);
}

bool is_reference_isosceles(const Triangle& tri) {
    const Triangle& ref = IsoscelesMode::domain();
    for (int i = 0; i < 3; ++i) {
        const Vec2 d = tri.vertex(i) - ref.vertex(i);
        if (norm(d) > 1e-9) return false;
    }
    return true;
}

// Mode pairs used for seeded smooth data.
constexpr int kSmoothPairs[6][2] = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};

// Antisymmetrized product basis on the reference isosceles triangle,
// composed with the affine map onto the target triangle.
double smooth_combination(const Triangle& tri, const double coeffs[6], Vec2 p) {
    // Barycentric coordinates of p in the target triangle.
    const Vec2 v0 = tri.vertex(0);
    const Vec2 e1 = tri.vertex(1) - v0;
    const Vec2 e2 = tri.vertex(2) - v0;
    const double det = cross(e1, e2);
    const Vec2 d = p - v0;
    const double b1 = cross(d, e2) / det;
    const double b2 = cross(e1, d) / det;
    // Matching point on the reference triangle (0,0), (pi,0), (pi,pi).
    const double x = kPi * (b1 + b2);
    const double y = kPi * b2;
    double value = 0.0;
    for (int k = 0; k < 6; ++k) {
        const int m = kSmoothPairs[k][0];
        const int n = kSmoothPairs[k][1];
        value += coeffs[k] * (std::sin(m * x) * std::sin(n * y) -
                              std::sin(n * x) * std::sin(m * y));
    }
    return value;
}

struct LevelRun {
    Mesh mesh;
    SideFrame frame;
    Trajectory traj;
};

LevelRun run_level(const ExperimentConfig& config, int level, std::uint64_t seed) {
    const Triangle tri = config_triangle(config);
    LevelRun run{refine_uniform(tri, level), side_frame(tri, config.side), {}};
    const DiscretePair pair = assemble(run.mesh, true);
    auto [u0, u1] = build_initial_data(config, run.mesh, seed);
    RunConfig rc;
    rc.T = *std::max_element(config.times.begin(), config.times.end());
    rc.cfl_safety = config.cfl_safety;
    rc.sample_stride = config.sample_stride;
    run.traj = run_trajectory(run.mesh, pair, run.frame, u0, u1, rc, config.times);
    return run;
}

void require_times(const ExperimentConfig& config) {
    if (config.times.empty()) {
        throw ConfigParse(0, 0, "at least one 'T' entry is required");
    }
}

void require_levels(const ExperimentConfig& config, std::size_t minimum) {
    if (config.levels.size() < minimum) {
        if (minimum > 1) {
            throw TooFewLevels("at least " + std::to_string(minimum) +
                               " 'level' entries are required");
        }
        throw ConfigParse(0, 0, "at least one 'level' entry is required");
    }
}

// log2 of the ratio of successive differences; NaN when not defined.
double observed_order(double coarse, double mid, double fine) {
    const double d1 = std::abs(coarse - mid);
    const double d2 = std::abs(mid - fine);
    if (d1 <= 0.0 || d2 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(d1 / d2);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    bool saw_init = false;
    for (const KeyValue& kv : tokenize_config(text)) {
        const std::vector<std::string> parts = split_ws(kv.value);
        if (kv.key == "vertex") {
            if (parts.size() != 2) {
                throw ConfigParse(kv.line, kv.value_column, "vertex expects two coordinates");
            }
            if (config.vertices.size() == 3) {
                throw ConfigParse(kv.line, kv.value_column, "more than three 'vertex' entries");
            }
            config.vertices.push_back({parse_double(kv, parts[0]), parse_double(kv, parts[1])});
        } else if (kv.key == "side") {
            const long long s = parse_int(kv, parts[0]);
            if (s < 0 || s > 2) {
                throw ConfigParse(kv.line, kv.value_column, "side must be 0, 1 or 2");
            }
            config.side = static_cast<int>(s);
        } else if (kv.key == "init") {
            saw_init = true;
            if (parts[0] == "eigenmode") {
                if (parts.size() != 3) {
                    throw ConfigParse(kv.line, kv.value_column, "init = eigenmode M N");
                }
                config.init_kind = InitKind::Eigenmode;
                config.mode_m = static_cast<int>(parse_int(kv, parts[1]));
                config.mode_n = static_cast<int>(parse_int(kv, parts[2]));
            } else if (parts[0] == "random-smooth") {
                if (parts.size() != 2) {
                    throw ConfigParse(kv.line, kv.value_column, "init = random-smooth SEED");
                }
                config.init_kind = InitKind::RandomSmooth;
                config.seed = static_cast<std::uint64_t>(parse_int(kv, parts[1]));
            } else if (parts[0] == "bump") {
                if (parts.size() != 5) {
                    throw ConfigParse(kv.line, kv.value_column, "init = bump CX CY RADIUS AMP");
                }
                config.init_kind = InitKind::Bump;
                config.bump_center = {parse_double(kv, parts[1]), parse_double(kv, parts[2])};
                config.bump_radius = parse_double(kv, parts[3]);
                config.bump_amplitude = parse_double(kv, parts[4]);
                if (!(config.bump_radius > 0.0)) {
                    throw ConfigParse(kv.line, kv.value_column, "bump radius must be positive");
                }
            } else {
                throw ConfigParse(kv.line, kv.value_column,
                                  "unknown init selector '" + parts[0] + "'");
            }
        } else if (kv.key == "level") {
            const long long level = parse_int(kv, parts[0]);
            if (level < 0 || level > 12) {
                throw ConfigParse(kv.line, kv.value_column, "level must be in [0, 12]");
            }
            config.levels.push_back(static_cast<int>(level));
        } else if (kv.key == "T") {
            const double t = parse_double(kv, parts[0]);
            if (!(t > 0.0)) {
                throw ConfigParse(kv.line, kv.value_column, "T must be positive");
            }
            config.times.push_back(t);
        } else if (kv.key == "cfl_safety") {
            const double s = parse_double(kv, parts[0]);
            if (!(s > 0.0 && s <= 1.0)) {
                throw ConfigParse(kv.line, kv.value_column, "cfl_safety must be in (0, 1]");
            }
            config.cfl_safety = s;
        } else if (kv.key == "sample_stride") {
            const long long s = parse_int(kv, parts[0]);
            if (s < 1) {
                throw ConfigParse(kv.line, kv.value_column, "sample_stride must be >= 1");
            }
            config.sample_stride = static_cast<int>(s);
        } else if (kv.key == "ell") {
            const double ell = parse_double(kv, parts[0]);
            if (!(ell > 0.0)) {
                throw ConfigParse(kv.line, kv.value_column, "ell must be positive");
            }
            config.ell = ell;
        } else if (kv.key == "mode") {
            if (parts.size() != 3) {
                throw ConfigParse(kv.line, kv.value_column, "mode expects 'K A B'");
            }
            SineSeries1D::Mode mode;
            mode.k = static_cast<int>(parse_int(kv, parts[0]));
            mode.a = parse_double(kv, parts[1]);
            mode.b = parse_double(kv, parts[2]);
            if (mode.k < 1) {
                throw ConfigParse(kv.line, kv.value_column, "mode number must be >= 1");
            }
            config.series_modes.push_back(mode);
        } else if (kv.key == "n") {
            const long long n = parse_int(kv, parts[0]);
            if (n < 1) {
                throw ConfigParse(kv.line, kv.value_column, "n must be >= 1");
            }
            config.square_modes.push_back(static_cast<int>(n));
        } else if (kv.key == "trials") {
            const long long trials = parse_int(kv, parts[0]);
            if (trials < 1) {
                throw ConfigParse(kv.line, kv.value_column, "trials must be >= 1");
            }
            config.trials = static_cast<int>(trials);
        } else if (kv.key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(kv, parts[0]));
        } else {
            throw ConfigParse(kv.line, 1, "unknown key '" + kv.key + "'");
        }
    }
    (void)saw_init;
    return config;
}

NodalField random_interior_field(const Mesh& mesh, std::uint64_t seed) {
    SplitMix64 rng(seed);
    NodalField field(mesh.interior_count());
    for (double& v : field) v = rng.uniform_pm1();
    return field;
}

std::pair<NodalField, NodalField> build_initial_data(const ExperimentConfig& config,
                                                     const Mesh& mesh, std::uint64_t seed) {
    switch (config.init_kind) {
        case InitKind::Eigenmode: {
            if (!is_reference_isosceles(mesh.triangle())) {
                throw ConfigParse(0, 0,
                                  "init = eigenmode requires the triangle (0,0), (pi,0), (pi,pi)");
            }
            const IsoscelesMode mode(config.mode_m, config.mode_n);
            const double w = mode.frequency();
            NodalField u0(mesh.interior_count(), 0.0);
            NodalField u1 = project_initial(
                mesh, [&](Vec2 p) { return w * mode.value(p); });
            return {std::move(u0), std::move(u1)};
        }
        case InitKind::RandomSmooth: {
            SplitMix64 rng(seed);
            double c0[6];
            double c1[6];
            for (double& c : c0) c = rng.uniform_pm1();
            for (double& c : c1) c = rng.uniform_pm1();
            const Triangle& tri = mesh.triangle();
            NodalField u0 = project_initial(
                mesh, [&](Vec2 p) { return smooth_combination(tri, c0, p); });
            NodalField u1 = project_initial(
                mesh, [&](Vec2 p) { return smooth_combination(tri, c1, p); });
            return {std::move(u0), std::move(u1)};
        }
        case InitKind::Bump: {
            const Vec2 center = config.bump_center;
            const double radius = config.bump_radius;
            const double amplitude = config.bump_amplitude;
            NodalField u0 = project_initial(mesh, [&](Vec2 p) {
                const double d = norm(p - center);
                if (d >= radius) return 0.0;
                const double q = d / radius;
                return amplitude * std::exp(1.0 - 1.0 / (1.0 - q * q));
            });
            NodalField u1(mesh.interior_count(), 0.0);
            return {std::move(u0), std::move(u1)};
        }
    }
    throw std::logic_error("unreachable init kind");
}

std::string cmd_simulate(const ExperimentConfig& config, std::optional<std::uint64_t> seed) {
    require_levels(config, 1);
    require_times(config);
    const std::uint64_t effective_seed = seed.value_or(config.seed);
    CsvWriter csv(
        "side,level,h_max,dt,T,E0,boundary_integral,ratio,x_prod_A,x_prod_B,x_prod_C,"
        "commutator_residual");
    for (int level : config.levels) {
        const LevelRun run = run_level(config, level, effective_seed);
        for (double t : config.times) {
            const ObservabilityReport rep = make_report(run.traj, run.mesh, run.frame, t);
            csv.begin_row();
            csv.field(rep.side);
            csv.field(rep.level);
            csv.field(rep.h_max);
            csv.field(rep.dt);
            csv.field(rep.T);
            csv.field(rep.E0);
            csv.field(rep.boundary_integral);
            csv.field(rep.ratio);
            csv.field(rep.x_products[0]);
            csv.field(rep.x_products[1]);
            csv.field(rep.x_products[2]);
            csv.field(rep.commutator_residual);
            csv.end_row();
        }
    }
    return csv.str();
}

std::string cmd_convergence(const ExperimentConfig& config, std::optional<std::uint64_t> seed) {
    require_levels(config, 3);
    require_times(config);
    const std::uint64_t effective_seed = seed.value_or(config.seed);
    std::vector<int> levels = config.levels;
    std::sort(levels.begin(), levels.end());

    const double t_report = config.times.back();
    struct Row {
        int level;
        double h_max;
        double dt;
        double T;
        double E0;
        double boundary_integral;
        double abs_ratio_minus_1;
        double commutator_residual;
    };
    std::vector<Row> rows;
    for (int level : levels) {
        const LevelRun run = run_level(config, level, effective_seed);
        const ObservabilityReport rep = make_report(run.traj, run.mesh, run.frame, t_report);
        rows.push_back({level, rep.h_max, rep.dt, rep.T, rep.E0, rep.boundary_integral,
                        std::abs(rep.ratio - 1.0), rep.commutator_residual});
    }

    CsvWriter csv(
        "level,h_max,dt,T,E0,order_E0,boundary_integral,order_boundary_integral,"
        "abs_ratio_minus_1,commutator_residual");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        double order_e0 = std::numeric_limits<double>::quiet_NaN();
        double order_bi = std::numeric_limits<double>::quiet_NaN();
        if (i >= 2) {
            order_e0 = observed_order(rows[i - 2].E0, rows[i - 1].E0, r.E0);
            order_bi = observed_order(rows[i - 2].boundary_integral,
                                      rows[i - 1].boundary_integral, r.boundary_integral);
        }
        csv.begin_row();
        csv.field(r.level);
        csv.field(r.h_max);
        csv.field(r.dt);
        csv.field(r.T);
        csv.field(r.E0);
        csv.field(order_e0);
        csv.field(r.boundary_integral);
        csv.field(order_bi);
        csv.field(r.abs_ratio_minus_1);
        csv.field(r.commutator_residual);
        csv.end_row();
    }
    return csv.str();
}

std::string cmd_square_demo(const ExperimentConfig& config) {
    if (config.square_modes.empty()) {
        throw ConfigParse(0, 0, "at least one 'n' entry is required");
    }
    require_times(config);
    const double T = config.times.back();
    CsvWriter csv("n,T,E0,boundary_integral,ratio_per_energy");
    for (int n : config.square_modes) {
        const SquareModeResult r = square_exact(n, T);
        csv.begin_row();
        csv.field(n);
        csv.field(T);
        csv.field(r.energy);
        csv.field(r.boundary_integral);
        csv.field(r.ratio_per_energy);
        csv.end_row();
    }
    return csv.str();
}

std::string cmd_oned_demo(const ExperimentConfig& config) {
    if (config.series_modes.empty()) {
        throw ConfigParse(0, 0, "at least one 'mode' entry is required");
    }
    require_times(config);
    const SineSeries1D series(config.ell, config.series_modes);
    const double e0 = series.evaluate(0.0).energy;
    CsvWriter csv("ell,T,E0,boundary_integral,ratio,ell_over_T");
    for (double T : config.times) {
        const double bi = series.boundary_integral(T);
        const double ratio = e0 > 0.0 ? observability_ratio(bi, T, e0, config.ell)
                                      : std::numeric_limits<double>::quiet_NaN();
        csv.begin_row();
        csv.field(config.ell);
        csv.field(T);
        csv.field(e0);
        csv.field(bi);
        csv.field(ratio);
        csv.field(config.ell / T);
        csv.end_row();
    }
    return csv.str();
}

std::string cmd_eigen_demo(const ExperimentConfig& config) {
    require_levels(config, 1);
    require_times(config);
    ExperimentConfig local = config;
    local.init_kind = InitKind::Eigenmode;
    const IsoscelesMode mode(local.mode_m, local.mode_n);
    const double t_report = local.times.back();
    CsvWriter csv("m,n,side,level,h_max,dt,T,E0,boundary_integral,exact_boundary_integral,"
                  "rel_error");
    for (int level : local.levels) {
        const LevelRun run = run_level(local, level, local.seed);
        const ObservabilityReport rep = make_report(run.traj, run.mesh, run.frame, t_report);
        const double exact = mode.boundary_integral_exact(local.side, rep.T);
        csv.begin_row();
        csv.field(local.mode_m);
        csv.field(local.mode_n);
        csv.field(rep.side);
        csv.field(rep.level);
        csv.field(rep.h_max);
        csv.field(rep.dt);
        csv.field(rep.T);
        csv.field(rep.E0);
        csv.field(rep.boundary_integral);
        csv.field(exact);
        csv.field(std::abs(rep.boundary_integral - exact) / std::abs(exact));
        csv.end_row();
    }
    return csv.str();
}

std::string cmd_poincare(const ExperimentConfig& config, std::optional<std::uint64_t> seed) {
    require_levels(config, 1);
    if (config.trials < 1) {
        throw ConfigParse(0, 0, "'trials' must be >= 1");
    }
    const std::uint64_t effective_seed = seed.value_or(config.seed);
    const Triangle tri = config_triangle(config);
    const Mesh mesh = refine_uniform(tri, config.levels.back());
    const SideFrame frame = side_frame(tri, config.side);
    CsvWriter csv("trial,lhs,rhs,margin");
    for (int trial = 0; trial < config.trials; ++trial) {
        const NodalField field =
            random_interior_field(mesh, effective_seed + static_cast<std::uint64_t>(trial));
        const auto [lhs, rhs] = poincare_check(field, mesh, frame);
        csv.begin_row();
        csv.field(trial);
        csv.field(lhs);
        csv.field(rhs);
        csv.field(rhs - lhs);
        csv.end_row();
    }
    return csv.str();
}

}  // namespace triwave
