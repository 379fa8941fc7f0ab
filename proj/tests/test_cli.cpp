#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "triwave/analytic.hpp"
#include "triwave/experiment.hpp"
#include "triwave/observability.hpp"

using namespace triwave;

namespace {

const std::string kSimulateConfig =
    "# generic acute triangle\n"
    "vertex = 0 0\n"
    "vertex = 3 0\n"
    "vertex = 1 2\n"
    "side = 2\n"
    "init = random-smooth 42\n"
    "level = 3\n"
    "T = 2\n"
    "T = 4\n"
    "cfl_safety = 0.5\n";

}  // namespace

namespace {

// last field of each data row, as doubles
std::vector<double> last_column(const std::string& csv) {
    std::vector<double> values;
    std::size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        const std::size_t end = csv.find('\n', pos);
        const std::string row = csv.substr(pos, end - pos);
        values.push_back(std::stod(row.substr(row.find_last_of(',') + 1)));
        pos = end + 1;
    }
    return values;
}

std::vector<double> column(const std::string& csv, std::size_t index) {
    std::vector<double> values;
    std::size_t pos = csv.find('\n') + 1;
    while (pos < csv.size()) {
        const std::size_t end = csv.find('\n', pos);
        std::string row = csv.substr(pos, end - pos);
        for (std::size_t k = 0; k < index; ++k) row = row.substr(row.find(',') + 1);
        const std::size_t comma = row.find(',');
        values.push_back(std::stod(row.substr(0, comma)));
        pos = end + 1;
    }
    return values;
}

}  // namespace

TEST_CASE("config parsing") {
    const ExperimentConfig config = parse_config(kSimulateConfig);
    CHECK(config.vertices.size() == 3);
    CHECK(config.vertices[1].x == 3.0);
    CHECK(config.side == 2);
    CHECK(config.init_kind == InitKind::RandomSmooth);
    CHECK(config.seed == 42);
    CHECK(config.levels == std::vector<int>{3});
    CHECK(config.times == std::vector<double>{2.0, 4.0});
    CHECK(config.cfl_safety == 0.5);
}

TEST_CASE("config errors carry line and column") {
    try {
        parse_config("vertex = 0 0\nbogus_key = 1\n");
        FAIL("expected ConfigParse");
    } catch (const ConfigParse& e) {
        CHECK(e.line == 2);
    }

    try {
        parse_config("vertex = 0 zzz\n");
        FAIL("expected ConfigParse");
    } catch (const ConfigParse& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 10);
    }

    CHECK_THROWS_AS(parse_config("side = 7\n"), ConfigParse);
    CHECK_THROWS_AS(parse_config("level = 44\n"), ConfigParse);
    CHECK_THROWS_AS(parse_config("T = -1\n"), ConfigParse);
    CHECK_THROWS_AS(parse_config("vertex 0 0\n"), ConfigParse);
    CHECK_THROWS_AS(parse_config("init = eigenmode 1\n"), ConfigParse);
}

TEST_CASE("simulate is deterministic and produces the documented header") {
    const ExperimentConfig config = parse_config(kSimulateConfig);
    const std::string a = cmd_simulate(config);
    const std::string b = cmd_simulate(config);
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) ==
          "side,level,h_max,dt,T,E0,boundary_integral,ratio,x_prod_A,x_prod_B,x_prod_C,"
          "commutator_residual");
    // one header plus one row per (level, T)
    CHECK(std::count(a.begin(), a.end(), '\n') == 3);

    // the seed flag overrides the config seed
    const std::string c = cmd_simulate(config, 43);
    CHECK(c != a);
}

TEST_CASE("simulate rows satisfy the studied-side product identity") {
    const ExperimentConfig config = parse_config(kSimulateConfig);
    const std::string csv = cmd_simulate(config);
    // columns: ...,E0(5),boundary_integral(6),ratio(7),x_prod_A(8),...
    const std::vector<double> bi = column(csv, 6);
    const std::vector<double> x_prod_a = column(csv, 8);
    const double ell = altitude(Triangle({0, 0}, {3, 0}, {1, 2}), 2);
    REQUIRE(bi.size() == x_prod_a.size());
    for (std::size_t k = 0; k < bi.size(); ++k) {
        CHECK(x_prod_a[k] == doctest::Approx(ell * bi[k]).epsilon(1e-12));
    }
}

TEST_CASE("simulate rejects zero initial data before stepping") {
    ExperimentConfig config = parse_config(kSimulateConfig);
    config.init_kind = InitKind::Bump;
    config.bump_center = {1.0, 0.7};
    config.bump_radius = 0.5;
    config.bump_amplitude = 0.0;  // identically zero data
    CHECK_THROWS_AS(cmd_simulate(config), ZeroEnergy);
}

TEST_CASE("eigenmode initial data requires the reference triangle") {
    ExperimentConfig config = parse_config(kSimulateConfig);
    config.init_kind = InitKind::Eigenmode;
    CHECK_THROWS_AS(cmd_simulate(config), ConfigParse);
}

TEST_CASE("convergence requires at least three levels") {
    ExperimentConfig config = parse_config(kSimulateConfig);
    config.levels = {3, 4};
    CHECK_THROWS_AS(cmd_convergence(config), TooFewLevels);
}

TEST_CASE("square demo rows match the closed form") {
    ExperimentConfig config;
    config.square_modes = {1, 2, 3};
    config.times = {10.0};
    const std::string csv = cmd_square_demo(config);
    CHECK(csv.substr(0, csv.find('\n')) == "n,T,E0,boundary_integral,ratio_per_energy");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv == cmd_square_demo(config));

    ExperimentConfig empty;
    empty.times = {10.0};
    CHECK_THROWS_AS(cmd_square_demo(empty), ConfigParse);
}

TEST_CASE("oned demo emits the ratio and scale columns") {
    ExperimentConfig config;
    config.ell = 3.0;
    config.series_modes = {{1, 0.5, -0.25}, {4, 0.1, 0.9}};
    config.times = {30.0, 300.0};
    const std::string csv = cmd_oned_demo(config);
    CHECK(csv.substr(0, csv.find('\n')) == "ell,T,E0,boundary_integral,ratio,ell_over_T");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    // a zero series yields a zero boundary integral
    ExperimentConfig zero;
    zero.ell = 3.0;
    zero.series_modes = {{1, 0.0, 0.0}};
    zero.times = {10.0};
    const std::string zero_csv = cmd_oned_demo(zero);
    const std::string row = zero_csv.substr(zero_csv.find('\n') + 1);
    CHECK(row.substr(0, row.find(',')) == "3");
    CHECK(row.find(",0,0,") != std::string::npos);  // E0 = 0 and integral = 0
}

TEST_CASE("eigen demo errors shrink monotonically toward the closed form") {
    ExperimentConfig config;
    config.vertices = {Vec2{0.0, 0.0}, Vec2{3.14159265358979323846, 0.0},
                       Vec2{3.14159265358979323846, 3.14159265358979323846}};
    config.side = 1;
    config.mode_m = 1;
    config.mode_n = 2;
    config.levels = {3, 4, 5};
    config.times = {3.0};
    const std::string csv = cmd_eigen_demo(config);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "m,n,side,level,h_max,dt,T,E0,boundary_integral,exact_boundary_integral,rel_error");
    const std::vector<double> rel_errors = last_column(csv);
    REQUIRE(rel_errors.size() == 3);
    CHECK(rel_errors[1] < rel_errors[0]);
    CHECK(rel_errors[2] < rel_errors[1]);
    CHECK(rel_errors[2] < 0.05);
}

TEST_CASE("convergence table reports second-order energy of smooth data") {
    ExperimentConfig config = parse_config(kSimulateConfig);
    config.levels = {3, 4, 5};
    config.times = {2.0};
    const std::string csv = cmd_convergence(config);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "level,h_max,dt,T,E0,order_E0,boundary_integral,order_boundary_integral,"
          "abs_ratio_minus_1,commutator_residual");
    // order_E0 is column 5; defined on the last row only
    const std::vector<double> orders = column(csv, 5);
    REQUIRE(orders.size() == 3);
    CHECK(std::isnan(orders[0]));
    CHECK(std::isnan(orders[1]));
    CHECK(orders[2] == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("poincare command reports nonnegative margins reproducibly") {
    ExperimentConfig config;
    config.vertices = {Vec2{0.0, 0.0}, Vec2{3.0, 0.0}, Vec2{1.0, 2.0}};
    config.side = 2;
    config.levels = {4};
    config.trials = 50;
    config.seed = 7;
    const std::string csv = cmd_poincare(config);
    CHECK(csv == cmd_poincare(config));
    CHECK(csv.substr(0, csv.find('\n')) == "trial,lhs,rhs,margin");

    std::size_t pos = csv.find('\n') + 1;
    int rows = 0;
    while (pos < csv.size()) {
        const std::size_t end = csv.find('\n', pos);
        const std::string row = csv.substr(pos, end - pos);
        const double margin = std::stod(row.substr(row.find_last_of(',') + 1));
        CHECK(margin >= 0.0);
        ++rows;
        pos = end + 1;
    }
    CHECK(rows == 50);

    ExperimentConfig bad = config;
    bad.trials = 0;
    CHECK_THROWS_AS(cmd_poincare(bad), ConfigParse);
}
