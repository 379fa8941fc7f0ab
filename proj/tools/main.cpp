#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "triwave/experiment.hpp"
#include "triwave/observability.hpp"
#include "triwave/timestepper.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

void print_usage() {
    std::cout << "Usage: triwave <command> --config PATH [--out DIR] [--seed U64]\n\n"
              << "Commands:\n"
              << "  simulate      boundary-flux report rows per (level, T)\n"
              << "  convergence   refinement study over >= 3 levels\n"
              << "  square-demo   closed-form square-edge flux per mode number\n"
              << "  oned-demo     closed-form interval-endpoint flux for a sine series\n"
              << "  eigen-demo    mesh runs against the standing-mode closed form\n"
              << "  poincare      random constrained fields vs the frame-direction bound\n\n"
              << "Options:\n"
              << "  --config PATH   experiment description (key = value lines)\n"
              << "  --out DIR       output directory for the CSV (default: .)\n"
              << "  --seed U64      override the config seed\n"
              << "  --help          show this help\n\n"
              << "Exit codes: 0 success, 2 config error, 3 numerical failure.\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) {
        throw triwave::ConfigParse(0, 0, "could not open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char* argv[]) {
    std::string command;
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;

    try {
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            auto require_value = [&](const std::string& flag) {
                if (i + 1 >= argc) {
                    throw triwave::ConfigParse(0, 0, "missing value for " + flag);
                }
                return std::string(argv[++i]);
            };
            if (arg == "--help" || arg == "-h") {
                print_usage();
                return 0;
            }
            if (arg == "--config") {
                config_path = require_value(arg);
            } else if (arg == "--out") {
                out_dir = require_value(arg);
            } else if (arg == "--seed") {
                seed = std::stoull(require_value(arg));
            } else if (!arg.empty() && arg[0] != '-' && command.empty()) {
                command = arg;
            } else {
                throw triwave::ConfigParse(0, 0, "unknown option: " + arg);
            }
        }
        if (command.empty()) {
            print_usage();
            return kExitConfigError;
        }
        if (config_path.empty()) {
            throw triwave::ConfigParse(0, 0, "--config PATH is required");
        }

        const triwave::ExperimentConfig config = triwave::parse_config(read_file(config_path));

        std::string csv;
        std::string file_name;
        if (command == "simulate") {
            csv = triwave::cmd_simulate(config, seed);
            file_name = "simulate.csv";
        } else if (command == "convergence") {
            csv = triwave::cmd_convergence(config, seed);
            file_name = "convergence.csv";
        } else if (command == "square-demo") {
            csv = triwave::cmd_square_demo(config);
            file_name = "square_demo.csv";
        } else if (command == "oned-demo") {
            csv = triwave::cmd_oned_demo(config);
            file_name = "oned_demo.csv";
        } else if (command == "eigen-demo") {
            csv = triwave::cmd_eigen_demo(config);
            file_name = "eigen_demo.csv";
        } else if (command == "poincare") {
            csv = triwave::cmd_poincare(config, seed);
            file_name = "poincare.csv";
        } else {
            throw triwave::ConfigParse(0, 0, "unknown command: " + command);
        }

        std::filesystem::create_directories(out_dir);
        const std::filesystem::path out_path = std::filesystem::path(out_dir) / file_name;
        std::ofstream out(out_path, std::ios::binary);
        if (!out.is_open()) {
            std::cerr << "error: could not write " << out_path.string() << "\n";
            return 1;
        }
        out << csv;
        std::cout << out_path.string() << "\n";
        return 0;
    } catch (const triwave::ConfigParse& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const triwave::TooFewLevels& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const triwave::CollinearVertices& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const triwave::ZeroEnergy& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const triwave::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
