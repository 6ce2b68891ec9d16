#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "plap/problem.hpp"

namespace plap::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalid = 2,
    kNoConvergence = 3,
};

struct RunConfig {
    std::string command;  ///< eigen, solve, window, pohozaev, residual, shoot, sweep, fiber
    ProblemParams params;
    std::optional<double> m1;  ///< defaults to gamma
    std::optional<double> m2;  ///< defaults to gamma
    std::size_t nodes = 512;
    double tol = 1e-8;
    int max_iter = 50000;
    double step = 1.0;
    std::string out;            ///< empty: standard output
    std::string format = "json";

    // Command-specific inputs.
    std::optional<double> center;  ///< shoot: integrate from this u(0) instead of matching R
    double ode_step = 1e-4;
    std::string radii = "0.2:2.0:0.2";  ///< sweep: start:stop:step or comma list
    std::string input;                  ///< residual / fiber: profile CSV instead of a fresh solve
    std::string sign = "absorption";    ///< residual: absorption (-g) or reaction (+g)
    std::size_t sweep = 0;              ///< pohozaev: randomized sweep size (0 = single point)
    unsigned long long seed = 1;
};

/// Parses argv (after merging a --config JSON file beneath explicit flags).
/// Throws Error(InvalidParams) on malformed input; returns nullopt after
/// printing help or version text to out.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Dispatches one command; writes the result JSON (or CSV with --format csv)
/// to config.out or `out`, and CSV side files next to config.out.
int run(const RunConfig& config, std::ostream& out);

/// parse_args + run with error reporting; the executable's main.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Parses "a:b:s" (inclusive range) or "x,y,z".
std::vector<double> parse_radii(const std::string& spec);

}  // namespace plap::cli
