#include "plap/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plap/analysis.hpp"
#include "plap/eigenvalue.hpp"
#include "plap/error.hpp"
#include "plap/json_format.hpp"
#include "plap/nehari.hpp"
#include "plap/radial.hpp"
#include "plap/shooting.hpp"
#include "plap/solver.hpp"

namespace plap::cli {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kCommands = {"eigen", "solve", "window", "pohozaev",
                                            "residual", "shoot", "sweep", "fiber"};

std::string number_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw Error(ErrorKind::InvalidParams, "config values must be numbers or strings");
}

// Config entries become flags placed before the explicit ones; with
// take-last semantics the command line wins.
std::vector<std::string> merged_args(int argc, const char* const* argv) {
    std::vector<std::string> explicit_args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < explicit_args.size(); ++i) {
        const std::string& a = explicit_args[i];
        if (a == "--config" && i + 1 < explicit_args.size()) config_path = explicit_args[i + 1];
        if (a.rfind("--config=", 0) == 0) config_path = a.substr(9);
    }
    std::vector<std::string> args;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Error(ErrorKind::Io, "cannot open config file " + config_path);
        nlohmann::json cfg;
        try {
            in >> cfg;
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::InvalidParams, std::string("config is not valid JSON: ") + e.what());
        }
        if (!cfg.is_object()) throw Error(ErrorKind::InvalidParams, "config must be a JSON object");
        for (const auto& [key, value] : cfg.items()) {
            if (key == "config") continue;
            args.push_back("--" + key);
            args.push_back(number_text(value));
        }
    }
    args.insert(args.end(), explicit_args.begin(), explicit_args.end());
    return args;
}

Json params_json(const RunConfig& c) {
    const auto& p = c.params;
    Json j;
    j["dim"] = p.dim;
    j["p"] = p.p;
    j["alpha"] = p.term.alpha;
    j["gamma"] = p.term.gamma;
    j["lambda"] = p.lambda;
    j["radius"] = p.radius;
    j["m1"] = c.m1.value_or(p.term.gamma);
    j["m2"] = c.m2.value_or(p.term.gamma);
    return j;
}

Json grid_json(const RadialGrid& g) {
    Json j;
    j["nodes"] = g.cells();
    j["spacing"] = g.spacing();
    return j;
}

Json envelope(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["params"] = params_json(c);
    j["grid"] = nullptr;
    j["result"] = Json::object();
    j["diagnostics"] = Json::object();
    j["warnings"] = Json::array();
    j["version"] = kVersion;
    return j;
}

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string side_path(const std::string& out) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return out.substr(0, dot) + ".csv";
    return out + ".csv";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NoConvergence:
        case ErrorKind::IntegrationStall:
        case ErrorKind::SingularGradient:
            return kNoConvergence;
        case ErrorKind::Io:
            return kUsage;
        default:
            return kInvalid;
    }
}

void validate_config(const RunConfig& c) {
    auto fail = [](const std::string& m) { throw Error(ErrorKind::InvalidParams, m); };
    if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) fail("unknown command " + c.command);
    if (c.nodes < 4) fail("--nodes must be at least 4");
    if (!(c.tol > 0.0)) fail("--tol must be positive");
    if (c.max_iter <= 0) fail("--max-iter must be positive");
    if (!(c.step > 0.0)) fail("--step must be positive");
    if (!(c.ode_step > 0.0)) fail("--ode-step must be positive");
    if (c.format != "json" && c.format != "csv") fail("--format must be json or csv");
    if (c.sign != "absorption" && c.sign != "reaction") fail("--sign must be absorption or reaction");
    if (c.m1 && !(*c.m1 > 0.0)) fail("--m1 must be positive");
    if (c.m2 && !(*c.m2 > 0.0)) fail("--m2 must be positive");
    const bool linear_ok = c.command == "shoot" || c.command == "sweep" || c.command == "eigen" ||
                           c.command == "residual";
    check_params(c.params, linear_ok);
    if (c.center && !(*c.center > 0.0)) fail("--center must be positive");
}

RadialFn load_profile(const std::string& path, const RadialGrid& grid) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open profile " + path);
    const ProfileTable t = read_profile_csv(in);
    if (t.u.size() != grid.size()) {
        throw Error(ErrorKind::InvalidParams, "profile has " + std::to_string(t.u.size()) +
                                                  " rows; --nodes implies " + std::to_string(grid.size()));
    }
    return RadialFn(t.u);
}

struct Output {
    Json json;
    std::string csv;
    int code = kOk;
};

Output cmd_eigen(const RunConfig& c, Json j) {
    const RadialGrid grid = build_grid(c.params.radius, c.params.dim, c.nodes);
    EigenOptions eo;
    eo.max_iter = c.max_iter;
    const EigenResult e = lambda1(grid, c.params.p, eo);
    j["grid"] = grid_json(grid);
    j["result"] = Json{{"lambda1", e.lambda1}, {"residual", e.residual}, {"M", grid.cells()},
                       {"p", c.params.p},      {"N", c.params.dim},       {"R", c.params.radius}};
    j["diagnostics"] = Json{{"iterations", e.iterations}};
    std::ostringstream csv;
    write_profile_csv(csv, grid, e.eigfn);
    return {std::move(j), csv.str(), kOk};
}

Json validation_json(const ValidationReport& v) {
    return Json{{"positive", v.positive},
                {"no_zero_annulus", v.no_zero_annulus},
                {"fibering_max", v.fibering_max},
                {"on_nehari", v.on_nehari},
                {"stationary", v.stationary},
                {"valid", v.valid()}};
}

Output cmd_solve(const RunConfig& c, Json j) {
    const RadialGrid grid = build_grid(c.params.radius, c.params.dim, c.nodes);
    SolveOptions so;
    so.tol = c.tol;
    so.max_iter = c.max_iter;
    so.step0 = c.step;
    const Solution s = solve(grid, c.params, so);
    const ValidationReport v = validate(s, grid, c.params, c.tol);
    j["grid"] = grid_json(grid);
    j["result"] = Json{{"energy", s.energy},
                       {"nehari_residual", s.nehari_residual},
                       {"stationarity_residual", s.stationarity_residual},
                       {"positivity_margin", s.positivity_margin},
                       {"center_value", s.u[0]},
                       {"boundary_slope", boundary_slope(s.u, grid)},
                       {"iterations", s.iterations},
                       {"converged", s.converged}};
    Json diag{{"lambda1", s.lambda1}, {"validation", validation_json(v)}};
    const auto& g = c.params.term;
    if (check_constants(c.params.p, g.alpha, g.m1(), g.m2())) {
        const ExistenceWindow w = existence_window(c.params.dim, c.params.p, g.alpha, g.m1(), g.m2(), s.lambda1);
        diag["window"] = Json{{"lambda_lo", w.lambda_lo}, {"lambda_hi", w.lambda_hi}};
    }
    j["diagnostics"] = std::move(diag);
    for (const auto& w : s.warnings) j["warnings"].push_back(w);
    std::ostringstream csv;
    write_profile_csv(csv, grid, s.u);
    return {std::move(j), csv.str(), s.converged ? kOk : kNoConvergence};
}

Output cmd_window(const RunConfig& c, Json j) {
    const RadialGrid grid = build_grid(c.params.radius, c.params.dim, c.nodes);
    const double m1 = c.m1.value_or(c.params.term.gamma);
    const double m2 = c.m2.value_or(c.params.term.gamma);
    const EigenResult e = lambda1(grid, c.params.p);
    const ExistenceWindow w = existence_window(c.params.dim, c.params.p, c.params.term.alpha, m1, m2, e.lambda1);
    j["grid"] = grid_json(grid);
    j["result"] = Json{{"lambda_lo", w.lambda_lo},
                       {"lambda_hi", w.lambda_hi},
                       {"constants_valid", w.constants_valid},
                       {"denominator", w.denominator},
                       {"ratio", w.ratio}};
    j["diagnostics"] = Json{{"lambda1_residual", e.residual}, {"lambda_in_window", w.contains(c.params.lambda)}};
    return {std::move(j), {}, kOk};
}

Output cmd_pohozaev(const RunConfig& c, Json j) {
    const double m1 = c.m1.value_or(c.params.term.gamma);
    const double m2 = c.m2.value_or(c.params.term.gamma);
    if (c.sweep > 0) {
        const auto rows = feasibility_sweep(c.sweep, c.seed);
        std::size_t feasible = 0;
        for (const auto& r : rows) feasible += r.result.feasible ? 1 : 0;
        j["result"] = Json{{"count", rows.size()}, {"feasible", feasible}, {"infeasible", rows.size() - feasible}};
        j["diagnostics"] = Json{{"seed", c.seed}};
        if (feasible == 0) j["warnings"].push_back("beta interval empty for every sampled parameter set");
        std::ostringstream csv;
        write_feasibility_csv(csv, rows);
        return {std::move(j), csv.str(), kOk};
    }
    const FeasibilityResult f =
        pohozaev_feasibility(c.params.dim, c.params.p, c.params.term.alpha, m1, m2, c.params.lambda);
    j["result"] = Json{{"beta_lo", f.beta_lo},
                       {"beta_hi", f.beta_hi},
                       {"feasible", f.feasible},
                       {"strictness_possible", f.strictness_possible},
                       {"certifies_nonexistence", f.certifies_nonexistence()}};
    if (!f.feasible) j["warnings"].push_back("beta interval empty: no nonexistence certificate");
    return {std::move(j), {}, kOk};
}

Output cmd_residual(const RunConfig& c, Json j) {
    const RadialGrid grid = build_grid(c.params.radius, c.params.dim, c.nodes);
    RadialFn u;
    if (!c.input.empty()) {
        u = load_profile(c.input, grid);
    } else {
        SolveOptions so;
        so.tol = c.tol;
        so.max_iter = c.max_iter;
        so.step0 = c.step;
        const Solution s = solve(grid, c.params, so);
        if (!s.converged) throw Error(ErrorKind::NoConvergence, "solve did not converge");
        u = s.u;
    }
    const SourceSign sign = c.sign == "reaction" ? SourceSign::Reaction : SourceSign::Absorption;
    const PohozaevReport rep = pohozaev_residual(u, grid, c.params, sign);
    j["grid"] = grid_json(grid);
    j["result"] = Json{{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"residual", rep.residual}};
    j["diagnostics"] = Json{{"sign", c.sign}, {"boundary_slope", boundary_slope(u, grid)}};
    std::ostringstream csv;
    write_profile_csv(csv, grid, u);
    return {std::move(j), csv.str(), kOk};
}

Output cmd_shoot(const RunConfig& c, Json j) {
    ShootOptions so;
    so.step = c.ode_step;
    ShootTrace t;
    if (c.center) {
        t = integrate_ivp(*c.center, c.params, c.ode_step, so.r_max_factor * c.params.radius);
    } else {
        const double r = c.params.radius;
        const auto rows = sweep_radius(c.params, std::span<const double>(&r, 1), so);
        if (!rows.front().solvable) {
            const std::string& st = rows.front().status;
            const ErrorKind kind = st == "DegenerateLinear" ? ErrorKind::DegenerateLinear
                                   : st == "NoConvergence"  ? ErrorKind::NoConvergence
                                                            : ErrorKind::NoBracket;
            throw Error(kind, "no center value matches radius " + std::to_string(r) + " (" + st + ")");
        }
        t = integrate_ivp(*rows.front().d, c.params, c.ode_step, so.r_max_factor * r);
    }
    j["result"] = Json{{"d", t.d},
                       {"first_zero", opt_json(t.first_zero)},
                       {"flux_at_zero", opt_json(t.flux_at_zero)},
                       {"samples", t.samples.size()}};
    j["diagnostics"] = Json{{"ode_step", c.ode_step}};
    std::ostringstream csv;
    write_trace_csv(csv, t);
    return {std::move(j), csv.str(), kOk};
}

Output cmd_sweep(const RunConfig& c, Json j) {
    ShootOptions so;
    so.step = c.ode_step;
    const std::vector<double> radii = parse_radii(c.radii);
    const auto rows = sweep_radius(c.params, radii, so);
    Json table = Json::array();
    for (const auto& r : rows) {
        table.push_back(Json{{"R", r.radius}, {"solvable", r.solvable}, {"d", opt_json(r.d)},
                             {"flux", opt_json(r.flux)}, {"status", r.status}});
    }
    Json band = nullptr;
    if (const auto b = solvable_band(rows)) {
        band = Json{{"lower", b->lower}, {"upper", b->upper}, {"contiguous", b->contiguous}, {"count", b->count}};
    }
    j["result"] = Json{{"rows", std::move(table)}, {"band", std::move(band)}};
    j["diagnostics"] = Json{{"ode_step", c.ode_step}};
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    return {std::move(j), csv.str(), kOk};
}

Output cmd_fiber(const RunConfig& c, Json j) {
    const RadialGrid grid = build_grid(c.params.radius, c.params.dim, c.nodes);
    RadialFn u;
    if (!c.input.empty()) {
        u = load_profile(c.input, grid);
    } else {
        const EigenResult e = lambda1(grid, c.params.p);
        u = initial_guess(grid, c.params, e.eigfn);
    }
    const Moments m = moments(u, grid, c.params);
    const NehariResult nr = project(u, grid, c.params);
    const double tb = project_bisection(m, c.params);
    j["grid"] = grid_json(grid);
    j["result"] = Json{{"t", nr.t}, {"t_bisection", tb}, {"slope_residual", nr.slope_residual},
                       {"fiber_max_energy", fiber_energy(nr.t, m, c.params)}};
    j["diagnostics"] = Json{{"A", m.grad_p}, {"B", m.mass_p}, {"C", m.sub}};
    std::ostringstream csv;
    csv << "s,energy,slope\n";
    char buf[96];
    for (int k = 0; k < 50; ++k) {
        const double s = nr.t * std::pow(10.0, -2.0 + 4.0 * k / 49.0);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s, fiber_energy(s, m, c.params), fiber_slope(s, m, c.params));
        csv << buf;
    }
    return {std::move(j), csv.str(), kOk};
}

void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw Error(ErrorKind::Io, "cannot write " + c.out);
    f << text;
}

}  // namespace

std::vector<double> parse_radii(const std::string& spec) {
    std::vector<double> out;
    auto to_d = [](const std::string& s) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidParams, "bad number in --radii: " + s);
        }
    };
    if (spec.empty()) return out;
    if (spec.find(':') != std::string::npos) {
        std::stringstream ss(spec);
        std::string a, b, s;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, s, ':')) {
            throw Error(ErrorKind::InvalidParams, "--radii range must be start:stop:step");
        }
        const double lo = to_d(a), hi = to_d(b), st = to_d(s);
        if (!(st > 0.0) || hi < lo) throw Error(ErrorKind::InvalidParams, "--radii range must increase");
        const auto count = static_cast<std::size_t>(std::floor((hi - lo) / st + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) out.push_back(lo + st * static_cast<double>(i));
    } else {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_d(item));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0) || (i > 0 && !(out[i] > out[i - 1]))) {
            throw Error(ErrorKind::InvalidParams, "--radii must be positive and increasing");
        }
    }
    return out;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    RunConfig c;
    CLI::App app{"Radial solver and analysis toolkit for the singular p-Laplacian Dirichlet problem", "plap"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", kVersion);
    app.add_option("command", c.command, "eigen | solve | window | pohozaev | residual | shoot | sweep | fiber")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("--dim", c.params.dim, "space dimension N");
    app.add_option("--p", c.params.p, "exponent p");
    app.add_option("--alpha", c.params.term.alpha, "singular exponent alpha in (0,1)");
    app.add_option("--gamma", c.params.term.gamma, "singular coefficient gamma");
    app.add_option("--m1", c.m1, "lower comparison constant (default gamma)");
    app.add_option("--m2", c.m2, "upper comparison constant (default gamma)");
    app.add_option("--lambda", c.params.lambda, "spectral parameter lambda");
    app.add_option("--radius", c.params.radius, "ball radius R");
    app.add_option("--nodes", c.nodes, "grid cells M");
    app.add_option("--tol", c.tol, "solver tolerance");
    app.add_option("--max-iter", c.max_iter, "iteration cap");
    app.add_option("--step", c.step, "initial descent step");
    app.add_option("--out", c.out, "result path (default standard output)");
    app.add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", "JSON file of flag values, overridden by explicit flags");
    app.add_option("--center", c.center, "shoot: integrate from u(0) = center");
    app.add_option("--ode-step", c.ode_step, "shoot/sweep: RK4 step");
    app.add_option("--radii", c.radii, "sweep: start:stop:step or comma list");
    app.add_option("--input", c.input, "residual/fiber: profile CSV (r,u)");
    app.add_option("--sign", c.sign, "residual: absorption (-g) or reaction (+g)");
    app.add_option("--sweep", c.sweep, "pohozaev: randomized sweep size");
    app.add_option("--seed", c.seed, "pohozaev: sweep seed");

    std::vector<std::string> args = merged_args(argc, argv);
    std::reverse(args.begin(), args.end());  // CLI11 consumes vectors from the back
    try {
        app.parse(args);
    } catch (const CLI::Success&) {
        out << (app.get_version_ptr()->count() > 0 ? std::string(kVersion) + "\n" : app.help());
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorKind::InvalidParams, e.what());
    }
    return c;
}

int run(const RunConfig& config, std::ostream& out) {
    Json j = envelope(config);
    try {
        validate_config(config);
        Output o;
        const std::string& cmd = config.command;
        if (cmd == "eigen") o = cmd_eigen(config, std::move(j));
        else if (cmd == "solve") o = cmd_solve(config, std::move(j));
        else if (cmd == "window") o = cmd_window(config, std::move(j));
        else if (cmd == "pohozaev") o = cmd_pohozaev(config, std::move(j));
        else if (cmd == "residual") o = cmd_residual(config, std::move(j));
        else if (cmd == "shoot") o = cmd_shoot(config, std::move(j));
        else if (cmd == "sweep") o = cmd_sweep(config, std::move(j));
        else o = cmd_fiber(config, std::move(j));

        if (config.format == "csv") {
            emit(config, out, o.csv.empty() ? dump_json(o.json) + "\n" : o.csv);
        } else {
            emit(config, out, dump_json(o.json) + "\n");
            if (!config.out.empty() && !o.csv.empty()) {
                std::ofstream side(side_path(config.out));
                if (!side) throw Error(ErrorKind::Io, "cannot write " + side_path(config.out));
                side << o.csv;
            }
        }
        return o.code;
    } catch (const Error& e) {
        Json err;
        err["command"] = config.command;
        err["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        err["version"] = kVersion;
        try {
            emit(config, out, dump_json(err) + "\n");
        } catch (const Error&) {
            out << dump_json(err) << "\n";
        }
        return exit_code(e.kind());
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> cfg;
    try {
        cfg = parse_args(argc, argv, out);
    } catch (const Error& e) {
        Json j;
        j["command"] = argc > 1 ? argv[1] : "";
        j["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        j["version"] = kVersion;
        err << dump_json(j) << "\n";
        return exit_code(e.kind());
    }
    if (!cfg) return kOk;
    return run(*cfg, out);
}

}  // namespace plap::cli
