#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracspec/fracspec.hpp"

// Command implementations behind the `frac` executable. Each returns the
// process exit code; main() only parses flags and maps exceptions.

namespace fracspec::cli {

using json = nlohmann::json;
namespace fs = std::filesystem;

enum ExitCode { ok = 0, config_error = 2, numeric_error = 3, verification_failed = 4 };

struct ConfigError : InvalidArgument {
    using InvalidArgument::InvalidArgument;
};

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::string suite = "core";
    std::vector<std::string> budgets;  // name=value
};

// ---- config helpers -------------------------------------------------------

inline json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config '" + path + "'");
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
}

inline const json& require_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    return j;
}

inline void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    require_object(j, where);
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!keys.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

inline double number(const json& j, const char* key, const std::string& where, std::optional<double> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("missing '" + std::string(key) + "' in " + where);
    }
    if (!j[key].is_number()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a number");
    return j[key].get<double>();
}

inline std::string text(const json& j, const char* key, const std::string& where,
                        std::optional<std::string> fallback = {}) {
    if (!j.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("missing '" + std::string(key) + "' in " + where);
    }
    if (!j[key].is_string()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a string");
    return j[key].get<std::string>();
}

/// A complex number: 1.5 or [re, im].
inline Complex complex_value(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ConfigError(where + " must be a number or [re, im]");
}

/// A state: a single complex value, or an array of complex values.
inline State state_value(const json& v, const std::string& where) {
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array() || v.empty()) throw ConfigError(where + " must be a number or a non-empty array");
    State out;
    for (const auto& c : v) out.push_back(complex_value(c, where + " entry"));
    return out;
}

inline json complex_json(Complex z) { return z.imag() == 0.0 ? json(z.real()) : json::array({z.real(), z.imag()}); }

inline json state_json(const State& s) {
    json a = json::array();
    for (auto z : s) a.push_back(complex_json(z));
    return a;
}

inline Contour contour_value(const json& j, const std::string& where) {
    const auto s = text(j, "contour", where, std::string("causal"));
    if (s == "causal") return Contour::causal;
    if (s == "continuous") return Contour::continuous;
    throw ConfigError("contour in " + where + " must be 'causal' or 'continuous'");
}

inline std::size_t count_value(const json& j, const char* key, const std::string& where, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_unsigned()) throw ConfigError("'" + std::string(key) + "' in " + where + " must be a non-negative integer");
    return j[key].get<std::size_t>();
}

/// {"n", "h", "t_min"}; t_min defaults to the canonical solver guard band.
inline GridSpec grid_from(const json& root) {
    const json g = root.value("grid", json::object());
    reject_unknown(g, "grid", {"n", "h", "t_min"});
    const std::size_t n = count_value(g, "n", "grid", 4096);
    const double h = number(g, "h", "grid", 1.0 / 64.0);
    if (g.contains("t_min")) return GridSpec(number(g, "t_min", "grid"), n, h);
    return GridSpec::canonical(n, h);
}

inline json grid_json(const GridSpec& s) { return {{"t_min", s.t_min()}, {"n", s.size()}, {"h", s.step()}}; }

inline fs::path output_path(const Options& opt, const json& output, const char* key, const char* fallback) {
    fs::create_directories(opt.out_dir);
    const std::string name = output.contains(key) ? text(output, key, "output") : std::string(fallback);
    return fs::path(opt.out_dir) / name;
}

inline void write_json(const fs::path& path, const json& j) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << j.dump(2) << '\n';
}

// ---- inputs and right-hand sides -----------------------------------------

inline GridFunction input_from(const json& in, const GridSpec& spec) {
    reject_unknown(in, "input", {"kind", "a", "y0", "center", "width", "radius", "omega", "beta", "path"});
    const auto kind = text(in, "kind", "input");
    if (kind == "heaviside") {
        const State y0 = in.contains("y0") ? state_value(in["y0"], "input.y0") : State{1.0};
        return heaviside(spec, y0, number(in, "a", "input", 0.0));
    }
    if (kind == "gaussian")
        return inputs::gaussian(spec, number(in, "center", "input"), number(in, "width", "input"));
    if (kind == "bump") {
        const double c = number(in, "center", "input"), r = number(in, "radius", "input");
        return sample([&](double t) { return inputs::smooth_bump(t, c, r); }, spec);
    }
    if (kind == "sin_bump")
        return inputs::sin_bump(spec, number(in, "omega", "input"), number(in, "center", "input"),
                                number(in, "radius", "input"));
    if (kind == "g_kernel") return g_kernel(number(in, "beta", "input"), spec);
    if (kind == "csv") {
        auto u = csv::read(text(in, "path", "input"));
        if (u.spec() != spec) {
            const auto& s = u.spec();
            if (s.size() != spec.size() || std::abs(s.step() - spec.step()) > 1e-12 * spec.step() ||
                std::abs(s.t_min() - spec.t_min()) > 1e-9 * std::max(1.0, std::abs(spec.t_min())))
                throw ConfigError("input CSV grid does not match the configured grid");
            return GridFunction(spec, u.dim(), std::vector<Complex>(u.values().begin(), u.values().end()));
        }
        return u;
    }
    throw ConfigError("unknown input kind '" + kind + "'");
}

inline RhsSpec rhs_from(const json& r, std::size_t dim) {
    reject_unknown(r, "rhs", {"kind", "lambda", "rho0", "forcing_csv"});
    const auto kind = text(r, "kind", "rhs");
    const double rho0 = number(r, "rho0", "rhs", 1.0);
    if (kind == "zero") return rhs_catalogue::zero(dim, rho0);
    const Complex lambda = r.contains("lambda") ? complex_value(r["lambda"], "rhs.lambda") : Complex(-1.0);
    if (kind == "linear") return rhs_catalogue::linear(lambda, dim, rho0);
    if (kind == "logistic") {
        if (lambda.imag() != 0.0) throw ConfigError("logistic rhs needs a real lambda");
        return rhs_catalogue::logistic(lambda.real(), dim, rho0);
    }
    if (kind == "forced") {
        const auto a = csv::read(text(r, "forcing_csv", "rhs"));
        if (a.dim() != dim) throw ConfigError("forcing CSV dimension does not match y0");
        return rhs_catalogue::forced(a, lambda, rho0);
    }
    throw ConfigError("unknown rhs kind '" + kind + "'");
}

// ---- commands --------------------------------------------------------------

inline int cmd_apply(const Options& opt) {
    const json root = load_json(opt.config_path);
    reject_unknown(root, "config", {"grid", "operator", "input", "output"});
    const GridSpec spec = grid_from(root);
    const json op = root.value("operator", json());
    reject_unknown(op, "operator", {"kind", "alpha", "rho", "contour"});
    const auto kind = text(op, "kind", "operator");
    const double alpha = number(op, "alpha", "operator");
    const double rho = number(op, "rho", "operator");
    const Contour contour = contour_value(op, "operator");
    if (!root.contains("input")) throw ConfigError("missing 'input' section");
    const GridFunction u = input_from(root["input"], spec);

    GridFunction v = u;
    if (kind == "derivative")
        v = frac_derivative(u, rho, alpha, contour);
    else if (kind == "integral")
        v = frac_integral(u, rho, alpha, contour);
    else
        throw ConfigError("operator kind must be 'derivative' or 'integral'");

    const json output = root.value("output", json::object());
    reject_unknown(output, "output", {"csv", "json"});
    const auto csv_path = output_path(opt, output, "csv", "apply.csv");
    csv::write(csv_path.string(), v);
    write_json(output_path(opt, output, "json", "apply.json"),
               {{"command", "apply"},
                {"grid", grid_json(spec)},
                {"operator",
                 {{"kind", kind},
                  {"alpha", alpha},
                  {"rho", rho},
                  {"contour", to_string(contour)},
                  {"symbol", symbols::power(kind == "integral" ? -alpha : alpha).label}}},
                {"input", root["input"]},
                {"output", csv_path.filename().string()}});
    return ok;
}

inline json report_json(const SolveReport& r) {
    return {{"rho_used", r.rho_used},
            {"iterations", r.iterations},
            {"residual", r.residual},
            {"contraction_estimate", r.contraction_estimate},
            {"converged", r.converged},
            {"reliable_until", r.reliable_until}};
}

inline int cmd_solve(const Options& opt) {
    const json root = load_json(opt.config_path);
    reject_unknown(root, "config", {"grid", "solver", "rhs", "output"});
    const GridSpec spec = grid_from(root);
    const json s = root.value("solver", json());
    reject_unknown(s, "solver", {"problem", "alpha", "rho", "tol", "max_iter", "q_target", "contour", "y0"});
    SolverConfig cfg;
    cfg.spec = spec;
    cfg.alpha = number(s, "alpha", "solver");
    cfg.rho = number(s, "rho", "solver", 0.0);
    cfg.tol = number(s, "tol", "solver", cfg.tol);
    cfg.max_iter = count_value(s, "max_iter", "solver", cfg.max_iter);
    cfg.q_target = number(s, "q_target", "solver", cfg.q_target);
    cfg.contour = contour_value(s, "solver");
    const State y0 = s.contains("y0") ? state_value(s["y0"], "solver.y0") : State{1.0};
    const auto problem = text(s, "problem", "solver", std::string("caputo"));
    if (!root.contains("rhs")) throw ConfigError("missing 'rhs' section");
    const RhsSpec rhs = rhs_from(root["rhs"], y0.size());

    const json output = root.value("output", json::object());
    reject_unknown(output, "output", {"csv", "report"});
    json report;
    if (problem == "caputo") {
        const auto result = solve_caputo(rhs, y0, cfg);
        csv::write(output_path(opt, output, "csv", "solution.csv").string(), result.solution);
        report = report_json(result.report);
    } else if (problem == "riemann_liouville") {
        const auto result = solve_riemann_liouville(rhs, y0, cfg);
        // y has order alpha - 1 < 0; its CSV holds the samples of the discrete
        // representative, which for alpha > 1/2 is a square-integrable function.
        const GridFunction y = fl_inverse(result.y.spectrum());
        csv::write(output_path(opt, output, "csv", "solution.csv").string(), y);
        csv::write((fs::path(opt.out_dir) / "z.csv").string(), result.z);
        csv::write((fs::path(opt.out_dir) / "y_spectrum.csv").string(), result.y.spectrum());
        report = report_json(result.report);
        report["y_order"] = result.y.alpha();
    } else {
        throw ConfigError("solver.problem must be 'caputo' or 'riemann_liouville'");
    }
    if (report["reliable_until"].get<double>() < spec.t(spec.size() - 1))
        std::cerr << "note: samples beyond t = " << report["reliable_until"].get<double>()
                  << " carry error amplified by exp(rho t); see reliable_until in the report\n";
    report["problem"] = problem;
    report["alpha"] = cfg.alpha;
    report["y0"] = state_json(y0);
    report["rhs"] = rhs.label();
    report["grid"] = grid_json(spec);
    write_json(output_path(opt, output, "report", "report.json"), report);
    return ok;
}

inline json check_json(const CheckResult& r) {
    return {{"check", r.check},
            {"params", r.params},
            {"defect", r.defect},
            {"budget", r.budget},
            {"pass", r.pass},
            {"positive_control", r.positive_control}};
}

inline int cmd_verify(const Options& opt) {
    SuiteOptions suite;
    suite.seed = opt.seed;
    std::string name = opt.suite;
    if (!opt.config_path.empty()) {
        const json root = load_json(opt.config_path);
        reject_unknown(root, "config", {"suite", "grid", "budgets"});
        name = text(root, "suite", "config", name);
        if (root.contains("grid")) {
            const GridSpec g = grid_from(root);
            suite.n = g.size();
            suite.h = g.step();
            suite.t_min = g.t_min();
        }
        if (root.contains("budgets"))
            for (const auto& [k, v] : require_object(root["budgets"], "budgets").items()) {
                if (!v.is_number()) throw ConfigError("budget '" + k + "' must be a number");
                suite.budgets[k] = v.get<double>();
            }
    }
    for (const auto& b : opt.budgets) {
        const auto eq = b.find('=');
        if (eq == std::string::npos) throw ConfigError("--budget expects NAME=VALUE, got '" + b + "'");
        try {
            suite.budgets[b.substr(0, eq)] = std::stod(b.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("--budget value is not a number: '" + b + "'");
        }
    }
    const auto results = run_suite(name, suite);
    std::set<std::string> known;
    for (const auto& r : results) known.insert(r.check);
    for (const auto& [k, v] : suite.budgets)
        if (!known.count(k)) throw ConfigError("budget given for unknown check '" + k + "'");

    json table = json::array();
    bool all = true;
    for (const auto& r : results) {
        table.push_back(check_json(r));
        all = all && r.pass;
    }
    fs::create_directories(opt.out_dir);
    write_json(fs::path(opt.out_dir) / "verify.json", table);
    std::cout << table.dump(2) << '\n';
    return all ? ok : verification_failed;
}

inline int cmd_bench(const Options& opt) {
    BenchOptions b;
    if (!opt.config_path.empty()) {
        const json root = load_json(opt.config_path);
        reject_unknown(root, "config", {"bench"});
        const json j = root.value("bench", json::object());
        reject_unknown(j, "bench", {"sizes", "repeats", "alpha", "rho", "h"});
        if (j.contains("sizes")) {
            b.sizes.clear();
            for (const auto& n : j["sizes"]) {
                if (!n.is_number_unsigned()) throw ConfigError("bench.sizes must hold positive integers");
                b.sizes.push_back(n.get<std::size_t>());
            }
        }
        b.repeats = int(count_value(j, "repeats", "bench", std::size_t(b.repeats)));
        if (b.repeats < 5) throw ConfigError("bench.repeats must be >= 5");
        b.alpha = number(j, "alpha", "bench", b.alpha);
        b.rho = number(j, "rho", "bench", b.rho);
        b.h = number(j, "h", "bench", b.h);
    }
    const auto rows = run_bench(b);
    json out = {{"repeats", b.repeats}, {"alpha", b.alpha}, {"rho", b.rho}, {"statistic", "median"}};
    json table = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        json row = {{"n", rows[i].n}, {"spectral_seconds", rows[i].spectral_seconds},
                    {"oracle_seconds", rows[i].oracle_seconds}};
        if (i > 0) {
            row["spectral_ratio"] = rows[i].spectral_seconds / rows[i - 1].spectral_seconds;
            row["oracle_ratio"] = rows[i].oracle_seconds / rows[i - 1].oracle_seconds;
        }
        table.push_back(row);
    }
    out["rows"] = table;
    fs::create_directories(opt.out_dir);
    write_json(fs::path(opt.out_dir) / "bench.json", out);
    std::cout << out.dump(2) << '\n';
    return ok;
}

/// Run a command, mapping library errors to exit codes.
template <class Command>
int guarded(Command&& cmd, const Options& opt, std::ostream& err = std::cerr) {
    try {
        set_max_threads(opt.threads);
        return cmd(opt);
    } catch (const NonContractive& e) {
        err << "error: " << e.what() << "\n";
        return numeric_error;
    } catch (const NumericFailure& e) {
        err << "error: " << e.what() << "\n";
        return numeric_error;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    } catch (const json::exception& e) {
        err << "error: config: " << e.what() << "\n";
        return config_error;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return config_error;
    }
}

}  // namespace fracspec::cli
