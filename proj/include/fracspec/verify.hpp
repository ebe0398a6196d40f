#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fracspec/error.hpp"
#include "fracspec/fracops.hpp"
#include "fracspec/inputs.hpp"
#include "fracspec/rhs.hpp"
#include "fracspec/solver.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/timegrid.hpp"

namespace fracspec {

namespace detail {

// max_k |u_k| over nodes with lo <= t_k < hi.
inline double max_on(const GridFunction& u, double lo, double hi) {
    double m = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double t = u.spec().t(k);
        if (t >= lo && t < hi) m = std::max(m, euclidean_norm(u.row(k)));
    }
    return m;
}

inline void require_zero_before(const GridFunction& u, double a, const char* what) {
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u.spec().t(k) >= a) break;
        for (const auto& v : u.row(k))
            if (v != Complex(0.0))
                throw InvalidArgument(std::string(what) + ": input is not zero before t = " + std::to_string(a));
    }
}

}  // namespace detail

struct CausalityDefect {
    double before;  // max deviation on t < a; should vanish
    double after;   // max deviation on t >= a; should not
};

/**
 * Solve the Caputo problem with rhs and with rhs + bump, at the same weight,
 * and compare the solutions on either side of a. Deviations are relative to
 * the unperturbed solution's size on the range where unweighted samples are
 * trustworthy; the `after` side is measured on that range only.
 */
inline CausalityDefect check_causality(const RhsSpec& rhs, std::span<const Complex> y0, double a,
                                       const GridFunction& bump, const SolverConfig& config) {
    detail::require_zero_before(bump, a, "check_causality");
    SolverConfig cfg = config;
    cfg.rho = detail::resolve_rho(rhs, config);
    const auto base = solve_caputo(rhs, y0, cfg).solution;
    const auto perturbed = solve_caputo(rhs.with_forcing(bump), y0, cfg).solution;
    const double horizon = reliable_until(cfg.rho);
    const double scale = detail::max_on(base, -INFINITY, horizon);
    const GridFunction diff = perturbed - base;
    if (scale == 0.0) return {detail::max_on(diff, -INFINITY, a), detail::max_on(diff, a, horizon)};
    return {detail::max_on(diff, -INFINITY, a) / scale, detail::max_on(diff, a, horizon) / scale};
}

/**
 * Largest node deviation between Caputo solutions at weights rho1 and rho2,
 * relative to the solution size, on [t_min, T]. T is the window interior
 * (guard band of 4h ceil(n/16) removed on the right) capped where the
 * stopping tolerance, amplified by e^{rho t} at the larger weight, reaches
 * `horizon_tol`.
 */
inline double check_rho_independence(const RhsSpec& rhs, std::span<const Complex> y0, double rho1, double rho2,
                                     const SolverConfig& config, double horizon_tol = 1e-6) {
    const double threshold = contraction_rho(rhs.lipschitz(), config.alpha, 0.0, rhs.rho0(), config.q_target);
    for (double r : {rho1, rho2})
        if (r < threshold * (1.0 - 1e-12))
            throw InvalidArgument("check_rho_independence: rho = " + std::to_string(r) +
                                  " is below the contraction threshold " + std::to_string(threshold));
    SolverConfig c1 = config, c2 = config;
    c1.rho = rho1;
    c2.rho = rho2;
    const auto y1 = solve_caputo(rhs, y0, c1).solution;
    const auto y2 = solve_caputo(rhs, y0, c2).solution;
    const auto& spec = config.spec;
    const double guard = 4.0 * spec.step() * double((spec.size() + 15) / 16);
    const double hi = std::min(spec.t_end() - guard, reliable_until(std::max(rho1, rho2), horizon_tol, config.tol));
    const double scale = detail::max_on(y1, -INFINITY, hi);
    const double dev = detail::max_on(y2 - y1, -INFINITY, hi);
    return scale == 0.0 ? dev : dev / scale;
}

struct SupportDefect {
    double leakage;  // max |d^beta u| on t < a - guard, relative
    double inside;   // max |d^beta u| on t >= a, relative (positive control)
};

/// d^beta of u supported in [a, inf): leakage left of a - 4h.
inline SupportDefect check_support_preservation(const GridFunction& u, double a, double beta, double rho,
                                                Contour contour = Contour::causal) {
    if (!(rho > 0.0)) throw InvalidArgument("check_support_preservation: rho must be > 0");
    detail::require_zero_before(u, a, "check_support_preservation");
    const GridFunction v = frac_derivative(u, rho, beta, contour);
    const double horizon = reliable_until(rho);
    const double scale = detail::max_on(v, -INFINITY, horizon);
    if (scale == 0.0) return {0.0, 0.0};
    const double guard = 4.0 * u.spec().step();
    return {detail::max_on(v, -INFINITY, a - guard) / scale, detail::max_on(v, a, horizon) / scale};
}

/// | ||d^beta u||_{alpha-beta} - ||u||_alpha | / ||u||_alpha
inline double check_chain_isometry(const GridFunction& u, double rho, double alpha, double beta,
                                   Contour contour = Contour::causal) {
    if (rho == 0.0) throw InvalidArgument("check_chain_isometry: rho must be nonzero");
    const SobolevElement e(fl_transform(u, rho), alpha);
    const double before = sobolev_norm(e, rho, alpha, contour);
    if (before == 0.0) return 0.0;
    const double after = sobolev_norm(frac_derivative(e, rho, beta, contour), rho, alpha - beta, contour);
    return std::abs(after - before) / before;
}

/// Relative gap between L_{-rho} sigma u and the xi-reflection of L_rho u.
inline double check_reflection(const GridFunction& u, double rho) {
    const SpectrumFunction lhs = fl_transform(reflect(u), -rho);
    const SpectrumFunction rhs = reflect_xi(fl_transform(u, rho));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < lhs.values().size(); ++i) {
        num += std::norm(lhs.values()[i] - rhs.values()[i]);
        den += std::norm(rhs.values()[i]);
    }
    return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

struct CheckResult {
    std::string check;
    std::map<std::string, double> params;
    double defect;
    double budget;
    bool pass;
    // A positive control passes when the defect reaches the budget.
    bool positive_control = false;
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    // Overrides keyed by check name.
    std::map<std::string, double> budgets;
    std::size_t n = 4096;
    double h = 1.0 / 64.0;
    double t_min = -4.0;
};

inline std::vector<std::string> suite_names() { return {"core"}; }

/**
 * The "core" suite: reflection, chain isometry, support preservation,
 * causality, rho-independence and the Caputo residual, with positive
 * controls for the support and causality checks.
 */
inline std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& opt = {}) {
    if (name != "core") throw InvalidArgument("unknown verification suite '" + name + "'");
    const GridSpec spec(opt.t_min, opt.n, opt.h);
    std::mt19937_64 rng(opt.seed);
    std::vector<CheckResult> out;

    auto record = [&](std::string check, std::map<std::string, double> params, double defect, double budget,
                      bool positive = false) {
        if (auto it = opt.budgets.find(check); it != opt.budgets.end()) budget = it->second;
        const bool pass = positive ? defect >= budget : defect <= budget;
        out.push_back({std::move(check), std::move(params), defect, budget, pass, positive});
    };

    const auto random_u = inputs::random_smooth(spec, rng);
    const auto step = heaviside(spec);

    record("reflection_random", {{"rho", 1.0}}, check_reflection(random_u, 1.0), 1e-10);
    record("reflection_heaviside", {{"rho", 1.0}}, check_reflection(step, 1.0), 1e-10);
    record("chain_isometry_0_0.5", {{"rho", 1.0}, {"alpha", 0.0}, {"beta", 0.5}},
           check_chain_isometry(random_u, 1.0, 0.0, 0.5), 1e-10);
    record("chain_isometry_-0.5_-0.5", {{"rho", 2.0}, {"alpha", -0.5}, {"beta", -0.5}},
           check_chain_isometry(random_u, 2.0, -0.5, -0.5), 1e-10);

    const auto shifted = heaviside(spec, std::vector<Complex>{1.0}, 1.0);
    const auto s05 = check_support_preservation(shifted, 1.0, -0.5, 1.0);
    const auto s1 = check_support_preservation(shifted, 1.0, -1.0, 1.0);
    record("support_beta_-0.5", {{"a", 1.0}, {"beta", -0.5}, {"rho", 1.0}}, s05.leakage, 1e-6);
    record("support_beta_-1", {{"a", 1.0}, {"beta", -1.0}, {"rho", 1.0}}, s1.leakage, 1e-8);
    record("support_beta_-0.5_control", {{"a", 1.0}, {"beta", -0.5}, {"rho", 1.0}}, s05.inside, 1e-3, true);

    SolverConfig cfg;
    cfg.alpha = 0.5;
    cfg.spec = spec;
    const State y0{1.0};
    const auto forcing = sample([](double t) { return t > 0.0 ? std::cos(t) : 0.0; }, spec);
    const auto rhs = rhs_catalogue::forced(forcing, -1.0);
    const auto bump = inputs::gaussian(spec, 2.0, 0.25, 1.0);
    const auto cd = check_causality(rhs, y0, 1.0, bump, cfg);
    record("causality", {{"a", 1.0}, {"alpha", cfg.alpha}}, cd.before, 1e-8);
    record("causality_control", {{"a", 1.0}, {"alpha", cfg.alpha}}, cd.after, 1e-3, true);

    const auto linear = rhs_catalogue::linear(-1.0);
    const double nu = contraction_rho(1.0, cfg.alpha, 0.0, 1.0, cfg.q_target);
    record("rho_independence", {{"rho1", nu}, {"rho2", 2 * nu}, {"alpha", cfg.alpha}},
           check_rho_independence(linear, y0, nu, 2 * nu, cfg), 1e-6);

    const auto solved = solve_caputo(linear, y0, cfg);
    record("caputo_residual", {{"alpha", cfg.alpha}, {"rho", solved.report.rho_used}, {"tol", cfg.tol}},
           solved.report.residual, 10 * cfg.tol);
    return out;
}

}  // namespace fracspec
