// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"

using namespace fracspec;
using namespace fracspec::support;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// 1. d^{-alpha} chi = t^alpha / Gamma(alpha+1).
Outcome closed_form_integral() {
    const auto spec = desk_grid();
    // rho = 0.5 keeps [0.5, 30] inside the range where unweighted values are trustworthy.
    const double rho = 0.5;
    double worst = 0.0;
    for (double alpha : {0.25, 0.5, 0.9}) {
        const auto v = frac_integral(heaviside(spec), rho, alpha);
        for (std::size_t k = 0; k < spec.size(); ++k) {
            const double t = spec.t(k);
            if (t < 0.5 || t > 30.0) continue;
            const double exact = std::pow(t, alpha) / gamma_fn(alpha + 1.0);
            worst = std::max(worst, std::abs(v(k) - exact) / exact);
        }
    }
    return {worst <= 1e-3, fmt("max relative error %.2e on t in [0.5, 30] (budget 1e-3)", worst)};
}

// 2. spectral d^{-alpha} vs product-integration oracle.
Outcome oracle_equivalence() {
    const auto spec = desk_grid();
    std::mt19937_64 rng(20);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto u = inputs::random_smooth(spec, rng);
        for (double alpha : {0.3, 0.7, 1.5})
            for (double rho : {1.0, 2.0})
                worst = std::max(worst,
                                 relative_weighted_distance(frac_integral(u, rho, alpha), rl_convolution(u, alpha), rho));
    }
    return {worst <= 1e-3, fmt("worst relative L2_rho distance %.2e over 120 cases (budget 1e-3)", worst)};
}

// 3. sqrt(2 pi) L g_{alpha-1} = (i xi + rho)^{-alpha}.
Outcome symbol_identity() {
    const auto spec = desk_grid();
    double worst = 0.0;
    for (double alpha : {0.5, 1.0})
        for (double rho : {1.0, 2.0})
            for (double xi : {0.0, 1.0, 5.0}) worst = std::max(worst, verify_laplace_symbol(alpha, rho, xi, spec).err);
    return {worst <= 1e-2, fmt("worst err %.2e over 12 cases (budget 1e-2)", worst)};
}

// 4. isometry of d^beta between chain spaces; embedding constant rho^{alpha-beta}.
Outcome chain_and_embedding() {
    const auto spec = desk_grid();
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> pick(0, 4);
    const double orders[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
    const double rhos[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    double iso = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto u = inputs::random_smooth(spec, rng);
        iso = std::max(iso, check_chain_isometry(u, rhos[pick(rng)], orders[pick(rng)], orders[pick(rng)]));
    }
    // The embedding bound is an identity about |i xi + rho| >= rho: it is
    // checked on that contour. (On the causal contour the same bound holds
    // with rho_eff = (2/h) tanh(rho h/2), also checked.)
    double excess = -INFINITY, excess_causal = -INFINITY;
    for (int i = 0; i < 5; ++i) {
        const auto u = inputs::random_smooth(spec, rng);
        for (auto [a, b] : {std::pair{-1.0, 0.0}, std::pair{0.0, 0.5}})
            for (double rho : {1.0, 2.0, 4.0}) {
                const auto s = fl_transform(u, rho);
                const double lhs = sobolev_norm(s, a, Contour::continuous);
                const double rhs = std::pow(rho, a - b) * sobolev_norm(s, b, Contour::continuous);
                excess = std::max(excess, lhs - rhs);
                const double re = effective_rho(rho, spec.step(), Contour::causal);
                excess_causal = std::max(excess_causal, sobolev_norm(s, a) - std::pow(re, a - b) * sobolev_norm(s, b));
            }
    }
    const bool pass = iso <= 1e-10 && excess <= 1e-10 && excess_causal <= 1e-10;
    return {pass, fmt("isometry defect %.2e (budget 1e-10); embedding max(lhs - rhs) %.2e, causal contour %.2e "
                      "(budget 1e-10)",
                      iso, excess, excess_causal)};
}

double spectral_distance(const SobolevElement& a, const SobolevElement& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.spectrum().values().size(); ++i) {
        num += std::norm(a.spectrum().values()[i] - b.spectrum().values()[i]);
        den += std::norm(b.spectrum().values()[i]);
    }
    return std::sqrt(num / den);
}

// 5. d^alpha d^{-alpha} = id, d^alpha d^beta = d^{alpha+beta}.
Outcome group_laws() {
    const auto spec = desk_grid();
    std::mt19937_64 rng(5);
    const auto u = inputs::random_smooth(spec, rng);
    const double orders[] = {-1.0, -0.5, 0.3, 1.0, 1.7};
    double chain = 0.0, grid = 0.0;
    for (double rho : {1.0, 2.0}) {
        const SobolevElement e(fl_transform(u, rho), 0.0);
        for (double a : orders) {
            chain = std::max(chain, spectral_distance(frac_derivative(frac_derivative(e, rho, -a), rho, a), e));
            grid = std::max(grid, relative_weighted_distance(
                                      frac_derivative(frac_derivative(u, rho, -a), rho, a), u, rho));
            for (double b : orders) {
                chain = std::max(chain, spectral_distance(frac_derivative(frac_derivative(e, rho, b), rho, a),
                                                          frac_derivative(e, rho, a + b)));
                grid = std::max(grid, relative_weighted_distance(frac_derivative(frac_derivative(u, rho, b), rho, a),
                                                                 frac_derivative(u, rho, a + b), rho));
            }
        }
    }
    // The laws are identities of the symbol calculus, checked on the spectral
    // representation. Round trips through grid samples additionally pick up
    // rounding amplified by |z|^1.7 near Nyquist; reported for information.
    return {chain <= 1e-10,
            fmt("spectral chain defect %.2e (budget 1e-10); via grid samples %.2e (informational)", chain, grid)};
}

// 6. ||z^{-alpha}|| = rho^{-alpha}.
Outcome operator_norm_check() {
    const auto spec = desk_grid();
    double worst = 0.0, worst_causal = 0.0;
    for (double rho : {1.0, 2.0, 8.0})
        for (double alpha : {0.5, 1.0}) {
            const double expected = std::pow(rho, -alpha);
            worst = std::max(worst, std::abs(operator_norm(symbols::power(-alpha), rho, spec, Contour::continuous) -
                                             expected) / expected);
            const double re = std::pow(effective_rho(rho, spec.step(), Contour::causal), -alpha);
            worst_causal =
                std::max(worst_causal, std::abs(operator_norm(symbols::power(-alpha), rho, spec) - re) / re);
        }
    return {worst <= 1e-12 && worst_causal <= 1e-12,
            fmt("relative deviation from rho^-alpha %.2e; causal contour vs rho_eff^-alpha %.2e (budget 1e-12)",
                worst, worst_causal)};
}

// 7. Caputo: exponential at alpha = 1, residual, support, oracle fixed point at alpha = 0.5.
Outcome caputo() {
    const auto spec = desk_grid();
    const auto rhs = rhs_catalogue::linear(-1.0);
    const State y0{1.0};
    SolverConfig cfg;
    cfg.spec = spec;
    cfg.alpha = 1.0;
    const auto r1 = solve_caputo(rhs, y0, cfg);
    double err = 0.0, support = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double t = spec.t(k);
        // t = 0 is the jump node, where the grid carries the mean y0/2.
        if (t > 0.0 && t <= 10.0) err = std::max(err, std::abs(r1.solution(k) - std::exp(-t)));
        if (t < 0.0) support = std::max(support, std::abs(r1.solution(k)));
    }
    support /= r1.solution.max_abs();

    cfg.alpha = 0.5;
    const auto r2 = solve_caputo(rhs, y0, cfg);
    const auto oracle = oracle_caputo(rhs, y0, spec, 0.5, r2.report.rho_used);
    const double dist = relative_weighted_distance_after(r2.solution, oracle, r2.report.rho_used, 0.0);

    const bool pass = err <= 1e-4 && r1.report.residual <= 10 * cfg.tol && r2.report.residual <= 10 * cfg.tol &&
                      support <= 1e-8 && dist <= 1e-3;
    return {pass, fmt("alpha=1: max|y - e^-t| on (0,10] %.2e (1e-4), residual %.2e (1e-11), support %.2e (1e-8); "
                      "alpha=0.5: residual %.2e, vs oracle fixed point %.2e (1e-3)",
                      err, r1.report.residual, support, r2.report.residual, dist)};
}

// 8. Riemann-Liouville: source term spectrum; y0 = 0 agrees with Caputo.
Outcome riemann_liouville() {
    const auto spec = desk_grid();
    const double alpha = 0.75;
    SolverConfig cfg;
    cfg.spec = spec;
    cfg.alpha = alpha;
    const State y0{1.0};
    const auto r = solve_riemann_liouville(rhs_catalogue::zero(), y0, cfg);
    const double rho = r.report.rho_used;
    const auto& s = r.y.spectrum();
    // Compare on the resolved band |xi| <= Nyquist / 16.
    const double band = std::numbers::pi / spec.step() / 16.0;
    double worst = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double xi = spec.xi(j);
        if (std::abs(xi) > band) continue;
        const Complex exact = std::pow(Complex(rho, xi), -alpha);
        worst = std::max(worst, std::abs(std::sqrt(2.0 * std::numbers::pi) * s(j) - exact) / std::abs(exact));
    }

    const State zero{0.0};
    const auto forcing = sample([](double t) { return inputs::smooth_bump(t, 2.0, 1.5); }, spec);
    const auto rhs = rhs_catalogue::forced(forcing, -1.0);
    const auto rl = solve_riemann_liouville(rhs, zero, cfg);
    const auto cap = solve_caputo(rhs, zero, cfg);
    const double rho2 = cap.report.rho_used;
    const double dist = relative_weighted_distance(fl_inverse(rl.y.spectrum()), cap.solution, rho2);
    const bool pass = worst <= 1e-2 && dist <= 1e-3 && r.z.max_abs() == 0.0;
    return {pass, fmt("f=0: z max %.1e, source spectrum rel err %.2e on |xi| <= %.1f (1e-2); y0=0 forced: RL vs "
                      "Caputo %.2e (1e-3)",
                      r.z.max_abs(), worst, band, dist)};
}

// 9. causality with positive control.
Outcome causality() {
    const auto spec = desk_grid();
    SolverConfig cfg;
    cfg.spec = spec;
    cfg.alpha = 0.5;
    const auto forcing = sample([](double t) { return t > 0.0 ? std::cos(t) : 0.0; }, spec);
    const auto rhs = rhs_catalogue::forced(forcing, -1.0);
    const State y0{1.0};
    const auto bump = inputs::gaussian(spec, 2.0, 0.25, 1.0);
    const auto d = check_causality(rhs, y0, 1.0, bump, cfg);
    return {d.before <= 1e-8 && d.after >= 1e-3,
            fmt("deviation before a=1: %.2e (1e-8); after: %.2e (>= 1e-3)", d.before, d.after)};
}

// 10. rho-independence.
Outcome rho_independence() {
    const auto spec = desk_grid();
    SolverConfig cfg;
    cfg.spec = spec;
    cfg.alpha = 0.5;
    const auto rhs = rhs_catalogue::linear(-1.0);
    const State y0{1.0};
    const double nu = contraction_rho(rhs.lipschitz(), cfg.alpha, 0.0, rhs.rho0(), cfg.q_target);
    const double d = check_rho_independence(rhs, y0, nu, 2 * nu, cfg);
    return {d <= 1e-6, fmt("rho1=%g, rho2=%g: deviation %.2e (1e-6)", nu, 2 * nu, d)};
}

// 11. scaling of the spectral path and the oracle.
Outcome complexity() {
    const auto rows = run_bench();
    bool pass = true;
    std::string ratios;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double so = rows[i].oracle_seconds / rows[i - 1].oracle_seconds;
        const double ss = rows[i].spectral_seconds / rows[i - 1].spectral_seconds;
        pass = pass && so >= 3.5 && so <= 4.5 && ss <= 2.5;
        ratios += fmt(" %zu:%.2f/%.2f", rows[i].n, so, ss);
    }
    return {pass, "oracle/spectral ratios per doubling" + ratios + " (oracle 3.5-4.5, spectral <= 2.5)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"closed-form fractional integral", closed_form_integral},
        {"oracle equivalence", oracle_equivalence},
        {"symbol identity", symbol_identity},
        {"chain unitarity and embedding", chain_and_embedding},
        {"inverse and group laws", group_laws},
        {"operator norm", operator_norm_check},
        {"Caputo well-posedness", caputo},
        {"Riemann-Liouville", riemann_liouville},
        {"causality", causality},
        {"rho-independence", rho_independence},
        {"complexity", complexity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed;
}
