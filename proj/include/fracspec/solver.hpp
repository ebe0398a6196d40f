#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "fracspec/error.hpp"
#include "fracspec/fracops.hpp"
#include "fracspec/rhs.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/timegrid.hpp"

namespace fracspec {

struct SolverConfig {
    double alpha = 0.5;
    double rho = 0.0;  // 0: choose with contraction_rho
    double tol = 1e-12;
    std::size_t max_iter = 200;
    double q_target = 0.5;
    GridSpec spec = GridSpec::canonical(4096, 1.0 / 64.0);
    Contour contour = Contour::causal;

    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0))
            throw InvalidArgument("SolverConfig: alpha must lie in (0, 1], got " + std::to_string(alpha));
        if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidArgument("SolverConfig: rho must be >= 0 (0 = auto)");
        if (!(tol >= 1e-14)) throw InvalidArgument("SolverConfig: tol must be >= 1e-14");
        if (max_iter < 1) throw InvalidArgument("SolverConfig: max_iter must be >= 1");
        if (!(q_target > 0.0 && q_target < 1.0)) throw InvalidArgument("SolverConfig: q_target must lie in (0, 1)");
    }
};

struct SolveReport {
    double rho_used = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    double contraction_estimate = 0.0;
    bool converged = false;
    // Beyond this time the stopping tolerance, amplified by e^{rho t}, may
    // exceed 1e-8 in unweighted samples.
    double reliable_until = std::numeric_limits<double>::infinity();
};

struct SolveResult {
    GridFunction solution;
    SolveReport report;
};

using GridOperator = std::function<GridFunction(const GridFunction&)>;

namespace detail {

inline double residual_norm(const GridFunction& d, double rho, double order, Contour contour) {
    if (order == 0.0) return weighted_norm(d, rho);
    return sobolev_norm(d, rho, order, contour);
}

}  // namespace detail

/**
 * Picard iteration u_{k+1} = d^{-alpha} F(u_k) on L^2_rho, from u_0 = 0
 * unless an initial iterate is given. Residuals ||u_{k+1} - u_k|| are taken
 * in H_rho^{residual_order}; `iterations` counts applications of the map.
 * config.rho must be > 0 here (front-ends resolve the automatic choice).
 */
inline SolveResult picard_solve(const GridOperator& F, const SolverConfig& config, std::size_t dim,
                                double residual_order = 0.0, std::optional<GridFunction> initial = {}) {
    if (!(config.alpha > 0.0 && config.alpha <= 1.0))
        throw InvalidArgument("picard_solve: alpha must lie in (0, 1]");
    if (!(config.rho > 0.0)) throw InvalidArgument("picard_solve: rho must be > 0");
    if (!(config.tol > 0.0) || config.max_iter < 1) throw InvalidArgument("picard_solve: bad tol or max_iter");

    GridFunction u = initial ? std::move(*initial) : GridFunction(config.spec, dim);
    if (u.spec() != config.spec || u.dim() != dim)
        throw InvalidArgument("picard_solve: initial iterate does not match grid or dimension");

    SolveReport report;
    report.rho_used = config.rho;
    report.reliable_until = reliable_until(config.rho, 1e-8, config.tol);
    double previous = -1.0;
    int expanding = 0;
    for (std::size_t k = 1; k <= config.max_iter; ++k) {
        GridFunction next = frac_integral(F(u), config.rho, config.alpha, config.contour);
        const double r = detail::residual_norm(next - u, config.rho, residual_order, config.contour);
        if (!std::isfinite(r)) throw NumericFailure("picard_solve: residual became non-finite");
        u = std::move(next);
        report.iterations = k;
        report.residual = r;
        if (previous > 0.0) {
            report.contraction_estimate = r / previous;
            expanding = report.contraction_estimate >= 1.0 ? expanding + 1 : 0;
        }
        if (r <= config.tol) {
            report.converged = true;
            break;
        }
        if (expanding >= 3) {
            const double exponent = config.alpha - residual_order;
            const double factor = exponent > 0.0
                                      ? std::max(2.0, std::pow(report.contraction_estimate / config.q_target,
                                                               1.0 / exponent))
                                      : 2.0;
            const double suggested = config.rho * factor;
            throw NonContractive("picard_solve: iteration does not contract at rho = " + std::to_string(config.rho) +
                                     " (ratio " + std::to_string(report.contraction_estimate) +
                                     "); try rho >= " + std::to_string(suggested),
                                 suggested);
        }
        previous = r;
    }
    return {std::move(u), report};
}

namespace detail {

inline void require_state(const RhsSpec& rhs, std::span<const Complex> y0) {
    if (y0.size() != rhs.dim())
        throw InvalidArgument("initial value has dimension " + std::to_string(y0.size()) + ", rhs expects " +
                              std::to_string(rhs.dim()));
}

inline double resolve_rho(const RhsSpec& rhs, const SolverConfig& config) {
    if (config.rho > 0.0) return config.rho;
    return contraction_rho(rhs.lipschitz(), config.alpha, 0.0, rhs.rho0(), config.q_target);
}

}  // namespace detail

/**
 * ||d^alpha (y - y0 chi) - F(y - y0 chi)||_{L^2_rho} with F = nemytskii(., y0).
 * Off t = 0 this is f~(t, y(t)); at the jump node the state is read as the
 * right limit z + y0, matching what the solver iterates on.
 */
inline double caputo_residual(const GridFunction& y, const RhsSpec& rhs, std::span<const Complex> y0, double rho,
                              double alpha, Contour contour = Contour::causal) {
    detail::require_state(rhs, y0);
    const GridFunction z = y - heaviside(y.spec(), y0);
    const GridFunction lhs = frac_derivative(z, rho, alpha, contour);
    return weighted_norm(lhs - nemytskii(rhs, z, y0), rho);
}

/**
 * Caputo problem d^alpha (y - y0 chi) = f~(., y): iterate on z = y - y0 chi
 * and return y = z + y0 chi. The report's residual is caputo_residual.
 */
inline SolveResult solve_caputo(const RhsSpec& rhs, std::span<const Complex> y0, const SolverConfig& config,
                                std::optional<GridFunction> initial = {}) {
    config.validate();
    detail::require_state(rhs, y0);
    SolverConfig inner = config;
    inner.rho = detail::resolve_rho(rhs, config);
    // ||d^alpha z - F(z)|| <= c ||z - z_prev||, so tighten the step tolerance by c.
    inner.tol = config.tol / std::max(1.0, rhs.lipschitz());
    const State shift(y0.begin(), y0.end());
    auto F = [&rhs, shift](const GridFunction& z) { return nemytskii(rhs, z, shift); };
    auto [z, report] = picard_solve(F, inner, rhs.dim(), 0.0, std::move(initial));

    GridFunction y = z + heaviside(config.spec, y0);
    report.residual = caputo_residual(y, rhs, y0, inner.rho, config.alpha, config.contour);
    return {std::move(y), report};
}

struct RiemannLiouvilleResult {
    GridFunction z;
    SobolevElement y;
    SolveReport report;
};

/**
 * Riemann-Liouville problem d^alpha y = y0 delta + f~(., y). With
 * z = d^{alpha-1} y - chi y0 this becomes d z = G(z),
 *   G(z) = f~(., d^{1-alpha}(z + chi y0)),
 * solved by Picard iteration at order 1. G is c-Lipschitz from H^{1-alpha},
 * where d^{-1} gains rho^{-alpha}, so residuals are measured there.
 * y is returned spectrally as an element of order alpha - 1.
 */
inline RiemannLiouvilleResult solve_riemann_liouville(const RhsSpec& rhs, std::span<const Complex> y0,
                                                      const SolverConfig& config,
                                                      std::optional<GridFunction> initial = {}) {
    config.validate();
    detail::require_state(rhs, y0);
    const double alpha = config.alpha;
    const double rho = detail::resolve_rho(rhs, config);

    if (alpha == 1.0) {
        SolverConfig caputo = config;
        caputo.rho = rho;
        auto [y, report] = solve_caputo(rhs, y0, caputo, std::move(initial));
        GridFunction z = y - heaviside(config.spec, y0);
        SobolevElement ye(fl_transform(y, rho), 0.0);
        return {std::move(z), std::move(ye), report};
    }

    const GridFunction source = heaviside(config.spec, y0);
    const State zero(rhs.dim(), Complex(0.0));
    const Contour contour = config.contour;
    auto G = [&](const GridFunction& z) {
        return nemytskii(rhs, frac_derivative(z + source, rho, 1.0 - alpha, contour), zero);
    };
    SolverConfig inner = config;
    inner.alpha = 1.0;
    inner.rho = rho;
    auto [z, report] = picard_solve(G, inner, rhs.dim(), 1.0 - alpha, std::move(initial));
    report.rho_used = rho;

    SpectrumFunction ys = apply_symbol(symbols::power(1.0 - alpha), fl_transform(z + source, rho), contour);
    return {std::move(z), SobolevElement(std::move(ys), alpha - 1.0), report};
}

}  // namespace fracspec
