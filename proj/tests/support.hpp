#pragma once

#include <cmath>
#include <numbers>

#include "fracspec/fracspec.hpp"

// Shared fixtures and independent oracles for the test programs.

namespace fracspec::support {

// n = 2^12, h = 1/64, window [-4, 60).
inline GridSpec desk_grid() { return GridSpec(-4.0, 4096, 1.0 / 64.0); }

inline double relative_weighted_distance(const GridFunction& a, const GridFunction& b, double rho) {
    const double den = weighted_norm(b, rho);
    const double num = weighted_norm(a - b, rho);
    return den == 0.0 ? num : num / den;
}

// Weighted L^2 distance restricted to nodes with t > lo, relative to b there.
inline double relative_weighted_distance_after(const GridFunction& a, const GridFunction& b, double rho, double lo) {
    const auto keep = [&](const GridFunction& u) {
        GridFunction out = u;
        for (std::size_t k = 0; k < u.size(); ++k)
            if (!(u.spec().t(k) > lo))
                for (auto& v : out.row(k)) v = 0.0;
        return out;
    };
    return relative_weighted_distance(keep(a), keep(b), rho);
}

inline double gamma_fn(double x) { return std::tgamma(x); }

/**
 * Caputo solution computed without the spectral pipeline: the same Picard
 * map z -> I^alpha F(z), with I^alpha evaluated by product-integration
 * quadrature. Returns y = z + y0 chi.
 */
inline GridFunction oracle_caputo(const RhsSpec& rhs, std::span<const Complex> y0, const GridSpec& spec, double alpha,
                                  double rho, double tol = 1e-13, int max_iter = 400) {
    GridFunction z(spec, rhs.dim());
    for (int k = 0; k < max_iter; ++k) {
        GridFunction next = rl_convolution(nemytskii(rhs, z, y0), alpha);
        const double r = weighted_norm(next - z, rho);
        z = std::move(next);
        if (r <= tol) break;
    }
    return z + heaviside(spec, y0);
}

}  // namespace fracspec::support
