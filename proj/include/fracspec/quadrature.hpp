#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "fracspec/error.hpp"
#include "fracspec/fracops.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/timegrid.hpp"

// Time-domain evaluation of the Riemann-Liouville integral
//   (I^alpha u)(t) = int_{-inf}^t (t-s)^{alpha-1} / Gamma(alpha) u(s) ds
// by product integration. Nothing here touches the Fourier-Laplace code
// path; it exists to cross-check it.

namespace fracspec {

namespace detail {

inline void require_oracle_order(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0))
        throw InvalidArgument("rl_convolution: alpha must lie in (0, 2), got " + std::to_string(alpha));
}

struct KernelMoments {
    std::vector<double> w;   // zeroth moments
    std::vector<double> m1;  // first moments / h
};

// Both moment sets in one pass; they share j^alpha and log1p(1/j).
inline KernelMoments kernel_moments(double alpha, double h, std::size_t count) {
    require_oracle_order(alpha);
    if (!(h > 0.0)) throw InvalidArgument("kernel_weights: h must be > 0");
    const double scale = std::pow(h, alpha) / std::tgamma(alpha + 1.0);
    const double c = alpha / (alpha + 1.0);
    KernelMoments k{std::vector<double>(count), std::vector<double>(count)};
    for (std::size_t j = 0; j < count; ++j) {
        if (j == 0) {
            k.w[0] = scale;
            k.m1[0] = scale * c;
            continue;
        }
        const double jd = double(j);
        const double l = std::log1p(1.0 / jd);
        const double pa = std::pow(jd, alpha);
        const double ea = std::expm1(alpha * l);
        k.w[j] = scale * pa * ea;
        k.m1[j] = scale * pa * jd * (c * std::expm1((alpha + 1.0) * l) - ea);
    }
    return k;
}

}  // namespace detail

/**
 * Zeroth kernel moments over the lag cells [j h, (j+1) h]:
 *   w_j = h^alpha ((j+1)^alpha - j^alpha) / Gamma(alpha+1).
 * Partial sums telescope: sum_{j<m} w_j = (m h)^alpha / Gamma(alpha+1).
 */
inline std::vector<double> kernel_weights(double alpha, double h, std::size_t count) {
    return detail::kernel_moments(alpha, h, count).w;
}

/**
 * First moments over the same cells, normalised by h:
 *   m_j = (1/h) int_{jh}^{(j+1)h} k(tau) (tau - j h) dtau,
 * the share of w_j that a linear interpolant hands to the older endpoint.
 */
inline std::vector<double> kernel_first_moments(double alpha, double h, std::size_t count) {
    return detail::kernel_moments(alpha, h, count).m1;
}

/**
 * Product integration of the Riemann-Liouville integral: u is linearly
 * interpolated between nodes, and the kernel is integrated exactly against
 * each linear piece. The integral starts at the window's first node, so u
 * must vanish before the window (and, for accuracy, near its left edge).
 * O(n^2) direct evaluation; rows run in parallel under set_max_threads.
 */
inline GridFunction rl_convolution(const GridFunction& u, double alpha) {
    detail::require_oracle_order(alpha);
    const std::size_t n = u.size();
    const std::size_t d = u.dim();
    const double h = u.spec().step();
    const auto k = detail::kernel_moments(alpha, h, n);
    std::vector<double> newer(n);
    for (std::size_t j = 0; j < n; ++j) newer[j] = k.w[j] - k.m1[j];
    const auto& older = k.m1;

    GridFunction out(u.spec(), d);
    const auto in = u.values();
    auto res = out.values();
    parallel_for(n, [&](std::size_t m) {
        for (std::size_t c = 0; c < d; ++c) {
            Complex acc = 0.0;
            // lag cell j spans nodes m-j-1 (older) and m-j (newer)
            for (std::size_t j = 0; j < m; ++j)
                acc += newer[j] * in[(m - j) * d + c] + older[j] * in[(m - j - 1) * d + c];
            res[m * d + c] = acc;
        }
    });
    return out;
}

struct LaplaceSymbolCheck {
    double xi;   // grid frequency actually used
    Complex lhs;  // sqrt(2 pi) L_rho g_{alpha-1} (xi)
    Complex rhs;  // (i xi + rho)^{-alpha}
    double err;  // |lhs - rhs| / |rhs|
};

/// Compares the transform of the sampled kernel g_{alpha-1} with the closed
/// form (i xi + rho)^{-alpha} at the grid frequency nearest to xi.
inline LaplaceSymbolCheck verify_laplace_symbol(double alpha, double rho, double xi, const GridSpec& spec) {
    if (!(alpha > 0.0) || !(rho > 0.0)) throw InvalidArgument("verify_laplace_symbol: alpha and rho must be > 0");
    const auto spectrum = fl_transform(g_kernel(alpha - 1.0, spec), rho);
    const std::size_t j = spec.nearest_xi(xi);
    const double xi_grid = spec.xi(j);
    const Complex lhs = std::sqrt(2.0 * std::numbers::pi) * spectrum(j);
    const Complex rhs = std::pow(Complex(rho, xi_grid), -alpha);
    return {xi_grid, lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

}  // namespace fracspec
