#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>

#include "fracspec/error.hpp"
#include "fracspec/spectral.hpp"
#include "fracspec/timegrid.hpp"

namespace fracspec {

/**
 * An element of the Sobolev chain H_rho^alpha, held by its Fourier-Laplace
 * data. For alpha < 0 the element need not be a function (the Dirac source
 * lives in H_rho^{-1}), so only non-negative orders convert back to samples.
 */
class SobolevElement {
public:
    SobolevElement(SpectrumFunction spectrum, double alpha) : spectrum_(std::move(spectrum)), alpha_(alpha) {}

    const SpectrumFunction& spectrum() const { return spectrum_; }
    double alpha() const { return alpha_; }
    double rho() const { return spectrum_.rho(); }

    GridFunction to_grid() const {
        if (alpha_ < 0.0)
            throw InvalidArgument("SobolevElement of order " + std::to_string(alpha_) + " has no pointwise samples");
        return fl_inverse(spectrum_);
    }

private:
    SpectrumFunction spectrum_;
    double alpha_;
};

namespace detail {

inline void require_admissible(double rho, double alpha, const char* what) {
    if (alpha < 0.0 && rho == 0.0)
        throw InvalidArgument(std::string(what) + ": negative order " + std::to_string(alpha) +
                              " requires rho != 0 (the symbol is singular at xi = 0)");
}

}  // namespace detail

/// d^alpha on L^2_rho via the symbol z^alpha; alpha < 0 integrates.
inline GridFunction frac_derivative(const GridFunction& u, double rho, double alpha,
                                    Contour contour = Contour::causal) {
    detail::require_admissible(rho, alpha, "frac_derivative");
    if (alpha == 0.0) return u;
    return apply_symbol(symbols::power(alpha), u, rho, contour);
}

inline SobolevElement frac_derivative(const SobolevElement& u, double rho, double alpha,
                                      Contour contour = Contour::causal) {
    detail::require_admissible(rho, alpha, "frac_derivative");
    if (rho != u.rho())
        throw InvalidArgument("frac_derivative: element carries rho = " + std::to_string(u.rho()) +
                              ", requested " + std::to_string(rho));
    if (alpha == 0.0) return u;
    return {apply_symbol(symbols::power(alpha), u.spectrum(), contour), u.alpha() - alpha};
}

namespace detail {
inline void require_integral_args(double rho, double alpha) {
    if (!(rho > 0.0)) throw InvalidArgument("frac_integral: rho must be > 0, got " + std::to_string(rho));
    if (!(alpha > 0.0)) throw InvalidArgument("frac_integral: alpha must be > 0, got " + std::to_string(alpha));
}
}  // namespace detail

/// d^{-alpha}, bounded on L^2_rho with norm rho^{-alpha} for rho > 0.
inline GridFunction frac_integral(const GridFunction& u, double rho, double alpha,
                                  Contour contour = Contour::causal) {
    detail::require_integral_args(rho, alpha);
    return frac_derivative(u, rho, -alpha, contour);
}

inline SobolevElement frac_integral(const SobolevElement& u, double rho, double alpha,
                                    Contour contour = Contour::causal) {
    detail::require_integral_args(rho, alpha);
    return frac_derivative(u, rho, -alpha, contour);
}

/// ||u||_{rho,alpha} = (sum_j |z_j|^{2 alpha} |c_j|^2 dxi)^{1/2}
inline double sobolev_norm(const SpectrumFunction& s, double alpha, Contour contour = Contour::causal) {
    if (s.rho() == 0.0) throw InvalidArgument("sobolev_norm: rho must be nonzero");
    const auto& spec = s.spec();
    double acc = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        double row = 0.0;
        for (const auto& v : s.row(j)) row += std::norm(v);
        if (row == 0.0) continue;
        const double mod = std::abs(contour_point(spec.xi(j), s.rho(), spec.step(), contour));
        acc += std::pow(mod, 2.0 * alpha) * row;
    }
    return std::sqrt(acc * spec.dxi());
}

inline double sobolev_norm(const GridFunction& u, double rho, double alpha, Contour contour = Contour::causal) {
    if (rho == 0.0) throw InvalidArgument("sobolev_norm: rho must be nonzero");
    return sobolev_norm(fl_transform(u, rho), alpha, contour);
}

inline double sobolev_norm(const SobolevElement& u, double rho, double alpha, Contour contour = Contour::causal) {
    if (rho != u.rho()) throw InvalidArgument("sobolev_norm: rho does not match the element");
    return sobolev_norm(u.spectrum(), alpha, contour);
}

/// min_j |z_j|: the constant in ||u||_{alpha} <= rho_eff^{alpha-beta} ||u||_{beta}
/// (alpha < beta). Equals rho on the continuous contour, (2/h) tanh(rho h/2) on
/// the causal one; both attained at xi = 0.
inline double effective_rho(double rho, double h, Contour contour) {
    return std::abs(contour_point(0.0, rho, h, contour));
}

namespace detail {

// Cell integral (1/h) int_{t-h/2}^{t+h/2} s_+^beta / Gamma(beta+1) ds.
inline double g_cell_average(double t, double beta, double h) {
    const double p = beta + 1.0;
    const double lo = t - 0.5 * h;
    const double hi = t + 0.5 * h;
    const double norm = 1.0 / (h * std::tgamma(beta + 2.0));
    if (hi <= 0.0) return 0.0;
    if (lo <= 0.0) return norm * std::pow(hi, p);
    // hi^p - lo^p without cancellation.
    const double a = p * std::log(hi);
    const double b = p * std::log(lo);
    return norm * std::exp(b) * std::expm1(a - b);
}

}  // namespace detail

/**
 * g_beta(t) h_vec, g_beta(t) = t^beta chi_{t>0} / Gamma(beta+1), sampled as
 * cell averages over [t_k - h/2, t_k + h/2]. The average keeps each cell's
 * mass exact for the singular kernels (beta < 0), gives the jump mean 1/2
 * at t = 0 for beta = 0, and is the point value for beta = 1 away from 0.
 */
inline GridFunction g_kernel(double beta, const GridSpec& spec, std::span<const Complex> h_vec) {
    if (!(beta > -1.0))
        throw InvalidArgument("g_kernel: beta must be > -1 (kernel not locally integrable), got " +
                              std::to_string(beta));
    GridFunction out(spec, h_vec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double g = detail::g_cell_average(spec.t(k), beta, spec.step());
        for (std::size_t c = 0; c < h_vec.size(); ++c) out(k, c) = g * h_vec[c];
    }
    return out;
}

inline GridFunction g_kernel(double beta, const GridSpec& spec) {
    const State one{Complex(1.0)};
    return g_kernel(beta, spec, one);
}

/// y0 * delta_0 in H_rho^{-1}: the constant spectrum y0 / sqrt(2 pi).
inline SobolevElement dirac_spectrum(double rho, std::span<const Complex> y0, const GridSpec& spec) {
    if (!(rho > 0.0)) throw InvalidArgument("dirac_spectrum: rho must be > 0");
    SpectrumFunction s(spec, rho, y0.size());
    const double c = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    for (std::size_t j = 0; j < spec.size(); ++j)
        for (std::size_t i = 0; i < y0.size(); ++i) s(j, i) = c * y0[i];
    return {std::move(s), -1.0};
}

}  // namespace fracspec
