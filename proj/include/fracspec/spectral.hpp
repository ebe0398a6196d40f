#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fracspec/error.hpp"
#include "fracspec/fft.hpp"
#include "fracspec/timegrid.hpp"

namespace fracspec {

/**
 * Where on the line Re z = rho a symbol is sampled for frequency xi.
 *
 * continuous: z = i xi + rho, the exact spectral variable of d/dt on
 *   L^2_rho. Algebraic identities (norms, embeddings) hold with rho itself.
 * causal: z = (2/h) tanh((i xi + rho) h / 2), the trapezoidal-rule image of
 *   the same point. It agrees with i xi + rho to O((|z| h)^2), depends on z
 *   only through e^{-zh}, and therefore produces operators whose
 *   unweighted kernels are exactly causal and independent of rho. Operators
 *   applied to sampled data default to this contour.
 */
enum class Contour { continuous, causal };

inline Complex contour_point(double xi, double rho, double h, Contour contour) {
    const Complex z(rho, xi);
    if (contour == Contour::continuous) return z;
    return (2.0 / h) * std::tanh(0.5 * h * z);
}

inline const char* to_string(Contour c) { return c == Contour::continuous ? "continuous" : "causal"; }

/**
 * Fourier-Laplace coefficients on the dual grid, rows in fftshift order
 * (row j holds xi_j = (j - n/2) * dxi).
 */
class SpectrumFunction {
public:
    SpectrumFunction(GridSpec spec, double rho, std::size_t dim)
        : spec_(spec), rho_(rho), dim_(dim), coeffs_(spec.size() * dim) {
        if (dim == 0) throw InvalidArgument("SpectrumFunction: dim must be >= 1");
    }

    const GridSpec& spec() const { return spec_; }
    double rho() const { return rho_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return spec_.size(); }
    double xi(std::size_t j) const { return spec_.xi(j); }

    Complex& operator()(std::size_t j, std::size_t c = 0) { return coeffs_[j * dim_ + c]; }
    const Complex& operator()(std::size_t j, std::size_t c = 0) const { return coeffs_[j * dim_ + c]; }
    std::span<const Complex> row(std::size_t j) const { return {coeffs_.data() + j * dim_, dim_}; }
    std::span<const Complex> values() const { return coeffs_; }

    /// (sum_j |c_j|^2 dxi)^{1/2}; equals weighted_norm of the origin.
    double norm() const {
        double s = 0.0;
        for (const auto& v : coeffs_) s += std::norm(v);
        return std::sqrt(s * spec_.dxi());
    }

private:
    GridSpec spec_;
    double rho_;
    std::size_t dim_;
    std::vector<Complex> coeffs_;
};

/// A function of d/dt given by its values F(z) on the spectral line.
struct MultiplierSymbol {
    std::function<Complex(Complex)> eval;
    std::string label;
};

namespace symbols {

inline MultiplierSymbol identity() {
    return {[](Complex) { return Complex(1.0); }, "1"};
}

/// z^alpha on the principal branch.
inline MultiplierSymbol power(double alpha) {
    std::ostringstream label;
    label << "z^" << alpha;
    if (alpha == 0.0) return {[](Complex) { return Complex(1.0); }, label.str()};
    return {[alpha](Complex z) { return std::pow(z, alpha); }, label.str()};
}

inline MultiplierSymbol product(MultiplierSymbol f, MultiplierSymbol g) {
    auto label = "(" + f.label + ")*(" + g.label + ")";
    return {[f = std::move(f.eval), g = std::move(g.eval)](Complex z) { return f(z) * g(z); }, std::move(label)};
}

}  // namespace symbols

namespace detail {

inline std::vector<Complex> phase_table(const GridSpec& spec) {
    // e^{-i xi_j t_min}; the transform works relative to node 0.
    std::vector<Complex> phase(spec.size());
    for (std::size_t j = 0; j < spec.size(); ++j) phase[j] = std::polar(1.0, -spec.xi(j) * spec.t_min());
    return phase;
}

inline std::size_t fft_bin(const GridSpec& spec, std::size_t row) {
    const std::size_t n = spec.size();
    return (row + n / 2) % n;
}

inline void check_weight_range(const GridSpec& spec, double rho, double sign, const char* what) {
    if (rho == 0.0) return;
    for (double t : {spec.t_min(), spec.t(spec.size() - 1)})
        if (sign * rho * t > 700.0)
            throw NumericFailure(std::string(what) + ": exponential weight overflows on this window (rho*t = " +
                                 std::to_string(rho * t) + "); window and weight are incompatible");
}

inline bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace detail

/// L_rho u: coeffs_j = h/sqrt(2 pi) sum_k e^{-rho t_k} u_k e^{-i xi_j t_k}.
inline SpectrumFunction fl_transform(const GridFunction& u, double rho) {
    const auto& spec = u.spec();
    detail::check_weight_range(spec, rho, -1.0, "fl_transform");
    const std::size_t n = spec.size();
    const double scale = spec.step() / std::sqrt(2.0 * std::numbers::pi);
    const auto phase = detail::phase_table(spec);
    std::vector<double> weight(n);
    for (std::size_t k = 0; k < n; ++k) weight[k] = rho == 0.0 ? 1.0 : std::exp(-rho * spec.t(k));

    SpectrumFunction out(spec, rho, u.dim());
    std::vector<Complex> buf(n);
    for (std::size_t c = 0; c < u.dim(); ++c) {
        for (std::size_t k = 0; k < n; ++k) buf[k] = weight[k] * u(k, c);
        detail::fft_forward(buf);
        for (std::size_t j = 0; j < n; ++j) out(j, c) = scale * phase[j] * buf[detail::fft_bin(spec, j)];
    }
    return out;
}

/// Exact discrete inverse of fl_transform.
inline GridFunction fl_inverse(const SpectrumFunction& spectrum) {
    const auto& spec = spectrum.spec();
    const double rho = spectrum.rho();
    detail::check_weight_range(spec, rho, 1.0, "fl_inverse");
    const std::size_t n = spec.size();
    const double scale = std::sqrt(2.0 * std::numbers::pi) / spec.length();
    const auto phase = detail::phase_table(spec);

    std::vector<Complex> values(n * spectrum.dim());
    std::vector<Complex> buf(n);
    for (std::size_t c = 0; c < spectrum.dim(); ++c) {
        for (std::size_t j = 0; j < n; ++j) buf[detail::fft_bin(spec, j)] = std::conj(phase[j]) * spectrum(j, c);
        detail::fft_backward(buf);
        for (std::size_t k = 0; k < n; ++k) {
            const double w = rho == 0.0 ? 1.0 : std::exp(rho * spec.t(k));
            const Complex v = scale * w * buf[k];
            if (!detail::finite(v)) throw NonFiniteValue("fl_inverse: re-weighting overflowed", k);
            values[k * spectrum.dim() + c] = v;
        }
    }
    return GridFunction(spec, spectrum.dim(), std::move(values));
}

/// Multiply every row of the spectrum by F(z_j).
inline SpectrumFunction apply_symbol(const MultiplierSymbol& symbol, SpectrumFunction spectrum,
                                     Contour contour = Contour::causal) {
    const auto& spec = spectrum.spec();
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double xi = spec.xi(j);
        const Complex f = symbol.eval(contour_point(xi, spectrum.rho(), spec.step(), contour));
        if (!detail::finite(f))
            throw NumericFailure("symbol " + symbol.label + " is not finite at xi = " + std::to_string(xi) +
                                 " (rho = " + std::to_string(spectrum.rho()) + ")");
        for (std::size_t c = 0; c < spectrum.dim(); ++c) spectrum(j, c) *= f;
    }
    return spectrum;
}

/// F(d/dt) on L^2_rho: fl_inverse(F(z_j) * fl_transform(u, rho)).
inline GridFunction apply_symbol(const MultiplierSymbol& symbol, const GridFunction& u, double rho,
                                 Contour contour = Contour::causal) {
    return fl_inverse(apply_symbol(symbol, fl_transform(u, rho), contour));
}

/// max_j |F(z_j)|: the sup of the symbol over the sampled line (a lower
/// bound for the essential sup; exact when the sup is attained on the grid).
inline double operator_norm(const MultiplierSymbol& symbol, double rho, const GridSpec& spec,
                            Contour contour = Contour::causal) {
    double m = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double a = std::abs(symbol.eval(contour_point(spec.xi(j), rho, spec.step(), contour)));
        if (std::isnan(a) || std::isinf(a)) return std::numeric_limits<double>::infinity();
        m = std::max(m, a);
    }
    return m;
}

/**
 * xi -> -xi on the spectrum; the result is labelled with the mirrored grid
 * and weight -rho, where sigma_{-1} L_rho f = L_{-rho} sigma_{-1} f lives.
 * The Nyquist row has no partner on the grid; it is mapped with the exact
 * alias relation c(xi + 2 pi/h) = c(xi) e^{-2 pi i t_min/h}.
 */
inline SpectrumFunction reflect_xi(const SpectrumFunction& s) {
    const auto& spec = s.spec();
    const std::size_t n = spec.size();
    SpectrumFunction out(spec.mirrored(), -s.rho(), s.dim());
    const Complex alias = std::polar(1.0, -2.0 * std::numbers::pi * spec.t_min() / spec.step());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t c = 0; c < s.dim(); ++c)
            out(j, c) = j == 0 ? alias * s(0, c) : s(n - j, c);
    return out;
}

}  // namespace fracspec
