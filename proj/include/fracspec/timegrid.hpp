#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fracspec/error.hpp"

namespace fracspec {

using Complex = std::complex<double>;

/// A point of the state space C^d.
using State = std::vector<Complex>;

inline double euclidean_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

/**
 * Uniform sampling of the time axis: nodes t_k = t_min + k*h, k = 0..n-1,
 * covering the half-open window [t_min, t_min + n*h).
 *
 * n must be a power of two (>= 8) so that the dual frequency grid contains
 * xi = 0 and the Nyquist bin, and so the transform can use a radix-2 FFT.
 */
class GridSpec {
public:
    GridSpec(double t_min, std::size_t n, double h) : t_min_(t_min), n_(n), h_(h) {
        if (!std::isfinite(t_min)) throw InvalidArgument("GridSpec: t_min must be finite");
        if (n < 8 || !std::has_single_bit(n))
            throw InvalidArgument("GridSpec: n must be a power of two >= 8, got " + std::to_string(n));
        if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("GridSpec: step h must be positive");
    }

    /// Solver window: a left guard band of 4h*ceil(n/16), the rest on t >= 0.
    static GridSpec canonical(std::size_t n, double h) {
        const double pad = 4.0 * h * static_cast<double>((n + 15) / 16);
        return GridSpec(-pad, n, h);
    }

    double t_min() const { return t_min_; }
    std::size_t size() const { return n_; }
    double step() const { return h_; }
    double t(std::size_t k) const { return t_min_ + static_cast<double>(k) * h_; }
    double t_end() const { return t(n_); }
    double length() const { return static_cast<double>(n_) * h_; }

    /// Frequency spacing of the dual grid, 2*pi/(n*h).
    double dxi() const { return 2.0 * std::numbers::pi / length(); }
    /// Signed frequency index of row j in fftshift order: j - n/2.
    std::ptrdiff_t signed_index(std::size_t j) const {
        return static_cast<std::ptrdiff_t>(j) - static_cast<std::ptrdiff_t>(n_ / 2);
    }
    double xi(std::size_t j) const { return static_cast<double>(signed_index(j)) * dxi(); }
    /// Row index of the frequency closest to `xi_value`.
    std::size_t nearest_xi(double xi_value) const {
        const double r = std::round(xi_value / dxi()) + static_cast<double>(n_ / 2);
        return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(n_ - 1)));
    }

    /// Index of the node closest to t (clamped to the window).
    std::size_t nearest_node(double t) const {
        const double r = std::round((t - t_min_) / h_);
        return static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(n_ - 1)));
    }

    /// Grid of sigma_{-1}: nodes -t_k in increasing order.
    GridSpec mirrored() const { return GridSpec(-(t_min_ + length()) + h_, n_, h_); }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double t_min_;
    std::size_t n_;
    double h_;
};

/**
 * Sampled C^d-valued function on a GridSpec; values are stored row-major,
 * one row of `dim` entries per node.
 */
class GridFunction {
public:
    GridFunction(GridSpec spec, std::size_t dim) : spec_(spec), dim_(dim), values_(spec.size() * dim) {
        if (dim == 0) throw InvalidArgument("GridFunction: dim must be >= 1");
    }

    GridFunction(GridSpec spec, std::size_t dim, std::vector<Complex> values)
        : spec_(spec), dim_(dim), values_(std::move(values)) {
        if (dim == 0) throw InvalidArgument("GridFunction: dim must be >= 1");
        if (values_.size() != spec.size() * dim)
            throw InvalidArgument("GridFunction: expected " + std::to_string(spec.size() * dim) +
                                  " values, got " + std::to_string(values_.size()));
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag()))
                throw NonFiniteValue("GridFunction: non-finite value", i / dim);
    }

    const GridSpec& spec() const { return spec_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return spec_.size(); }

    Complex& operator()(std::size_t k, std::size_t c = 0) { return values_[k * dim_ + c]; }
    const Complex& operator()(std::size_t k, std::size_t c = 0) const { return values_[k * dim_ + c]; }

    std::span<Complex> row(std::size_t k) { return {values_.data() + k * dim_, dim_}; }
    std::span<const Complex> row(std::size_t k) const { return {values_.data() + k * dim_, dim_}; }

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }

    bool compatible(const GridFunction& other) const { return spec_ == other.spec_ && dim_ == other.dim_; }

    GridFunction& operator+=(const GridFunction& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        require_compatible(o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    GridFunction& operator*=(Complex s) {
        for (auto& v : values_) v *= s;
        return *this;
    }
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(Complex s, GridFunction a) { return a *= s; }

    double max_abs() const {
        double m = 0.0;
        for (std::size_t k = 0; k < size(); ++k) m = std::max(m, euclidean_norm(row(k)));
        return m;
    }

private:
    void require_compatible(const GridFunction& o) const {
        if (!compatible(o)) throw InvalidArgument("GridFunction: incompatible grids or dimensions");
    }

    GridSpec spec_;
    std::size_t dim_;
    std::vector<Complex> values_;
};

/**
 * Evaluate f at every node. f may return a Complex (dim must be 1), a real
 * number, or any range of Complex of length dim.
 */
template <class F>
GridFunction sample(F&& f, const GridSpec& spec, std::size_t dim = 1) {
    GridFunction out(spec, dim);
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double t = spec.t(k);
        auto value = f(t);
        using R = std::decay_t<decltype(value)>;
        if constexpr (std::is_arithmetic_v<R> || std::is_same_v<R, Complex>) {
            if (dim != 1) throw InvalidArgument("sample: scalar function requires dim == 1");
            out(k) = Complex(value);
        } else {
            if (std::size(value) != dim) throw InvalidArgument("sample: function returned wrong dimension");
            std::size_t c = 0;
            for (const auto& v : value) out(k, c++) = Complex(v);
        }
        for (const auto& v : out.row(k))
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteValue("sample: non-finite value", k);
    }
    return out;
}

/// Multiply by e^{-rho t}; the isometry L^2_rho -> L^2.
inline GridFunction exp_weight(const GridFunction& u, double rho) {
    GridFunction out = u;
    if (rho == 0.0) return out;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double w = std::exp(-rho * u.spec().t(k));
        for (auto& v : out.row(k)) v *= w;
    }
    return out;
}

/// Left-rectangle L^2 norm with no weight.
inline double l2_norm(const GridFunction& u) {
    double s = 0.0;
    for (const auto& v : u.values()) s += std::norm(v);
    return std::sqrt(s * u.spec().step());
}

/// (sum_k |u_k|^2 e^{-2 rho t_k} h)^{1/2}
inline double weighted_norm(const GridFunction& u, double rho) { return l2_norm(exp_weight(u, rho)); }

/// sigma_{-1}: result(t) = u(-t) on the mirrored grid.
inline GridFunction reflect(const GridFunction& u) {
    GridFunction out(u.spec().mirrored(), u.dim());
    const std::size_t n = u.size();
    for (std::size_t k = 0; k < n; ++k)
        std::ranges::copy(u.row(n - 1 - k), out.row(k).begin());
    return out;
}

enum class Side { before, after };

/// Keep t <= a (before) or t >= a (after); the node at t == a is kept either way.
inline GridFunction mask_support(const GridFunction& u, double a, Side side) {
    GridFunction out = u;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double t = u.spec().t(k);
        const bool drop = side == Side::before ? t > a : t < a;
        if (drop)
            for (auto& v : out.row(k)) v = 0.0;
    }
    return out;
}

/**
 * Grid representative of y0 * chi_{t > a}. The node at the jump carries the
 * mean of the one-sided limits, y0/2; this is the value for which the
 * trapezoidal contour of the spectral calculus maps the constant Dirac
 * spectrum exactly onto the step.
 */
inline GridFunction heaviside(const GridSpec& spec, std::span<const Complex> y0, double a = 0.0) {
    GridFunction out(spec, y0.size());
    const double tie = 1e-9 * spec.step();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double t = spec.t(k);
        const double scale = t > a + tie ? 1.0 : (std::abs(t - a) <= tie ? 0.5 : 0.0);
        for (std::size_t c = 0; c < y0.size(); ++c) out(k, c) = scale * y0[c];
    }
    return out;
}

inline GridFunction heaviside(const GridSpec& spec, double a = 0.0) {
    const State one{Complex(1.0)};
    return heaviside(spec, one, a);
}

/**
 * Right end of the time range on which unweighted values are trustworthy.
 *
 * All spectral work happens on e^{-rho t} u; an error of size `floor` there
 * (rounding, or a fixed-point stopping tolerance) comes back multiplied by
 * e^{rho t}. For data of unit scale the absolute error reaches `tolerance`
 * at t = ln(tolerance/floor)/rho.
 */
inline double reliable_until(double rho, double tolerance = 1e-8,
                             double floor = std::numeric_limits<double>::epsilon()) {
    if (rho <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log(tolerance / std::max(floor, std::numeric_limits<double>::epsilon())) / rho;
}

}  // namespace fracspec
