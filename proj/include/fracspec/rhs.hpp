#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>

#include "fracspec/error.hpp"
#include "fracspec/timegrid.hpp"

namespace fracspec {

/**
 * Pointwise right-hand side f(t, y) with its global Lipschitz constant c in
 * y and the weight floor rho0 above which t -> f(t, 0) is square integrable.
 *
 * Calls go through the causal extension f~: zero for t < 0, f for t > 0,
 * and the jump mean f(0, y)/2 at t = 0 itself.
 */
class RhsSpec {
public:
    using Function = std::function<State(double t, std::span<const Complex> y)>;

    RhsSpec(Function f, double lipschitz_c, double rho0, std::size_t dim, bool real_mode = false,
            std::string label = "custom")
        : f_(std::make_shared<Function>(std::move(f))),
          c_(lipschitz_c),
          rho0_(rho0),
          dim_(dim),
          real_mode_(real_mode),
          label_(std::move(label)) {
        if (!*f_) throw InvalidArgument("RhsSpec: empty function");
        if (!(lipschitz_c >= 0.0) || !std::isfinite(lipschitz_c))
            throw InvalidArgument("RhsSpec: Lipschitz constant must be finite and >= 0");
        if (!(rho0 > 0.0)) throw InvalidArgument("RhsSpec: rho0 must be > 0");
        if (dim == 0) throw InvalidArgument("RhsSpec: dim must be >= 1");
        spot_check_lipschitz();
    }

    double lipschitz() const { return c_; }
    double rho0() const { return rho0_; }
    std::size_t dim() const { return dim_; }
    bool real_mode() const { return real_mode_; }
    const std::string& label() const { return label_; }

    /// f(t, y) without the causal cut-off (real parts taken in real mode).
    State raw(double t, std::span<const Complex> y) const {
        if (y.size() != dim_) throw InvalidArgument("RhsSpec: state has wrong dimension");
        State out;
        if (real_mode_) {
            State re(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) re[i] = y[i].real();
            out = (*f_)(t, re);
        } else {
            out = (*f_)(t, y);
        }
        if (out.size() != dim_) throw InvalidArgument("RhsSpec: function returned wrong dimension");
        return out;
    }

    /// f~(t, y).
    State operator()(double t, std::span<const Complex> y) const {
        if (t < -kJumpTolerance) return State(dim_, Complex(0.0));
        State out = raw(std::max(t, 0.0), y);
        if (t <= kJumpTolerance)
            for (auto& v : out) v *= 0.5;
        return out;
    }

    /// f(t, y) + a(t), with a linearly interpolated between its nodes and zero
    /// outside its window. The Lipschitz constant is unchanged.
    RhsSpec with_forcing(const GridFunction& a) const {
        if (a.dim() != dim_) throw InvalidArgument("with_forcing: forcing has wrong dimension");
        auto forcing = std::make_shared<GridFunction>(a);
        auto base = f_;
        Function g = [base, forcing](double t, std::span<const Complex> y) {
            State out = (*base)(t, y);
            const auto& spec = forcing->spec();
            const double x = (t - spec.t_min()) / spec.step();
            if (x < 0.0 || x > double(spec.size() - 1)) return out;
            const auto k = std::min<std::size_t>(std::size_t(x), spec.size() - 2);
            const double frac = x - double(k);
            for (std::size_t i = 0; i < out.size(); ++i)
                out[i] += (1.0 - frac) * (*forcing)(k, i) + frac * (*forcing)(k + 1, i);
            return out;
        };
        return RhsSpec(std::move(g), c_, rho0_, dim_, real_mode_, label_ + "+forcing");
    }

private:
    static constexpr double kJumpTolerance = 1e-12;

    void spot_check_lipschitz() const {
        std::mt19937_64 rng(0x5eed);
        std::uniform_real_distribution<double> time(0.0, 10.0);
        std::uniform_real_distribution<double> coord(-2.0, 2.0);
        State y1(dim_), y2(dim_);
        for (int trial = 0; trial < 64; ++trial) {
            const double t = time(rng);
            for (std::size_t i = 0; i < dim_; ++i) {
                y1[i] = {coord(rng), coord(rng)};
                y2[i] = y1[i] + Complex(0.25 * coord(rng), 0.25 * coord(rng));
            }
            const State f1 = raw(t, y1);
            const State f2 = raw(t, y2);
            State df(dim_), dy(dim_);
            for (std::size_t i = 0; i < dim_; ++i) {
                df[i] = f1[i] - f2[i];
                dy[i] = real_mode_ ? Complex((y1[i] - y2[i]).real()) : y1[i] - y2[i];
            }
            if (euclidean_norm(df) > c_ * euclidean_norm(dy) * (1.0 + 1e-9) + 1e-300)
                throw InvalidArgument("RhsSpec '" + label_ + "': declared Lipschitz constant " + std::to_string(c_) +
                                      " violated at t = " + std::to_string(t));
        }
    }

    std::shared_ptr<Function> f_;
    double c_;
    double rho0_;
    std::size_t dim_;
    bool real_mode_;
    std::string label_;
};

namespace rhs_catalogue {

inline RhsSpec zero(std::size_t dim = 1, double rho0 = 1.0) {
    return RhsSpec([dim](double, std::span<const Complex>) { return State(dim, Complex(0.0)); }, 0.0, rho0, dim,
                   false, "zero");
}

/// f = lambda y; c = |lambda|.
inline RhsSpec linear(Complex lambda, std::size_t dim = 1, double rho0 = 1.0) {
    return RhsSpec(
        [lambda](double, std::span<const Complex> y) {
            State out(y.begin(), y.end());
            for (auto& v : out) v *= lambda;
            return out;
        },
        std::abs(lambda), rho0, dim, false, "linear");
}

/// f = lambda p (1 - p) with p = Re y clipped to [0, 1], applied per
/// component. On the clip box |d/dp p(1-p)| <= 1, so c = |lambda|.
inline RhsSpec logistic(double lambda, std::size_t dim = 1, double rho0 = 1.0) {
    return RhsSpec(
        [lambda](double, std::span<const Complex> y) {
            State out(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double p = std::clamp(y[i].real(), 0.0, 1.0);
                out[i] = lambda * p * (1.0 - p);
            }
            return out;
        },
        std::abs(lambda), rho0, dim, true, "logistic");
}

/// f = a(t) + lambda y; c = |lambda|.
inline RhsSpec forced(const GridFunction& a, Complex lambda, double rho0 = 1.0) {
    return linear(lambda, a.dim(), rho0).with_forcing(a);
}

}  // namespace rhs_catalogue

/// F(u)(t_k) = f~(t_k, u_k + shift).
inline GridFunction nemytskii(const RhsSpec& rhs, const GridFunction& u, std::span<const Complex> shift) {
    if (u.dim() != rhs.dim() || shift.size() != rhs.dim())
        throw InvalidArgument("nemytskii: dimension mismatch between rhs, u and shift");
    GridFunction out(u.spec(), u.dim());
    State y(u.dim());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto row = u.row(k);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = row[i] + shift[i];
        const State f = rhs(u.spec().t(k), y);
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag()))
                throw NonFiniteValue("nemytskii: right-hand side returned a non-finite value", k);
            out(k, i) = f[i];
        }
    }
    return out;
}

inline GridFunction nemytskii(const RhsSpec& rhs, const GridFunction& u) {
    const State zero(rhs.dim(), Complex(0.0));
    return nemytskii(rhs, u, zero);
}

/**
 * Smallest weight (not below rho0) at which d^{-alpha} composed with a
 * c-Lipschitz map from H^gamma_rho has Lipschitz constant c rho^{gamma-alpha}
 * <= q_target.
 */
inline double contraction_rho(double c, double alpha, double gamma, double rho0, double q_target) {
    if (!(alpha > gamma))
        throw InvalidArgument("contraction_rho: need alpha > gamma for the weight to buy contraction");
    if (!(q_target > 0.0 && q_target < 1.0)) throw InvalidArgument("contraction_rho: q_target must lie in (0, 1)");
    if (!(rho0 > 0.0)) throw InvalidArgument("contraction_rho: rho0 must be > 0");
    if (!(c >= 0.0)) throw InvalidArgument("contraction_rho: c must be >= 0");
    if (c == 0.0) return rho0;
    return std::max(rho0, std::pow(c / q_target, 1.0 / (alpha - gamma)));
}

}  // namespace fracspec
