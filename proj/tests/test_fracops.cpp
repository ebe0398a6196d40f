#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace fracspec;
using support::desk_grid;
using support::relative_weighted_distance;

namespace {

double at(const GridFunction& u, double t) { return u(u.spec().nearest_node(t)).real(); }

// Composite Gauss-Legendre (5 points) on [a, b] with m panels.
template <class F>
double integrate(F f, double a, double b, int m = 400) {
    static const double x[] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                               0.9061798459386640};
    static const double w[] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                               0.2369268850561891};
    double acc = 0.0;
    const double step = (b - a) / m;
    for (int p = 0; p < m; ++p) {
        const double mid = a + (p + 0.5) * step;
        for (int i = 0; i < 5; ++i) acc += w[i] * f(mid + 0.5 * step * x[i]);
    }
    return acc * 0.5 * step;
}

}  // namespace

TEST(FracDerivative, OrderZeroIsIdentity) {
    const auto spec = desk_grid();
    std::mt19937_64 rng(1);
    const auto u = inputs::random_samples(spec, rng);
    const auto v = frac_derivative(u, 1.0, 0.0);
    for (std::size_t k = 0; k < spec.size(); ++k) EXPECT_EQ(v(k), u(k));
}

TEST(FracDerivative, NegativeOrderNeedsNonzeroRho) {
    const auto spec = desk_grid();
    const auto u = heaviside(spec);
    EXPECT_THROW(frac_derivative(u, 0.0, -0.5), InvalidArgument);
    EXPECT_THROW(frac_integral(u, 0.0, 0.5), InvalidArgument);
    EXPECT_THROW(frac_integral(u, 1.0, 0.0), InvalidArgument);
}

TEST(FracDerivative, FirstOrderMatchesAnalyticDerivative) {
    const auto spec = desk_grid();
    const auto u = inputs::sin_bump(spec, 2.0, 5.0, 3.0);
    const auto d = frac_derivative(u, 1.0, 1.0);
    const auto exact = sample(
        [](double t) {
            const double x = (t - 5.0) / 3.0;
            if (std::abs(x) >= 1.0) return 0.0;
            const double b = std::exp(-1.0 / (1.0 - x * x));
            const double db = b * (-2.0 * x / ((1.0 - x * x) * (1.0 - x * x))) / 3.0;
            return 2.0 * std::cos(2.0 * t) * b + std::sin(2.0 * t) * db;
        },
        spec);
    // Second order in h on the trapezoidal contour.
    EXPECT_LT(relative_weighted_distance(d, exact, 1.0), 5e-4);
}

TEST(FracIntegral, HeavisideClosedForm) {
    const auto spec = desk_grid();
    EXPECT_NEAR(at(frac_integral(heaviside(spec), 1.0, 0.5), 1.0), 2.0 / std::sqrt(std::numbers::pi), 1.2e-3);
    EXPECT_NEAR(at(frac_integral(heaviside(spec), 1.0, 1.0), 2.0), 2.0, 2e-3);
    EXPECT_NEAR(at(frac_integral(heaviside(spec), 1.0, 0.25), 1.0), 1.0 / 0.9064024770554771, 1.2e-3);
}

TEST(FracIntegral, KernelShift) {
    const auto spec = desk_grid();
    for (auto [alpha, beta] : {std::pair{0.5, 0.0}, std::pair{0.3, 0.5}, std::pair{0.5, -0.5}}) {
        const auto lhs = frac_integral(g_kernel(beta, spec), 0.5, alpha);
        const auto rhs = g_kernel(alpha + beta, spec);
        for (double t : {10 * spec.step(), 0.5, 2.0, 10.0}) {
            const double e = at(rhs, t);
            EXPECT_NEAR(at(lhs, t), e, 1e-2 * std::abs(e)) << "alpha " << alpha << " beta " << beta << " t " << t;
        }
    }
}

TEST(FracOps, SemigroupAndInversePair) {
    const auto spec = desk_grid();
    std::mt19937_64 rng(2);
    const auto u = inputs::random_smooth(spec, rng);
    const auto lhs = frac_derivative(frac_derivative(u, 1.0, 0.3), 1.0, 0.4);
    EXPECT_LT(relative_weighted_distance(lhs, frac_derivative(u, 1.0, 0.7), 1.0), 1e-10);
    for (double alpha : {0.3, 0.7, 1.0}) {
        const auto back = frac_derivative(frac_integral(u, 2.0, alpha), 2.0, alpha);
        EXPECT_LT(relative_weighted_distance(back, u, 2.0), 1e-10) << alpha;
    }
}

TEST(SobolevNorm, OrderZeroIsWeightedNorm) {
    const auto spec = desk_grid();
    std::mt19937_64 rng(3);
    const auto u = inputs::random_smooth(spec, rng);
    EXPECT_NEAR(sobolev_norm(u, 1.5, 0.0) / weighted_norm(u, 1.5), 1.0, 1e-10);
    EXPECT_THROW(sobolev_norm(u, 0.0, 0.5), InvalidArgument);
}

TEST(SobolevNorm, ChainIsometryAndEmbedding) {
    const auto spec = desk_grid();
    std::mt19937_64 rng(4);
    const auto u = inputs::random_smooth(spec, rng);
    EXPECT_EQ(check_chain_isometry(u, 1.0, 0.3, 0.0), 0.0);
    EXPECT_LT(check_chain_isometry(u, 1.0, 0.0, 0.5), 1e-10);
    EXPECT_LT(check_chain_isometry(u, 2.0, -0.5, -0.5), 1e-10);
    for (auto contour : {Contour::continuous, Contour::causal})
        for (double rho : {1.0, 2.0, 4.0}) {
            const auto s = fl_transform(u, rho);
            const double r = effective_rho(rho, spec.step(), contour);
            EXPECT_LE(sobolev_norm(s, -1.0, contour), sobolev_norm(s, 0.0, contour) / r + 1e-10);
            EXPECT_LE(sobolev_norm(s, 0.0, contour), std::pow(r, -0.5) * sobolev_norm(s, 0.5, contour) + 1e-10);
        }
}

TEST(SobolevElement, NegativeOrderHasNoSamples) {
    const auto spec = desk_grid();
    const State y0{1.0};
    const auto d = dirac_spectrum(1.0, y0, spec);
    EXPECT_DOUBLE_EQ(d.alpha(), -1.0);
    EXPECT_THROW(d.to_grid(), InvalidArgument);
    EXPECT_THROW(frac_derivative(d, 2.0, 0.5), InvalidArgument);  // rho mismatch
}

TEST(Dirac, IntegratesToTheStep) {
    const auto spec = desk_grid();
    const State y0{Complex(2.0, -1.0)};
    const auto step = frac_derivative(dirac_spectrum(1.0, y0, spec), 1.0, -1.0);
    EXPECT_DOUBLE_EQ(step.alpha(), 0.0);
    const auto y = step.to_grid();
    const auto expected = heaviside(spec, y0);
    // Rounding grows like eps e^{rho t}; stop well inside the horizon.
    double worst = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
        if (spec.t(k) > reliable_until(1.0, 1e-10)) break;
        worst = std::max(worst, std::abs(y(k) - expected(k)));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(Dirac, ZeroDataAndNorm) {
    const auto spec = desk_grid();
    const State zero{0.0};
    EXPECT_EQ(dirac_spectrum(1.0, zero, spec).spectrum().norm(), 0.0);
    const State y0{1.0};
    const double n = sobolev_norm(dirac_spectrum(1.0, y0, spec), 1.0, -1.0, Contour::continuous);
    EXPECT_NEAR(n, 1.0 / std::sqrt(2.0), 1e-2);
}

TEST(GKernel, PointValues) {
    const GridSpec spec(-1.0, 512, 1.0 / 64.0);
    const auto g0 = g_kernel(0.0, spec);
    EXPECT_DOUBLE_EQ(g0(spec.nearest_node(-0.5)).real(), 0.0);
    EXPECT_DOUBLE_EQ(g0(spec.nearest_node(0.0)).real(), 0.5);
    EXPECT_NEAR(g0(spec.nearest_node(1.0)).real(), 1.0, 1e-15);
    const State hv{Complex(1.0, 2.0)};
    const auto g1 = g_kernel(1.0, spec, hv);
    EXPECT_LT(std::abs(g1(spec.nearest_node(3.0)) - 3.0 * hv[0]), 1e-12);
    const auto gm = g_kernel(-0.5, spec);
    EXPECT_NEAR(gm(spec.nearest_node(1.0)).real(), 1.0 / std::sqrt(std::numbers::pi), 1e-4);
    EXPECT_THROW(g_kernel(-1.0, spec), InvalidArgument);
}

TEST(GKernel, CellAveragesMatchQuadrature) {
    const GridSpec spec(-0.25, 64, 1.0 / 16.0);
    const double h = spec.step();
    for (double beta : {-0.6, -0.3, 0.4, 1.5}) {
        const auto g = g_kernel(beta, spec);
        for (std::size_t k : {4u, 5u, 9u, 40u}) {
            const double t = spec.t(k);
            const double lo = std::max(0.0, t - h / 2), hi = t + h / 2;
            // Substitute s = x^(1/(beta+1)) to remove the endpoint singularity.
            const double p = beta + 1.0;
            const double exact =
                (std::pow(hi, p) - std::pow(lo, p)) / (p * std::tgamma(beta + 1.0)) / h;
            const double quad = integrate(
                                    [&](double s) { return std::pow(s, beta) / std::tgamma(beta + 1.0); },
                                    lo == 0.0 ? 1e-300 : lo, hi, 2000) /
                                h;
            EXPECT_NEAR(g(k).real(), exact, 1e-12 * std::max(1.0, exact)) << beta << " " << k;
            if (lo > 0.0) EXPECT_NEAR(g(k).real(), quad, 1e-10 * exact) << beta << " " << k;
        }
    }
}
