#pragma once

#include <cmath>
#include <random>

#include "fracspec/timegrid.hpp"

// Test signals: smooth, compactly supported, well inside the window.

namespace fracspec::inputs {

/// exp(-1/(1-x^2)) on |x| < 1, x = (t - center)/radius; C-infinity with compact support.
inline double smooth_bump(double t, double center, double radius) {
    const double x = (t - center) / radius;
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
}

inline GridFunction gaussian(const GridSpec& spec, double center, double width, double cutoff_before = -INFINITY) {
    return sample(
        [&](double t) {
            if (t < cutoff_before) return 0.0;
            const double x = (t - center) / width;
            return std::exp(-0.5 * x * x);
        },
        spec);
}

/// sin(omega t) times a smooth bump.
inline GridFunction sin_bump(const GridSpec& spec, double omega, double center, double radius) {
    return sample([&](double t) { return std::sin(omega * t) * smooth_bump(t, center, radius); }, spec);
}

/// Sum of `terms` smooth bumps with random complex amplitudes, centers in
/// [lo, hi] and radii in [0.5, 3], clipped so the support stays in t > 0.
template <class Rng>
GridFunction random_smooth(const GridSpec& spec, Rng& rng, std::size_t dim = 1, int terms = 3, double lo = 1.0,
                           double hi = 20.0) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::uniform_real_distribution<double> where(lo, hi);
    std::uniform_real_distribution<double> size(0.5, 3.0);
    GridFunction out(spec, dim);
    for (std::size_t c = 0; c < dim; ++c)
        for (int i = 0; i < terms; ++i) {
            const Complex a(amp(rng), amp(rng));
            const double center = where(rng);
            const double radius = std::min(size(rng), center);
            for (std::size_t k = 0; k < spec.size(); ++k) out(k, c) += a * smooth_bump(spec.t(k), center, radius);
        }
    return out;
}

/// Dense random samples, no smoothness; for identities that hold exactly on the grid.
template <class Rng>
GridFunction random_samples(const GridSpec& spec, Rng& rng, std::size_t dim = 1) {
    std::normal_distribution<double> g(0.0, 1.0);
    GridFunction out(spec, dim);
    for (auto& v : out.values()) v = Complex(g(rng), g(rng));
    return out;
}

}  // namespace fracspec::inputs
