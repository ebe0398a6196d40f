#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "fracspec/fracops.hpp"
#include "fracspec/inputs.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/timegrid.hpp"

namespace fracspec {

struct BenchRow {
    std::size_t n;
    double spectral_seconds;  // frac_integral, median seconds per call
    double oracle_seconds;    // rl_convolution, median per call
};

struct BenchOptions {
    std::vector<std::size_t> sizes{1024, 2048, 4096, 8192, 16384};
    int repeats = 11;
    double alpha = 0.5;
    double rho = 1.0;
    double h = 1.0 / 64.0;
    // Short calls are looped until one sample takes at least this long.
    double min_sample_seconds = 0.05;
};

namespace detail {

using bench_clock = std::chrono::steady_clock;

// Calls per sample so that one sample lasts at least min_sample.
template <class Fn>
int calibrate(Fn& fn, double min_sample) {
    fn();  // warm-up (FFT plans, caches)
    int inner = 1;
    for (;;) {
        const auto t0 = bench_clock::now();
        for (int i = 0; i < inner; ++i) fn();
        const double dt = std::chrono::duration<double>(bench_clock::now() - t0).count();
        if (dt >= min_sample || inner >= (1 << 20)) return inner;
        inner *= 2;
    }
}

template <class Fn>
double sample_seconds(Fn& fn, int inner) {
    const auto t0 = bench_clock::now();
    for (int i = 0; i < inner; ++i) fn();
    return std::chrono::duration<double>(bench_clock::now() - t0).count() / inner;
}

inline double median(std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
}

}  // namespace detail

/**
 * Wall time of the spectral d^{-alpha} and of the O(n^2) oracle on the same
 * input. Repeats cycle through all sizes, so a slow spell on a shared
 * machine hits every size rather than distorting one ratio.
 */
inline std::vector<BenchRow> run_bench(const BenchOptions& opt = {}) {
    struct Case {
        std::function<void()> spectral, oracle;
        int spectral_inner = 1, oracle_inner = 1;
        std::vector<double> spectral_samples, oracle_samples;
    };
    std::mt19937_64 rng(7);
    std::vector<Case> cases;
    volatile double sink = 0.0;
    for (std::size_t n : opt.sizes) {
        const GridSpec spec = GridSpec::canonical(n, opt.h);
        auto u = std::make_shared<GridFunction>(
            inputs::random_smooth(spec, rng, 1, 3, 1.0, std::min(20.0, 0.5 * spec.t_end())));
        Case c;
        c.spectral = [u, n, &sink, &opt] { sink = sink + frac_integral(*u, opt.rho, opt.alpha)(n / 2).real(); };
        c.oracle = [u, n, &sink, &opt] { sink = sink + rl_convolution(*u, opt.alpha)(n / 2).real(); };
        c.spectral_inner = detail::calibrate(c.spectral, opt.min_sample_seconds);
        c.oracle_inner = detail::calibrate(c.oracle, opt.min_sample_seconds);
        cases.push_back(std::move(c));
    }
    for (int r = 0; r < std::max(opt.repeats, 1); ++r)
        for (auto& c : cases) {
            c.spectral_samples.push_back(detail::sample_seconds(c.spectral, c.spectral_inner));
            c.oracle_samples.push_back(detail::sample_seconds(c.oracle, c.oracle_inner));
        }
    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < cases.size(); ++i)
        rows.push_back({opt.sizes[i], detail::median(cases[i].spectral_samples),
                        detail::median(cases[i].oracle_samples)});
    return rows;
}

}  // namespace fracspec
