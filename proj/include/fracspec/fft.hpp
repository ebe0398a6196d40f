#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <utility>

namespace fracspec::detail {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// Plans are created once per (size, direction) and shared.
class FftPlans {
public:
    static FftPlans& instance() {
        static FftPlans plans;
        return plans;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        // In-place plan: every execution below passes the same array twice.
        auto* buf = fftw_alloc_complex(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_.emplace(key, plan);
        return plan;
    }

    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

private:
    FftPlans() = default;
    ~FftPlans() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

inline fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

/// In-place unnormalized DFT: X_b = sum_k x_k e^{-2 pi i b k / n}.
inline void fft_forward(std::span<std::complex<double>> x) {
    auto plan = FftPlans::instance().get(x.size(), FFTW_FORWARD);
    fftw_execute_dft(plan, as_fftw(x.data()), as_fftw(x.data()));
}

/// In-place unnormalized inverse DFT: x_k = sum_b X_b e^{+2 pi i b k / n}.
inline void fft_backward(std::span<std::complex<double>> x) {
    auto plan = FftPlans::instance().get(x.size(), FFTW_BACKWARD);
    fftw_execute_dft(plan, as_fftw(x.data()), as_fftw(x.data()));
}

}  // namespace fracspec::detail
