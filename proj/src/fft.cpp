#include "euler1d/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace euler1d::fft {

namespace {

// One cached plan pair per transform size. FFTW's planner is not thread-safe,
// so creation is serialized; execution via the new-array interface is
// re-entrant as long as the arrays have the plan's alignment, which
// fftw_malloc guarantees.
struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;

    explicit PlanPair(int n) {
        real_buf = fftw_alloc_real(static_cast<std::size_t>(n));
        cplx_buf = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
        r2c = fftw_plan_dft_r2c_1d(n, real_buf, cplx_buf, FFTW_ESTIMATE);
        c2r = fftw_plan_dft_c2r_1d(n, cplx_buf, real_buf, FFTW_ESTIMATE);
    }
    ~PlanPair() {
        fftw_destroy_plan(c2r);
        fftw_destroy_plan(r2c);
        fftw_free(cplx_buf);
        fftw_free(real_buf);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

const PlanPair& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    return *it->second;
}

struct FftwRealBuf {
    double* p;
    explicit FftwRealBuf(std::size_t n) : p(fftw_alloc_real(n)) {}
    ~FftwRealBuf() { fftw_free(p); }
};
struct FftwCplxBuf {
    fftw_complex* p;
    explicit FftwCplxBuf(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~FftwCplxBuf() { fftw_free(p); }
};

}  // namespace

std::vector<std::complex<double>> forward(const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    if (n < 2) throw std::invalid_argument("fft::forward: need at least 2 samples");
    const auto& plans = plans_for(n);
    FftwRealBuf in(static_cast<std::size_t>(n));
    FftwCplxBuf out(static_cast<std::size_t>(n / 2 + 1));
    for (int j = 0; j < n; ++j) in.p[j] = values[static_cast<std::size_t>(j)];
    fftw_execute_dft_r2c(plans.r2c, in.p, out.p);
    std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(n / 2 + 1));
    const double scale = 1.0 / n;
    for (int k = 0; k <= n / 2; ++k) {
        coeffs[static_cast<std::size_t>(k)] =
            std::complex<double>(out.p[k][0] * scale, out.p[k][1] * scale);
    }
    return coeffs;
}

std::vector<double> inverse(const std::vector<std::complex<double>>& coeffs, int n) {
    if (static_cast<int>(coeffs.size()) != n / 2 + 1) {
        throw std::invalid_argument("fft::inverse: coefficient count does not match n/2+1");
    }
    const auto& plans = plans_for(n);
    FftwCplxBuf in(static_cast<std::size_t>(n / 2 + 1));
    FftwRealBuf out(static_cast<std::size_t>(n));
    for (int k = 0; k <= n / 2; ++k) {
        in.p[k][0] = coeffs[static_cast<std::size_t>(k)].real();
        in.p[k][1] = coeffs[static_cast<std::size_t>(k)].imag();
    }
    fftw_execute_dft_c2r(plans.c2r, in.p, out.p);
    // FFTW's c2r is unnormalized; forward() already divided by N.
    return std::vector<double>(out.p, out.p + n);
}

}  // namespace euler1d::fft
