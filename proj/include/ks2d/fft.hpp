#pragma once

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ks2d/field.hpp"
#include "ks2d/torus.hpp"

namespace ks2d {

// Complex 2-D transform pair between Fourier coefficients (our convention:
// f(x) = sum_k fhat(k) exp(2*pi*i*(k1 x/L1 + k2 y/L2))) and real physical
// samples on the N1 x N2 grid.  Plans are created with FFTW_ESTIMATE so the
// chosen algorithm, and hence rounding, is reproducible run to run.
class Fft2d {
public:
    Fft2d(int n1, int n2) : n1_(n1), n2_(n2) {
        const std::size_t n = std::size_t(n1) * n2;
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
        std::lock_guard<std::mutex> lock(plan_mutex());
        fwd_ = fftw_plan_dft_2d(n1, n2, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_2d(n1, n2, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~Fft2d() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }

    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    // coefficients -> physical samples (real part; imaginary parts of a
    // conjugate-symmetric input are rounding noise and are dropped)
    void synthesize(const std::vector<Complex>& spec, std::vector<double>& phys) {
        const std::size_t n = size();
        phys.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            buf_[i][0] = spec[i].real();
            buf_[i][1] = spec[i].imag();
        }
        fftw_execute(bwd_);
        for (std::size_t i = 0; i < n; ++i) phys[i] = buf_[i][0];
    }

    // physical samples -> coefficients, with the 1/(N1*N2) normalization
    void analyze(const std::vector<double>& phys, std::vector<Complex>& spec) {
        const std::size_t n = size();
        const double inv = 1.0 / double(n);
        spec.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            buf_[i][0] = phys[i];
            buf_[i][1] = 0.0;
        }
        fftw_execute(fwd_);
        for (std::size_t i = 0; i < n; ++i) spec[i] = Complex{buf_[i][0] * inv, buf_[i][1] * inv};
    }

    std::size_t size() const { return std::size_t(n1_) * n2_; }

    // FFTW plan creation/destruction is not thread-safe; execution is.
    static std::mutex& plan_mutex() {
        static std::mutex m;
        return m;
    }

private:
    int n1_, n2_;
    fftw_complex* buf_;
    fftw_plan fwd_, bwd_;
};

// Per-thread plan cache keyed by grid size.
inline Fft2d& fft_for(const TorusSpec& spec) {
    thread_local std::map<std::pair<int, int>, std::unique_ptr<Fft2d>> cache;
    auto key = std::make_pair(spec.N1, spec.N2);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<Fft2d>(spec.N1, spec.N2)).first;
    return *it->second;
}

}  // namespace ks2d
