// FFTW backend: aligned buffers and a cached set of real<->complex plans.
//
// Plans are created once per grid shape with FFTW_ESTIMATE (deterministic
// plan choice) and executed through the new-array interface. All field
// storage comes from fftw_malloc so every buffer is in the same alignment
// class as the prototype buffers the plans were created with. The cache is
// guarded by a mutex; concurrent transform execution on distinct buffers is
// safe once the plan exists.
#pragma once

#include <complex>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "mhdlab/core/grid.hpp"

namespace mhdlab {

template <typename T>
class AlignedBuffer {
public:
    AlignedBuffer() = default;
    explicit AlignedBuffer(std::size_t n) : n_(n) {
        if (n_ > 0) {
            ptr_ = static_cast<T*>(fftw_malloc(sizeof(T) * n_));
            std::memset(ptr_, 0, sizeof(T) * n_);
        }
    }
    AlignedBuffer(const AlignedBuffer& o) : AlignedBuffer(o.n_) {
        if (n_ > 0) std::memcpy(ptr_, o.ptr_, sizeof(T) * n_);
    }
    AlignedBuffer(AlignedBuffer&& o) noexcept : n_(o.n_), ptr_(o.ptr_) {
        o.ptr_ = nullptr;
        o.n_ = 0;
    }
    AlignedBuffer& operator=(AlignedBuffer o) noexcept {
        std::swap(n_, o.n_);
        std::swap(ptr_, o.ptr_);
        return *this;
    }
    ~AlignedBuffer() {
        if (ptr_) fftw_free(ptr_);
    }

    T* data() { return ptr_; }
    const T* data() const { return ptr_; }
    T& operator[](std::size_t i) { return ptr_[i]; }
    const T& operator[](std::size_t i) const { return ptr_[i]; }
    std::size_t size() const { return n_; }

private:
    std::size_t n_ = 0;
    T* ptr_ = nullptr;
};

namespace fft {

struct PlanPair {
    fftw_plan forward = nullptr;  // real -> complex
    fftw_plan backward = nullptr; // complex -> real (clobbers its input)
    ~PlanPair() {
        if (forward) fftw_destroy_plan(forward);
        if (backward) fftw_destroy_plan(backward);
    }
};

inline const PlanPair& plans_for(const GridSpec& g) {
    static std::mutex mtx;
    static std::map<std::vector<int>, std::unique_ptr<PlanPair>> cache;

    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(g.extents());
    if (it != cache.end()) return *it->second;

    AlignedBuffer<double> real_proto(g.size());
    AlignedBuffer<std::complex<double>> cplx_proto(g.spectral_size());
    auto pp = std::make_unique<PlanPair>();
    std::vector<int> n = g.extents();
    pp->forward = fftw_plan_dft_r2c(g.dim(), n.data(), real_proto.data(),
                                    reinterpret_cast<fftw_complex*>(cplx_proto.data()),
                                    FFTW_ESTIMATE);
    pp->backward = fftw_plan_dft_c2r(g.dim(), n.data(),
                                     reinterpret_cast<fftw_complex*>(cplx_proto.data()),
                                     real_proto.data(), FFTW_ESTIMATE);
    auto [pos, ok] = cache.emplace(g.extents(), std::move(pp));
    (void)ok;
    return *pos->second;
}

// real -> normalized coefficients (division by grid size), input preserved.
inline void forward(const GridSpec& g, const double* in, std::complex<double>* out) {
    const PlanPair& pp = plans_for(g);
    AlignedBuffer<double> scratch(g.size());
    std::memcpy(scratch.data(), in, sizeof(double) * g.size());
    fftw_execute_dft_r2c(pp.forward, scratch.data(), reinterpret_cast<fftw_complex*>(out));
    const double inv = 1.0 / static_cast<double>(g.size());
    for (std::size_t i = 0; i < g.spectral_size(); ++i) out[i] *= inv;
}

// normalized coefficients -> real samples, input preserved.
inline void backward(const GridSpec& g, const std::complex<double>* in, double* out) {
    const PlanPair& pp = plans_for(g);
    AlignedBuffer<std::complex<double>> scratch(g.spectral_size());
    std::memcpy(scratch.data(), in, sizeof(std::complex<double>) * g.spectral_size());
    fftw_execute_dft_c2r(pp.backward, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

} // namespace fft
} // namespace mhdlab
