// ScalarField / VectorField: dual real/spectral representation on a
// periodic grid.
//
// Both representations are kept lazily consistent. Reading an out-of-date
// side triggers a transform; mutating one side invalidates the other.
// Spectral coefficients are normalized (coeff 0 is the mean) and stored in
// the half-spectrum r2c layout, so Hermitian symmetry holds by
// construction. Fields are value types; operations on them never mutate
// their inputs. A field that will be read concurrently should be synced
// (ensure_real/ensure_spectral) before it is shared.
#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <utility>

#include "mhdlab/core/fft.hpp"
#include "mhdlab/core/grid.hpp"

namespace mhdlab {

// Per-grid table of wavevectors for the stored half-spectrum.
// weight = 2 for entries whose Hermitian mirror is not stored, else 1;
// nyquist marks entries with any axis at its Nyquist index.
struct SpectralTable {
    std::vector<double> k[3];
    std::vector<double> k2;
    std::vector<double> weight;
    std::vector<unsigned char> nyquist;
    // For weight-1 entries (whole last-axis plane stored): flat index of the
    // Hermitian mirror inside the stored array. Equals the entry's own index
    // for self-conjugate modes and for weight-2 entries.
    std::vector<std::size_t> mirror;
    int dim = 0;

    static const SpectralTable& of(const GridSpec& g) {
        static std::mutex mtx;
        static std::map<std::vector<int>, std::unique_ptr<SpectralTable>> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(g.extents());
        if (it != cache.end()) return *it->second;

        auto t = std::make_unique<SpectralTable>();
        t->dim = g.dim();
        const std::size_t nc = g.spectral_size();
        for (int a = 0; a < g.dim(); ++a) t->k[a].resize(nc);
        t->k2.resize(nc);
        t->weight.resize(nc);
        t->nyquist.resize(nc);
        t->mirror.resize(nc);

        const int d = g.dim();
        const int nl = g.extent(d - 1);
        const int nl_half = nl / 2 + 1;
        std::vector<int> idx(d, 0);
        for (std::size_t flat = 0; flat < nc; ++flat) {
            double k2 = 0.0;
            bool nyq = false;
            for (int a = 0; a < d; ++a) {
                const double ka = g.wavenumber(a, idx[a]);
                t->k[a][flat] = ka;
                k2 += ka * ka;
                nyq = nyq || g.is_nyquist(a, idx[a]);
            }
            t->k2[flat] = k2;
            const int jl = idx[d - 1];
            t->weight[flat] = (jl == 0 || jl == nl / 2) ? 1.0 : 2.0;
            t->nyquist[flat] = nyq ? 1 : 0;

            if (t->weight[flat] == 1.0) {
                std::size_t m = 0;
                for (int a = 0; a < d; ++a) {
                    const int na = (a == d - 1) ? nl_half : g.extent(a);
                    const int ja = (a == d - 1) ? idx[a] : (g.extent(a) - idx[a]) % g.extent(a);
                    m = m * static_cast<std::size_t>(na) + static_cast<std::size_t>(ja);
                }
                t->mirror[flat] = m;
            } else {
                t->mirror[flat] = flat;
            }

            for (int a = d - 1; a >= 0; --a) {
                const int lim = (a == d - 1) ? nl_half : g.extent(a);
                if (++idx[a] < lim) break;
                idx[a] = 0;
            }
        }
        auto [pos, ok] = cache.emplace(g.extents(), std::move(t));
        (void)ok;
        return *pos->second;
    }
};

class ScalarField {
public:
    ScalarField() = default;

    explicit ScalarField(GridSpec grid)
        : grid_(std::move(grid)), real_(grid_.size()), spec_(grid_.spectral_size()),
          real_valid_(true), spec_valid_(true) {}

    const GridSpec& grid() const { return grid_; }

    // --- real side -----------------------------------------------------
    const double* values() const {
        ensure_real();
        return real_.data();
    }
    double* values_mut() {
        ensure_real();
        spec_valid_ = false;
        return real_.data();
    }

    // --- spectral side ---------------------------------------------------
    const std::complex<double>* coeffs() const {
        ensure_spectral();
        return spec_.data();
    }
    std::complex<double>* coeffs_mut() {
        ensure_spectral();
        real_valid_ = false;
        return spec_.data();
    }

    std::size_t size() const { return grid_.size(); }
    std::size_t spectral_size() const { return grid_.spectral_size(); }

    void ensure_real() const {
        if (!real_valid_) {
            fft::backward(grid_, spec_.data(), real_.data());
            real_valid_ = true;
        }
    }
    void ensure_spectral() const {
        if (!spec_valid_) {
            fft::forward(grid_, real_.data(), spec_.data());
            spec_valid_ = true;
        }
    }

    double mean() const {
        ensure_spectral();
        return spec_[0].real();
    }

    // Fill from a callable f(x...) evaluated at grid points.
    template <typename F>
    static ScalarField sample(const GridSpec& g, F&& f) {
        ScalarField out(g);
        double* v = out.values_mut();
        const int d = g.dim();
        std::vector<int> idx(d, 0);
        for (std::size_t flat = 0; flat < g.size(); ++flat) {
            double x[3] = {0, 0, 0};
            for (int a = 0; a < d; ++a) x[a] = idx[a] * g.spacing(a);
            v[flat] = f(x[0], x[1], x[2]);
            for (int a = d - 1; a >= 0; --a) {
                if (++idx[a] < g.extent(a)) break;
                idx[a] = 0;
            }
        }
        return out;
    }

private:
    GridSpec grid_;
    mutable AlignedBuffer<double> real_;
    mutable AlignedBuffer<std::complex<double>> spec_;
    mutable bool real_valid_ = false;
    mutable bool spec_valid_ = false;
};

class VectorField {
public:
    VectorField() = default;

    explicit VectorField(const GridSpec& grid) {
        for (int a = 0; a < grid.dim(); ++a) comps_.emplace_back(grid);
    }

    int dim() const { return static_cast<int>(comps_.size()); }
    const GridSpec& grid() const { return comps_.at(0).grid(); }

    ScalarField& operator[](int c) { return comps_[c]; }
    const ScalarField& operator[](int c) const { return comps_[c]; }

    void ensure_real() const {
        for (const auto& c : comps_) c.ensure_real();
    }
    void ensure_spectral() const {
        for (const auto& c : comps_) c.ensure_spectral();
    }

private:
    std::vector<ScalarField> comps_;
};

// --- element-wise helpers used across the solvers ------------------------

inline ScalarField zeros_like(const GridSpec& g) { return ScalarField(g); }

template <typename Op>
inline void for_each_value(ScalarField& f, Op&& op) {
    double* v = f.values_mut();
    for (std::size_t i = 0; i < f.size(); ++i) op(v[i]);
}

inline void axpy(ScalarField& y, double a, const ScalarField& x) {
    require_same_grid(y.grid(), x.grid(), "axpy");
    const double* xs = x.values();
    double* ys = y.values_mut();
    for (std::size_t i = 0; i < y.size(); ++i) ys[i] += a * xs[i];
}

inline void axpy(VectorField& y, double a, const VectorField& x) {
    for (int c = 0; c < y.dim(); ++c) axpy(y[c], a, x[c]);
}

inline void scale(ScalarField& f, double a) {
    for_each_value(f, [a](double& v) { v *= a; });
}

inline void scale(VectorField& f, double a) {
    for (int c = 0; c < f.dim(); ++c) scale(f[c], a);
}

} // namespace mhdlab
