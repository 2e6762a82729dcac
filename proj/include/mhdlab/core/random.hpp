// Seeded random field generators used by tests, property suites and the
// init catalog. The uniform/normal transforms are written out explicitly
// so a given seed reproduces the same stream on any standard library.
#pragma once

#include <cmath>
#include <random>

#include "mhdlab/core/ops.hpp"

namespace mhdlab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { // [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Random band-limited real field: independent normal coefficients on modes
// with every |k index| <= kmax, shaped by a radial amplitude profile.
// Mean-free. Hermitian symmetry is handled by assigning only the stored
// half-spectrum and zeroing imaginary parts on self-conjugate entries.
template <typename Profile>
inline ScalarField random_band_limited(const GridSpec& g, Rng& rng, int kmax, Profile&& amp) {
    const SpectralTable& st = SpectralTable::of(g);
    ScalarField out(g);
    std::complex<double>* c = out.coeffs_mut();
    for (std::size_t i = 0; i < g.spectral_size(); ++i) c[i] = 0.0;
    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        if (st.k2[i] == 0.0 || st.nyquist[i]) continue;
        if (st.weight[i] == 1.0 && st.mirror[i] < i) continue; // partner handles it
        bool in_band = true;
        for (int a = 0; a < g.dim(); ++a)
            in_band = in_band && std::abs(st.k[a][i]) * g.length(a) / two_pi <= kmax + 1e-9;
        if (!in_band) continue;
        const double a = amp(std::sqrt(st.k2[i]));
        std::complex<double> z(rng.normal(), rng.normal());
        if (st.weight[i] == 1.0) {
            if (st.mirror[i] == i) {
                c[i] = a * std::sqrt(2.0) * z.real();
            } else {
                c[i] = a * z;
                c[st.mirror[i]] = a * std::conj(z);
            }
        } else {
            c[i] = a * z;
        }
    }
    return out;
}

inline ScalarField random_band_limited(const GridSpec& g, Rng& rng, int kmax) {
    return random_band_limited(g, rng, kmax, [](double) { return 1.0; });
}

inline VectorField random_vector(const GridSpec& g, Rng& rng, int kmax) {
    VectorField v(g);
    for (int c = 0; c < g.dim(); ++c) v[c] = random_band_limited(g, rng, kmax);
    return v;
}

// Random solenoidal field (projected).
inline VectorField random_solenoidal(const GridSpec& g, Rng& rng, int kmax) {
    return leray_project(random_vector(g, rng, kmax));
}

} // namespace mhdlab
