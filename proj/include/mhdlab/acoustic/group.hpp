// Acoustic wave group e^{tL}, L(phi, v) = -(div v, b grad phi), applied
// exactly in Fourier space.
//
// Per wavevector the pair (phi_k, longitudinal momentum) rotates at
// frequency sqrt(b)|k|; the characteristic variables
// w_pm = sqrt(b) phi_k +- m_long evolve as w_pm(t) = exp(-+ i sqrt(b)|k| t) w_pm(0).
// Transverse and mean momentum are fixed points. Nyquist modes are left
// untouched (their sine partners are not representable); all solver fields
// are dealiased well inside that band.
#pragma once

#include <stdexcept>

#include "mhdlab/core/norms.hpp"
#include "mhdlab/core/ops.hpp"

namespace mhdlab {

struct GroupParams {
    double b = 1.0; // sound-speed-squared coefficient, b = a*gamma*rhobar^(gamma-1)
};

struct AcousticPair {
    ScalarField phi; // density-fluctuation slot, zero mean
    VectorField m;   // momentum slot

    AcousticPair() = default;
    AcousticPair(ScalarField phi_, VectorField m_) : phi(std::move(phi_)), m(std::move(m_)) {
        require_same_grid(phi.grid(), m.grid(), "AcousticPair");
        const double scale = l2_norm(phi) + l2_norm(m);
        if (std::abs(phi.mean()) > 1e-12 * std::max(1.0, scale))
            throw std::invalid_argument("AcousticPair: phi must have zero mean");
    }
};

// Weighted pair norm (||phi||_{H^s}^2 + (1/b)||v||_{H^s}^2)^(1/2).
inline double pair_norm(const AcousticPair& p, double s, double b) {
    if (!(b > 0.0)) throw std::invalid_argument("pair_norm: b must be positive");
    return std::sqrt(sobolev_norm_sq(p.phi, s) + sobolev_norm_sq(p.m, s) / b);
}

inline AcousticPair apply_group(const AcousticPair& pair, double t, const GroupParams& gp) {
    if (!(gp.b > 0.0)) throw std::invalid_argument("apply_group: b must be positive");
    const GridSpec& g = pair.phi.grid();
    const SpectralTable& st = SpectralTable::of(g);
    const int d = g.dim();
    const double c = std::sqrt(gp.b);

    AcousticPair out;
    out.phi = pair.phi;
    out.m = pair.m;

    std::complex<double>* phi = out.phi.coeffs_mut();
    std::vector<std::complex<double>*> m(d);
    for (int a = 0; a < d; ++a) m[a] = out.m[a].coeffs_mut();

    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        if (st.k2[i] == 0.0 || st.nyquist[i]) continue;
        const double kn = std::sqrt(st.k2[i]);
        double khat[3];
        for (int a = 0; a < d; ++a) khat[a] = st.k[a][i] / kn;

        std::complex<double> ml(0.0, 0.0);
        for (int a = 0; a < d; ++a) ml += khat[a] * m[a][i];

        const std::complex<double> wp = c * phi[i] + ml;
        const std::complex<double> wm = c * phi[i] - ml;
        const double theta = c * kn * t;
        // delta form: exact identity at theta = 0
        const std::complex<double> dp(std::cos(theta) - 1.0, -std::sin(theta));
        const std::complex<double> dm = std::conj(dp);

        phi[i] += (dp * wp + dm * wm) / (2.0 * c);
        const std::complex<double> dml = (dp * wp - dm * wm) / 2.0;
        for (int a = 0; a < d; ++a) m[a][i] += khat[a] * dml;
    }
    return out;
}

// Acoustic filter: conjugation by the group at the fast time scale,
// pair |-> e^{-tL/eps} pair. Inverse of apply_group(., t/eps, gp).
inline AcousticPair filter(const AcousticPair& pair_at_t, double t, double eps,
                           const GroupParams& gp) {
    if (!(eps > 0.0)) throw std::invalid_argument("filter: eps must be positive");
    return apply_group(pair_at_t, -t / eps, gp);
}

// Relative change of the (s, b)-weighted norm under the group; the group is
// an isometry so this is a numerical-quality diagnostic.
inline double isometry_defect(const AcousticPair& pair, double t, double s,
                              const GroupParams& gp) {
    const double before = pair_norm(pair, s, gp.b);
    if (before == 0.0) throw std::invalid_argument("isometry_defect: zero input pair");
    const double after = pair_norm(apply_group(pair, t, gp), s, gp.b);
    return std::abs(after - before) / before;
}

} // namespace mhdlab
