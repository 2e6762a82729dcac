// Spectral calculus on periodic fields: derivatives, Helmholtz-Leray
// projection, dealiasing, integrals and inner products.
//
// Derivatives act mode-wise as multiplication by i*k; Nyquist modes are
// zeroed (their odd derivatives are not representable on the grid). The
// projection assigns the zero-frequency mode to the divergence-free part,
// so Q has zero mean.
#pragma once

#include <complex>

#include "mhdlab/core/field.hpp"

namespace mhdlab {

inline ScalarField derivative(const ScalarField& f, int axis) {
    const GridSpec& g = f.grid();
    const SpectralTable& st = SpectralTable::of(g);
    ScalarField out(g);
    const std::complex<double>* in = f.coeffs();
    std::complex<double>* oc = out.coeffs_mut();
    const std::complex<double> I(0.0, 1.0);
    for (std::size_t i = 0; i < g.spectral_size(); ++i)
        oc[i] = st.nyquist[i] ? 0.0 : I * st.k[axis][i] * in[i];
    return out;
}

inline VectorField gradient(const ScalarField& f) {
    VectorField out(f.grid());
    for (int a = 0; a < f.grid().dim(); ++a) out[a] = derivative(f, a);
    return out;
}

inline ScalarField divergence(const VectorField& v) {
    const GridSpec& g = v.grid();
    const SpectralTable& st = SpectralTable::of(g);
    ScalarField out(g);
    std::complex<double>* oc = out.coeffs_mut();
    const std::complex<double> I(0.0, 1.0);
    for (int c = 0; c < v.dim(); ++c) {
        require_same_grid(g, v[c].grid(), "divergence");
        const std::complex<double>* in = v[c].coeffs();
        for (std::size_t i = 0; i < g.spectral_size(); ++i)
            if (!st.nyquist[i]) oc[i] += I * st.k[c][i] * in[i];
    }
    return out;
}

inline ScalarField laplacian(const ScalarField& f) {
    const GridSpec& g = f.grid();
    const SpectralTable& st = SpectralTable::of(g);
    ScalarField out(g);
    const std::complex<double>* in = f.coeffs();
    std::complex<double>* oc = out.coeffs_mut();
    for (std::size_t i = 0; i < g.spectral_size(); ++i)
        oc[i] = st.nyquist[i] ? 0.0 : -st.k2[i] * in[i];
    return out;
}

// 2D curl: scalar vorticity d(v_y)/dx - d(v_x)/dy.
inline ScalarField curl2d(const VectorField& v) {
    if (v.dim() != 2) throw std::invalid_argument("curl2d: 2D field expected");
    ScalarField out = derivative(v[1], 0);
    axpy(out, -1.0, derivative(v[0], 1));
    return out;
}

// 3D curl.
inline VectorField curl3d(const VectorField& v) {
    if (v.dim() != 3) throw std::invalid_argument("curl3d: 3D field expected");
    VectorField out(v.grid());
    out[0] = derivative(v[2], 1);
    axpy(out[0], -1.0, derivative(v[1], 2));
    out[1] = derivative(v[0], 2);
    axpy(out[1], -1.0, derivative(v[2], 0));
    out[2] = derivative(v[1], 0);
    axpy(out[2], -1.0, derivative(v[0], 1));
    return out;
}

// Perpendicular gradient of a 2D scalar: curl of s*e_z, (ds/dy, -ds/dx).
inline VectorField perp_gradient2d(const ScalarField& s) {
    VectorField out(s.grid());
    out[0] = derivative(s, 1);
    out[1] = derivative(s, 0);
    scale(out[1], -1.0);
    return out;
}

// 2/3-rule truncation: zero every mode with |k index| > n/3 on any axis.
inline void dealias(ScalarField& f) {
    const GridSpec& g = f.grid();
    const SpectralTable& st = SpectralTable::of(g);
    std::complex<double>* c = f.coeffs_mut();
    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        bool keep = !st.nyquist[i];
        for (int a = 0; a < g.dim() && keep; ++a) {
            const double kmax = two_pi / g.length(a) * (g.extent(a) / 3);
            keep = std::abs(st.k[a][i]) <= kmax + 1e-12;
        }
        if (!keep) c[i] = 0.0;
    }
}

inline void dealias(VectorField& v) {
    for (int c = 0; c < v.dim(); ++c) dealias(v[c]);
}

// Pointwise product, truncated to the dealiased band.
inline ScalarField product(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "product");
    ScalarField out(a.grid());
    const double* av = a.values();
    const double* bv = b.values();
    double* ov = out.values_mut();
    for (std::size_t i = 0; i < out.size(); ++i) ov[i] = av[i] * bv[i];
    dealias(out);
    return out;
}

// Helmholtz-Leray decomposition v = Pv + Qv with div Pv = 0, curl Qv = 0.
// The mean mode goes to P.
struct HelmholtzParts {
    VectorField solenoidal; // Pv
    VectorField gradient;   // Qv
};

inline HelmholtzParts helmholtz_project(const VectorField& v) {
    const GridSpec& g = v.grid();
    const SpectralTable& st = SpectralTable::of(g);
    const int d = g.dim();
    HelmholtzParts out{VectorField(g), VectorField(g)};

    std::vector<const std::complex<double>*> in(d);
    std::vector<std::complex<double>*> ps(d), qs(d);
    for (int c = 0; c < d; ++c) {
        require_same_grid(g, v[c].grid(), "helmholtz_project");
        in[c] = v[c].coeffs();
        ps[c] = out.solenoidal[c].coeffs_mut();
        qs[c] = out.gradient[c].coeffs_mut();
    }
    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        if (st.k2[i] == 0.0) {
            for (int c = 0; c < d; ++c) {
                ps[c][i] = in[c][i];
                qs[c][i] = 0.0;
            }
            continue;
        }
        std::complex<double> kdot(0.0, 0.0);
        for (int c = 0; c < d; ++c) kdot += st.k[c][i] * in[c][i];
        const double inv_k2 = 1.0 / st.k2[i];
        for (int c = 0; c < d; ++c) {
            const std::complex<double> q = st.k[c][i] * kdot * inv_k2;
            qs[c][i] = q;
            ps[c][i] = in[c][i] - q;
        }
    }
    return out;
}

inline VectorField leray_project(const VectorField& v) {
    return helmholtz_project(v).solenoidal;
}

// --- quadrature on the uniform grid (trapezoid == mean * volume) ---------

inline double integral(const ScalarField& f) {
    const double* v = f.values();
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += v[i];
    return s * f.grid().cell_volume();
}

inline double inner_l2(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "inner_l2");
    const double* av = a.values();
    const double* bv = b.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += av[i] * bv[i];
    return s * a.grid().cell_volume();
}

inline double inner_l2(const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (int c = 0; c < a.dim(); ++c) s += inner_l2(a[c], b[c]);
    return s;
}

} // namespace mhdlab
