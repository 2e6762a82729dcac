// Sobolev norms from the spectrum and L^q norms by grid quadrature.
#pragma once

#include <cmath>

#include "mhdlab/core/ops.hpp"

namespace mhdlab {

// ||f||_{H^s}^2 = vol * sum_k (1 + |k|^2)^s |f_k|^2 over the full lattice.
inline double sobolev_norm_sq(const ScalarField& f, double s) {
    const GridSpec& g = f.grid();
    const SpectralTable& st = SpectralTable::of(g);
    const std::complex<double>* c = f.coeffs();
    double acc = 0.0;
    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + st.k2[i], s);
        acc += st.weight[i] * w * std::norm(c[i]);
    }
    return acc * g.volume();
}

inline double sobolev_norm(const ScalarField& f, double s) {
    return std::sqrt(sobolev_norm_sq(f, s));
}

inline double sobolev_norm_sq(const VectorField& v, double s) {
    double acc = 0.0;
    for (int c = 0; c < v.dim(); ++c) acc += sobolev_norm_sq(v[c], s);
    return acc;
}

inline double sobolev_norm(const VectorField& v, double s) {
    return std::sqrt(sobolev_norm_sq(v, s));
}

inline double l2_norm(const ScalarField& f) { return sobolev_norm(f, 0.0); }
inline double l2_norm(const VectorField& v) { return sobolev_norm(v, 0.0); }

// L^q norm by trapezoid quadrature on the uniform grid.
inline double lq_norm(const ScalarField& f, double q) {
    const double* v = f.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::pow(std::abs(v[i]), q);
    return std::pow(acc * f.grid().cell_volume(), 1.0 / q);
}

// L^q norm of |v| (pointwise Euclidean magnitude).
inline double lq_norm(const VectorField& vec, double q) {
    const std::size_t n = vec.grid().size();
    std::vector<const double*> comps(vec.dim());
    for (int c = 0; c < vec.dim(); ++c) comps[c] = vec[c].values();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = 0.0;
        for (int c = 0; c < vec.dim(); ++c) m2 += comps[c][i] * comps[c][i];
        acc += std::pow(m2, 0.5 * q);
    }
    return std::pow(acc * vec.grid().cell_volume(), 1.0 / q);
}

inline double linf_norm(const ScalarField& f) {
    const double* v = f.values();
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

} // namespace mhdlab
