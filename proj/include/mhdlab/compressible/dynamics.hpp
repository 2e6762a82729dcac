// Right-hand-side building blocks of the scaled compressible MHD system:
// Lorentz force, induction term, the O(1) pressure remainder left after
// subtracting the stiff linear acoustic part, and the assembled nonstiff
// momentum forcing.
#pragma once

#include "mhdlab/compressible/state.hpp"

namespace mhdlab {

struct SolverAbort : std::runtime_error {
    double time = 0.0;
    SolverAbort(const std::string& what, double t) : std::runtime_error(what), time(t) {}
};

inline VectorField velocity_from_momentum(const ScalarField& rho, const VectorField& m) {
    VectorField u(m.grid());
    const double* rv = rho.values();
    for (int c = 0; c < m.dim(); ++c) {
        const double* mv = m[c].values();
        double* uv = u[c].values_mut();
        for (std::size_t i = 0; i < m[c].size(); ++i) uv[i] = mv[i] / rv[i];
    }
    return u;
}

// (curl H) x H, dealiased. 2D: omega (-H_y, H_x); 3D: full cross product.
inline VectorField lorentz_force(const VectorField& H, bool check_divfree = false) {
    const GridSpec& g = H.grid();
    if (check_divfree && l2_norm(divergence(H)) > 1e-8 * std::max(1.0, l2_norm(H)))
        throw std::invalid_argument("lorentz_force: H is not divergence-free");
    VectorField out(g);
    if (g.dim() == 2) {
        ScalarField w = curl2d(H);
        out[0] = product(w, H[1]);
        scale(out[0], -1.0);
        out[1] = product(w, H[0]);
    } else {
        VectorField c = curl3d(H);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            out[i] = product(c[j], H[k]);
            axpy(out[i], -1.0, product(c[k], H[j]));
        }
    }
    return out;
}

// curl(u x H) - nu curl(curl H), projected back onto solenoidal fields.
inline VectorField induction_rhs(const VectorField& u, const VectorField& H, double nu) {
    const GridSpec& g = u.grid();
    VectorField out(g);
    if (g.dim() == 2) {
        ScalarField s = product(u[0], H[1]);
        axpy(s, -1.0, product(u[1], H[0]));
        out = perp_gradient2d(s);
    } else {
        VectorField s(g);
        for (int i = 0; i < 3; ++i) {
            const int j = (i + 1) % 3, k = (i + 2) % 3;
            s[i] = product(u[j], H[k]);
            axpy(s[i], -1.0, product(u[k], H[j]));
        }
        out = curl3d(s);
    }
    // -nu curl curl H = nu (lap H - grad div H), exact in Fourier space
    for (int c = 0; c < g.dim(); ++c) axpy(out[c], nu, laplacian(H[c]));
    ScalarField dH = divergence(H);
    VectorField gd = gradient(dH);
    axpy(out, -nu, gd);
    return leray_project(out);
}

// Stable evaluation of (1+z)^gamma - 1 - gamma z.
inline double pressure_excess_fn(double z, double gamma) {
    if (gamma == 2.0) return z * z;
    return std::expm1(gamma * std::log1p(z)) - gamma * z;
}

// (a/eps^2) (rho^gamma - gamma rho rhobar^(gamma-1) + (gamma-1) rhobar^gamma),
// evaluated as (a/eps^2) rhobar^gamma G(eps phi / rhobar); O(1) as eps -> 0
// and exactly zero at rho == rhobar.
inline ScalarField pressure_remainder(const ScalarField& phi, double rho_bar,
                                      const FluidParams& p) {
    ScalarField out = phi;
    const double pref = p.a * std::pow(rho_bar, p.gamma) / (p.eps * p.eps);
    const double zfac = p.eps / rho_bar;
    const double gamma = p.gamma;
    for_each_value(out, [pref, zfac, gamma](double& v) {
        v = pref * pressure_excess_fn(zfac * v, gamma);
    });
    dealias(out);
    return out;
}

// Full momentum right-hand side minus the stiff (b/eps) grad phi term:
// F = -div(rho u (x) u) + mu lap u + lam grad div u
//     - grad[pressure remainder] + (curl H) x H.
inline VectorField nonstiff_rhs_F(const CompressibleState& s, const FluidParams& p) {
    const GridSpec& g = s.rho.grid();
    const double rho_bar = mean_density(s);
    {
        const double* rv = s.rho.values();
        for (std::size_t i = 0; i < s.rho.size(); ++i)
            if (!(rv[i] > 0.0))
                throw SolverAbort("nonstiff_rhs_F: nonpositive density", s.time);
    }
    FluctuationView fv = fluctuation_view(s, p);
    VectorField F = lorentz_force(s.H);

    // advection, conservative form: -d_i (m_i u_j)
    for (int j = 0; j < g.dim(); ++j)
        for (int i = 0; i < g.dim(); ++i)
            axpy(F[j], -1.0, derivative(product(fv.m[i], s.u[j]), i));

    // viscosity on the velocity
    for (int c = 0; c < g.dim(); ++c) axpy(F[c], p.mu, laplacian(s.u[c]));
    VectorField gdu = gradient(divergence(s.u));
    axpy(F, p.lam, gdu);

    // nonlinear pressure remainder
    VectorField gp = gradient(pressure_remainder(fv.phi, rho_bar, p));
    axpy(F, -1.0, gp);

    for (int c = 0; c < g.dim(); ++c) dealias(F[c]);
    return F;
}

} // namespace mhdlab
