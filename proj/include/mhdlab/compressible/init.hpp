// Initial-data catalog: Taylor-Green, an Orszag-Tang-like vortex, and
// seeded random band-limited data. Velocity and magnetic profiles are built
// from stream functions (exactly divergence-free); the density is
// rho0 = rho_bar + eps * phi0 with a fixed mean-zero phi0, so the scaled
// pressure excess stays bounded uniformly in eps. The ill-prepared toggle
// adds an O(1) gradient part to the velocity.
#pragma once

#include "mhdlab/compressible/dynamics.hpp"
#include "mhdlab/core/random.hpp"

namespace mhdlab {

struct InitProfile {
    std::string name = "orszag-tang-like"; // taylor-green | orszag-tang-like | random-band-limited
    double u_amplitude = 1.0;
    double h_amplitude = 0.5;
    double phi_amplitude = 0.3; // density fluctuation scale (O(1) in eps)
    bool ill_prepared = false;  // add an O(1) gradient velocity part
    double q_amplitude = 0.5;   // amplitude of that gradient part
    std::uint64_t seed = 2024;  // random profile only
    double rho_bar = 1.0;
};

inline CompressibleState well_prepared_init(const FluidParams& p, const GridSpec& g,
                                            const InitProfile& prof) {
    if (g.dim() != 2 && prof.name != "random-band-limited")
        throw std::invalid_argument("well_prepared_init: catalog profiles are 2D");
    CompressibleState s;
    s.time = 0.0;

    ScalarField phi0(g);
    VectorField u(g), H(g);

    if (prof.name == "taylor-green") {
        u[0] = ScalarField::sample(g, [&](double x, double y, double) {
            return prof.u_amplitude * std::sin(x) * std::cos(y);
        });
        u[1] = ScalarField::sample(g, [&](double x, double y, double) {
            return -prof.u_amplitude * std::cos(x) * std::sin(y);
        });
        phi0 = ScalarField::sample(g, [&](double x, double y, double) {
            return prof.phi_amplitude * std::cos(x) * std::cos(y);
        });
    } else if (prof.name == "orszag-tang-like") {
        // stream functions: psi_u = A(cos x + cos y), psi_H = B(cos 2x + cos y)
        u[0] = ScalarField::sample(g, [&](double x, double y, double) {
            return -prof.u_amplitude * std::sin(y);
        });
        u[1] = ScalarField::sample(g, [&](double x, double y, double) {
            return prof.u_amplitude * std::sin(x);
        });
        H[0] = ScalarField::sample(g, [&](double x, double y, double) {
            return -prof.h_amplitude * std::sin(y);
        });
        H[1] = ScalarField::sample(g, [&](double x, double y, double) {
            return prof.h_amplitude * std::sin(2.0 * x);
        });
        phi0 = ScalarField::sample(g, [&](double x, double y, double) {
            return prof.phi_amplitude * (std::cos(x + y) + 0.5 * std::sin(x));
        });
    } else if (prof.name == "random-band-limited") {
        Rng rng(prof.seed);
        u = random_solenoidal(g, rng, 4);
        double un = l2_norm(u);
        if (un > 0.0) scale(u, prof.u_amplitude * std::sqrt(g.volume()) / un);
        H = random_solenoidal(g, rng, 4);
        double hn = l2_norm(H);
        if (hn > 0.0) scale(H, prof.h_amplitude * std::sqrt(g.volume()) / hn);
        ScalarField r = random_band_limited(g, rng, 4);
        double rn = l2_norm(r);
        if (rn > 0.0) scale(r, prof.phi_amplitude * std::sqrt(g.volume()) / rn);
        phi0 = r;
    } else {
        throw std::invalid_argument("well_prepared_init: unknown profile '" + prof.name + "'");
    }

    u = leray_project(u); // exact by construction; enforce to rounding
    if (prof.ill_prepared) {
        ScalarField chi = ScalarField::sample(g, [&](double x, double y, double) {
            return prof.q_amplitude * (std::sin(x) + std::cos(2.0 * y));
        });
        axpy(u, 1.0, gradient(chi));
    }
    H = leray_project(H);

    // mean-zero fluctuation at machine precision
    {
        std::complex<double>* c = phi0.coeffs_mut();
        c[0] = 0.0;
    }
    s.rho = phi0;
    const double rb = prof.rho_bar, eps = p.eps;
    for_each_value(s.rho, [rb, eps](double& v) { v = rb + eps * v; });
    s.u = std::move(u);
    s.H = std::move(H);
    return s;
}

// Scaled pressure excess of the initial data,
// a/(eps^2 (gamma-1)) int (rho^gamma - gamma rho rhobar^(gamma-1)
//                           + (gamma-1) rhobar^gamma) dx;
// bounded uniformly in eps for well-prepared data.
inline double scaled_pressure_excess(const CompressibleState& s, const FluidParams& p) {
    FluctuationView fv = fluctuation_view(s, p);
    ScalarField rem = pressure_remainder(fv.phi, fv.rho_bar, p);
    return integral(rem) / (p.gamma - 1.0);
}

// Largest nu making each line of the pointwise pressure-coercivity
// inequalities true on a 1D scan over x in [0, xmax]:
//   x^g - 1 - g(x-1) >= nu |x-1|^2   (x <= R, and all x when g >= 2)
//   x^g - 1 - g(x-1) >= nu |x-1|^g   (x >= R, g < 2)
struct CoercivityScan {
    double nu_quadratic = 0.0;
    double nu_power = 0.0; // gamma exponent branch (g < 2 only)
};

inline CoercivityScan coercivity_scan(double gamma, double R, double xmax = 10.0,
                                      int npts = 20001) {
    CoercivityScan out;
    double nu_q = 1e300, nu_p = 1e300;
    for (int i = 0; i < npts; ++i) {
        const double x = xmax * i / (npts - 1);
        if (std::abs(x - 1.0) < 1e-9) continue;
        const double lhs = std::pow(x, gamma) - 1.0 - gamma * (x - 1.0);
        const double d = std::abs(x - 1.0);
        if (gamma >= 2.0 || x <= R) nu_q = std::min(nu_q, lhs / (d * d));
        if (gamma < 2.0 && x >= R) nu_p = std::min(nu_p, lhs / std::pow(d, gamma));
    }
    out.nu_quadratic = nu_q;
    out.nu_power = (gamma < 2.0) ? nu_p : 0.0;
    return out;
}

// Fluctuation norms per the gamma >= 2 / gamma < 2 dichotomy.
struct FluctuationNorms {
    double phi_l2 = 0.0;          // gamma >= 2 branch: ||phi||_L2
    double phi_low_l2 = 0.0;      // gamma < 2: ||phi chi_{rho<R}||_L2
    double phi_high_lgamma = 0.0; // gamma < 2: ||phi chi_{rho>=R}||_Lgamma
    double predicted_high_weight = 0.0; // eps^(2/gamma - 1)
};

inline FluctuationNorms fluctuation_norms(const CompressibleState& s, const FluidParams& p,
                                          double R = 2.0) {
    FluctuationNorms out;
    FluctuationView fv = fluctuation_view(s, p);
    if (p.gamma >= 2.0) {
        out.phi_l2 = l2_norm(fv.phi);
        return out;
    }
    if (!(R > 1.0)) throw std::invalid_argument("fluctuation_norms: R must exceed 1");
    const double* rv = s.rho.values();
    const double* pv = fv.phi.values();
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < s.rho.size(); ++i) {
        if (rv[i] < R)
            lo += pv[i] * pv[i];
        else
            hi += std::pow(std::abs(pv[i]), p.gamma);
    }
    const double cell = s.rho.grid().cell_volume();
    out.phi_low_l2 = std::sqrt(lo * cell);
    out.phi_high_lgamma = std::pow(hi * cell, 1.0 / p.gamma);
    out.predicted_high_weight = std::pow(p.eps, 2.0 / p.gamma - 1.0);
    return out;
}

} // namespace mhdlab
