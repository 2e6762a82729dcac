// Snapshot types of the compressible solver: state, fluctuation view,
// energy/dissipation reports, and the unscaled-variable view.
#pragma once

#include <stdexcept>

#include "mhdlab/compressible/params.hpp"
#include "mhdlab/core/norms.hpp"
#include "mhdlab/core/ops.hpp"

namespace mhdlab {

struct CompressibleState {
    ScalarField rho;
    VectorField u;
    VectorField H;
    double time = 0.0;
};

// phi = (rho - rho_bar)/eps and m = rho u.
struct FluctuationView {
    ScalarField phi;
    VectorField m;
    double rho_bar = 1.0;
};

struct EnergyReport {
    double E = 0.0;            // total energy E_eps
    double D = 0.0;            // instantaneous dissipation D_eps
    double E0 = 0.0;           // initial energy
    double cumulative_D = 0.0; // time-integrated dissipation
};

inline double mean_density(const CompressibleState& s) { return s.rho.mean(); }

inline FluctuationView fluctuation_view(const CompressibleState& s, const FluidParams& p) {
    FluctuationView f;
    f.rho_bar = mean_density(s);
    f.phi = s.rho;
    const double rb = f.rho_bar, inv_eps = 1.0 / p.eps;
    for_each_value(f.phi, [rb, inv_eps](double& v) { v = (v - rb) * inv_eps; });
    f.m = VectorField(s.u.grid());
    for (int c = 0; c < s.u.dim(); ++c) {
        const double* rv = s.rho.values();
        const double* uv = s.u[c].values();
        double* mv = f.m[c].values_mut();
        for (std::size_t i = 0; i < s.rho.size(); ++i) mv[i] = rv[i] * uv[i];
    }
    return f;
}

// Unscaled variables of the original system: u~ = eps u, H~ = eps H,
// t~ = t/eps, rho~ = rho.
struct UnscaledSnapshot {
    ScalarField rho;
    VectorField u;
    VectorField H;
    double time = 0.0;
};

inline UnscaledSnapshot rescale_to_original(const CompressibleState& s, double eps) {
    UnscaledSnapshot out{s.rho, s.u, s.H, s.time / eps};
    scale(out.u, eps);
    scale(out.H, eps);
    return out;
}

// E_eps = int (rho|u|^2/2 + |H|^2/2 + a/(eps^2 (gamma-1)) rho^gamma) dx
// D_eps = int (mu |Du|^2 + lam (div u)^2 + nu |curl H|^2) dx
// The pressure potential enters with its full weight: that is the
// functional the dynamics actually conserves (E' = -D for smooth
// solutions); halving it would turn potential/kinetic exchange into
// apparent energy drift.
inline EnergyReport energy_report(const CompressibleState& s, const FluidParams& p,
                                  double E0 = 0.0, double cumulative_D = 0.0) {
    const GridSpec& g = s.rho.grid();
    const double* rv = s.rho.values();
    double kin = 0.0, mag = 0.0, prs = 0.0;
    std::vector<const double*> uv(g.dim()), hv(g.dim());
    for (int c = 0; c < g.dim(); ++c) {
        uv[c] = s.u[c].values();
        hv[c] = s.H[c].values();
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        double u2 = 0.0, h2 = 0.0;
        for (int c = 0; c < g.dim(); ++c) {
            u2 += uv[c][i] * uv[c][i];
            h2 += hv[c][i] * hv[c][i];
        }
        kin += rv[i] * u2;
        mag += h2;
        prs += std::pow(rv[i], p.gamma);
    }
    const double cell = g.cell_volume();
    EnergyReport er;
    er.E = (0.5 * (kin + mag) + prs * p.a / (p.eps * p.eps * (p.gamma - 1.0))) * cell;

    double d = 0.0;
    for (int c = 0; c < g.dim(); ++c) {
        for (int a2 = 0; a2 < g.dim(); ++a2) d += p.mu * sobolev_norm_sq(derivative(s.u[c], a2), 0.0);
    }
    d += p.lam * sobolev_norm_sq(divergence(s.u), 0.0);
    if (g.dim() == 2)
        d += p.nu * sobolev_norm_sq(curl2d(s.H), 0.0);
    else
        d += p.nu * sobolev_norm_sq(curl3d(s.H), 0.0);
    er.D = d;
    er.E0 = (E0 == 0.0) ? er.E : E0;
    er.cumulative_D = cumulative_D;
    return er;
}

// Indicator split of the velocity by |rho - 1| <= 1/2.
inline std::pair<VectorField, VectorField> velocity_split(const CompressibleState& s) {
    const GridSpec& g = s.u.grid();
    std::pair<VectorField, VectorField> out{VectorField(g), VectorField(g)};
    const double* rv = s.rho.values();
    for (int c = 0; c < g.dim(); ++c) {
        const double* uv = s.u[c].values();
        double* a = out.first[c].values_mut();
        double* b = out.second[c].values_mut();
        for (std::size_t i = 0; i < g.size(); ++i) {
            const bool near = std::abs(rv[i] - 1.0) <= 0.5;
            a[i] = near ? uv[i] : 0.0;
            b[i] = near ? 0.0 : uv[i];
        }
    }
    return out;
}

} // namespace mhdlab
