// Leray-projected pseudo-spectral solver for incompressible MHD on the
// torus: projected RK3 with exact viscous semigroups, pressure recovered
// diagnostically from the gradient part of the unprojected forcing. Grid
// and dealiasing conventions match the compressible solver so traces can
// be compared pointwise.
#pragma once

#include <functional>

#include "mhdlab/compressible/dynamics.hpp"

namespace mhdlab {

struct IncompressibleState {
    VectorField u;
    VectorField H;
    ScalarField p; // diagnostic pressure
    double time = 0.0;
};

class IncompressibleSolver {
public:
    IncompressibleSolver(VectorField u0, VectorField H0, double mu, double nu, double t0 = 0.0)
        : grid_(u0.grid()), mu_(mu), nu_(nu), time_(t0) {
        u_ = leray_project(u0);
        H_ = leray_project(H0);
        dealias(u_);
        dealias(H_);
    }

    double time() const { return time_; }

    IncompressibleState state() const {
        IncompressibleState s{u_, H_, pressure(), time_};
        return s;
    }
    const VectorField& velocity() const { return u_; }
    const VectorField& magnetic() const { return H_; }

    void step(double dt) {
        static constexpr double A[3] = {0.0, -5.0 / 9.0, -153.0 / 128.0};
        static constexpr double B[3] = {1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0};
        diffuse(0.5 * dt);
        VectorField qu(grid_), qH(grid_), Fu(grid_), FH(grid_);
        for (int s = 0; s < 3; ++s) {
            stage_rhs(Fu, FH);
            for (int c = 0; c < grid_.dim(); ++c) {
                scale(qu[c], A[s]);
                axpy(qu[c], dt, Fu[c]);
                axpy(u_[c], B[s], qu[c]);
                scale(qH[c], A[s]);
                axpy(qH[c], dt, FH[c]);
                axpy(H_[c], B[s], qH[c]);
            }
        }
        diffuse(0.5 * dt);
        u_ = leray_project(u_);
        H_ = leray_project(H_);
        time_ += dt;
        if (!std::isfinite(sobolev_norm_sq(u_[0], 0.0)))
            throw SolverAbort("incompressible solver: non-finite state", time_);
    }

private:
    void diffuse(double tau) {
        const SpectralTable& st = SpectralTable::of(grid_);
        for (int c = 0; c < grid_.dim(); ++c) {
            std::complex<double>* uc = u_[c].coeffs_mut();
            std::complex<double>* hc = H_[c].coeffs_mut();
            for (std::size_t i = 0; i < grid_.spectral_size(); ++i) {
                uc[i] *= std::exp(-mu_ * st.k2[i] * tau);
                hc[i] *= std::exp(-nu_ * st.k2[i] * tau);
            }
        }
    }

    // Unprojected momentum forcing -div(u (x) u) + (curl H) x H; its
    // gradient part defines the pressure.
    VectorField momentum_forcing() const {
        VectorField R = lorentz_force(H_);
        for (int j = 0; j < grid_.dim(); ++j)
            for (int i = 0; i < grid_.dim(); ++i)
                axpy(R[j], -1.0, derivative(product(u_[i], u_[j]), i));
        return R;
    }

    void stage_rhs(VectorField& Fu, VectorField& FH) {
        Fu = leray_project(momentum_forcing());
        if (grid_.dim() == 2) {
            ScalarField s = product(u_[0], H_[1]);
            axpy(s, -1.0, product(u_[1], H_[0]));
            FH = perp_gradient2d(s);
        } else {
            VectorField s(grid_);
            for (int i = 0; i < 3; ++i) {
                const int j = (i + 1) % 3, k = (i + 2) % 3;
                s[i] = product(u_[j], H_[k]);
                axpy(s[i], -1.0, product(u_[k], H_[j]));
            }
            FH = curl3d(s);
        }
    }

    ScalarField pressure() const {
        // grad p = Q[momentum forcing]
        VectorField R = momentum_forcing();
        const SpectralTable& st = SpectralTable::of(grid_);
        ScalarField p(grid_);
        std::complex<double>* pc = p.coeffs_mut();
        std::vector<const std::complex<double>*> rc(grid_.dim());
        for (int c = 0; c < grid_.dim(); ++c) rc[c] = R[c].coeffs();
        for (std::size_t i = 0; i < grid_.spectral_size(); ++i) {
            if (st.k2[i] == 0.0) {
                pc[i] = 0.0;
                continue;
            }
            std::complex<double> kdot(0.0, 0.0);
            for (int c = 0; c < grid_.dim(); ++c) kdot += st.k[c][i] * rc[c][i];
            pc[i] = std::complex<double>(0.0, -1.0) * kdot / st.k2[i];
        }
        return p;
    }

    GridSpec grid_;
    double mu_, nu_, time_;
    VectorField u_, H_;
};

struct IncompressibleTrace {
    std::vector<IncompressibleState> states;
};

inline IncompressibleTrace simulate_incompressible(
    const VectorField& u0, const VectorField& H0, double mu, double nu, double T, double dt,
    int stride = 1,
    const std::function<void(const IncompressibleState&)>& observer = {}) {
    IncompressibleTrace tr;
    IncompressibleSolver solver(u0, H0, mu, nu);
    tr.states.push_back(solver.state());
    if (observer) observer(tr.states.back());
    if (T <= 0.0) return tr;
    const int nsteps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
    const double h = T / nsteps;
    for (int k = 1; k <= nsteps; ++k) {
        solver.step(h);
        if (k % stride == 0 || k == nsteps) {
            tr.states.push_back(solver.state());
            if (observer) observer(tr.states.back());
        }
    }
    return tr;
}

} // namespace mhdlab
