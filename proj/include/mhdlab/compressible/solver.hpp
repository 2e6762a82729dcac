// Pseudo-spectral solver for the scaled compressible isentropic MHD system
// on the torus.
//
// Strang composition per step:
//   half step of the exact acoustic group on (phi, m) at time dt/(2 eps),
//   half step of the exact momentum/field diffusion semigroup,
//   explicit low-storage RK3 on the remaining nonstiff terms,
//   and the mirrored half steps.
// The stiff (b/eps) grad phi / (1/eps) div m pair is integrated exactly, so
// dt is set by the advective scale alone, independent of eps. The mean
// density never enters any update and is conserved to rounding.
#pragma once

#include <functional>
#include <optional>

#include "mhdlab/acoustic/group.hpp"
#include "mhdlab/compressible/dynamics.hpp"

namespace mhdlab {

struct StepRecord {
    double t = 0.0;
    EnergyReport energy;
    double mass_mean = 0.0;
    double div_H_l2 = 0.0;
    double min_rho = 0.0;
};

class CompressibleSolver {
public:
    CompressibleSolver(const CompressibleState& init, const FluidParams& p)
        : p_(p), grid_(init.rho.grid()) {
        auto bad = validate_params(p);
        if (!bad.empty()) throw std::invalid_argument("invalid params: " + bad.front());
        rho_bar_ = init.rho.mean();
        if (!(rho_bar_ > 0.0)) throw std::invalid_argument("nonpositive mean density");
        b_ = p.acoustic_b(rho_bar_);
        FluctuationView fv = fluctuation_view(init, p);
        phi_ = std::move(fv.phi);
        m_ = std::move(fv.m);
        H_ = init.H;
        time_ = init.time;
        dealias(phi_);
        dealias(m_);
        dealias(H_);
        H_ = leray_project(H_);
    }

    double time() const { return time_; }
    double rho_bar() const { return rho_bar_; }
    double acoustic_b() const { return b_; }

    CompressibleState state() const {
        CompressibleState s;
        s.rho = phi_;
        const double rb = rho_bar_, eps = p_.eps;
        for_each_value(s.rho, [rb, eps](double& v) { v = rb + eps * v; });
        s.u = velocity_from_momentum(s.rho, m_);
        s.H = H_;
        s.time = time_;
        return s;
    }

    FluctuationView fluctuation() const { return FluctuationView{phi_, m_, rho_bar_}; }
    const VectorField& magnetic() const { return H_; }

    void step(double dt) {
        if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
        apply_group_half(dt);
        diffuse(0.5 * dt);
        rk3(dt);
        diffuse(0.5 * dt);
        apply_group_half(dt);
        H_ = leray_project(H_);
        time_ += dt;
        check_health();
    }

private:
    void apply_group_half(double dt) {
        AcousticPair pair{std::move(phi_), std::move(m_)};
        pair = apply_group(pair, 0.5 * dt / p_.eps, GroupParams{b_});
        phi_ = std::move(pair.phi);
        m_ = std::move(pair.m);
    }

    // Exact semigroup of mu lap m + lam grad div m and nu lap H.
    void diffuse(double tau) {
        const SpectralTable& st = SpectralTable::of(grid_);
        const int d = grid_.dim();
        std::vector<std::complex<double>*> mc(d), hc(d);
        for (int c = 0; c < d; ++c) {
            mc[c] = m_[c].coeffs_mut();
            hc[c] = H_[c].coeffs_mut();
        }
        for (std::size_t i = 0; i < grid_.spectral_size(); ++i) {
            const double k2 = st.k2[i];
            if (k2 == 0.0) continue;
            const double et = std::exp(-p_.mu * k2 * tau);
            const double el = std::exp(-(p_.mu + p_.lam) * k2 * tau);
            const double eh = std::exp(-p_.nu * k2 * tau);
            // split m into longitudinal/transverse parts per mode
            std::complex<double> kdot(0.0, 0.0);
            for (int c = 0; c < d; ++c) kdot += st.k[c][i] * mc[c][i];
            kdot /= k2;
            for (int c = 0; c < d; ++c) {
                const std::complex<double> ml = st.k[c][i] * kdot;
                mc[c][i] = et * (mc[c][i] - ml) + el * ml;
                hc[c][i] *= eh;
            }
        }
    }

    // Nonstiff stage forcing; phi (hence rho) is frozen inside the middle
    // block, so only (m, H) evolve here.
    void stage_rhs(const ScalarField& rho, VectorField& Fm, VectorField& FH) {
        const int d = grid_.dim();
        VectorField u = velocity_from_momentum(rho, m_);

        Fm = lorentz_force(H_);
        if (d == 2) {
            ScalarField Txx = product(m_[0], u[0]);
            ScalarField Txy = product(m_[0], u[1]);
            ScalarField Tyy = product(m_[1], u[1]);
            axpy(Fm[0], -1.0, derivative(Txx, 0));
            axpy(Fm[0], -1.0, derivative(Txy, 1));
            axpy(Fm[1], -1.0, derivative(Txy, 0));
            axpy(Fm[1], -1.0, derivative(Tyy, 1));
        } else {
            for (int j = 0; j < d; ++j)
                for (int i = 0; i < d; ++i)
                    axpy(Fm[j], -1.0, derivative(product(m_[i], u[j]), i));
        }

        // correction for viscosity acting on u rather than m
        VectorField w(grid_);
        for (int c = 0; c < d; ++c) {
            const double* uv = u[c].values();
            const double* mv = m_[c].values();
            double* wv = w[c].values_mut();
            for (std::size_t i = 0; i < grid_.size(); ++i) wv[i] = uv[i] - mv[i];
            dealias(w[c]);
            axpy(Fm[c], p_.mu, laplacian(w[c]));
        }
        VectorField gdw = gradient(divergence(w));
        axpy(Fm, p_.lam, gdw);

        VectorField gp = gradient(pressure_remainder(phi_, rho_bar_, p_));
        axpy(Fm, -1.0, gp);
        for (int c = 0; c < d; ++c) dealias(Fm[c]);

        // induction transport (curl form is solenoidal by construction)
        if (d == 2) {
            ScalarField s = product(u[0], H_[1]);
            axpy(s, -1.0, product(u[1], H_[0]));
            FH = perp_gradient2d(s);
        } else {
            VectorField s(grid_);
            for (int i = 0; i < 3; ++i) {
                const int j = (i + 1) % 3, k = (i + 2) % 3;
                s[i] = product(u[j], H_[k]);
                axpy(s[i], -1.0, product(u[k], H_[j]));
            }
            FH = curl3d(s);
        }
    }

    void rk3(double dt) {
        // Williamson low-storage coefficients
        static constexpr double A[3] = {0.0, -5.0 / 9.0, -153.0 / 128.0};
        static constexpr double B[3] = {1.0 / 3.0, 15.0 / 16.0, 8.0 / 15.0};

        ScalarField rho = phi_;
        const double rb = rho_bar_, eps = p_.eps;
        for_each_value(rho, [rb, eps](double& v) { v = rb + eps * v; });
        {
            const double* rv = rho.values();
            for (std::size_t i = 0; i < rho.size(); ++i)
                if (!(rv[i] > 0.0)) throw SolverAbort("density lost positivity", time_);
        }

        VectorField qm(grid_), qH(grid_), Fm(grid_), FH(grid_);
        for (int s = 0; s < 3; ++s) {
            stage_rhs(rho, Fm, FH);
            for (int c = 0; c < grid_.dim(); ++c) {
                scale(qm[c], A[s]);
                axpy(qm[c], dt, Fm[c]);
                axpy(m_[c], B[s], qm[c]);
                scale(qH[c], A[s]);
                axpy(qH[c], dt, FH[c]);
                axpy(H_[c], B[s], qH[c]);
            }
        }
    }

    void check_health() const {
        const std::complex<double>* c = phi_.coeffs();
        double s = std::norm(c[0]);
        for (int a = 0; a < grid_.dim(); ++a) s += std::norm(m_[a].coeffs()[0]);
        if (!std::isfinite(s) || !std::isfinite(sobolev_norm_sq(phi_, 0.0)) ||
            !std::isfinite(sobolev_norm_sq(m_[0], 0.0)))
            throw SolverAbort("non-finite state", time_);
    }

    FluidParams p_;
    GridSpec grid_;
    double rho_bar_ = 1.0;
    double b_ = 2.0;
    double time_ = 0.0;
    ScalarField phi_;
    VectorField m_;
    VectorField H_;
};

inline StepRecord make_record(const CompressibleState& s, const FluidParams& p, double E0,
                              double cumD) {
    StepRecord r;
    r.t = s.time;
    r.energy = energy_report(s, p, E0, cumD);
    r.mass_mean = s.rho.mean();
    r.div_H_l2 = l2_norm(divergence(s.H));
    const double* rv = s.rho.values();
    r.min_rho = rv[0];
    for (std::size_t i = 1; i < s.rho.size(); ++i) r.min_rho = std::min(r.min_rho, rv[i]);
    return r;
}

struct SimulationTrace {
    std::vector<CompressibleState> states;
    std::vector<StepRecord> records;
};

// March to time T with fixed dt (snapped so an integer number of steps
// lands on T exactly). Samples every `stride` steps; the observer, when
// given, sees every sample. Deterministic for fixed inputs.
inline SimulationTrace
simulate(const CompressibleState& init, const FluidParams& p, double T, double dt,
         int stride = 1,
         const std::function<void(const CompressibleState&, const StepRecord&)>& observer = {},
         bool store_states = true) {
    if (!(T >= 0.0)) throw std::invalid_argument("simulate: T must be nonnegative");
    SimulationTrace trace;
    CompressibleSolver solver(init, p);

    CompressibleState s0 = solver.state();
    StepRecord rec = make_record(s0, p, 0.0, 0.0);
    const double E0 = rec.energy.E;
    rec.energy.E0 = E0;
    double cumD = 0.0, lastD = rec.energy.D;
    if (store_states) trace.states.push_back(s0);
    trace.records.push_back(rec);
    if (observer) observer(s0, rec);
    if (T == 0.0) return trace;

    const int nsteps = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
    const double h = T / nsteps;
    for (int k = 1; k <= nsteps; ++k) {
        solver.step(h);
        CompressibleState s = solver.state();
        StepRecord r = make_record(s, p, E0, 0.0);
        cumD += 0.5 * h * (lastD + r.energy.D);
        lastD = r.energy.D;
        r.energy.cumulative_D = cumD;
        if (k % stride == 0 || k == nsteps) {
            if (store_states) trace.states.push_back(s);
            trace.records.push_back(r);
            if (observer) observer(s, r);
        }
    }
    return trace;
}

// Advective CFL time step from the initial data; independent of eps.
inline double default_dt(const CompressibleState& init, double cfl = 0.5) {
    const GridSpec& g = init.rho.grid();
    double vmax = 0.0;
    for (int c = 0; c < g.dim(); ++c)
        vmax = std::max({vmax, linf_norm(init.u[c]), linf_norm(init.H[c])});
    double hmin = g.spacing(0);
    for (int a = 1; a < g.dim(); ++a) hmin = std::min(hmin, g.spacing(a));
    return cfl * hmin / std::max(vmax, 0.1);
}

} // namespace mhdlab
