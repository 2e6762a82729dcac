// Weak-formulation residual diagnostic: evaluates the momentum and
// induction integral identities against a bank of smooth divergence-free
// space tests and smooth time windows vanishing at the final time, by
// trapezoid quadrature on a solver trace.
#pragma once

#include "mhdlab/incompressible/solver.hpp"

namespace mhdlab {

struct SpaceTimeTest {
    std::string name;
    VectorField space; // divergence-free
    std::function<double(double)> window;   // psi(t), psi(T) = 0
    std::function<double(double)> window_dt; // psi'(t)
};

// Three trig space tests and two windows, fixed for reproducibility.
inline std::vector<SpaceTimeTest> standard_test_bank(const GridSpec& g, double T) {
    if (g.dim() != 2) throw std::invalid_argument("standard_test_bank: 2D only");
    std::vector<VectorField> fields;
    {
        VectorField f(g); // stream psi = sin x sin y
        f[0] = ScalarField::sample(g, [](double x, double y, double) { return std::sin(x) * std::cos(y); });
        f[1] = ScalarField::sample(g, [](double x, double y, double) { return -std::cos(x) * std::sin(y); });
        fields.push_back(std::move(f));
    }
    {
        VectorField f(g); // stream psi = cos 2y
        f[0] = ScalarField::sample(g, [](double, double y, double) { return -2.0 * std::sin(2.0 * y); });
        f[1] = ScalarField(g);
        fields.push_back(std::move(f));
    }
    {
        VectorField f(g); // stream psi = sin(x + 2y)
        f[0] = ScalarField::sample(g, [](double x, double y, double) { return 2.0 * std::cos(x + 2.0 * y); });
        f[1] = ScalarField::sample(g, [](double x, double y, double) { return -std::cos(x + 2.0 * y); });
        fields.push_back(std::move(f));
    }

    std::vector<SpaceTimeTest> bank;
    const char* names[3] = {"tg-cell", "shear", "oblique"};
    for (int i = 0; i < 3; ++i) {
        SpaceTimeTest quad{std::string(names[i]) + "/quadratic", fields[i],
                           [T](double t) { return (1.0 - t / T) * (1.0 - t / T); },
                           [T](double t) { return -2.0 * (1.0 - t / T) / T; }};
        bank.push_back(std::move(quad));
        SpaceTimeTest cosw{std::string(names[i]) + "/cosine", fields[i],
                           [T](double t) {
                               const double c = std::cos(0.5 * std::numbers::pi * t / T);
                               return c * c;
                           },
                           [T](double t) {
                               return -0.5 * std::numbers::pi / T *
                                      std::sin(std::numbers::pi * t / T);
                           }};
        if (i == 0) bank.push_back(std::move(cosw));
    }
    return bank;
}

struct WeakDefect {
    std::string test;
    double momentum = 0.0;
    double induction = 0.0;
};

inline std::vector<WeakDefect> weak_residual(const IncompressibleTrace& trace,
                                             const std::vector<SpaceTimeTest>& bank, double mu,
                                             double nu) {
    if (trace.states.size() < 2) throw std::invalid_argument("weak_residual: trace too short");
    const GridSpec& g = trace.states.front().u.grid();
    const int d = g.dim();
    if (d != 2) throw std::invalid_argument("weak_residual: 2D only");

    std::vector<WeakDefect> out;
    for (const auto& test : bank) {
        // cached test-field derivatives
        ScalarField curl_phi = curl2d(test.space);
        std::vector<std::vector<ScalarField>> dphi(d); // dphi[j][i] = d_i phi_j
        for (int j = 0; j < d; ++j) {
            dphi[j].resize(d);
            for (int i = 0; i < d; ++i) dphi[j][i] = derivative(test.space[j], i);
        }

        const std::size_t nt = trace.states.size();
        std::vector<double> mom_integrand(nt), ind_integrand(nt), times(nt);
        for (std::size_t k = 0; k < nt; ++k) {
            const IncompressibleState& s = trace.states[k];
            times[k] = s.time;
            const double psi = test.window(s.time);
            const double dpsi = test.window_dt(s.time);

            double mom = dpsi * inner_l2(s.u, test.space);
            // u_i d_i(phi_j) u_j
            double advec = 0.0;
            for (int i2 = 0; i2 < d; ++i2)
                for (int j = 0; j < d; ++j)
                    advec += inner_l2(product(s.u[i2], s.u[j]), dphi[j][i2]);
            double visc = 0.0;
            for (int j = 0; j < d; ++j)
                for (int i2 = 0; i2 < d; ++i2)
                    visc += inner_l2(derivative(s.u[j], i2), dphi[j][i2]);
            mom += psi * (advec - mu * visc);
            mom += psi * inner_l2(lorentz_force(s.H), test.space); // moved to LHS
            mom_integrand[k] = mom;

            double ind = dpsi * inner_l2(s.H, test.space);
            ScalarField uxH = product(s.u[0], s.H[1]);
            axpy(uxH, -1.0, product(s.u[1], s.H[0]));
            ind += psi * inner_l2(uxH, curl_phi);
            ind -= psi * nu * inner_l2(curl2d(s.H), curl_phi);
            ind_integrand[k] = ind;
        }

        auto trapz = [&](const std::vector<double>& f) {
            double acc = 0.0;
            for (std::size_t k = 0; k + 1 < nt; ++k)
                acc += 0.5 * (times[k + 1] - times[k]) * (f[k] + f[k + 1]);
            return acc;
        };

        WeakDefect defect;
        defect.test = test.name;
        const double psi0 = test.window(times.front());
        defect.momentum =
            std::abs(psi0 * inner_l2(trace.states.front().u, test.space) + trapz(mom_integrand));
        defect.induction =
            std::abs(psi0 * inner_l2(trace.states.front().H, test.space) + trapz(ind_integrand));
        out.push_back(std::move(defect));
    }
    return out;
}

} // namespace mhdlab
