// Fluid parameters for the scaled compressible isentropic MHD system and
// their admissibility constraints.
#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace mhdlab {

struct FluidParams {
    double a = 1.0;     // pressure constant, p = a rho^gamma
    double gamma = 2.0; // adiabatic exponent
    double eps = 0.1;   // Mach-like scaling parameter
    double mu = 0.05;   // shear viscosity
    double lam = 0.0;   // bulk viscosity
    double nu = 0.05;   // magnetic viscosity
    int dim = 2;

    // Sound-speed-squared coefficient of the stiff acoustic pair at the
    // reference density rho_bar (conserved in time).
    double acoustic_b(double rho_bar) const {
        return a * gamma * std::pow(rho_bar, gamma - 1.0);
    }
};

// Returns the list of violated constraints; empty means admissible.
inline std::vector<std::string> validate_params(const FluidParams& p) {
    std::vector<std::string> v;
    auto add = [&v](const std::string& s) { v.push_back(s); };
    if (!(p.a > 0.0)) add("a must be positive");
    if (!(p.gamma > 1.0)) add("gamma must exceed 1");
    if (!(p.eps > 0.0 && p.eps <= 1.0)) add("eps must lie in (0, 1]");
    if (!(p.mu > 0.0)) add("mu must be positive");
    if (!(2.0 * p.mu + p.dim * p.lam > 0.0)) {
        std::ostringstream os;
        os << "2*mu + N*lam must be positive (got " << 2.0 * p.mu + p.dim * p.lam << ")";
        add(os.str());
    }
    if (!(p.nu > 0.0)) add("nu must be positive");
    if (p.dim != 2 && p.dim != 3) add("dim must be 2 or 3");
    if (!(p.gamma > 0.5 * p.dim)) {
        std::ostringstream os;
        os << "gamma must exceed N/2 (got gamma=" << p.gamma << ", N=" << p.dim << ")";
        add(os.str());
    }
    return v;
}

inline bool params_ok(const FluidParams& p) { return validate_params(p).empty(); }

} // namespace mhdlab
