// Linear dissipative wave runs with no-slip walls:
//
//   d_t phi = -(1/eps) div m
//   d_t m   = -(b/eps) grad phi + mu lap m + lam grad div m,   m = 0 on walls
//
// in the paper-normalized variables (b = 1 by default; the first-order
// boundary-layer damping formula is exact for that normalization, and a
// general b rescales the rate by b^(1/4) - see the unit tests). Channel
// runs reduce per tangential wavenumber to a wall-normal problem on
// Chebyshev nodes; the interval is the wall-normal problem itself. The
// stiff/viscous linear system is advanced by Crank-Nicolson (A-stable;
// exactly norm-preserving for the skew inviscid part), factored once.
#pragma once

#include <Eigen/Dense>

#include "mhdlab/bounded/chebyshev.hpp"
#include "mhdlab/bounded/geometry.hpp"
#include "mhdlab/bounded/modes.hpp"

namespace mhdlab {

struct WaveParams {
    double eps = 1e-2;
    double mu = 1.0;
    double lam = 0.0;
    double b = 1.0; // sound-speed-squared of the normalized wave operator
    double T = 1.0;
    double dt = 0.0;     // 0: pick eps/(20 sqrt(b) lambda_max) automatically
    int sample_stride = 1;
};

struct WaveTrace {
    Geometry geom;
    int tangential = 0; // x wavenumber of the reduced channel problem
    cheb::Collocation col;
    WaveParams params;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> phi, mx, my; // my empty for the interval
};

namespace detail {

inline Eigen::MatrixXcd wave_generator(const cheb::Collocation& col, int tangential,
                                       const WaveParams& p, bool interval) {
    const int n = col.count();
    const Eigen::MatrixXd& D = col.D;
    Eigen::MatrixXd D2 = D * D;
    const std::complex<double> I(0.0, 1.0);
    const double m = tangential;

    if (interval) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        // d_t phi = -(1/eps) m'
        A.block(0, n, n, n) = -D / p.eps;
        // d_t m = -(b/eps) phi' + (mu + lam) m''
        A.block(n, 0, n, n) = -(p.b / p.eps) * D;
        A.block(n, n, n, n) = (p.mu + p.lam) * D2;
        return A;
    }

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
    auto blk = [&](int r, int c) { return A.block(r * n, c * n, n, n); };
    // d_t phi = -(1/eps)(i m mx + my')
    blk(0, 1) = -(I * m / p.eps) * Eigen::MatrixXd::Identity(n, n);
    blk(0, 2) = -D.cast<std::complex<double>>() / p.eps;
    // d_t mx = -(b/eps) i m phi + mu (mx'' - m^2 mx) + lam i m (i m mx + my')
    blk(1, 0) = -(I * m * p.b / p.eps) * Eigen::MatrixXd::Identity(n, n);
    blk(1, 1) = (p.mu * (D2 - m * m * Eigen::MatrixXd::Identity(n, n)) -
                 p.lam * m * m * Eigen::MatrixXd::Identity(n, n))
                    .cast<std::complex<double>>();
    blk(1, 2) = (I * m * p.lam) * D.cast<std::complex<double>>();
    // d_t my = -(b/eps) phi' + mu (my'' - m^2 my) + lam (i m mx' + my'')
    blk(2, 0) = -(p.b / p.eps) * D.cast<std::complex<double>>();
    blk(2, 1) = (I * m * p.lam) * D.cast<std::complex<double>>();
    blk(2, 2) = ((p.mu + p.lam) * D2 - p.mu * m * m * Eigen::MatrixXd::Identity(n, n))
                    .cast<std::complex<double>>();
    return A;
}

inline std::vector<int> wall_rows(int n, bool interval) {
    // rows of the momentum components at the two walls
    std::vector<int> rows;
    if (interval) {
        rows = {n, 2 * n - 1};
    } else {
        rows = {n, 2 * n - 1, 2 * n, 3 * n - 1};
    }
    return rows;
}

} // namespace detail

// Initial data built from a catalog mode: the reduced representation of the
// inviscid eigenvector phi_k^+ (carried complex; its companion family is
// the conjugate). For a density-only start use mode_density_init.
inline void mode_plus_init(const NeumannMode& mode, const cheb::Collocation& col,
                           Eigen::VectorXcd& phi, Eigen::VectorXcd& mx, Eigen::VectorXcd& my,
                           bool interval) {
    const int n = col.count();
    phi.resize(n);
    mx.resize(n);
    const std::complex<double> I(0.0, 1.0);
    if (interval) {
        // phi = psi_k(x), m = grad psi / (i lambda)
        for (int j = 0; j < n; ++j) {
            const double x = col.y[j];
            phi[j] = mode.psi(x);
            double gx, gy;
            mode.grad(x, 0.0, gx, gy);
            mx[j] = gx / (I * mode.lambda0);
        }
        my.resize(0);
        return;
    }
    // channel: e^{i kx x} sector coefficients of (psi, grad psi/(i lambda))
    for (const auto& t : mode.terms)
        if (t.mx != mode.kx)
            throw std::invalid_argument(
                "mode_plus_init: mode mixes tangential wavenumbers; no reduced representation");
    my.resize(n);
    for (int j = 0; j < n; ++j) {
        const double y = col.y[j];
        double csum = 0.0, gsum = 0.0;
        for (const auto& t : mode.terms) {
            csum += t.weight * std::cos(t.my * y);
            gsum += t.weight * t.my * std::sin(t.my * y);
        }
        phi[j] = 0.5 * csum;
        mx[j] = 0.5 * mode.kx * csum / mode.lambda0;
        my[j] = 0.5 * I * gsum / mode.lambda0;
    }
}

inline WaveTrace simulate_linear_waves(const Geometry& g, const NeumannMode& mode,
                                       const WaveParams& params) {
    const bool interval = g.kind == GeometryKind::interval;
    if (g.kind == GeometryKind::rectangle)
        throw std::invalid_argument(
            "simulate_linear_waves: rectangle runs are not supported; use interval or channel");
    if (!(params.eps > 0.0) || !(params.b > 0.0))
        throw std::invalid_argument("simulate_linear_waves: eps and b must be positive");

    cheb::Collocation col = cheb::collocation(g.wall_nodes, std::numbers::pi);
    if (params.mu > 0.0) {
        const double layer = std::sqrt(params.eps * params.mu);
        if (cheb::nodes_inside_layer(col, layer) < 8)
            throw std::invalid_argument(
                "simulate_linear_waves: fewer than 8 nodes inside the sqrt(eps mu) wall layer");
    }

    WaveTrace tr;
    tr.geom = g;
    tr.tangential = interval ? 0 : mode.kx;
    tr.col = col;
    tr.params = params;

    const int n = col.count();
    Eigen::MatrixXcd A = detail::wave_generator(col, tr.tangential, params, interval);
    const int dim = static_cast<int>(A.rows());

    double dt = params.dt;
    if (dt <= 0.0) dt = params.eps / (20.0 * std::sqrt(params.b) * std::max(1.0, mode.lambda0));
    const int nsteps = std::max(1, static_cast<int>(std::ceil(params.T / dt - 1e-12)));
    dt = params.T / nsteps;

    Eigen::MatrixXcd M1 = Eigen::MatrixXcd::Identity(dim, dim) - 0.5 * dt * A;
    Eigen::MatrixXcd M2 = Eigen::MatrixXcd::Identity(dim, dim) + 0.5 * dt * A;
    for (int r : detail::wall_rows(n, interval)) {
        M1.row(r).setZero();
        M1(r, r) = 1.0;
        M2.row(r).setZero();
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M1);

    Eigen::VectorXcd phi, mx, my;
    mode_plus_init(mode, col, phi, mx, my, interval);
    Eigen::VectorXcd z(dim);
    z.segment(0, n) = phi;
    z.segment(n, n) = mx;
    if (!interval) z.segment(2 * n, n) = my;
    for (int r : detail::wall_rows(n, interval)) z[r] = 0.0;

    auto record = [&](double t) {
        tr.times.push_back(t);
        tr.phi.push_back(z.segment(0, n));
        tr.mx.push_back(z.segment(n, n));
        if (!interval) tr.my.push_back(z.segment(2 * n, n));
    };
    record(0.0);
    for (int k = 1; k <= nsteps; ++k) {
        z = lu.solve(M2 * z);
        if (!z.allFinite())
            throw std::runtime_error("simulate_linear_waves: non-finite state");
        if (k % params.sample_stride == 0 || k == nsteps) record(k * dt);
    }
    return tr;
}

// Weighted wave energy int (b |phi|^2 + |m|^2) of a trace sample.
inline double wave_energy(const WaveTrace& tr, std::size_t sample) {
    const int n = tr.col.count();
    double e = 0.0;
    for (int j = 0; j < n; ++j) {
        double m2 = std::norm(tr.mx[sample][j]);
        if (!tr.my.empty()) m2 += std::norm(tr.my[sample][j]);
        e += tr.col.w[j] * (tr.params.b * std::norm(tr.phi[sample][j]) + m2);
    }
    return e;
}

} // namespace mhdlab
