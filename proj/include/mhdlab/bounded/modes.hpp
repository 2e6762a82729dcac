// Neumann eigenmodes of the model geometries, their I/J classification,
// the first-order boundary-layer damping prediction, the over-determined
// eigenproblem check, and the degenerate-pair gradient identity.
//
// A mode is a finite combination of cosine products; after the
// degenerate-eigenvalue basis rotation the combination may have several
// terms. Evaluators (value, gradient, Hessian) are analytic.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <vector>

#include "mhdlab/bounded/geometry.hpp"

namespace mhdlab {

struct CosineTerm {
    double weight = 1.0;
    int mx = 0; // tangential (x) index
    int my = 0; // wall-normal (y) index; the only index for the interval
};

struct NeumannMode {
    Geometry geom;
    int kx = 0, ky = 0;   // catalog indices of the seed term
    double lambda0 = 0.0; // sqrt of the eigenvalue, -lap psi = lambda0^2 psi
    std::vector<CosineTerm> terms;
    double boundary_grad_integral = 0.0; // int_{dOmega} |grad psi|^2 ds
    char cls = '?';                      // 'I' or 'J'

    double psi(double x, double y = 0.0) const {
        double v = 0.0;
        for (const auto& t : terms) v += t.weight * std::cos(t.mx * x) * std::cos(t.my * y);
        return v;
    }
    // gradient; for the interval only the first component is meaningful
    void grad(double x, double y, double& gx, double& gy) const {
        gx = gy = 0.0;
        for (const auto& t : terms) {
            gx -= t.weight * t.mx * std::sin(t.mx * x) * std::cos(t.my * y);
            gy -= t.weight * t.my * std::cos(t.mx * x) * std::sin(t.my * y);
        }
    }
    void hess(double x, double y, double& hxx, double& hxy, double& hyy) const {
        hxx = hxy = hyy = 0.0;
        for (const auto& t : terms) {
            hxx -= t.weight * t.mx * t.mx * std::cos(t.mx * x) * std::cos(t.my * y);
            hxy += t.weight * t.mx * t.my * std::sin(t.mx * x) * std::sin(t.my * y);
            hyy -= t.weight * t.my * t.my * std::cos(t.mx * x) * std::cos(t.my * y);
        }
    }
};

namespace detail {

// Boundary quadrature nodes (uniform trapezoid per edge, exact for the
// cosine products involved). Each edge returns the arclength weight.
struct EdgeSample {
    double x, y;   // position
    double w;      // quadrature weight
    int component; // boundary component id
};

inline std::vector<EdgeSample> boundary_samples(const Geometry& g, int n = 512) {
    std::vector<EdgeSample> out;
    const double pi = std::numbers::pi;
    auto wrap = [n](int j) { return (j == 0) ? 0.5 : 1.0; }; // trapezoid ends
    switch (g.kind) {
        case GeometryKind::interval:
            out.push_back({0.0, 0.0, 1.0, 0});
            out.push_back({pi, 0.0, 1.0, 1});
            break;
        case GeometryKind::channel: {
            const double h = 2.0 * pi / n; // periodic direction: all weights h
            for (int j = 0; j < n; ++j) {
                out.push_back({j * h, 0.0, h, 0});
                out.push_back({j * h, pi, h, 1});
            }
            break;
        }
        case GeometryKind::rectangle: {
            const double h = pi / n;
            for (int j = 0; j <= n; ++j) {
                const double w = ((j == 0 || j == n) ? 0.5 : 1.0) * h;
                out.push_back({j * h, 0.0, w, 0});
                out.push_back({j * h, pi, w, 1});
                out.push_back({0.0, j * h, w, 2});
                out.push_back({pi, j * h, w, 3});
            }
            (void)wrap;
            break;
        }
    }
    return out;
}

inline double boundary_grad_dot(const NeumannMode& a, const NeumannMode& b) {
    double acc = 0.0;
    for (const auto& s : boundary_samples(a.geom)) {
        double ax, ay, bx, by;
        a.grad(s.x, s.y, ax, ay);
        b.grad(s.x, s.y, bx, by);
        acc += s.w * (ax * bx + ay * by);
    }
    return acc;
}

} // namespace detail

// Closed-form catalog, sorted by eigenvalue then index; degenerate groups
// are rotated so the boundary cross integrals vanish. For the channel the
// catalog carries the tangentially structured modes (kx >= 1); the
// wall-normal-only family is exactly the interval catalog.
inline std::vector<NeumannMode> neumann_modes(const Geometry& g, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("neumann_modes: cutoff must be >= 1");
    const double pi = std::numbers::pi;
    std::vector<NeumannMode> modes;

    auto push = [&](int kx, int ky, double c) {
        NeumannMode m;
        m.geom = g;
        m.kx = kx;
        m.ky = ky;
        m.lambda0 = std::sqrt(double(kx * kx + ky * ky));
        m.terms = {{c, kx, ky}};
        modes.push_back(std::move(m));
    };

    const int span = cutoff + 2; // generous index window before sorting
    switch (g.kind) {
        case GeometryKind::interval:
            for (int k = 1; k <= cutoff; ++k) push(k, 0, std::sqrt(2.0 / pi));
            break;
        case GeometryKind::channel:
            for (int m = 1; m <= span; ++m)
                for (int n = 0; n <= span; ++n)
                    push(m, n, n == 0 ? 1.0 / pi : std::sqrt(2.0) / pi);
            break;
        case GeometryKind::rectangle:
            for (int m = 0; m <= span; ++m)
                for (int n = 0; n <= span; ++n) {
                    if (m == 0 && n == 0) continue;
                    const double c =
                        (m >= 1 && n >= 1) ? 2.0 / pi : std::sqrt(2.0) / pi;
                    push(m, n, c);
                }
            break;
    }

    std::sort(modes.begin(), modes.end(), [](const NeumannMode& a, const NeumannMode& b) {
        if (a.lambda0 != b.lambda0) return a.lambda0 < b.lambda0;
        if (a.kx != b.kx) return a.kx < b.kx;
        return a.ky < b.ky;
    });
    if (static_cast<int>(modes.size()) > cutoff) modes.resize(cutoff);

    // rotate degenerate groups to zero the boundary cross integrals
    std::size_t i = 0;
    while (i < modes.size()) {
        std::size_t j = i + 1;
        while (j < modes.size() && std::abs(modes[j].lambda0 - modes[i].lambda0) < 1e-12) ++j;
        const std::size_t dim = j - i;
        if (dim > 1) {
            Eigen::MatrixXd B(dim, dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = r; c < dim; ++c)
                    B(r, c) = B(c, r) = detail::boundary_grad_dot(modes[i + r], modes[i + c]);
            double offdiag = 0.0;
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    if (r != c) offdiag = std::max(offdiag, std::abs(B(r, c)));
            if (offdiag > 1e-12) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
                std::vector<NeumannMode> rotated(dim);
                for (std::size_t c = 0; c < dim; ++c) {
                    rotated[c] = modes[i + c];
                    rotated[c].terms.clear();
                    for (std::size_t r = 0; r < dim; ++r) {
                        const double w = es.eigenvectors()(r, c);
                        if (std::abs(w) < 1e-14) continue;
                        for (const auto& t : modes[i + r].terms)
                            rotated[c].terms.push_back({w * t.weight, t.mx, t.my});
                    }
                }
                for (std::size_t c = 0; c < dim; ++c) modes[i + c] = rotated[c];
            }
        }
        i = j;
    }

    for (auto& m : modes) {
        m.boundary_grad_integral = detail::boundary_grad_dot(m, m);
        m.cls = (m.boundary_grad_integral > 1e-10) ? 'I' : 'J';
    }
    return modes;
}

// I if the boundary gradient energy is positive, else J. For J modes the
// momentum eigenvector m_pm = grad psi / (i lambda) vanishes on the whole
// boundary; checked here.
inline char classify_mode(const NeumannMode& m) {
    if (m.boundary_grad_integral > 1e-10) return 'I';
    double worst = 0.0;
    for (const auto& s : detail::boundary_samples(m.geom)) {
        double gx, gy;
        m.grad(s.x, s.y, gx, gy);
        worst = std::max(worst, std::hypot(gx, gy) / m.lambda0);
    }
    if (worst > 1e-10)
        throw std::logic_error("classify_mode: J mode with nonvanishing boundary momentum");
    return 'J';
}

// First-order damping of the viscous quasi-eigenvalue,
// i lambda_{k,1}^pm = -((1 pm i)/2) sqrt(mu / (2 lambda0^3)) B,
// B = int_{dOmega} |grad psi|^2 ds. Exactly zero for J modes.
struct DampingPrediction {
    std::complex<double> plus{0.0, 0.0};
    std::complex<double> minus{0.0, 0.0};
};

inline DampingPrediction predicted_damping(const NeumannMode& m, double mu) {
    DampingPrediction d;
    if (m.cls == 'J' || m.boundary_grad_integral <= 1e-10) return d;
    const double mag =
        0.5 * std::sqrt(mu / (2.0 * m.lambda0 * m.lambda0 * m.lambda0)) * m.boundary_grad_integral;
    d.plus = std::complex<double>(-mag, -mag);
    d.minus = std::complex<double>(-mag, +mag);
    return d;
}

// Over-determined problem scan: a nontrivial witness is a mode whose trace
// is constant on every boundary component. The interval is flagged by
// construction (each component is a single point); the report carries the
// per-component traces so the caller can see why.
struct AssumptionAReport {
    bool satisfied = true;
    struct Witness {
        int kx, ky;
        double lambda0;
        std::vector<double> component_means;
    };
    std::vector<Witness> witnesses;
};

inline AssumptionAReport assumption_A_check(const Geometry& g,
                                            const std::vector<NeumannMode>& modes) {
    AssumptionAReport rep;
    for (const auto& m : modes) {
        auto samples = detail::boundary_samples(g);
        int ncomp = 0;
        for (const auto& s : samples) ncomp = std::max(ncomp, s.component + 1);
        std::vector<double> sum(ncomp, 0.0), sumsq(ncomp, 0.0), wsum(ncomp, 0.0);
        for (const auto& s : samples) {
            const double v = m.psi(s.x, s.y);
            sum[s.component] += s.w * v;
            sumsq[s.component] += s.w * v * v;
            wsum[s.component] += s.w;
        }
        bool constant_on_all = true;
        std::vector<double> means(ncomp);
        for (int c = 0; c < ncomp; ++c) {
            means[c] = sum[c] / wsum[c];
            const double var = sumsq[c] / wsum[c] - means[c] * means[c];
            if (var > 1e-10) constant_on_all = false;
        }
        if (constant_on_all) {
            rep.satisfied = false;
            rep.witnesses.push_back({m.kx, m.ky, m.lambda0, means});
        }
    }
    return rep;
}

// Residual of
//   div(grad a (x) grad b + grad b (x) grad a)
//     = -lambda^2 grad(a b) + grad(grad a . grad b)
// for equal-eigenvalue pairs, evaluated analytically on an interior grid.
inline double gradient_identity_check(const NeumannMode& a, const NeumannMode& b, int n = 64) {
    if (std::abs(a.lambda0 - b.lambda0) > 1e-12)
        throw std::invalid_argument("gradient_identity_check: eigenvalues differ");
    const double pi = std::numbers::pi;
    const double lam2 = a.lambda0 * a.lambda0;
    double acc = 0.0, cell = (pi / n) * (pi / n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = (i + 0.5) * pi / n, y = (j + 0.5) * pi / n;
            double agx, agy, bgx, bgy, ahxx, ahxy, ahyy, bhxx, bhxy, bhyy;
            a.grad(x, y, agx, agy);
            b.grad(x, y, bgx, bgy);
            a.hess(x, y, ahxx, ahxy, ahyy);
            b.hess(x, y, bhxx, bhxy, bhyy);
            const double lap_a = ahxx + ahyy, lap_b = bhxx + bhyy;
            // lhs_j = d_i (a_i b_j + b_i a_j)
            const double lhs_x = lap_a * bgx + agx * bhxx + agy * bhxy + lap_b * agx +
                                 bgx * ahxx + bgy * ahxy;
            const double lhs_y = lap_a * bgy + agx * bhxy + agy * bhyy + lap_b * agy +
                                 bgx * ahxy + bgy * ahyy;
            // rhs_j = -lam^2 d_j(ab) + d_j(grad a . grad b)
            const double pa = a.psi(x, y), pb = b.psi(x, y);
            const double rhs_x = -lam2 * (agx * pb + pa * bgx) +
                                 (ahxx * bgx + agx * bhxx + ahxy * bgy + agy * bhxy);
            const double rhs_y = -lam2 * (agy * pb + pa * bgy) +
                                 (ahxy * bgx + agx * bhxy + ahyy * bgy + agy * bhyy);
            acc += ((lhs_x - rhs_x) * (lhs_x - rhs_x) + (lhs_y - rhs_y) * (lhs_y - rhs_y)) * cell;
        }
    return std::sqrt(acc);
}

} // namespace mhdlab
