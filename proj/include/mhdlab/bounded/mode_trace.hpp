// Mode-amplitude extraction from wave traces, the beta/b pairing identity,
// and envelope demodulation.
//
// Amplitudes are paired against the zeroth-order eigenvectors in the
// reduced (per tangential wavenumber) representation:
//   b_k^pm(t) = <state(t), g_k^pm> / ||g_k^pm||^2
// with the Clenshaw-Curtis weighted complex inner product; beta_k^pm is the
// same pairing without normalization. A + family start (mode_plus_init)
// gives b^+(0) = 1, b^-(0) = 0 and arg b^+ advancing at -lambda/eps.
#pragma once

#include "mhdlab/bounded/waves.hpp"

namespace mhdlab {

struct ModeTrace {
    int kx = 0, ky = 0;
    double lambda0 = 0.0;
    std::vector<double> times;
    std::vector<std::complex<double>> b_plus, b_minus;
    std::vector<std::complex<double>> beta_plus, beta_minus;
};

namespace detail {

struct ReducedMode {
    Eigen::VectorXcd phi, mx, my; // the + family; the - family flips m slots
};

inline ReducedMode reduced_mode(const NeumannMode& mode, const cheb::Collocation& col,
                                bool interval) {
    ReducedMode r;
    Eigen::VectorXcd phi, mx, my;
    mode_plus_init(mode, col, phi, mx, my, interval);
    r.phi = phi;
    r.mx = mx;
    r.my = my;
    return r;
}

inline std::complex<double> wdot(const cheb::Collocation& col, const Eigen::VectorXcd& a,
                                 const Eigen::VectorXcd& b) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < col.count(); ++j) acc += col.w[j] * a[j] * std::conj(b[j]);
    return acc;
}

} // namespace detail

// Gradient (curl-free, zero-flux) part of the reduced momentum field:
// solves (D^2 - m^2) chi = i m mx + my' with homogeneous Neumann walls.
inline void reduced_gradient_part(const cheb::Collocation& col, int tangential,
                                  const Eigen::VectorXcd& mx, const Eigen::VectorXcd& my,
                                  Eigen::VectorXcd& qx, Eigen::VectorXcd& qy) {
    const int n = col.count();
    if (tangential == 0) { // interval: every 1D field is a gradient
        qx = mx;
        qy = my;
        return;
    }
    const std::complex<double> I(0.0, 1.0);
    Eigen::MatrixXcd L =
        (col.D * col.D - double(tangential * tangential) * Eigen::MatrixXd::Identity(n, n))
            .cast<std::complex<double>>();
    Eigen::VectorXcd rhs = I * double(tangential) * mx + col.D.cast<std::complex<double>>() * my;
    L.row(0) = col.D.row(0).cast<std::complex<double>>();
    L.row(n - 1) = col.D.row(n - 1).cast<std::complex<double>>();
    rhs[0] = 0.0;
    rhs[n - 1] = 0.0;
    Eigen::VectorXcd chi = L.partialPivLu().solve(rhs);
    qx = I * double(tangential) * chi;
    qy = col.D.cast<std::complex<double>>() * chi;
}

inline ModeTrace mode_amplitudes(const WaveTrace& tr, const NeumannMode& mode) {
    const bool interval = tr.geom.kind == GeometryKind::interval;
    ModeTrace out;
    out.kx = mode.kx;
    out.ky = mode.ky;
    out.lambda0 = mode.lambda0;
    out.times = tr.times;

    detail::ReducedMode g = detail::reduced_mode(mode, tr.col, interval);
    double norm2 = std::real(detail::wdot(tr.col, g.phi, g.phi) + detail::wdot(tr.col, g.mx, g.mx));
    if (!interval) norm2 += std::real(detail::wdot(tr.col, g.my, g.my));

    const std::size_t nt = tr.times.size();
    out.b_plus.resize(nt);
    out.b_minus.resize(nt);
    out.beta_plus.resize(nt);
    out.beta_minus.resize(nt);
    for (std::size_t s = 0; s < nt; ++s) {
        const std::complex<double> pphi = detail::wdot(tr.col, tr.phi[s], g.phi);
        std::complex<double> pm = detail::wdot(tr.col, tr.mx[s], g.mx);
        if (!interval) pm += detail::wdot(tr.col, tr.my[s], g.my);
        out.beta_plus[s] = pphi + pm;
        out.beta_minus[s] = pphi - pm;
        out.b_plus[s] = out.beta_plus[s] / norm2;
        out.b_minus[s] = out.beta_minus[s] / norm2;
    }
    return out;
}

// Residual of the pairing identity 2 (Q m, g_m^+) = beta^+ - beta^- at each
// sample; the left side uses the gradient part of the reduced momentum.
inline double beta_identity_residual(const WaveTrace& tr, const NeumannMode& mode) {
    const bool interval = tr.geom.kind == GeometryKind::interval;
    detail::ReducedMode g = detail::reduced_mode(mode, tr.col, interval);
    ModeTrace mt = mode_amplitudes(tr, mode);
    double worst = 0.0;
    for (std::size_t s = 0; s < tr.times.size(); ++s) {
        Eigen::VectorXcd qx, qy;
        if (interval) {
            qx = tr.mx[s];
        } else {
            reduced_gradient_part(tr.col, tr.tangential, tr.mx[s], tr.my[s], qx, qy);
        }
        std::complex<double> lhs = detail::wdot(tr.col, qx, g.mx);
        if (!interval) lhs += detail::wdot(tr.col, qy, g.my);
        lhs *= 2.0;
        worst = std::max(worst, std::abs(lhs - (mt.beta_plus[s] - mt.beta_minus[s])));
    }
    return worst;
}

struct Envelope {
    std::vector<double> times;
    std::vector<std::complex<double>> values;
};

// envelope(t) = exp(+- i lambda t / eps) b^pm(t); the + family uses the
// plus sign (its phase advances at -lambda/eps).
inline Envelope demodulate(const std::vector<double>& times,
                           const std::vector<std::complex<double>>& b, double lambda0,
                           double eps, int family = +1) {
    Envelope env;
    env.times = times;
    env.values.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        const double phase = (family >= 0 ? 1.0 : -1.0) * lambda0 * times[i] / eps;
        env.values[i] = std::exp(std::complex<double>(0.0, phase)) * b[i];
    }
    return env;
}

inline double max_difference_quotient(const std::vector<double>& times,
                                      const std::vector<std::complex<double>>& v) {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        worst = std::max(worst, std::abs(v[i + 1] - v[i]) / (times[i + 1] - times[i]));
    return worst;
}

// Log-linear fit of |b(t)| over [t0, t1]; returns the decay rate r in
// |b| ~ e^{-r t}.
inline double fit_decay_rate(const std::vector<double>& times,
                             const std::vector<std::complex<double>>& b, double t0, double t1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t0 || times[i] > t1) continue;
        const double mag = std::abs(b[i]);
        if (mag <= 0.0) continue;
        const double x = times[i], y = std::log(mag);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) throw std::invalid_argument("fit_decay_rate: too few samples in window");
    return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace mhdlab
