// Oscillatory-integral utilities: the damped Duhamel convolution bound and
// the Riemann-Lebesgue cross-mode defect. Quadrature is Filon-type — exact
// complex antiderivatives against a piecewise-linear envelope — so fast
// phases never need to be resolved by the sample grid.
#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace mhdlab {

namespace detail {

// int_0^h e^{z t} (c0 + c1 t) dt, stable for small |z h|.
inline std::complex<double> linexp_integral(std::complex<double> z, double h, double c0,
                                            double c1) {
    if (std::abs(z) * h < 1e-6) {
        // series to third order
        const std::complex<double> zh = z * h;
        return h * (c0 + 0.5 * c1 * h) + 0.5 * h * zh * (c0 + 2.0 * c1 * h / 3.0) +
               h * zh * zh * (c0 / 6.0 + c1 * h / 8.0);
    }
    const std::complex<double> ezh = std::exp(z * h);
    return (c0 * (ezh - 1.0) + c1 * ((h - 1.0 / z) * ezh + 1.0 / z)) / z;
}

} // namespace detail

// sup_t int_0^t e^{rate (t-s)/sqrt(eps)} |a(s)| ds for a sampled envelope,
// rate < 0; the inner integral is advanced exactly per sample interval
// through the recursion I(t+h) = e^{rate h/sqrt(eps)} I(t) + local term.
inline double damped_convolution(const std::vector<double>& times,
                                 const std::vector<double>& a_samples, double eps, double rate) {
    if (!(rate < 0.0)) throw std::invalid_argument("damped_convolution: rate must be negative");
    if (!(eps > 0.0)) throw std::invalid_argument("damped_convolution: eps must be positive");
    if (times.size() != a_samples.size() || times.size() < 2)
        throw std::invalid_argument("damped_convolution: bad sample arrays");
    const double r = rate / std::sqrt(eps);
    double I = 0.0, sup = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double h = times[k + 1] - times[k];
        const double a0 = std::abs(a_samples[k]);
        const double a1 = (std::abs(a_samples[k + 1]) - a0) / h;
        // int_0^h e^{r(h-s)} (a0 + a1 s) ds = e^{rh} int e^{-rs}(a0+a1 s) ds
        const std::complex<double> local =
            std::exp(r * h) * detail::linexp_integral(std::complex<double>(-r, 0.0), h, a0, a1);
        I = std::exp(r * h) * I + local.real();
        sup = std::max(sup, I);
    }
    return sup;
}

// int_0^T exp(i (lambda_k - lambda_l) t / eps) env_k(t) env_l(t) dt with
// piecewise-linear envelopes; for lambda_k = lambda_l this is the plain
// product integral.
inline std::complex<double>
riemann_lebesgue_defect(const std::vector<double>& times,
                        const std::vector<std::complex<double>>& env_k,
                        const std::vector<std::complex<double>>& env_l, double lambda_k,
                        double lambda_l, double eps) {
    if (times.size() != env_k.size() || times.size() != env_l.size() || times.size() < 2)
        throw std::invalid_argument("riemann_lebesgue_defect: bad sample arrays");
    const double omega = (lambda_k - lambda_l) / eps;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j + 1 < times.size(); ++j) {
        const double h = times[j + 1] - times[j];
        const std::complex<double> p0 = env_k[j] * env_l[j];
        const std::complex<double> p1 = (env_k[j + 1] * env_l[j + 1] - p0) / h;
        // local integral of e^{i omega (t_j + s)} (p0 + p1 s)
        const std::complex<double> z(0.0, omega);
        const std::complex<double> phase = std::exp(std::complex<double>(0.0, omega * times[j]));
        // split p into real/imag parts to reuse the real-coefficient helper
        acc += phase * (detail::linexp_integral(z, h, p0.real(), p1.real()) +
                        std::complex<double>(0.0, 1.0) *
                            detail::linexp_integral(z, h, p0.imag(), p1.imag()));
    }
    return acc;
}

} // namespace mhdlab
