#include <catch_amalgamated.hpp>

#include <thread>

#include "mhdlab/core/norms.hpp"
#include "mhdlab/core/ops.hpp"
#include "mhdlab/core/random.hpp"
#include "test_helpers.hpp"

using namespace mhdlab;
using testutil::field_max_diff;
using testutil::rel_err;

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridSpec(2, {33, 32}, {two_pi, two_pi}), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(2, {32, 32}, {-1.0, two_pi}), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(2, {32}, {two_pi, two_pi}), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec(4, {8, 8, 8, 8}, {1, 1, 1, 1}), std::invalid_argument);
    CHECK_NOTHROW(GridSpec::torus(3, 16));
}

TEST_CASE("transform round trips are lossless on band-limited data") {
    const GridSpec g = GridSpec::torus(2, 64);
    Rng rng(42);
    for (int rep = 0; rep < 5; ++rep) {
        ScalarField f = random_band_limited(g, rng, 20);
        const double scale = linf_norm(f);

        // values -> coeffs -> values
        ScalarField f2(g);
        std::copy(f.values(), f.values() + g.size(), f2.values_mut());
        f2.ensure_spectral();
        CHECK(field_max_diff(f, f2) <= 1e-12 * scale);

        // coeffs -> values -> coeffs (exercises Hermitian consistency of
        // the generator as well)
        ScalarField f3(g);
        std::copy(f.values(), f.values() + g.size(), f3.values_mut());
        const std::complex<double>* ca = f.coeffs();
        const std::complex<double>* cb = f3.coeffs();
        double dmax = 0.0;
        for (std::size_t i = 0; i < g.spectral_size(); ++i)
            dmax = std::max(dmax, std::abs(ca[i] - cb[i]));
        CHECK(dmax <= 1e-12 * scale);
    }
}

TEST_CASE("gradient of sin x") {
    const GridSpec g = GridSpec::torus(2, 32);
    ScalarField f = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
    VectorField grad = gradient(f);
    ScalarField want0 = ScalarField::sample(g, [](double x, double, double) { return std::cos(x); });
    CHECK(field_max_diff(grad[0], want0) <= 1e-12);
    CHECK(linf_norm(grad[1]) <= 1e-12);
}

TEST_CASE("divergence of a curl-form field vanishes") {
    const GridSpec g = GridSpec::torus(2, 64);
    Rng rng(7);
    ScalarField psi = random_band_limited(g, rng, 15);
    VectorField v = perp_gradient2d(psi); // (-d_y psi, d_x psi) up to sign
    CHECK(l2_norm(divergence(v)) <= 1e-12 * std::max(1.0, l2_norm(v)));
}

TEST_CASE("gradient matches an 8th-order finite-difference oracle") {
    // Fixed smooth field, refined grids; the difference must shrink at the
    // oracle's order (the spectral derivative is exact on this band).
    auto ffun = [](double x, double y, double) {
        return std::sin(3.0 * x) * std::cos(2.0 * y) + 0.5 * std::cos(x + y);
    };
    const double c1[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    std::vector<double> hs, errs;
    for (int n : {32, 64, 128}) {
        const GridSpec g = GridSpec::torus(2, n);
        ScalarField f = ScalarField::sample(g, ffun);
        VectorField grad = gradient(f);
        const double* fv = f.values();
        const double* gx = grad[0].values();
        const double h = g.spacing(0);
        double emax = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double d = 0.0;
                for (int o = 1; o <= 4; ++o) {
                    const int ip = (i + o) % n, im = (i - o + 8 * n) % n;
                    d += c1[o - 1] * (fv[ip * n + j] - fv[im * n + j]);
                }
                emax = std::max(emax, std::abs(gx[i * n + j] - d / h));
            }
        hs.push_back(h);
        errs.push_back(emax);
    }
    const double order = -testutil::loglog_slope(hs, errs) * -1.0; // slope in h
    CHECK(testutil::loglog_slope(hs, errs) >= 7.0);
    (void)order;
}

namespace {

// Test-only oracle: 8th-order finite-difference Poisson solve by conjugate
// gradients, fully independent of the spectral path.
struct FdOracle {
    int n;
    double h;
    static constexpr double c1[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    static constexpr double c2[5] = {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0,
                                     -1.0 / 560.0};

    std::vector<double> dx(const std::vector<double>& f, int axis) const {
        std::vector<double> out(f.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double d = 0.0;
                for (int o = 1; o <= 4; ++o) {
                    int ip = i, jp = j, im = i, jm = j;
                    if (axis == 0) {
                        ip = (i + o) % n;
                        im = (i - o + 8 * n) % n;
                    } else {
                        jp = (j + o) % n;
                        jm = (j - o + 8 * n) % n;
                    }
                    d += c1[o - 1] * (f[ip * n + jp] - f[im * n + jm]);
                }
                out[i * n + j] = d / h;
            }
        return out;
    }

    std::vector<double> laplace(const std::vector<double>& f) const {
        std::vector<double> out(f.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double d = 2.0 * c2[0] * f[i * n + j];
                for (int o = 1; o <= 4; ++o) {
                    d += c2[o] * (f[((i + o) % n) * n + j] + f[((i - o + 8 * n) % n) * n + j]);
                    d += c2[o] * (f[i * n + (j + o) % n] + f[i * n + (j - o + 8 * n) % n]);
                }
                out[i * n + j] = d / (h * h);
            }
        return out;
    }

    static void remove_mean(std::vector<double>& f) {
        double m = 0.0;
        for (double v : f) m += v;
        m /= f.size();
        for (double& v : f) v -= m;
    }

    // CG for -laplace(chi) = -rhs  (i.e. laplace(chi) = rhs), mean-zero.
    std::vector<double> poisson(std::vector<double> rhs) const {
        remove_mean(rhs);
        std::vector<double> x(rhs.size(), 0.0), r = rhs, p = rhs, ap(rhs.size());
        for (double& v : r) v = -v; // residual of SPD operator -laplace
        p = r;
        double rs = 0.0;
        for (double v : r) rs += v * v;
        for (int it = 0; it < 20000 && std::sqrt(rs) > 1e-12; ++it) {
            ap = laplace(p);
            for (double& v : ap) v = -v;
            double pap = 0.0;
            for (std::size_t i = 0; i < p.size(); ++i) pap += p[i] * ap[i];
            const double alpha = rs / pap;
            for (std::size_t i = 0; i < p.size(); ++i) {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            double rs2 = 0.0;
            for (double v : r) rs2 += v * v;
            for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + (rs2 / rs) * p[i];
            rs = rs2;
            if (it % 64 == 0) remove_mean(x);
        }
        remove_mean(x);
        return x;
    }
};

} // namespace

TEST_CASE("Helmholtz projection basics") {
    const GridSpec g = GridSpec::torus(2, 64);

    SECTION("constant field is divergence-free") {
        VectorField v(g);
        for_each_value(v[0], [](double& x) { x = 2.5; });
        for_each_value(v[1], [](double& x) { x = -0.5; });
        auto parts = helmholtz_project(v);
        CHECK(field_max_diff(parts.solenoidal, v) <= 1e-14);
        CHECK(l2_norm(parts.gradient) <= 1e-14);
    }

    SECTION("pure gradient goes to Q") {
        ScalarField s = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        VectorField v = gradient(s);
        auto parts = helmholtz_project(v);
        CHECK(l2_norm(parts.solenoidal) <= 1e-12);
        CHECK(field_max_diff(parts.gradient, v) <= 1e-12);
    }

    SECTION("random field: exactness and Poisson-solve oracle") {
        Rng rng(12345);
        VectorField v = random_vector(g, rng, 3);
        auto parts = helmholtz_project(v);
        const double scale = l2_norm(v);
        CHECK(l2_norm(divergence(parts.solenoidal)) <= 1e-12 * scale);
        CHECK(l2_norm(curl2d(parts.gradient)) <= 1e-12 * scale);
        VectorField sum = parts.solenoidal;
        axpy(sum, 1.0, parts.gradient);
        CHECK(field_max_diff(sum, v) <= 1e-12 * scale);

        // Independent oracle: Q v = grad chi with laplace(chi) = div v,
        // both sides discretized at 8th order; agreement at the oracle's
        // order under refinement.
        std::vector<double> hs, errs;
        for (int n : {32, 64, 128}) {
            const GridSpec gn = GridSpec::torus(2, n);
            Rng r2(12345);
            VectorField vn = random_vector(gn, r2, 3);
            auto pn = helmholtz_project(vn);
            FdOracle fd{n, gn.spacing(0)};
            std::vector<double> vx(vn[0].values(), vn[0].values() + gn.size());
            std::vector<double> vy(vn[1].values(), vn[1].values() + gn.size());
            std::vector<double> div = fd.dx(vx, 0);
            std::vector<double> divy = fd.dx(vy, 1);
            for (std::size_t i = 0; i < div.size(); ++i) div[i] += divy[i];
            std::vector<double> chi = fd.poisson(div);
            std::vector<double> qx = fd.dx(chi, 0), qy = fd.dx(chi, 1);
            double emax = 0.0;
            const double* qxs = pn.gradient[0].values();
            const double* qys = pn.gradient[1].values();
            for (std::size_t i = 0; i < div.size(); ++i) {
                emax = std::max(emax, std::abs(qx[i] - qxs[i]));
                emax = std::max(emax, std::abs(qy[i] - qys[i]));
            }
            hs.push_back(gn.spacing(0));
            errs.push_back(emax);
        }
        CHECK(testutil::loglog_slope(hs, errs) >= 7.0);
    }
}

TEST_CASE("projector algebra on random fields") {
    const GridSpec g = GridSpec::torus(2, 64);
    Rng rng(99);
    for (int rep = 0; rep < 20; ++rep) {
        VectorField v = random_vector(g, rng, 20);
        VectorField w = random_vector(g, rng, 20);
        auto pv = helmholtz_project(v);
        auto pw = helmholtz_project(w);
        const double sv = l2_norm(v), sw = l2_norm(w);

        CHECK(field_max_diff(helmholtz_project(pv.solenoidal).solenoidal, pv.solenoidal) <=
              1e-12 * sv);
        CHECK(field_max_diff(helmholtz_project(pv.gradient).gradient, pv.gradient) <= 1e-12 * sv);
        CHECK(l2_norm(helmholtz_project(pv.gradient).solenoidal) <= 1e-12 * sv);
        CHECK(l2_norm(helmholtz_project(pv.solenoidal).gradient) <= 1e-12 * sv);
        CHECK(std::abs(inner_l2(pv.solenoidal, pw.gradient)) <= 1e-12 * sv * sw);
    }
}

TEST_CASE("3D projector and calculus smoke") {
    const GridSpec g = GridSpec::torus(3, 16);
    Rng rng(5);
    VectorField v = random_vector(g, rng, 4);
    auto parts = helmholtz_project(v);
    const double s = l2_norm(v);
    CHECK(l2_norm(divergence(parts.solenoidal)) <= 1e-12 * s);
    CHECK(l2_norm(curl3d(parts.gradient)) <= 1e-12 * s);
    VectorField sum = parts.solenoidal;
    axpy(sum, 1.0, parts.gradient);
    CHECK(field_max_diff(sum, v) <= 1e-12 * s);
    // div curl = 0
    CHECK(l2_norm(divergence(curl3d(v))) <= 1e-12 * s);
}

TEST_CASE("Sobolev norms") {
    const GridSpec g = GridSpec::torus(2, 64);

    SECTION("zero field") {
        CHECK(sobolev_norm(ScalarField(g), 1.5) == 0.0);
    }

    SECTION("L2 norm of sin x on the 2pi torus") {
        ScalarField f = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
        // (int sin^2 x dx dy)^(1/2) over [0,2pi]^2 = sqrt(2 pi^2)
        const double want = std::sqrt(2.0) * std::numbers::pi;
        CHECK(rel_err(sobolev_norm(f, 0.0), want) <= 1e-12);
    }

    SECTION("homogeneity") {
        Rng rng(3);
        ScalarField f = random_band_limited(g, rng, 10);
        ScalarField f2 = f;
        scale(f2, 2.0);
        for (double s : {0.0, 1.0, 2.0, -2.0})
            CHECK(rel_err(sobolev_norm(f2, s), 2.0 * sobolev_norm(f, s)) <= 1e-12);
    }
}

TEST_CASE("plan cache is usable from concurrent workers") {
    const GridSpec g = GridSpec::torus(2, 32);
    std::vector<std::thread> pool;
    std::vector<double> results(4, 0.0);
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            Rng rng(100 + t);
            ScalarField f = random_band_limited(g, rng, 8);
            results[t] = l2_norm(divergence(gradient(f))) - l2_norm(laplacian(f));
        });
    for (auto& th : pool) th.join();
    for (double r : results) CHECK(std::abs(r) <= 1e-10);
}
