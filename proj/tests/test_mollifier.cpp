#include <catch_amalgamated.hpp>

#include "mhdlab/core/mollifier.hpp"
#include "mhdlab/core/norms.hpp"
#include "mhdlab/core/random.hpp"
#include "test_helpers.hpp"

using namespace mhdlab;
using testutil::field_max_diff;

TEST_CASE("mollifier kernel is admissible") {
    MollifierSpec spec(0.3);
    // positive profile, unit mass after normalization
    for (double t : {-0.9, -0.5, 0.0, 0.5, 0.9}) CHECK(spec.profile(t) >= 0.0);
    CHECK(spec.profile(1.1) == 0.0);
    const double mass = mollifier_mass(spec);
    CHECK(mass > 0.0);
    // Simpson on the smooth compactly supported bump converges far below
    // 1e-10; the normalized kernel integrates to 1 at that tolerance.
    MollifierSpec finer = spec;
    const double mass2 = mollifier_mass(finer);
    CHECK(std::abs(mass - mass2) / mass <= 1e-10);
}

TEST_CASE("mollify fixes constants and preserves the mean") {
    const GridSpec g = GridSpec::torus(2, 64);
    MollifierSpec spec(0.25);

    ScalarField c(g);
    for_each_value(c, [](double& v) { v = 3.75; });
    CHECK(field_max_diff(mollify(c, spec), c) <= 1e-12);

    Rng rng(11);
    ScalarField f = random_band_limited(g, rng, 18);
    for_each_value(f, [](double& v) { v += 0.6; });
    ScalarField mf = mollify(f, spec);
    CHECK(std::abs(mf.mean() - f.mean()) <= 1e-12);
}

TEST_CASE("mollify rejects out-of-range alpha") {
    const GridSpec g = GridSpec::torus(2, 32);
    ScalarField f(g);
    CHECK_THROWS_AS(mollify(f, MollifierSpec(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(mollify(f, MollifierSpec(3.5)), std::invalid_argument);
}

TEST_CASE("mollify commutes with derivatives") {
    const GridSpec g = GridSpec::torus(2, 64);
    Rng rng(12);
    ScalarField f = random_band_limited(g, rng, 15);
    MollifierSpec spec(0.2);
    ScalarField a = derivative(mollify(f, spec), 0);
    ScalarField b = mollify(derivative(f, 0), spec);
    CHECK(field_max_diff(a, b) <= 1e-12 * std::max(1.0, linf_norm(a)));
}

TEST_CASE("spectral route matches direct real-space convolution") {
    // Oracle: brute-force periodic convolution with the grid-sampled,
    // grid-normalized kernel. Agreement improves as the kernel sampling
    // refines; alpha is kept well resolved here.
    const int n = 128;
    const GridSpec g = GridSpec::torus(2, n);
    Rng rng(13);
    ScalarField f = random_band_limited(g, rng, 10);
    const double h = g.spacing(0);

    for (double alpha : {0.5, 0.3}) {
        MollifierSpec spec(alpha);
        ScalarField got = mollify(f, spec);

        const int r = static_cast<int>(std::ceil(alpha / h)) + 1;
        std::vector<double> kern(static_cast<std::size_t>(2 * r + 1) * (2 * r + 1));
        double mass = 0.0;
        for (int i = -r; i <= r; ++i)
            for (int j = -r; j <= r; ++j) {
                const double tx = i * h / alpha, ty = j * h / alpha;
                const double v = spec.profile(tx) * spec.profile(ty);
                kern[(i + r) * (2 * r + 1) + (j + r)] = v;
                mass += v;
            }
        for (double& v : kern) v /= mass;

        const double* fv = f.values();
        double emax = 0.0, fmax = linf_norm(f);
        for (int i = 0; i < n; i += 3)
            for (int j = 0; j < n; j += 3) {
                double acc = 0.0;
                for (int di = -r; di <= r; ++di)
                    for (int dj = -r; dj <= r; ++dj)
                        acc += kern[(di + r) * (2 * r + 1) + (dj + r)] *
                               fv[((i - di + 4 * n) % n) * n + (j - dj + 4 * n) % n];
                emax = std::max(emax, std::abs(acc - got.values()[i * n + j]));
            }
        CHECK(emax <= 2e-3 * fmax); // grid-sampled kernel quadrature level
    }
}

TEST_CASE("measured smoothing law on multiscale H1 fields") {
    // || f - f * zeta_alpha ||_{L^q} ~ alpha^(1-sigma), sigma = N(1/2-1/q),
    // attained on fields carrying equal Dirichlet energy per scale.
    const GridSpec g = GridSpec::torus(2, 1024);
    ScalarField f = h1_multiscale_field(g);
    const std::vector<double> alphas = {0.4, 0.2, 0.1, 0.05};

    for (double q : {4.0, 6.0}) {
        std::vector<double> errs;
        for (double a : alphas) {
            ScalarField d = f;
            axpy(d, -1.0, mollify(f, MollifierSpec(a)));
            errs.push_back(lq_norm(d, q));
        }
        const double sigma = 2.0 * (0.5 - 1.0 / q);
        const double want = 1.0 - sigma;
        const double slope = testutil::loglog_slope(alphas, errs);
        INFO("q=" << q << " slope=" << slope << " want=" << want);
        CHECK(std::abs(slope - want) <= 0.15 * want);
    }
}

TEST_CASE("smooth single-mode fields decay at the kernel moment order") {
    // For f = sin x the removed part is (1 - zeta_hat(alpha)) sin x, so the
    // decay follows the kernel's second moment: slope 2, not 1 - sigma.
    const GridSpec g = GridSpec::torus(2, 128);
    ScalarField f = ScalarField::sample(g, [](double x, double, double) { return std::sin(x); });
    const std::vector<double> alphas = {0.4, 0.2, 0.1, 0.05};
    std::vector<double> errs;
    for (double a : alphas) {
        ScalarField d = f;
        axpy(d, -1.0, mollify(f, MollifierSpec(a)));
        errs.push_back(lq_norm(d, 4.0));
    }
    CHECK(std::abs(testutil::loglog_slope(alphas, errs) - 2.0) <= 0.05);
}
