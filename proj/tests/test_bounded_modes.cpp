#include <catch_amalgamated.hpp>

#include "mhdlab/bounded/modes.hpp"
#include "test_helpers.hpp"

using namespace mhdlab;
using testutil::rel_err;

namespace {

// 2D quadrature of psi_a psi_b over the domain (midpoint; exact for the
// cosine products involved).
double volume_dot(const NeumannMode& a, const NeumannMode& b) {
    const double pi = std::numbers::pi;
    const bool channel = a.geom.kind == GeometryKind::channel;
    const double Lx = channel ? 2.0 * pi : pi;
    const int n = 256;
    double acc = 0.0;
    if (a.geom.kind == GeometryKind::interval) {
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) * pi / n;
            acc += a.psi(x) * b.psi(x) * pi / n;
        }
        return acc;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = (i + 0.5) * Lx / n, y = (j + 0.5) * pi / n;
            acc += a.psi(x, y) * b.psi(x, y) * (Lx / n) * (pi / n);
        }
    return acc;
}

// Neumann residual -lap psi - lambda^2 psi and normal-derivative residual.
double eigen_residual(const NeumannMode& m) {
    const double pi = std::numbers::pi;
    double worst = 0.0;
    for (int i = 0; i < 17; ++i)
        for (int j = 0; j < 17; ++j) {
            const double x = i * pi / 16.0 * (m.geom.kind == GeometryKind::channel ? 2.0 : 1.0);
            const double y = j * pi / 16.0;
            double hxx, hxy, hyy;
            m.hess(x, y, hxx, hxy, hyy);
            worst = std::max(worst,
                             std::abs(-(hxx + hyy) - m.lambda0 * m.lambda0 * m.psi(x, y)));
        }
    // normal derivative on the walls
    for (int i = 0; i < 33; ++i) {
        const double x = i / 32.0 * (m.geom.kind == GeometryKind::channel ? 2.0 * pi : pi);
        double gx, gy;
        m.grad(x, 0.0, gx, gy);
        worst = std::max(worst, std::abs(gy));
        m.grad(x, pi, gx, gy);
        worst = std::max(worst, std::abs(gy));
    }
    return worst;
}

} // namespace

TEST_CASE("closed-form Neumann spectra") {
    SECTION("interval: lambda_k = k, psi = sqrt(2/pi) cos kx") {
        auto modes = neumann_modes(Geometry::interval(), 5);
        REQUIRE(modes.size() == 5);
        CHECK(modes[0].lambda0 == 1.0);
        CHECK(rel_err(modes[0].psi(0.0), std::sqrt(2.0 / std::numbers::pi)) <= 1e-14);
        for (const auto& m : modes) CHECK(eigen_residual(m) <= 1e-10);
    }

    SECTION("rectangle: (1,2) has lambda^2 = 5") {
        auto modes = neumann_modes(Geometry::rectangle(), 12);
        bool found = false;
        for (const auto& m : modes)
            if (m.kx == 1 && m.ky == 2) {
                found = true;
                CHECK(rel_err(m.lambda0 * m.lambda0, 5.0) <= 1e-14);
            }
        CHECK(found);
        for (const auto& m : modes) CHECK(eigen_residual(m) <= 1e-10);
    }

    SECTION("catalogs are sorted by eigenvalue") {
        for (Geometry g : {Geometry::interval(), Geometry::channel(), Geometry::rectangle()}) {
            auto modes = neumann_modes(g, 15);
            for (std::size_t i = 1; i < modes.size(); ++i)
                CHECK(modes[i].lambda0 >= modes[i - 1].lambda0 - 1e-14);
        }
    }

    SECTION("cutoff validation") {
        CHECK_THROWS_AS(neumann_modes(Geometry::interval(), 0), std::invalid_argument);
    }
}

TEST_CASE("orthonormality of the mode family") {
    for (Geometry g : {Geometry::interval(), Geometry::channel(), Geometry::rectangle()}) {
        auto modes = neumann_modes(g, 10);
        for (std::size_t i = 0; i < modes.size(); ++i)
            for (std::size_t j = i; j < modes.size(); ++j) {
                const double want = (i == j) ? 1.0 : 0.0;
                CHECK(std::abs(volume_dot(modes[i], modes[j]) - want) <= 1e-12);
            }
    }
}

TEST_CASE("degenerate pairs have orthogonal boundary gradients") {
    auto modes = neumann_modes(Geometry::rectangle(), 30);
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j)
            if (std::abs(modes[i].lambda0 - modes[j].lambda0) < 1e-12)
                CHECK(std::abs(detail::boundary_grad_dot(modes[i], modes[j])) <= 1e-10);
}

TEST_CASE("classification and boundary integrals") {
    SECTION("interval modes are all J") {
        for (const auto& m : neumann_modes(Geometry::interval(), 8)) {
            CHECK(m.cls == 'J');
            CHECK(classify_mode(m) == 'J');
            CHECK(m.boundary_grad_integral <= 1e-12);
        }
    }

    SECTION("channel tangential modes are I with B = 2 m^2 / pi at n = 0") {
        auto modes = neumann_modes(Geometry::channel(), 12);
        for (const auto& m : modes) {
            CHECK(m.cls == 'I');
            CHECK(classify_mode(m) == 'I');
            if (m.ky == 0)
                CHECK(rel_err(m.boundary_grad_integral,
                              2.0 * m.kx * m.kx / std::numbers::pi) <= 1e-12);
        }
    }

    SECTION("rectangle (1,1) is I") {
        for (const auto& m : neumann_modes(Geometry::rectangle(), 10))
            if (m.kx == 1 && m.ky == 1) CHECK(m.cls == 'I');
    }

    SECTION("classification consistency: J <=> zero predicted damping") {
        for (Geometry g : {Geometry::interval(), Geometry::channel(), Geometry::rectangle()}) {
            for (const auto& m : neumann_modes(g, 12)) {
                DampingPrediction d = predicted_damping(m, 1.0);
                if (m.cls == 'J') {
                    CHECK(d.plus == std::complex<double>(0.0, 0.0));
                } else {
                    CHECK(d.plus.real() < 0.0);
                }
            }
        }
    }
}

TEST_CASE("predicted damping values") {
    auto modes = neumann_modes(Geometry::channel(), 12);

    SECTION("channel m = 1, mu = 1: Re = -(1/pi) sqrt(1/2)") {
        for (const auto& m : modes)
            if (m.kx == 1 && m.ky == 0) {
                DampingPrediction d = predicted_damping(m, 1.0);
                const double want = -std::sqrt(0.5) / std::numbers::pi; // -0.22508
                CHECK(rel_err(d.plus.real(), want) <= 1e-12);
                CHECK(rel_err(d.minus.real(), want) <= 1e-12);
                CHECK(d.plus.imag() < 0.0);
                CHECK(d.minus.imag() > 0.0);
                CHECK(std::abs(d.plus.real() - (-0.2251)) <= 5e-5);
            }
    }

    SECTION("quadrupling mu doubles the magnitude") {
        for (const auto& m : modes)
            if (m.kx == 2 && m.ky == 1) {
                const double a = std::abs(predicted_damping(m, 0.5).plus);
                const double b = std::abs(predicted_damping(m, 2.0).plus);
                CHECK(rel_err(b, 2.0 * a) <= 1e-12);
            }
    }

    SECTION("interval modes damp at zero first order") {
        for (const auto& m : neumann_modes(Geometry::interval(), 4))
            CHECK(predicted_damping(m, 1.0).plus == std::complex<double>(0.0, 0.0));
    }
}

TEST_CASE("over-determined eigenproblem scan") {
    SECTION("channel satisfied up to cutoff 10") {
        Geometry g = Geometry::channel();
        CHECK(assumption_A_check(g, neumann_modes(g, 10)).satisfied);
    }

    SECTION("rectangle satisfied up to cutoff 10") {
        Geometry g = Geometry::rectangle();
        CHECK(assumption_A_check(g, neumann_modes(g, 10)).satisfied);
    }

    SECTION("interval flagged: every mode constant per boundary component") {
        Geometry g = Geometry::interval();
        auto modes = neumann_modes(g, 6);
        AssumptionAReport rep = assumption_A_check(g, modes);
        CHECK_FALSE(rep.satisfied);
        CHECK(rep.witnesses.size() == modes.size());
        // per-component traces reported: psi(0) and psi(pi)
        for (const auto& w : rep.witnesses) {
            REQUIRE(w.component_means.size() == 2);
            CHECK(std::abs(std::abs(w.component_means[0]) -
                           std::sqrt(2.0 / std::numbers::pi)) <= 1e-12);
        }
    }
}

TEST_CASE("gradient identity for equal-eigenvalue pairs") {
    auto modes = neumann_modes(Geometry::rectangle(), 12);

    SECTION("self pair of a (1,0)-type mode") {
        for (const auto& m : modes)
            if (m.kx == 1 && m.ky == 0) CHECK(gradient_identity_check(m, m) <= 1e-10);
    }

    SECTION("degenerate pair (1,2)/(2,1)") {
        const NeumannMode *a = nullptr, *b = nullptr;
        for (const auto& m : modes) {
            if (m.kx == 1 && m.ky == 2) a = &m;
            if (m.kx == 2 && m.ky == 1) b = &m;
        }
        REQUIRE(a);
        REQUIRE(b);
        CHECK(gradient_identity_check(*a, *b) <= 1e-8);
    }

    SECTION("zero pair") {
        NeumannMode z = modes.front();
        for (auto& t : z.terms) t.weight = 0.0;
        CHECK(gradient_identity_check(z, z) == 0.0);
    }

    SECTION("mismatched eigenvalues rejected") {
        CHECK_THROWS_AS(gradient_identity_check(modes.front(), modes.back()),
                        std::invalid_argument);
    }
}
