#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbkit/contour.hpp"
#include "mbkit/errors.hpp"
#include "testutil.hpp"

#include <cmath>

using mbkit::Complex;
using mbkit::Contour;
using mbkit::EvalMode;
using mbkit::GammaProductIntegrand;
using mbkit::PoleSide;
using testutil::rel_err;
using testutil::residual;

namespace {

GammaProductIntegrand barnes_integrand(Complex a, Complex b, Complex c, Complex d) {
    GammaProductIntegrand f;
    f.plus_shifts = {a, b};
    f.minus_shifts = {c, d};
    return f;
}

// Gamma(a+s) Gamma(b+s) Gamma(c-a-b-s) Gamma(-s) z^s
GammaProductIntegrand gauss_rep(double a, double b, double c, Complex z) {
    GammaProductIntegrand f;
    f.plus_shifts = {{a, 0}, {b, 0}};
    f.minus_shifts = {{c - a - b, 0}, {0.0, 0}};
    f.power_base = z;
    return f;
}

} // namespace

TEST_CASE("pole families mirror the integrand factors") {
    GammaProductIntegrand f = gauss_rep(0.3, 0.4, 0.5, {1.0, 0});
    auto fams = mbkit::pole_families(f);
    REQUIRE(fams.size() == 4);
    CHECK(fams[0].side == PoleSide::Left);
    CHECK(fams[0].base == Complex(-0.3, 0.0));
    CHECK(fams[0].factor_index == 0);
    CHECK(fams[1].side == PoleSide::Left);
    CHECK(fams[1].base == Complex(-0.4, 0.0));
    CHECK(fams[2].side == PoleSide::Right);
    CHECK(fams[2].base == Complex(-0.2, 0.0));
    CHECK(fams[3].side == PoleSide::Right);
    CHECK(fams[3].base == Complex(0.0, 0.0));
    CHECK(fams[0].source.find("plus") != std::string::npos);
    CHECK(fams[2].source.find("minus") != std::string::npos);
}

TEST_CASE("abscissa sits mid-strip") {
    auto fams1 = mbkit::pole_families(gauss_rep(0.3, 0.4, 0.5, {1.0, 0}));
    CHECK(mbkit::choose_abscissa(fams1) == doctest::Approx(-0.25).epsilon(1e-15));

    auto fams2 = mbkit::pole_families(gauss_rep(0.3, 0.4, 2.0, {1.0, 0}));
    CHECK(mbkit::choose_abscissa(fams2) == doctest::Approx(-0.15).epsilon(1e-15));

    auto fams3 = mbkit::pole_families(
        barnes_integrand({0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}));
    CHECK(mbkit::choose_abscissa(fams3) == 0.0);

    // One-sided integrand: line placed half a unit off the only family.
    GammaProductIntegrand left_only;
    left_only.plus_shifts = {{0.5, 0}};
    left_only.den_shifts = {{0.2, 0}};
    CHECK(mbkit::choose_abscissa(mbkit::pole_families(left_only)) == 0.0);
}

TEST_CASE("family collisions and vanishing strips are rejected") {
    GammaProductIntegrand collide;
    collide.plus_shifts = {{0.3, 0}};
    collide.minus_shifts = {{-0.3, 0}};
    CHECK_THROWS_AS(mbkit::choose_abscissa(mbkit::pole_families(collide)),
                    mbkit::SeparationImpossibleError);
    CHECK_THROWS_AS(mbkit::integrate_with_residue_correction(collide, 1e-10),
                    mbkit::SeparationImpossibleError);
    CHECK_FALSE(mbkit::contour_feasible(collide));

    GammaProductIntegrand tiny;
    tiny.plus_shifts = {{0.3, 0}};
    tiny.minus_shifts = {{-0.2999, 0}};
    CHECK_THROWS_AS(mbkit::choose_abscissa(mbkit::pole_families(tiny)),
                    mbkit::SeparationImpossibleError);
    // A residue-corrected line exists even though no strip separates.
    CHECK(mbkit::contour_feasible(tiny));
}

TEST_CASE("truncation height walks the doubling ladder") {
    GammaProductIntegrand fast = barnes_integrand({0.25, 0}, {0.75, 0}, {0.5, 0}, {1.0, 0});
    CHECK(mbkit::truncation_height(fast, 0.125, 1e-10) == 10.0);

    GammaProductIntegrand slow;  // net exponent pi/2: one denominator gamma
    slow.plus_shifts = {{0.3, 0}};
    slow.minus_shifts = {{0.4, 0}};
    slow.den_shifts = {{1.1, 0}};
    CHECK(mbkit::truncation_height(slow, 0.05, 1e-10) == 20.0);
    CHECK_THROWS_AS(mbkit::truncation_height(slow, 0.05, 1e-10, 15.0),
                    mbkit::NoConvergenceError);

    GammaProductIntegrand divergent;
    divergent.plus_shifts = {{0.5, 0}};
    divergent.den_shifts = {{0.3, 0}, {0.8, 0}};
    CHECK_THROWS_AS(mbkit::truncation_height(divergent, 0.0, 1e-10),
                    mbkit::DivergentIntegrandError);
    CHECK_THROWS_AS(mbkit::truncation_height(fast, 0.125, 0.0), mbkit::DomainError);
}

TEST_CASE("beta-integral values against frozen references") {
    // Symmetric case: Gamma(1)^4 / Gamma(2) = 1.
    auto sym = mbkit::integrate_auto(
        barnes_integrand({0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}), 1e-12);
    CHECK(sym.status == mbkit::QuadStatus::Converged);
    CHECK(rel_err(sym.value, {1.0, 0.0}) < 1e-11);
    CHECK(std::abs(sym.value.imag()) < 1e-12);

    auto asym = mbkit::integrate_auto(
        barnes_integrand({0.25, 0}, {0.75, 0}, {0.5, 0}, {1.0, 0}), 1e-12);
    CHECK(rel_err(asym.value, {0.696040999603963481, 0.0}) < 1e-11);

    auto cplx = mbkit::integrate_auto(
        barnes_integrand({0.3, 0.2}, {0.5, -0.1}, {0.45, 0.05}, {0.8, 0}), 1e-12);
    CHECK(rel_err(cplx.value, {0.88923868958986739, -0.334045420857156808}) < 1e-11);
    CHECK(cplx.nodes > 100);
    CHECK(cplx.error_estimate < 1e-12);
}

TEST_CASE("serial and parallel node kernels agree bit for bit") {
    GammaProductIntegrand f = barnes_integrand({0.25, 0}, {0.75, 0}, {0.5, 0}, {1.0, 0});
    Contour c;
    c.sigma = 0.125;
    c.height = 10.0;
    c.step = 0.5;
    c.separation_margin = 0.375;
    auto rs = mbkit::integrate(f, c, 1e-12, EvalMode::Serial);
    auto rp = mbkit::integrate(f, c, 1e-12, EvalMode::Parallel);
    CHECK(rs.value == rp.value);
    CHECK(rs.nodes == rp.nodes);
    CHECK(rs.error_estimate == rp.error_estimate);
}

TEST_CASE("value does not depend on the abscissa inside the strip") {
    GammaProductIntegrand f = barnes_integrand({0.25, 0}, {0.75, 0}, {0.5, 0}, {1.0, 0});
    const double tol = 1e-12;
    Complex vals[3];
    int i = 0;
    for (double sigma : {0.055, 0.125, 0.195}) {
        Contour c;
        c.sigma = sigma;
        c.height = mbkit::truncation_height(f, sigma, tol);
        c.separation_margin = 0.3;
        vals[i++] = mbkit::integrate(f, c, tol).value;
    }
    CHECK(residual(vals[0], vals[1]) <= 2.0 * tol);
    CHECK(residual(vals[1], vals[2]) <= 2.0 * tol);
}

TEST_CASE("doubling the height moves the value by less than half the tolerance") {
    GammaProductIntegrand f = gauss_rep(0.3, 0.4, 0.5, {0.4, 0});
    const double tol = 1e-12;
    double sigma = mbkit::choose_abscissa(mbkit::pole_families(f));
    double T = mbkit::truncation_height(f, sigma, tol);
    Contour c;
    c.sigma = sigma;
    c.height = T;
    c.separation_margin = 0.05;
    auto base = mbkit::integrate(f, c, tol);
    c.height = 2.0 * T;
    auto tall = mbkit::integrate(f, c, tol);
    CHECK(residual(base.value, tall.value) <= 0.5 * tol);
}

TEST_CASE("residue corrections recover the crossed poles") {
    // a = 0.3, b = 0.4, c = 0.2 at z = 1: right base c-a-b = -0.5 sits left
    // of the other right base 0, so one pole must be crossed.
    GammaProductIntegrand f = gauss_rep(0.3, 0.4, 0.2, {1.0, 0});
    CHECK_THROWS_AS(mbkit::choose_abscissa(mbkit::pole_families(f)),
                    mbkit::SeparationImpossibleError);
    auto r = mbkit::integrate_with_residue_correction(f, 1e-10);
    CHECK(r.corrections == 1);
    CHECK(rel_err(r.value, {89.915551543416353, 0.0}) < 1e-9);

    // Separable integrand: the corrected path falls back to the plain line.
    GammaProductIntegrand g = gauss_rep(0.3, 0.4, 0.5, {0.4, 0});
    auto plain = mbkit::integrate_auto(g, 1e-10);
    auto corrected = mbkit::integrate_with_residue_correction(g, 1e-10);
    CHECK(corrected.corrections == 0);
    CHECK(corrected.value == plain.value);
}

TEST_CASE("integrate insists on a separation certificate") {
    GammaProductIntegrand f = barnes_integrand({0.25, 0}, {0.75, 0}, {0.5, 0}, {1.0, 0});
    Contour c;  // default separation_margin = 0
    c.sigma = 0.125;
    CHECK_THROWS_AS(mbkit::integrate(f, c, 1e-10), mbkit::SeparationImpossibleError);
}

TEST_CASE("a pole on the line surfaces as PoleError from either kernel") {
    GammaProductIntegrand f;
    f.plus_shifts = {{0.5, 0}};
    f.minus_shifts = {{0.5, 0}};
    Contour c;
    c.sigma = 0.5;  // runs straight through s = 0.5
    c.height = 10.0;
    c.separation_margin = 0.01;  // deliberately wrong certificate
    CHECK_THROWS_AS(mbkit::integrate(f, c, 1e-10, EvalMode::Serial), mbkit::PoleError);
    CHECK_THROWS_AS(mbkit::integrate(f, c, 1e-10, EvalMode::Parallel), mbkit::PoleError);
}

TEST_CASE("contour analysis reports the layout") {
    GammaProductIntegrand f = gauss_rep(0.3, 0.4, 2.0, {0.3, 0});
    auto layout = mbkit::analyze_contour(f, 1e-10);
    CHECK(layout.families.size() == 4);
    CHECK(layout.separable);
    CHECK(layout.left_max == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(layout.right_min == 0.0);
    CHECK(layout.sigma == doctest::Approx(-0.15).epsilon(1e-15));
    CHECK(layout.height >= 10.0);
    REQUIRE(layout.magnitude.size() == 33);
    CHECK(layout.magnitude.front().first == doctest::Approx(-layout.height));
    CHECK(layout.magnitude.back().first == doctest::Approx(layout.height));
    // Tails must have decayed hard by the truncation height.
    CHECK(layout.magnitude.front().second < -8.0);
    CHECK(layout.magnitude.back().second < -8.0);

    GammaProductIntegrand tiny;
    tiny.plus_shifts = {{0.3, 0}};
    tiny.minus_shifts = {{-0.2999, 0}};
    auto nosep = mbkit::analyze_contour(tiny, 1e-10);
    CHECK_FALSE(nosep.separable);
    CHECK(nosep.magnitude.empty());

    // Analysis never throws on a collision; it just reports non-separable.
    GammaProductIntegrand collide;
    collide.plus_shifts = {{0.3, 0}};
    collide.minus_shifts = {{-0.3, 0}};
    CHECK_FALSE(mbkit::analyze_contour(collide, 1e-10).separable);
}
