#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su3/three_site.hpp"
#include "su3/two_site.hpp"

using namespace su3::three_site;

TEST_CASE("phi and r against transcriptions in extended precision") {
    CHECK(std::abs(phi({0.4, 0.5}) - cplx(-24.798066009265671, 7.8487213482706005)) < 1e-11);
    CHECK(std::abs(r_inhom({2.0, 0.3}, 0.1, {-0.2, 0.1}) - cplx(16.548436732587286, -0.44674113207229893)) < 1e-11);
}

TEST_CASE("r reduces to phi on the homogeneous line") {
    const cplx l(0.4, 0.5);
    double prev = 1.0;
    for (double t : {1e-3, 1e-4}) {
        const double err = std::abs(r_inhom(l, t, -t) - phi(l));
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
    // Richardson in t² removes the leading even error term
    const cplx a = r_inhom(l, 1e-3, -1e-3), b = r_inhom(l, 5e-4, -5e-4);
    CHECK(std::abs((4.0 * b - a) / 3.0 - phi(l)) < 1e-8);
}

TEST_CASE("r is finite off the singular set and its x = y poles cancel") {
    CHECK_NOTHROW(r_inhom({2.0, 0.3}, 0.1, {-0.2, 0.1}));
    CHECK_THROWS_AS(r_inhom(1.0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(r_inhom(1.0, 0.0, 0.4), std::invalid_argument);
    // the limit y -> x exists: successive differences shrink linearly and the
    // Richardson combinations agree
    const cplx l1(0.6, 0.4), l2(0.1, 0.0);
    const cplx a = r_inhom(l1, l2, l2 + 1e-3), b = r_inhom(l1, l2, l2 + 5e-4), c = r_inhom(l1, l2, l2 + 2.5e-4);
    CHECK(std::abs(b - c) < 0.6 * std::abs(a - b));
    CHECK(std::abs((2.0 * b - a) - (2.0 * c - b)) < 1e-4);
}

TEST_CASE("phi Laurent and far-field behaviour") {
    for (int k = 0; k < 8; ++k) {
        const cplx l = 1e-3 * std::polar(1.0, k * std::numbers::pi / 4.0 + 0.1);
        CHECK(std::abs(l * l * phi(l) + 2.0) < 2e-2);
    }
    // Along the vertical quadrature line φ decays like λ⁻². Along horizontal
    // lines it does not: ω33 has real poles at ±3, ±6, ...
    double worst = 0.0;
    for (double y = 2.0; y <= 1000.0; y *= 1.7) {
        const cplx l(-0.5, y);
        worst = std::max(worst, std::abs(l * l * phi(l)));
    }
    CHECK(worst < 50.0);
    CHECK(std::abs(cplx(6.0, 0.5) * cplx(6.0, 0.5) * phi({6.0, 0.5})) > 100.0);
    // Schwarz reflection of a function real on the real axis
    for (cplx l : {cplx(0.3, 0.5), cplx(-1.4, 0.5), cplx(2.2, 0.5)})
        CHECK(std::abs(phi(std::conj(l)) - std::conj(phi(l))) < 1e-12);
    CHECK_THROWS(phi(0.0));
    CHECK_THROWS(phi(1.0));
}

TEST_CASE("kernel closed forms") {
    const cplx expected = -2.0 * std::numbers::pi * cplx(0, 1) / (std::exp(std::numbers::pi) - 1.0);
    CHECK(std::abs(h_kernel(0, 0.5) - expected) < 1e-14);
    for (int l : {-1, 0, 1})
        for (double z : {0.5, 1.3, -0.7}) {
            const auto q = h_kernel_quadrature(l, z);
            CAPTURE(l);
            CAPTURE(z);
            CHECK(std::abs(q.value - h_kernel(l, z)) < 1e-8);
        }
    for (double z : {0.4, 1.1, 2.5}) CHECK(std::abs(h_kernel(-1, z) - std::conj(h_kernel(1, -z))) < 1e-14);
    CHECK(std::abs(h_kernel(0, 5.0)) < 2.0 * std::numbers::pi * std::exp(-2.0 * std::numbers::pi * 5.0) * 1.01);
    CHECK(std::abs(h_kernel(0, 10.0)) < 1e-25);
    CHECK_THROWS(h_kernel(0, 0.0));
}

TEST_CASE("decoupled recursion residuals along the contour") {
    const ThreeSiteProblem problem;
    const DecoupledSolution sol(problem);
    for (int l : {-1, 0, 1})
        for (int j = 0; j < 10; ++j) {
            const cplx lam(0.3, -2.0 + 0.5 * j);
            CHECK(recursion_residual(sol, l, lam) < 1e-8);
        }
    CHECK(std::abs(sol.constant() - 6.0) < 1e-8);  // sum of the three integration constants
}

TEST_CASE("conjugation structure of the decoupled functions") {
    // φ is real on the real axis and the quadrature line is symmetric under
    // conjugation, so g_{-l}(conj λ) = conj g_l(λ) and G1 is real-analytic.
    const DecoupledSolution sol(ThreeSiteProblem{});
    for (cplx lam : {cplx(0.3, 0.4), cplx(-0.2, 1.2), cplx(0.45, 0.0)}) {
        CHECK(std::abs(sol.g(-1, std::conj(lam)) - std::conj(sol.g(1, lam))) < 1e-10);
        CHECK(std::abs(sol.g(0, std::conj(lam)) - std::conj(sol.g(0, lam))) < 1e-10);
        CHECK(std::abs(sol.G(1, std::conj(lam)) - std::conj(sol.G(1, lam))) < 1e-10);
    }
    const cplx z(0.2, 0.3);
    CHECK(std::abs(sol.G(1, z) - (sol.g(0, z) + sol.g(1, z) + sol.g(-1, z)) / 3.0) < 1e-14);
}

TEST_CASE("grid refinement leaves g_0 unchanged") {
    ThreeSiteProblem coarse;
    ThreeSiteProblem fine = coarse;
    fine.step /= 2.0;
    const cplx lam(0.3, 0.5);
    CHECK(std::abs(solve_g(coarse, 0, lam) - solve_g(fine, 0, lam)) < 1e-8);
}

TEST_CASE("three-site correlator at the homogeneous point") {
    const auto s = three_site_correlator(ThreeSiteProblem{});
    CHECK(std::abs(s.p12p23 - 0.191368820116674) < 1e-6);
    CHECK(std::abs(s.F1 - 8.0 * 0.191368820116674) < 8e-6);
    CHECK(std::abs(s.F1 - 8.0 * s.p12p23) < 1e-15);
    CHECK(s.diagnostics.max_imaginary_leakage < 1e-8);
    CHECK(s.diagnostics.extrapolation_converging);
    CHECK(std::abs(s.diagnostics.G1_prime_at_0) < 1e-6);
    CHECK(std::abs(s.diagnostics.G1_linear_coefficient) < 1e-6);
    CHECK(std::abs(s.diagnostics.integration_constant - 6.0) < 1e-8);
    // frozen from this solver; no reference value exists
    CHECK(std::abs(s.F2 - (-1.09361088488)) < 1e-7);
    CHECK(std::abs(s.F3 - (-2.43254234726)) < 1e-7);
}

TEST_CASE("the one-sided series solves the recursion but violates the double zero") {
    const cplx lam(0.3, 0.5);
    const cplx lhs = naive_g(0, lam) - naive_g(0, lam + 1.0);
    CHECK(std::abs(lhs - phi(lam)) < 1e-3);
    // λ² G1 stays of order one instead of vanishing
    for (double t : {1e-3, 1e-4}) {
        const cplx small(t, 0.0);
        CHECK(std::abs(small * small * naive_G1(small)) > 1.0);
    }
}

TEST_CASE("results do not depend on the thread count") {
    ThreeSiteProblem one;
    ThreeSiteProblem four = one;
    four.threads = 4;
    const auto a = three_site_correlator(one);
    const auto b = three_site_correlator(four);
    CHECK(a.F1 == b.F1);
    CHECK(a.F2 == b.F2);
    CHECK(a.F3 == b.F3);
}

TEST_CASE("extrapolation recovers a polynomial limit") {
    std::vector<cplx> xs, fs;
    for (int j = 0; j < 6; ++j) {
        const cplx x = cplx(0.05, 0.5) * std::pow(0.5, j);
        xs.push_back(x);
        fs.push_back(1.5 + 2.0 * x - x * x + 0.25 * x * x * x);
    }
    const auto e = extrapolate_to_zero(xs, fs);
    CHECK(std::abs(e.value - 1.5) < 1e-12);
}
