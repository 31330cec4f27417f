#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su3/specfun.hpp"

using namespace su3::specfun;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("values against high-precision references") {
    // references from 30-digit evaluations
    CHECK(rel(psi({0.7, 1.3}), {0.24908033637028984, 1.4084357193214726}) < 1e-13);
    CHECK(rel(psi_n(1, {0.7, 1.3}), {0.14154896208653035, -0.78790110224291694}) < 1e-13);
    CHECK(rel(psi_n(3, {2.2, -0.4}), {0.26492881398960464, 0.19627069844864476}) < 1e-13);
    CHECK(rel(log_gamma({3.7, 2.1}).value, {0.7853469580738222, 2.583012925115262}) < 1e-13);
    CHECK(rel(hurwitz_zeta(3, 1.0).value, 1.2020569031595943) < 1e-14);
    CHECK(rel(hurwitz_zeta(5, 4.0 / 3.0).value, 0.25528996441887506) < 1e-13);
    CHECK(rel(hurwitz_zeta(2, {0.25, 0.5}).value, {-1.0011295420359397, -3.0823818724169025}) < 1e-13);
}

TEST_CASE("digamma recurrence") {
    for (cplx z : {cplx(2.5), cplx(0.3, 0.4), cplx(-1.5, 2.0), cplx(12.0, -3.0)})
        CHECK(std::abs(psi(z + 1.0) - psi(z) - 1.0 / z) < 1e-13 * std::max(1.0, std::abs(psi(z))));
    CHECK(std::abs(psi(1.0) + std::numbers::egamma) < 1e-15);
}

TEST_CASE("polygamma equals the signed zeta form") {
    for (int m = 1; m <= 6; ++m)
        for (cplx z : {cplx(1.3), cplx(0.4, 1.1), cplx(5.5, -2.0)}) {
            double f = 1.0;
            for (int k = 2; k <= m; ++k) f *= k;
            const cplx expected = (m % 2 == 1 ? 1.0 : -1.0) * f * hurwitz_zeta(m + 1, z).value;
            CHECK(rel(psi_n(m, z), expected) < 1e-12);
        }
}

TEST_CASE("asymptotic and recurrence-lifted digamma agree across the threshold") {
    // ψ(z) from the series region versus ψ(z + n) − Σ 1/(z + k)
    for (double re = 0.5; re < 14.0; re += 1.25)
        for (double im : {-3.0, 0.0, 2.5}) {
            const cplx z(re, im);
            cplx lifted = psi(z + 15.0);
            for (int k = 0; k < 15; ++k) lifted -= 1.0 / (z + static_cast<double>(k));
            CHECK(rel(psi(z), lifted) < 1e-13);
        }
}

TEST_CASE("Hurwitz zeta telescopes") {
    for (int s = 2; s <= 7; ++s)
        for (cplx a : {cplx(0.5), cplx(1.3, 0.7), cplx(4.0 / 3.0)}) {
            const cplx lhs = hurwitz_zeta(s, a).value - hurwitz_zeta(s, a + 1.0).value;
            CHECK(rel(lhs, std::pow(a, -s)) < 1e-13);
        }
}

TEST_CASE("estimated errors are reported") {
    const auto v = hurwitz_zeta(3, 1.0);
    CHECK(v.error >= 0.0);
    CHECK(v.error < 1e-13);
    CHECK(digamma({0.3, 0.1}).error >= 0.0);
}

TEST_CASE("pole proximity and domain errors") {
    CHECK_THROWS(digamma(0.0));
    CHECK_THROWS(digamma(-2.0 + 1e-10));
    CHECK_THROWS(polygamma(2, -1.0));
    CHECK_THROWS(polygamma(7, 1.0));
    CHECK_THROWS(hurwitz_zeta(1, 1.0));
    CHECK_NOTHROW(digamma(-2.0 + 1e-6));
}

TEST_CASE("far-field digamma differences keep full accuracy") {
    // ψ(z + 1) − ψ(z + 4/3) for large |z| against direct evaluation at moderate |z|
    for (cplx z : {cplx(50.0, 3.0), cplx(-20.0, 45.0)}) {
        const cplx direct = psi(z + 1.0) - psi(z + 4.0 / 3.0);
        CHECK(rel(polygamma_difference(0, z, 1.0, 4.0 / 3.0), direct) < 1e-12);
        const cplx direct1 = psi_n(1, z + 1.0) - psi_n(1, z + 4.0 / 3.0);
        CHECK(std::abs(polygamma_difference(1, z, 1.0, 4.0 / 3.0) - direct1) < 1e-12 * std::abs(direct1));
    }
    // leading behaviour (b − a)/z at huge |z|
    const cplx z(0.5, 1e15);
    CHECK(std::abs(polygamma_difference(0, z, 1.0, 4.0 / 3.0) * z + 1.0 / 3.0) < 1e-12);
    CHECK(bernoulli_polynomial(2, 0.5) == doctest::Approx(-1.0 / 12.0));
    CHECK(bernoulli_even(1) == doctest::Approx(1.0 / 6.0));
}
