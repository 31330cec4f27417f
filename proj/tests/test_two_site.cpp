#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su3/specfun.hpp"
#include "su3/two_site.hpp"

using namespace su3::two_site;

namespace {

const double kOmega0 = 1.0 - std::numbers::pi / (3.0 * std::sqrt(3.0)) - std::log(3.0);

std::vector<cplx> grid() {
    std::vector<cplx> pts;
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b)
            pts.emplace_back(-2.3 + 0.5 * a, (b < 5 ? -1.0 : 1.0) * (0.15 + 0.3 * (b % 5)));
    return pts;
}

}  // namespace

TEST_CASE("homogeneous values") {
    CHECK(std::abs(omega33(0.0).real() - (-0.703212076746182)) < 1e-12);
    CHECK(std::abs(omega33(0.0).real() - kOmega0) < 1e-14);
    CHECK(std::abs(alpha33(0.0).real() - (-0.12956817625994)) < 1e-12);
    CHECK(std::abs(alpha33(0.0).real() - (2.0 - std::numbers::pi / std::sqrt(3.0) - 3.0 * std::log(3.0)) / 24.0) <
          1e-14);
    CHECK(std::abs(sigma(0.0).real() - 0.703212076746182) < 1e-12);
    CHECK(omega33_homogeneous() == doctest::Approx(kOmega0).epsilon(1e-15));
    CHECK(alpha33_homogeneous() == doctest::Approx((kOmega0 - 1.0 / 3.0) / 8.0).epsilon(1e-15));
    CHECK(std::abs(alpha33(0.0) - (omega33(0.0) - 1.0 / 3.0) / 8.0) < 1e-15);
}

TEST_CASE("values against high-precision references") {
    CHECK(std::abs(omega33({0.9, 0.4}) - cplx(-0.85653302578056731, -0.22076552274689461)) < 1e-13);
    CHECK(std::abs(omega33(2.5) - (-9.0226339266389661)) < 1e-12);
    CHECK(std::abs(sigma({0.6, 0.2}) - cplx(0.99544231316638397, 0.44910578747408623)) < 1e-13);
    CHECK(std::abs(G({0.3, 0.7}) - cplx(-0.27779755105777354, -0.017882721257138858)) < 1e-13);
}

TEST_CASE("symmetry and explicit factors") {
    for (cplx l : {cplx(0.37), cplx(0.2, 0.9), cplx(-1.7, 0.3)}) {
        CHECK(std::abs(sigma(l) - sigma(-l)) < 1e-13);
        CHECK(std::abs(omega33(l) - omega33(-l)) < 1e-13);
        CHECK(std::abs(omega33(l) - (l * l - 1.0) * sigma(l)) < 1e-13);
        CHECK(std::abs(G(l) - (omega33(l) + 1.0) / (l * l - 1.0)) < 1e-12);
    }
    // σ has simple poles at ±1 while G is regular there, so ω33(±1) = −1.
    CHECK(std::abs(omega33(1.0) + 1.0) < 1e-12);
    CHECK(std::abs(omega33(-1.0) + 1.0) < 1e-12);
}

TEST_CASE("derivatives agree with finite differences") {
    const double h = 1e-5;
    for (cplx l : {cplx(0.4, 0.3), cplx(1.7, -0.6)}) {
        CHECK(std::abs(sigma_prime(l) - (sigma(l + h) - sigma(l - h)) / (2 * h)) < 1e-8);
        CHECK(std::abs(omega33_prime(l) - (omega33(l + h) - omega33(l - h)) / (2 * h)) < 1e-8);
        CHECK(std::abs(G_prime(l) - (G(l + h) - G(l - h)) / (2 * h)) < 1e-8);
    }
}

TEST_CASE("functional equations on a 100-point grid") {
    double q1 = 0.0, q2 = 0.0, t = 0.0;
    for (cplx l : grid()) {
        const auto r = check_qkz_two_site(l);
        q1 = std::max(q1, r.first);
        q2 = std::max(q2, r.second);
        t = std::max(t, three_term_residual(l));
    }
    CHECK(q1 < 1e-11);
    CHECK(q2 < 1e-11);
    CHECK(t < 1e-11);
    CHECK(check_qkz_two_site({0.9, 0.4}).second < 1e-11);
    CHECK(check_qkz_two_site(2.5).second < 1e-11);
    CHECK(check_qkz_two_site(2.5).first < 1e-13);
    CHECK(three_term_residual({0.6, 0.2}) < 1e-12);
}

TEST_CASE("omega triple and the regular value of omega_bar at zero") {
    const auto t = omega({0.3, 0.2});
    CHECK(std::abs(t.omega33 - omega33({0.3, 0.2})) < 1e-15);
    CHECK(std::abs(t.alpha33 - (t.omega33 - 1.0 / 3.0) / 8.0) < 1e-15);
    const cplx small(1e-4, 1e-4);
    CHECK(std::abs(omega_bar(0.0) - omega_bar(small)) < 1e-3);
    CHECK(std::abs(omega_bar(0.0) - 3.0) < 1e-12);
}

TEST_CASE("zeta expansion of the generating function") {
    const auto c = zeta_expansion(6);
    CHECK(c.size() == 7);
    const double c0 = (2.0 / 3.0) * (su3::specfun::psi(1.0) - su3::specfun::psi(4.0 / 3.0)).real();
    CHECK(std::abs(c[0] - c0) < 1e-14);
    CHECK(std::abs(c[0] - G(0.0).real()) < 1e-13);
    CHECK(std::abs(c[0] + (omega33(0.0).real() + 1.0)) < 1e-13);

    const double h = 1e-3;
    const double fd = (G(h).real() - 2.0 * G(0.0).real() + G(-h).real()) / (2.0 * h * h);
    CHECK(std::abs(c[1] - fd) < 1e-6);

    const auto taylor = taylor_coefficients_numeric(6);
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(c[static_cast<std::size_t>(k)] - taylor[static_cast<std::size_t>(k)]) < 1e-8);

    // odd Taylor coefficients vanish: G(λ) − G(−λ) = 0
    for (cplx l : {cplx(0.3, 0.1), cplx(0.8, -0.5)}) CHECK(std::abs(G(l) - G(-l)) < 1e-13);

    // the all-positive sign pattern differs from the computed coefficient for k >= 1
    const auto positive = zeta_expansion(3, ZetaSign::Positive);
    CHECK(std::abs(positive[1] + c[1]) < 1e-15);
    CHECK(std::abs(positive[0] - c[0]) < 1e-15);
}

TEST_CASE("series sums back to the function") {
    const auto c = zeta_expansion(20);
    const cplx l(0.5, 0.4);
    cplx sum = 0.0, p = 1.0;
    for (double ck : c) {
        sum += ck * p;
        p *= l * l;
    }
    CHECK(std::abs(sum - G(l)) < 1e-12);
}
