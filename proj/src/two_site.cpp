#include "su3/two_site.hpp"

#include <cmath>
#include <numbers>

#include "su3/specfun.hpp"

namespace su3::two_site {

using specfun::psi;
using specfun::polygamma_difference;

namespace {
constexpr double kThird = 1.0 / 3.0;
constexpr double kFourThirds = 4.0 / 3.0;
}  // namespace

cplx G(cplx lambda) {
    const cplx t = lambda * kThird;
    return kThird * (polygamma_difference(0, -t, 1.0, kFourThirds) + polygamma_difference(0, t, 1.0, kFourThirds));
}

cplx G_prime(cplx lambda) {
    const cplx t = lambda * kThird;
    return (1.0 / 9.0) * (polygamma_difference(1, t, 1.0, kFourThirds) - polygamma_difference(1, -t, 1.0, kFourThirds));
}

cplx sigma(cplx lambda) { return G(lambda) - 1.0 / (lambda * lambda - 1.0); }

cplx sigma_prime(cplx lambda) {
    const cplx d = lambda * lambda - 1.0;
    return G_prime(lambda) + 2.0 * lambda / (d * d);
}

cplx omega33(cplx lambda) { return (lambda * lambda - 1.0) * G(lambda) - 1.0; }

cplx omega33_prime(cplx lambda) { return 2.0 * lambda * G(lambda) + (lambda * lambda - 1.0) * G_prime(lambda); }

cplx omega_bar(cplx lambda) { return lambda * (lambda + 3.0) * G(lambda) - (lambda + 3.0) / (lambda - 1.0); }

cplx alpha33(cplx lambda) { return (omega33(lambda) - kThird) / 8.0; }

OmegaTriple omega(cplx lambda) { return {omega33(lambda), omega_bar(lambda), alpha33(lambda)}; }

double omega33_homogeneous() { return 1.0 - std::numbers::pi / (3.0 * std::sqrt(3.0)) - std::log(3.0); }

double alpha33_homogeneous() {
    return (2.0 - std::numbers::pi / std::sqrt(3.0) - 3.0 * std::log(3.0)) / 24.0;
}

std::vector<double> zeta_expansion(int K, ZetaSign sign) {
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    c[0] = (2.0 / 3.0) * (psi(1.0) - psi(kFourThirds)).real();
    double ninth_pow = 1.0;
    for (int k = 1; k <= K; ++k) {
        ninth_pow /= 9.0;
        const double diff = (specfun::hurwitz_zeta(2 * k + 1, 1.0).value -
                             specfun::hurwitz_zeta(2 * k + 1, kFourThirds).value)
                                .real();
        const double s = (sign == ZetaSign::Corrected) ? -1.0 : 1.0;
        c[static_cast<std::size_t>(k)] = s * (2.0 / 3.0) * diff * ninth_pow;
    }
    return c;
}

std::vector<double> taylor_coefficients_numeric(int K, double radius, int points) {
    std::vector<double> c(static_cast<std::size_t>(K) + 1, 0.0);
    for (int j = 0; j < points; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / points;
        const cplx g = G(std::polar(radius, theta));
        for (int k = 0; k <= K; ++k)
            c[static_cast<std::size_t>(k)] += (g * std::polar(1.0, -2.0 * k * theta)).real();
    }
    for (int k = 0; k <= K; ++k) c[static_cast<std::size_t>(k)] /= points * std::pow(radius, 2 * k);
    return c;
}

QkzResiduals check_qkz_two_site(cplx l) {
    const cplx den = l * (l + 3.0);
    QkzResiduals r;
    r.first = std::abs(omega33(l) - ((l - 1.0) * (l + 1.0) / den * omega_bar(l) + 1.0 / l));
    const cplx rhs2 = -(l - 1.0) * (l + 3.0) / den * omega33(l + 1.0) - (l - 1.0) * (l + 2.0) / den * omega_bar(l) +
                      (l - 1.0) / l;
    r.second = std::abs(omega_bar(l - 1.0) - rhs2);
    return r;
}

double three_term_residual(cplx l) {
    const cplx l2 = l * l;
    return std::abs(sigma(l + 1.0) + sigma(l) + sigma(l - 1.0) - (l2 + 2.0) / ((l2 - 4.0) * (l2 - 1.0)));
}

}  // namespace su3::two_site
