#include "su3/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace su3::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLiftRadius = 10.0;
constexpr int kMaxLift = 2000000;

constexpr std::array<double, 21> kBernoulliEven = {
    1.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

void check_pole(cplx z, const char* what) {
    if (z.real() > 0.5) return;
    const double k = std::round(z.real());
    if (k <= 0.0 && std::abs(z - cplx(k, 0.0)) < 1e-8)
        throw std::domain_error(std::string(what) + ": argument within 1e-8 of the pole at " + std::to_string(k));
}

constexpr double kReflectBelow = 10.0;

cplx cot_pi(cplx z) {
    const cplx i(0.0, 1.0);
    const cplx w = std::numbers::pi * z;
    if (w.imag() >= 0.0) {
        const cplx q = std::exp(2.0 * i * w);
        return i * (q + 1.0) / (q - 1.0);
    }
    const cplx q = std::exp(-2.0 * i * w);
    return i * (1.0 + q) / (1.0 - q);
}

bool needs_lift(cplx w) { return std::abs(w) < kLiftRadius || w.real() < 0.0; }

int lift_count(cplx z) {
    int n = 0;
    cplx w = z;
    while (needs_lift(w)) {
        w += 1.0;
        if (++n > kMaxLift) throw std::domain_error("argument too far in the left half-plane");
    }
    return n;
}

}  // namespace

double bernoulli_even(int k) {
    if (k < 0 || k >= static_cast<int>(kBernoulliEven.size())) throw std::out_of_range("bernoulli_even index");
    return kBernoulliEven[static_cast<std::size_t>(k)];
}

SpecialValue log_gamma(cplx z) {
    check_pole(z, "log_gamma");
    const int lift = lift_count(z);
    cplx shift_sum{0.0, 0.0};
    double scale = 0.0;
    for (int j = 0; j < lift; ++j) {
        shift_sum += std::log(z + static_cast<double>(j));
        scale += std::abs(std::log(z + static_cast<double>(j)));
    }
    const cplx w = z + static_cast<double>(lift);
    cplx s = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * std::numbers::pi);
    const cplx w2 = w * w;
    cplx wp = w;
    double last = 0.0;
    for (int k = 1; k < static_cast<int>(kBernoulliEven.size()); ++k) {
        const cplx term = kBernoulliEven[static_cast<std::size_t>(k)] / (2.0 * k * (2.0 * k - 1.0) * wp);
        s += term;
        last = std::abs(term);
        if (last < kEps * std::abs(s) * 1e-3) break;
        wp *= w2;
    }
    SpecialValue out;
    out.value = s - shift_sum;
    out.error = last + kEps * (std::abs(s) + scale + 4.0 * lift);
    return out;
}

SpecialValue polygamma(int order, cplx z) {
    if (order < 0 || order > 6) throw std::invalid_argument("polygamma order must be in 0..6");
    check_pole(z, "polygamma");
    if (order <= 1 && z.real() < -kReflectBelow) {
        // psi(z) = psi(1-z) - pi cot(pi z);  psi_1(z) = -psi_1(1-z) + pi^2 / sin^2(pi z)
        const SpecialValue mirror = polygamma(order, 1.0 - z);
        const cplx ct = cot_pi(z);
        SpecialValue out;
        if (order == 0)
            out.value = mirror.value - std::numbers::pi * ct;
        else
            out.value = -mirror.value + std::numbers::pi * std::numbers::pi * (1.0 + ct * ct);
        out.error = mirror.error + kEps * std::abs(out.value) * (4.0 + std::abs(z));
        return out;
    }
    const int lift = lift_count(z);
    const double mfact = factorial(order);
    const double sign_m = (order % 2 == 0) ? 1.0 : -1.0;  // (-1)^m

    // psi_m(z) = psi_m(z + N) - (-1)^m m! sum_{j<N} (z+j)^{-(m+1)}
    cplx shift_sum{0.0, 0.0};
    double scale = 0.0;
    for (int j = 0; j < lift; ++j) {
        const cplx t = std::pow(z + static_cast<double>(j), -(order + 1));
        shift_sum += t;
        scale += std::abs(t);
    }
    shift_sum *= sign_m * mfact;
    scale *= mfact;

    const cplx w = z + static_cast<double>(lift);
    const cplx winv = 1.0 / w;
    const cplx winv2 = winv * winv;
    cplx s;
    double last = 0.0;
    if (order == 0) {
        s = std::log(w) - 0.5 * winv;
        cplx wp = winv2;
        for (int k = 1; k < static_cast<int>(kBernoulliEven.size()); ++k) {
            const cplx term = -kBernoulliEven[static_cast<std::size_t>(k)] / (2.0 * k) * wp;
            s += term;
            last = std::abs(term);
            if (last < kEps * std::abs(s) * 1e-3) break;
            wp *= winv2;
        }
    } else {
        // (-1)^{m+1} [ (m-1)!/w^m + m!/(2 w^{m+1}) + sum_k B_2k (2k+m-1)!/((2k)! w^{2k+m}) ]
        const cplx wm = std::pow(winv, order);
        cplx inner = factorial(order - 1) * wm + 0.5 * mfact * wm * winv;
        cplx wp = wm * winv2;
        for (int k = 1; k < static_cast<int>(kBernoulliEven.size()); ++k) {
            const cplx term = kBernoulliEven[static_cast<std::size_t>(k)] * factorial(2 * k + order - 1) /
                              factorial(2 * k) * wp;
            inner += term;
            last = std::abs(term);
            if (last < kEps * std::abs(inner) * 1e-3) break;
            wp *= winv2;
        }
        s = -sign_m * inner;
    }
    SpecialValue out;
    out.value = s - shift_sum;
    out.error = last + kEps * (std::abs(s) + scale + 4.0 * std::abs(out.value));
    return out;
}

SpecialValue digamma(cplx z) { return polygamma(0, z); }

SpecialValue hurwitz_zeta(int s, cplx a) {
    if (s < 2) throw std::invalid_argument("hurwitz_zeta requires integer s >= 2");
    check_pole(a, "hurwitz_zeta");
    const int n_direct = lift_count(a);
    cplx head{0.0, 0.0};
    double scale = 0.0;
    for (int k = 0; k < n_direct; ++k) {
        const cplx t = std::pow(a + static_cast<double>(k), -s);
        head += t;
        scale += std::abs(t);
    }
    const cplx w = a + static_cast<double>(n_direct);
    const cplx wpow = std::pow(w, -s);
    cplx tail = w * wpow / static_cast<double>(s - 1) + 0.5 * wpow;
    // Euler-Maclaurin corrections: B_2j/(2j)! * s(s+1)...(s+2j-2) * w^{-s-2j+1}
    double rising = static_cast<double>(s);  // s(s+1)...(s+2j-2) for j = 1
    cplx wp = wpow / w;                       // w^{-s-1}
    const cplx winv2 = 1.0 / (w * w);
    double last = 0.0;
    for (int j = 1; j < static_cast<int>(kBernoulliEven.size()); ++j) {
        const cplx term = kBernoulliEven[static_cast<std::size_t>(j)] / factorial(2 * j) * rising * wp;
        tail += term;
        last = std::abs(term);
        if (last < kEps * std::abs(tail) * 1e-3) break;
        rising *= static_cast<double>(s + 2 * j - 1) * static_cast<double>(s + 2 * j);
        wp *= winv2;
    }
    SpecialValue out;
    out.value = head + tail;
    out.error = last + kEps * (scale + std::abs(tail) + 4.0 * std::abs(out.value));
    return out;
}

}  // namespace su3::specfun

namespace su3::specfun {

double bernoulli_polynomial(int n, double x) {
    if (n < 0 || n > 40) throw std::out_of_range("bernoulli_polynomial degree");
    double sum = 0.0, binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        double bk = 0.0;
        if (k == 1) bk = -0.5;
        else if (k % 2 == 0) bk = kBernoulliEven[static_cast<std::size_t>(k / 2)];
        sum += binom * bk * std::pow(x, n - k);
        binom = binom * (n - k) / (k + 1);
    }
    return sum;
}

cplx polygamma_difference(int order, cplx z, double a, double b) {
    if (order != 0 && order != 1) throw std::invalid_argument("polygamma_difference: order must be 0 or 1");
    constexpr double kAsymptoticRadius = 40.0;
    if (std::abs(z) < kAsymptoticRadius) return psi_n(order, z + a) - psi_n(order, z + b);
    cplx sum{0.0, 0.0};
    cplx zp = z;
    for (int n = 1; n <= 40; ++n) {
        const double db = bernoulli_polynomial(n, a) - bernoulli_polynomial(n, b);
        const double sign = (n % 2 == 0) ? -1.0 : 1.0;
        const cplx term = order == 0 ? sign * db / (static_cast<double>(n) * zp) : -sign * db / (zp * z);
        sum += term;
        if (std::abs(term) <= kEps * std::abs(sum) && n > 2) break;
        zp *= z;
    }
    return sum;
}

}  // namespace su3::specfun
