#include "su3/three_site.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "su3/two_site.hpp"

namespace su3::three_site {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidueRadius = 0.15;
constexpr int kResiduePoints = 128;
const cplx kI{0.0, 1.0};

// Evaluates fn(i) for i < n across worker threads. Each slot is written by
// exactly one thread, so the result does not depend on the thread count.
template <class Fn>
std::vector<cplx> parallel_map(std::size_t n, int threads, Fn fn) {
    std::vector<cplx> out(n);
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&out, &fn, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

struct Line {
    std::vector<cplx> nodes;
    std::vector<double> weights;
};

Line make_line(const ThreeSiteProblem& p, double re) {
    if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
    if (!(p.step > 0.0) || !(p.half_width > 0.0)) throw std::invalid_argument("step and half_width must be positive");
    const long n = std::lround(p.half_width / p.step);
    Line line;
    for (long j = -n; j <= n; ++j) {
        const double u = static_cast<double>(j) * p.step;
        line.nodes.emplace_back(re, std::sinh(u));
        line.weights.push_back(p.step * std::cosh(u));
    }
    return line;
}

std::vector<cplx> weighted_source(const Line& line, const std::function<cplx(cplx)>& src, int threads) {
    return parallel_map(line.nodes.size(), threads,
                        [&](std::size_t j) { return line.weights[j] * src(line.nodes[j]); });
}

cplx stable_cot(cplx w) {
    if (w.imag() >= 0.0) {
        const cplx q = std::exp(2.0 * kI * w);
        return kI * (q + 1.0) / (q - 1.0);
    }
    const cplx q = std::exp(-2.0 * kI * w);
    return kI * (1.0 + q) / (1.0 - q);
}

// (π/3)cot(π ζ/3) and its first two derivatives with respect to λ, ζ = ν − λ.
cplx period3_kernel(cplx zeta, int order) {
    const double a = kPi / 3.0;
    const cplx ct = stable_cot(a * zeta);
    const cplx csc2 = 1.0 + ct * ct;
    switch (order) {
        case 0: return a * ct;
        case 1: return a * a * csc2;
        case 2: return 2.0 * a * a * a * csc2 * ct;
        default: throw std::invalid_argument("kernel derivative order must be 0, 1 or 2");
    }
}

double b_of(int l) {
    switch (l) {
        case 0: return 0.0;
        case 1: return 1.0 / 3.0;
        case -1: return 2.0 / 3.0;
        default: throw std::invalid_argument("l must be -1, 0 or 1");
    }
}

// Kernel with unit residue at ζ = 0 and k_l(ζ+1) = w^l k_l(ζ).
cplx decoupled_kernel(int l, cplx zeta) { return -h_kernel(l, kI * zeta); }

void reject_near(cplx v, double target, const std::string& what) {
    if (std::abs(v - target) < 1e-10)
        throw std::invalid_argument("singular parameter: " + what + " = " + std::to_string(target));
}

}  // namespace

cplx cube_root_of_unity(int power) {
    const int p = ((power % 3) + 3) % 3;
    return std::polar(1.0, 2.0 * kPi * p / 3.0);
}

cplx phi(cplx l) {
    if (std::abs(l) < 1e-8 || std::abs(l - 1.0) < 1e-8 || std::abs(l + 1.0) < 1e-8)
        throw std::domain_error("phi: argument at a pole (0 or ±1)");
    const cplx l2 = l * l;
    const cplx d = l2 - 1.0;
    const double w0 = two_site::omega33_homogeneous();
    return -12.0 * two_site::omega33(l) / d - 2.0 * two_site::omega33_prime(l) / (d * d) + 4.0 * l * w0 / (d * d) +
           2.0 * (4.0 * l2 * l2 + 6.0 * l2 * l - l2 - 6.0 * l - 1.0) / (l2 * d * d);
}

cplx r_inhom(cplx lambda1, cplx lambda2, cplx lambda3) {
    const cplx x = lambda1 - lambda3, y = lambda1 - lambda2;
    for (double t : {0.0, 1.0, -1.0, -3.0}) {
        reject_near(x, t, "x");
        reject_near(y, t, "y");
    }
    if (std::abs(x - y) < 1e-10) throw std::invalid_argument("singular parameter: x = y");
    const cplx o23 = two_site::omega33(lambda2 - lambda3);
    const cplx x2 = x * x, y2 = y * y;
    const cplx dx = x2 - 1.0, dy = y2 - 1.0;
    return 2.0 * (-1.0 + 2.0 * x2 + 2.0 * y2) / (dx * dy) + 2.0 * (x + y) / (dx * dy) * o23 +
           2.0 * (-1.0 + 3.0 * x + x2 - 3.0 * y - 2.0 * x * y + y2 - 3.0 * x * y2 + 3.0 * y2 * y) /
               (x * (x + 3.0) * (x - y) * dy) * two_site::omega_bar(x) -
           2.0 * (-1.0 - 3.0 * x + x2 + 3.0 * x2 * x + 3.0 * y - 2.0 * x * y - 3.0 * x2 * y + y2) /
               (dx * (x - y) * y * (y + 3.0)) * two_site::omega_bar(y);
}

cplx h_kernel(int l, cplx z) {
    const double b = b_of(l);
    const double m = std::round(z.imag());
    if (std::abs(z - cplx(0.0, m)) < 1e-10) throw std::domain_error("h_kernel: argument on the pole lattice");
    const cplx two_pi_i = 2.0 * kPi * kI;
    if (z.real() > 0.0) return -two_pi_i * std::exp(2.0 * kPi * (b - 1.0) * z) / (1.0 - std::exp(-2.0 * kPi * z));
    return -two_pi_i * std::exp(2.0 * kPi * b * z) / (std::exp(2.0 * kPi * z) - 1.0);
}

QuadratureEstimate h_kernel_quadrature(int l, double z, double cutoff) {
    if (std::abs(z) < 1e-12) throw std::domain_error("h_kernel_quadrature needs z != 0");
    const double eta = l == 0 ? kPi : (l == 1 ? kPi / 3.0 : -kPi / 3.0);
    b_of(l);
    const cplx wl = cube_root_of_unity(l);
    auto left = [&](double t) {
        const cplx k(t, eta);
        const cplx q = wl * std::exp(k);
        return std::exp(kI * k * z) * q / (1.0 - q);
    };
    auto right = [&](double t) {
        const cplx k(t, eta);
        return std::exp(kI * k * z) / (1.0 - wl * std::exp(k));
    };
    auto simpson = [](auto f, double a, double b, int n) {
        const double h = (b - a) / n;
        cplx s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return s * h / 3.0;
    };
    const int n = 2 * static_cast<int>(std::ceil(cutoff * 200.0));
    const cplx analytic = std::exp(-eta * z) / (kI * z);
    const cplx fine = analytic + simpson(left, -cutoff, 0.0, n) + simpson(right, 0.0, cutoff, n);
    const cplx coarse = analytic + simpson(left, -cutoff, 0.0, n / 2) + simpson(right, 0.0, cutoff, n / 2);
    return {fine, std::abs(fine - coarse) / 15.0 + std::exp(-cutoff) * (1.0 + std::abs(z))};
}

cplx circle_residue(const std::function<cplx(cplx)>& f, cplx center, double radius, int points) {
    cplx s{0.0, 0.0};
    for (int j = 0; j < points; ++j) {
        const cplx e = std::polar(radius, 2.0 * kPi * j / points);
        s += f(center + e) * e;
    }
    return s / static_cast<double>(points);
}

ContourSolution::ContourSolution(const ThreeSiteProblem& problem, const std::function<cplx(cplx)>& source,
                                 cplx anchor)
    : source_(source), c_(-problem.delta) {
    const Line line = make_line(problem, c_);
    const Line shifted = make_line(problem, c_ + 3.0);
    nodes_ = line.nodes;
    weighted_ = weighted_source(line, source_, problem.threads);
    weighted_shifted_ = weighted_source(shifted, source_, problem.threads);
    constant_ = -integral(anchor, 0, 0.0);
}

cplx ContourSolution::integral(cplx lambda, int order, double shift) const {
    const std::vector<cplx>& w = shift == 0.0 ? weighted_ : weighted_shifted_;
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < nodes_.size(); ++j) s += w[j] * period3_kernel(nodes_[j] + shift - lambda, order);
    return -s / (2.0 * kPi);
}

cplx ContourSolution::G1(cplx lambda) const { return constant_ + integral(lambda, 0, 0.0); }

cplx ContourSolution::G1_derivative(int order, cplx lambda) const {
    if (order != 1 && order != 2) throw std::invalid_argument("G1_derivative order must be 1 or 2");
    return integral(lambda, order, 0.0);
}

cplx ContourSolution::G1_continued(cplx lambda, const std::vector<cplx>& source_poles) const {
    cplx value = constant_ + integral(lambda, 0, 3.0);
    for (cplx p : source_poles) {
        if (p.real() <= c_ || p.real() >= c_ + 3.0) continue;
        value += circle_residue([&](cplx nu) { return source_(nu) * period3_kernel(nu - lambda, 0); }, p,
                                kResidueRadius, kResiduePoints);
    }
    return value;
}

DecoupledSolution::DecoupledSolution(const ThreeSiteProblem& problem) : c_(-problem.delta) {
    const Line line = make_line(problem, c_);
    const Line shifted = make_line(problem, c_ + 1.0);
    nodes_ = line.nodes;
    nodes_shifted_ = shifted.nodes;
    weights_ = line.weights;
    weights_shifted_ = shifted.weights;
    weighted_ = weighted_source(line, phi, problem.threads);
    weighted_shifted_ = weighted_source(shifted, phi, problem.threads);
    constant_ = -(raw(0, 0.0, false) + raw(1, 0.0, false) + raw(-1, 0.0, false));
}

// The kernel pole p = λ + n closest to the line is removed before the
// trapezoid sum by subtracting R[1/(ν−p) − 1/(ν−q)], q = p ± 1 on the same
// side, whose exact line integral vanishes.
cplx DecoupledSolution::raw(int l, cplx lambda, bool shifted) const {
    const auto& nodes = shifted ? nodes_shifted_ : nodes_;
    const auto& weights = shifted ? weights_shifted_ : weights_;
    const auto& w = shifted ? weighted_shifted_ : weighted_;
    const double line = c_ + (shifted ? 1.0 : 0.0);
    const double n = std::round(line - lambda.real());
    const cplx p = lambda + n;
    const double side = p.real() >= line ? 1.0 : -1.0;
    const cplx q = p + side;
    const double gap = std::abs(p.real() - line);
    const cplx residue = gap > 1e-12 && gap < 0.4 ? phi(p) * cube_root_of_unity(l * static_cast<int>(n)) : 0.0;
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        s += w[j] * decoupled_kernel(l, nodes[j] - lambda) -
             weights[j] * residue * (1.0 / (nodes[j] - p) - 1.0 / (nodes[j] - q));
    }
    return -s / (2.0 * kPi);
}

cplx DecoupledSolution::g(int l, cplx lambda) const { return raw(l, lambda, false) + (l == 0 ? constant_ : 0.0); }

cplx DecoupledSolution::g_shifted(int l, cplx lambda) const {
    const cplx res = circle_residue([&](cplx nu) { return phi(nu) * decoupled_kernel(l, nu - lambda); }, 0.0,
                                    kResidueRadius, kResiduePoints);
    return raw(l, lambda, true) + res + (l == 0 ? constant_ : 0.0);
}

cplx DecoupledSolution::G(int k, cplx lambda) const {
    const cplx g0 = g(0, lambda), g1 = g(1, lambda), gm = g(-1, lambda);
    switch (k) {
        case 1: return (g0 + g1 + gm) / 3.0;
        case 2: return (g0 + cube_root_of_unity(-1) * g1 + cube_root_of_unity(1) * gm) / 3.0;
        case 3: return (g0 + cube_root_of_unity(1) * g1 + cube_root_of_unity(-1) * gm) / 3.0;
        default: throw std::invalid_argument("G index must be 1, 2 or 3");
    }
}

cplx solve_g(const ThreeSiteProblem& problem, int l, cplx lambda) {
    b_of(l);
    return DecoupledSolution(problem).g(l, lambda);
}

double recursion_residual(const DecoupledSolution& sol, int l, cplx lambda) {
    return std::abs(sol.g(l, lambda) - cube_root_of_unity(l) * sol.g_shifted(l, lambda + 1.0) - phi(lambda));
}

cplx naive_g(int l, cplx lambda, int terms) {
    b_of(l);
    cplx s{0.0, 0.0};
    for (int k = 0; k < terms; ++k) s += cube_root_of_unity(l * k) * phi(lambda + static_cast<double>(k));
    return s;
}

cplx naive_G1(cplx lambda, int terms) {
    cplx s{0.0, 0.0};
    for (int k = 0; k < terms; ++k) s += phi(lambda + 3.0 * k);
    return s;
}

Extrapolation extrapolate_to_zero(const std::vector<cplx>& xs, const std::vector<cplx>& fs) {
    if (xs.size() != fs.size() || xs.size() < 2) throw std::invalid_argument("extrapolation needs >= 2 samples");
    const std::size_t n = xs.size();
    std::vector<cplx> p = fs;
    Extrapolation e;
    e.diagonal.push_back(p[0]);
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const cplx xa = xs[i], xb = xs[i + level];
            p[i] = (xb * p[i] - xa * p[i + 1]) / (xb - xa);
        }
        e.diagonal.push_back(p[0]);
    }
    e.value = e.diagonal.back();
    e.error = std::abs(e.diagonal[n - 1] - e.diagonal[n - 2]);
    if (n >= 3) {
        const double prev = std::abs(e.diagonal[n - 2] - e.diagonal[n - 3]);
        e.converging = e.error <= prev || e.error < 1e-13;
    }
    return e;
}

ThreeSiteSolution three_site_correlator(const ThreeSiteProblem& problem) {
    if (problem.extrapolation_depth < 3) throw std::invalid_argument("extrapolation_depth must be >= 3");
    const DecoupledSolution sol(problem);

    std::vector<cplx> xs, f1s, f2s, f3s, g1_over_l;
    for (int j = 0; j < problem.extrapolation_depth; ++j) {
        const cplx l = problem.extrapolation_start * std::pow(0.5, j);
        const cplx G1 = sol.G(1, l), G2 = sol.G(2, l), G3 = sol.G(3, l);
        const cplx d = l * l - 1.0;
        const cplx common = d * d * (l + 2.0) * (l + 2.0);
        xs.push_back(l);
        f1s.push_back(G1 * common / (l * l));
        f2s.push_back(G2 * common / ((l + 1.0) * (l + 1.0)));
        f3s.push_back(G3 * d * d);
        g1_over_l.push_back(G1 / l);
    }
    const Extrapolation e1 = extrapolate_to_zero(xs, f1s), e2 = extrapolate_to_zero(xs, f2s),
                        e3 = extrapolate_to_zero(xs, f3s), el = extrapolate_to_zero(xs, g1_over_l);

    ThreeSiteSolution out;
    out.F1 = e1.value.real();
    out.F2 = e2.value.real();
    out.F3 = e3.value.real();
    out.p12p23 = out.F1 / 8.0;
    auto& d = out.diagnostics;
    d.max_imaginary_leakage = std::max({std::abs(e1.value.imag()), std::abs(e2.value.imag()), std::abs(e3.value.imag())});
    d.extrapolation_error = std::max({e1.error, e2.error, e3.error});
    d.extrapolation_converging = e1.converging && e2.converging && e3.converging;
    d.G1_linear_coefficient = std::abs(el.value);
    d.integration_constant = sol.constant().real();
    d.nodes = 2 * static_cast<std::size_t>(std::lround(problem.half_width / problem.step)) + 1;

    for (int l : {-1, 0, 1})
        for (int j = 0; j < 10; ++j)
            d.max_recursion_residual =
                std::max(d.max_recursion_residual, recursion_residual(sol, l, cplx(0.3, -2.0 + 0.5 * j)));

    const ContourSolution cot_route(problem, phi, 0.0);
    d.G1_prime_at_0 = std::abs(cot_route.G1_derivative(1, 0.0));
    d.F1_kernel_derivative = (2.0 * cot_route.G1_derivative(2, 0.0)).real();
    const cplx small(1e-3, 0.0);
    d.naive_series_lambda2_G1 = (small * small * naive_G1(small)).real();
    return out;
}

}  // namespace su3::three_site
