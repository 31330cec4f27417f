#include "su3/lattice_ed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace su3::ed {

namespace {

constexpr int kMaxSites = 12;
constexpr std::size_t kMaxDense = 4096;

void check_spec(const ChainSpec& spec) {
    if (spec.L < 3 || spec.L > kMaxSites)
        throw std::invalid_argument("chain length must be between 3 and 12, got " + std::to_string(spec.L));
}

std::int64_t power3(int k) {
    std::int64_t p = 1;
    for (int i = 0; i < k; ++i) p *= 3;
    return p;
}

int digit(std::int64_t state, int site, int L) { return static_cast<int>((state / power3(L - 1 - site)) % 3); }

std::int64_t set_digit(std::int64_t state, int site, int L, int value) {
    const std::int64_t p = power3(L - 1 - site);
    return state + (value - digit(state, site, L)) * p;
}

template <class F>
void parallel_rows(std::size_t n, int threads, F&& f) {
    const std::size_t t = static_cast<std::size_t>(std::max(1, threads));
    if (t == 1 || n < 256) {
        f(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + t - 1) / t;
    for (std::size_t begin = 0; begin < n; begin += chunk)
        pool.emplace_back([&f, begin, end = std::min(n, begin + chunk)] { f(begin, end); });
    for (auto& th : pool) th.join();
}

Eigen::Matrix3cd spin_matrix(int axis) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix3cd s = Eigen::Matrix3cd::Zero();
    const std::complex<double> i(0.0, 1.0);
    switch (axis) {
        case 0: s << 0, r, 0, r, 0, r, 0, r, 0; break;
        case 1: s << 0, -i * r, 0, i * r, 0, -i * r, 0, i * r, 0; break;
        default: s << 1, 0, 0, 0, 0, 0, 0, 0, -1; break;
    }
    return s;
}

Eigen::Matrix<std::complex<double>, 9, 9> kron3(const Eigen::Matrix3cd& a, const Eigen::Matrix3cd& b) {
    Eigen::Matrix<std::complex<double>, 9, 9> k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k.block<3, 3>(3 * i, 3 * j) = a(i, j) * b;
    return k;
}

}  // namespace

std::int64_t hilbert_dimension(const ChainSpec& spec) {
    check_spec(spec);
    return power3(spec.L);
}

Eigen::Matrix<double, 9, 9> bond_operator(HamiltonianForm form) {
    Eigen::Matrix<double, 9, 9> p = Eigen::Matrix<double, 9, 9>::Zero();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) p(3 * b + a, 3 * a + b) = 1.0;
    if (form == HamiltonianForm::Permutation) return p;
    Eigen::Matrix<std::complex<double>, 9, 9> ss = Eigen::Matrix<std::complex<double>, 9, 9>::Zero();
    for (int axis = 0; axis < 3; ++axis) ss += kron3(spin_matrix(axis), spin_matrix(axis));
    const Eigen::Matrix<std::complex<double>, 9, 9> h = ss + ss * ss;
    if (h.imag().cwiseAbs().maxCoeff() > 1e-14) throw std::logic_error("spin-1 bond operator is not real");
    return h.real();
}

Sector color_sector(const ChainSpec& spec, int n0, int n1, int n2) {
    check_spec(spec);
    if (n0 < 0 || n1 < 0 || n2 < 0 || n0 + n1 + n2 != spec.L)
        throw std::invalid_argument("color counts must be nonnegative and sum to L");
    Sector s;
    s.L = spec.L;
    const std::int64_t dim = power3(spec.L);
    s.index.assign(static_cast<std::size_t>(dim), -1);
    for (std::int64_t st = 0; st < dim; ++st) {
        int counts[3] = {0, 0, 0};
        for (int site = 0; site < spec.L; ++site) ++counts[digit(st, site, spec.L)];
        if (counts[0] == n0 && counts[1] == n1 && counts[2] == n2) {
            s.index[static_cast<std::size_t>(st)] = static_cast<std::int32_t>(s.states.size());
            s.states.push_back(st);
        }
    }
    return s;
}

Sector balanced_sector(const ChainSpec& spec) {
    if (spec.L % 3 != 0) throw std::invalid_argument("balanced sector needs L divisible by 3");
    return color_sector(spec, spec.L / 3, spec.L / 3, spec.L / 3);
}

Sector full_space(const ChainSpec& spec) {
    check_spec(spec);
    Sector s;
    s.L = spec.L;
    const std::int64_t dim = power3(spec.L);
    s.states.resize(static_cast<std::size_t>(dim));
    s.index.resize(static_cast<std::size_t>(dim));
    for (std::int64_t st = 0; st < dim; ++st) {
        s.states[static_cast<std::size_t>(st)] = st;
        s.index[static_cast<std::size_t>(st)] = static_cast<std::int32_t>(st);
    }
    return s;
}

Hamiltonian::Hamiltonian(const Sector& sector, HamiltonianForm form, int threads)
    : sector_(sector), bond_(bond_operator(form)), threads_(threads) {}

void Hamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    const int L = sector_.L;
    const std::size_t n = dim();
    if (static_cast<std::size_t>(x.size()) != n) throw std::invalid_argument("Hamiltonian::apply: size mismatch");
    y.setZero(static_cast<Eigen::Index>(n));
    parallel_rows(n, threads_, [&](std::size_t begin, std::size_t end) {
        for (std::size_t row = begin; row < end; ++row) {
            const std::int64_t st = sector_.states[row];
            double acc = 0.0;
            for (int j = 0; j < L; ++j) {
                const int k = (j + 1) % L;
                const int a = digit(st, j, L), b = digit(st, k, L);
                for (int a2 = 0; a2 < 3; ++a2)
                    for (int b2 = 0; b2 < 3; ++b2) {
                        const double c = bond_(3 * a + b, 3 * a2 + b2);
                        if (c == 0.0) continue;
                        const std::int64_t other = set_digit(set_digit(st, j, L, a2), k, L, b2);
                        const std::int32_t col = sector_.index[static_cast<std::size_t>(other)];
                        if (col < 0) throw std::logic_error("bond operator leaves the sector");
                        acc += c * x(col);
                    }
            }
            y(static_cast<Eigen::Index>(row)) = acc;
        }
    });
}

Eigen::MatrixXd Hamiltonian::dense() const {
    const std::size_t n = dim();
    if (n > kMaxDense) throw std::length_error("dense Hamiltonian limited to dimension 4096");
    Eigen::MatrixXd h(n, n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), col;
    for (std::size_t j = 0; j < n; ++j) {
        e(static_cast<Eigen::Index>(j)) = 1.0;
        apply(e, col);
        h.col(static_cast<Eigen::Index>(j)) = col;
        e(static_cast<Eigen::Index>(j)) = 0.0;
    }
    return h;
}

namespace {

Eigen::VectorXd embed(const Sector& s, const Eigen::VectorXd& v) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.index.size()));
    for (std::size_t i = 0; i < s.states.size(); ++i) full(s.states[i]) = v(static_cast<Eigen::Index>(i));
    return full;
}

struct LanczosRun {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;
    int iterations = 0;
};

// One Lanczos run orthogonal to `deflate`.
LanczosRun lanczos_run(const Hamiltonian& h, const std::vector<Eigen::VectorXd>& deflate, std::mt19937_64& rng,
                       const LanczosOptions& opt) {
    const Eigen::Index n = static_cast<Eigen::Index>(h.dim());
    auto project = [&](Eigen::VectorXd& v) {
        for (const auto& d : deflate) v -= d.dot(v) * d;
    };
    std::normal_distribution<double> normal;
    Eigen::VectorXd q(n);
    for (Eigen::Index i = 0; i < n; ++i) q(i) = normal(rng);
    project(q);
    q.normalize();

    std::vector<Eigen::VectorXd> basis{q};
    std::vector<double> alpha, beta;
    Eigen::VectorXd w;
    double previous = std::numeric_limits<double>::infinity();
    const int limit = std::min<int>(opt.max_iterations, static_cast<int>(n) - static_cast<int>(deflate.size()));
    LanczosRun out;
    for (int it = 0; it < limit; ++it) {
        h.apply(basis.back(), w);
        alpha.push_back(basis.back().dot(w));
        for (int pass = 0; pass < 2; ++pass) {
            project(w);
            for (const auto& b : basis) w -= b.dot(w) * b;
        }
        const double b = w.norm();

        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) t(i, i) = alpha[static_cast<std::size_t>(i)];
        for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(0);
        const double ritz_residual = std::abs(b * es.eigenvectors()(m - 1, 0));
        out.iterations = it + 1;
        const bool invariant = b < 1e-14;
        if ((std::abs(theta - previous) < opt.eigenvalue_tolerance && ritz_residual < opt.residual_tolerance) ||
            invariant || it + 1 == limit) {
            out.value = theta;
            out.vector = Eigen::VectorXd::Zero(n);
            for (int i = 0; i < m; ++i) out.vector += es.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
            out.vector.normalize();
            Eigen::VectorXd hv;
            h.apply(out.vector, hv);
            out.residual = (hv - theta * out.vector).norm();
            return out;
        }
        previous = theta;
        beta.push_back(b);
        basis.push_back(w / b);
    }
    throw std::runtime_error("Lanczos: empty Krylov space");
}

}  // namespace

SpectrumResult lanczos_ground_state(const Hamiltonian& h, const LanczosOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::vector<Eigen::VectorXd> found;
    SpectrumResult r;
    r.method = "lanczos";
    LanczosRun first = lanczos_run(h, found, rng, options);
    if (first.residual > options.residual_tolerance)
        throw std::runtime_error("Lanczos did not converge after " + std::to_string(first.iterations) +
                                 " iterations, residual " + std::to_string(first.residual));
    r.E0 = first.value;
    r.residual = first.residual;
    r.iterations = first.iterations;
    found.push_back(first.vector);
    while (found.size() < h.dim()) {
        LanczosRun next = lanczos_run(h, found, rng, options);
        r.iterations += next.iterations;
        if (next.value - r.E0 > options.degeneracy_tolerance) break;
        r.residual = std::max(r.residual, next.residual);
        found.push_back(next.vector);
    }
    r.degeneracy = static_cast<int>(found.size());
    for (const auto& v : found) r.ground_space.push_back(embed(h.sector(), v));
    return r;
}

Eigen::VectorXd apply_site_swap(const ChainSpec& spec, const Eigen::VectorXd& v, int a, int b) {
    check_spec(spec);
    if (a < 1 || b < 1 || a > spec.L || b > spec.L) throw std::invalid_argument("site index out of range");
    const std::int64_t dim = power3(spec.L);
    if (v.size() != dim) throw std::invalid_argument("apply_site_swap needs a full-space vector");
    Eigen::VectorXd out(dim);
    for (std::int64_t st = 0; st < dim; ++st) {
        const int da = digit(st, a - 1, spec.L), db = digit(st, b - 1, spec.L);
        out(set_digit(set_digit(st, a - 1, spec.L, db), b - 1, spec.L, da)) = v(st);
    }
    return out;
}

Eigen::MatrixXd reduced_density(const ChainSpec& spec, const Eigen::VectorXd& v, int k) {
    check_spec(spec);
    if (k < 1 || k > spec.L) throw std::invalid_argument("reduced_density: bad subsystem size");
    const std::int64_t left = power3(k), right = power3(spec.L - k);
    if (v.size() != left * right) throw std::invalid_argument("reduced_density needs a full-space vector");
    const Eigen::Map<const Eigen::MatrixXd> psi(v.data(), right, left);  // column index = first k digits
    return psi.transpose() * psi;
}

void fill_observables(const ChainSpec& spec, SpectrumResult& r) {
    const double g = static_cast<double>(r.ground_space.size());
    double p12 = 0.0, p13 = 0.0, p12p23 = 0.0;
    r.rdm2 = Eigen::MatrixXd::Zero(9, 9);
    r.rdm3 = Eigen::MatrixXd::Zero(27, 27);
    for (const auto& v : r.ground_space) {
        p12 += v.dot(apply_site_swap(spec, v, 1, 2));
        p13 += v.dot(apply_site_swap(spec, v, 1, 3));
        p12p23 += v.dot(apply_site_swap(spec, apply_site_swap(spec, v, 2, 3), 1, 2));
        r.rdm2 += reduced_density(spec, v, 2);
        r.rdm3 += reduced_density(spec, v, 3);
    }
    r.rdm2 /= g;
    r.rdm3 /= g;
    r.observables["p12"] = p12 / g;
    r.observables["p13"] = p13 / g;
    r.observables["p12p23"] = p12p23 / g;
    r.observables["energy_per_bond"] = r.energy_per_bond;
}

namespace {

SpectrumResult sector_ground_state(const ChainSpec& spec, const Sector& sector, int threads,
                                   const LanczosOptions& options) {
    const Hamiltonian h(sector, HamiltonianForm::Permutation, threads);
    if (spec.L > 6) return lanczos_ground_state(h, options);
    SpectrumResult r;
    r.method = "dense";
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
    r.E0 = es.eigenvalues()(0);
    Eigen::VectorXd hv;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()(i) - r.E0 > options.degeneracy_tolerance) break;
        const Eigen::VectorXd v = es.eigenvectors().col(i);
        h.apply(v, hv);
        r.residual = std::max(r.residual, (hv - r.E0 * v).norm());
        r.ground_space.push_back(embed(sector, v));
    }
    r.degeneracy = static_cast<int>(r.ground_space.size());
    return r;
}

}  // namespace

SpectrumResult ground_state(const ChainSpec& spec, int threads, const LanczosOptions& options) {
    check_spec(spec);
    // For L divisible by 3 the balanced sector is searched. Otherwise every
    // sector with n0 >= n1 >= n2 is tried; the others follow by relabeling colors.
    std::vector<std::array<int, 3>> counts;
    if (spec.L % 3 == 0) {
        counts.push_back({spec.L / 3, spec.L / 3, spec.L / 3});
    } else {
        for (int a = spec.L; a >= 0; --a)
            for (int b = std::min(a, spec.L - a); b >= 0; --b)
                if (spec.L - a - b <= b) counts.push_back({a, b, spec.L - a - b});
    }
    SpectrumResult r;
    bool first = true;
    for (const auto& n : counts) {
        const Sector sector = color_sector(spec, n[0], n[1], n[2]);
        SpectrumResult candidate = sector_ground_state(spec, sector, threads, options);
        if (first || candidate.E0 < r.E0 - options.degeneracy_tolerance) {
            r = std::move(candidate);
        }
        first = false;
    }
    if (spec.L <= 6) {
        const Sector all = full_space(spec);
        const Hamiltonian full(all, HamiltonianForm::Permutation, threads);
        const double global =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(full.dense(), Eigen::EigenvaluesOnly).eigenvalues()(0);
        r.global_minimum_checked = true;
        r.global_minimum_gap = r.E0 - global;
    }
    r.energy_per_bond = r.E0 / spec.L;
    fill_observables(spec, r);
    return r;
}

}  // namespace su3::ed
