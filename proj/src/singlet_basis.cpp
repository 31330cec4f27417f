#include "su3/singlet_basis.hpp"

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>

#include <json.hpp>

#include "su3/integrable.hpp"

namespace su3 {

namespace {

constexpr int kN = 3;
constexpr double kSingularTol = 1e-10;
const auto F = Orientation::Fundamental;
const auto A = Orientation::Antifundamental;

Orientation orientation_of(const std::string& label) { return label[0] == 's' ? F : A; }

LabeledTensor eps_on(const std::array<std::string, 3>& labels) {
    LabeledTensor e = structural_tensor(StructuralKind::Epsilon, kN);
    e = e.relabeled({{"e1", labels[0]}, {"e2", labels[1]}, {"e3", labels[2]}});
    for (const auto& l : labels) e = e.with_orientation(l, orientation_of(l));
    return e;
}

LabeledTensor delta_on(const std::string& upper, const std::string& lower) {
    LabeledTensor d = structural_tensor(StructuralKind::Delta, kN);
    d = d.relabeled({{"i", upper}, {"j", lower}});
    d = d.with_orientation(upper, orientation_of(upper)).with_orientation(lower, orientation_of(lower));
    return d;
}

struct Diagram {
    int sign;
    std::array<std::string, 3> eps;
    std::vector<std::pair<std::string, std::string>> deltas;
};

std::vector<Diagram> diagrams(int m) {
    if (m == 2)
        return {{1, {"i1", "i2", "i3"}, {{"r1", "s1"}}},
                {1, {"i2", "i3", "r1"}, {{"i1", "s1"}}},
                {1, {"i1", "i2", "r1"}, {{"i3", "s1"}}}};
    return {{1, {"i1", "i2", "i3"}, {{"r1", "s1"}, {"r2", "s2"}}},
            {1, {"i2", "i3", "r1"}, {{"i1", "s1"}, {"r2", "s2"}}},
            {1, {"i1", "i2", "i3"}, {{"r1", "s2"}, {"r2", "s1"}}},
            {1, {"i2", "i3", "r2"}, {{"i1", "s2"}, {"r1", "s1"}}},
            {1, {"i2", "i3", "r1"}, {{"i1", "s2"}, {"r2", "s1"}}},
            {1, {"i2", "i3", "r2"}, {{"i1", "s1"}, {"r1", "s2"}}},
            {1, {"i1", "i2", "r1"}, {{"i3", "s1"}, {"r2", "s2"}}},
            {-1, {"i3", "r1", "r2"}, {{"i2", "s1"}, {"i1", "s2"}}},
            {1, {"i1", "i2", "r2"}, {{"i3", "s2"}, {"r1", "s1"}}},
            {1, {"i1", "i2", "r1"}, {{"i3", "s2"}, {"r2", "s1"}}},
            {1, {"i1", "i2", "r2"}, {{"i3", "s1"}, {"r1", "s2"}}}};
}

std::vector<std::string> leg_order_for(int m) {
    if (m == 2) return {"i1", "i2", "i3", "r1", "s1"};
    return {"i1", "i2", "i3", "r1", "r2", "s1", "s2"};
}

void check_m(int m) {
    if (m != 2 && m != 3) throw std::invalid_argument("singlet bases exist for m = 2 or m = 3 only");
}

SingletBasis make_basis(int m) {
    SingletBasis b;
    b.m = m;
    b.leg_order = leg_order_for(m);
    for (const Diagram& d : diagrams(m)) {
        LabeledTensor t = eps_on(d.eps);
        for (const auto& [up, low] : d.deltas) t = outer(t, delta_on(up, low));
        t = t.permuted(b.leg_order);
        t *= cplx(d.sign, 0.0);
        b.elements.push_back(std::move(t));
    }
    const auto n = static_cast<Eigen::Index>(b.elements.size());
    b.gram.resize(n, n);
    RationalMatrix g(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const cplx v = inner(b.elements[static_cast<std::size_t>(i)], b.elements[static_cast<std::size_t>(j)]);
            const long long iv = std::llround(v.real());
            if (std::abs(v - cplx(static_cast<double>(iv), 0.0)) > 1e-9)
                throw std::logic_error("non-integer Gram entry");
            b.gram(i, j) = static_cast<int>(iv);
            g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(iv);
        }
    b.gram_inverse = inverse(g);
    return b;
}

Eigen::MatrixXcd rational_to_matrix(const RationalMatrix& r) {
    const auto n = static_cast<Eigen::Index>(r.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].to_double();
    return out;
}

void reject_if_zero(cplx value, const std::string& what) {
    if (std::abs(value) < kSingularTol) throw std::invalid_argument("singular parameter: " + what + " vanishes");
}

// One crossing of the moving line with the basis leg `leg`.
LabeledTensor cross(const LabeledTensor& cur, const std::string& line, const std::string& leg, RKind kind, cplx arg,
                    const std::string& next_line) {
    LabeledTensor r = r_matrix(kind, kN, arg).relabeled({{"i", "_in"}, {"k", "_k"}, {"j", "_out"}, {"l", "_next"}});
    LabeledTensor out = contract(cur, r, {{line, "_in"}, {leg, "_k"}});
    return out.relabeled({{"_out", leg}, {"_next", next_line}});
}

Eigen::MatrixXcd permutation_matrix(int m, const std::vector<int>& image) {
    int dim = 1;
    for (int s = 0; s < m; ++s) dim *= kN;
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<int> digits(static_cast<std::size_t>(m)), moved(static_cast<std::size_t>(m));
    for (int col = 0; col < dim; ++col) {
        int rest = col;
        for (int s = m - 1; s >= 0; --s) {
            digits[static_cast<std::size_t>(s)] = rest % kN;
            rest /= kN;
        }
        for (int s = 0; s < m; ++s) moved[static_cast<std::size_t>(image[static_cast<std::size_t>(s)])] = digits[static_cast<std::size_t>(s)];
        int row = 0;
        for (int s = 0; s < m; ++s) row = row * kN + moved[static_cast<std::size_t>(s)];
        p(row, col) = 1.0;
    }
    return p;
}

}  // namespace

const SingletBasis& build_basis(int m) {
    check_m(m);
    static std::once_flag once2, once3;
    static SingletBasis b2, b3;
    if (m == 2) {
        std::call_once(once2, [] { b2 = make_basis(2); });
        return b2;
    }
    std::call_once(once3, [] { b3 = make_basis(3); });
    return b3;
}

Eigen::MatrixXi reference_gram(int m) {
    check_m(m);
    if (m == 2) {
        Eigen::MatrixXi g(3, 3);
        g << 18, 6, 6, 6, 18, -6, 6, -6, 18;
        return g;
    }
    Eigen::MatrixXi g(11, 11);
    g << 54, 18, 18, 18, 6, 6, 18, 6, 18, 6, 6,
         18, 54, 6, 6, 18, 18, -18, -6, 6, -6, -6,
         18, 6, 54, 6, 18, 18, 6, -6, 6, 18, 18,
         18, 6, 6, 54, 18, 18, 6, 18, -18, -6, -6,
         6, 18, 18, 18, 54, 6, -6, -18, -6, -18, 6,
         6, 18, 18, 18, 6, 54, -6, 6, -6, 6, -18,
         18, -18, 6, 6, -6, -6, 54, -6, 6, 18, 18,
         6, -6, -6, 18, -18, 6, -6, 54, -6, 6, 6,
         18, 6, 6, -18, -6, -6, 6, -6, 54, 18, 18,
         6, -6, 18, -6, -18, 6, 18, 6, 18, 54, 6,
         6, -6, 18, -6, 6, -18, 18, 6, 18, 6, 54;
    return g;
}

Eigen::MatrixXcd closed_form_a2(cplx l) {
    const cplx d = l * (l + 3.0);
    Eigen::MatrixXcd a(3, 3);
    a << (-1.0 + 3.0 * l + l * l) / d, (-2.0 + 2.0 * l + l * l) / d, 1.0 / (l + 3.0),
         3.0 / d, -(-3.0 + l + l * l) / d, l / (l + 3.0),
         0.0, -(-1.0 + l) / l, 0.0;
    return a;
}

Eigen::MatrixXcd closed_form_a3(cplx x, cplx y) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(11, 11);
    const cplx D = x * (3.0 + x) * y * (3.0 + y);
    const cplx x2 = x * x, y2 = y * y;
    auto e = [&a](int i, int j, cplx v) { a(i - 1, j - 1) = v; };

    e(1, 1, (-1.0 + 3.0 * x + x2) * (-1.0 + 3.0 * y + y2) / D);
    e(1, 2, (-1.0 + 3.0 * x + x2) * (-2.0 + 2.0 * y + y2) / D);
    e(1, 3, -3.0 / D);
    e(1, 4, (1.0 + y) * (-8.0 + 3.0 * x + 2.0 * x2 - 2.0 * y + 2.0 * x * y + x2 * y) / D);
    e(1, 5, (1.0 + y) * (-7.0 + x2 - 3.0 * y - x * y) / D);
    e(1, 6, (-3.0 + y + y2) / D);
    e(1, 7, (-1.0 + 3.0 * x + x2) / (x * (3.0 + x) * (3.0 + y)));
    e(1, 8, (-1.0 + 3.0 * x + x2 + y + 3.0 * x * y + x2 * y) / D);
    e(1, 9, (1.0 + 3.0 * x + x * y) / (x * (3.0 + x) * (3.0 + y)));
    e(1, 10, -(-1.0 + x2 - x * y) / D);
    e(1, 11, -y / (x * (3.0 + x) * (3.0 + y)));

    e(2, 1, 3.0 * (-1.0 + 3.0 * x + x2) / D);
    e(2, 2, -(-1.0 + 3.0 * x + x2) * (-3.0 + y + y2) / D);
    e(2, 3, -(-1.0 + 3.0 * y + y2) / D);
    e(2, 4, 2.0 * (1.0 + y) / D);
    e(2, 5, (1.0 + y) * (1.0 + y) / D);
    e(2, 6, -(-2.0 + 2.0 * y + y2) / D);
    e(2, 7, (-1.0 + 3.0 * x + x2) * y / (x * (3.0 + x) * (3.0 + y)));
    e(2, 8, -(-1.0 + y) / D);
    e(2, 9, (1.0 + 3.0 * x + x * y) / D);
    e(2, 10, -(-1.0 + x2 - x * y) / (x * (3.0 + x) * (3.0 + y)));
    e(2, 11, -1.0 / (x * (3.0 + x) * (3.0 + y)));

    e(3, 1, -3.0 / D);
    e(3, 2, -3.0 * (2.0 + y) / D);
    e(3, 3, (-3.0 * x - 3.0 * y + 7.0 * x * y + 3.0 * x2 * y + 3.0 * x * y2 + x2 * y2) / D);
    e(3, 4, -(-6.0 + 6.0 * x + 3.0 * x2 - 6.0 * y - 2.0 * x * y) / D);
    e(3, 5, (3.0 - 6.0 * x - 3.0 * x2 + 6.0 * y + 6.0 * x * y + x2 * y + 3.0 * y2 + 4.0 * x * y2 + x2 * y2) / D);
    e(3, 6, (-3.0 * x - 6.0 * y + 6.0 * x * y + 3.0 * x2 * y - 3.0 * y2 + 2.0 * x * y2 + x2 * y2) / D);
    e(3, 7, 3.0 / (x * (3.0 + x) * (3.0 + y)));
    e(3, 8, -(-3.0 + 3.0 * y + 4.0 * x * y + x2 * y) / D);
    e(3, 9, -1.0 / (x * (3.0 + y)));
    e(3, 10, (-3.0 + 3.0 * x2 + x2 * y) / D);
    e(3, 11, y / (x * (3.0 + y)));

    e(4, 1, 3.0 / (x * (3.0 + x)));
    e(4, 3, -(-9.0 + x2 - 3.0 * y - 2.0 * x * y) / D);
    e(4, 4, -(-3.0 * x - x2 - 9.0 * y + 3.0 * x * y + 3.0 * x2 * y - 3.0 * y2 + x * y2 + x2 * y2) / D);
    e(4, 5, -(-3.0 + x - y) / (x * y * (3.0 + y)));
    e(4, 6, (3.0 + x - y) / ((3.0 + x) * y * (3.0 + y)));
    e(4, 8, -(9.0 - 3.0 * x - 2.0 * x2 - 6.0 * y + x * y + 2.0 * x2 * y - 3.0 * y2 + x * y2 + x2 * y2) / D);
    e(4, 9, (-3.0 - x + y + 3.0 * x * y + x * y2) / ((3.0 + x) * y * (3.0 + y)));
    e(4, 11, (3.0 + x - y) / ((3.0 + x) * (3.0 + y)));

    e(5, 1, -3.0 / (x * (3.0 + x) * (3.0 + y)));
    e(5, 2, 3.0 / (x * (3.0 + x) * (3.0 + y)));
    e(5, 3, (-3.0 + 8.0 * x + 3.0 * x2 + x2 * y - x * y2) / D);
    e(5, 4, -(-1.0 + y) / (x * y * (3.0 + y)));
    e(5, 5, -(3.0 - 8.0 * x - 3.0 * x2 - 3.0 * y + 2.0 * x * y + 2.0 * x2 * y + 2.0 * x * y2 + x2 * y2) / D);
    e(5, 6, 1.0 / (x * y * (3.0 + y)));
    e(5, 7, 3.0 * y / (x * (3.0 + x) * (3.0 + y)));
    e(5, 8, (6.0 - 7.0 * x - 3.0 * x2 - 3.0 * y + 2.0 * x * y + 2.0 * x2 * y - 3.0 * y2 + x * y2 + x2 * y2) / D);
    e(5, 9, -1.0 / (x * y * (3.0 + y)));
    e(5, 10, (-3.0 + 3.0 * x2 + x2 * y) / (x * (3.0 + x) * (3.0 + y)));
    e(5, 11, 1.0 / (x * (3.0 + y)));

    e(6, 1, 3.0 / (x * (3.0 + x) * y));
    e(6, 2, 3.0 / (x * (3.0 + x) * y));
    e(6, 3, -(-x - 9.0 * y + x2 * y - 3.0 * y2 - x * y2) / D);
    e(6, 4, (2.0 + y) / ((3.0 + x) * y * (3.0 + y)));
    e(6, 5, 1.0 / ((3.0 + x) * y * (3.0 + y)));
    e(6, 6, -(-2.0 * x - 9.0 * y + 2.0 * x * y + 2.0 * x2 * y - 3.0 * y2 + 2.0 * x * y2 + x2 * y2) / D);
    e(6, 8, 1.0 / ((3.0 + x) * y * (3.0 + y)));
    e(6, 9, (1.0 + 3.0 * x - 3.0 * y) / ((3.0 + x) * y * (3.0 + y)));
    e(6, 11, (-1.0 + 3.0 * y + x * y) / ((3.0 + x) * (3.0 + y)));

    e(7, 2, -(-1.0 + 3.0 * x + x2) * (-1.0 + y) / (x * (3.0 + x) * y));
    e(7, 4, -(-8.0 + 6.0 * x + 3.0 * x2 - 4.0 * y - x * y) / D);
    e(7, 5, -(-1.0 - 8.0 * y + x2 * y - 3.0 * y2 - x * y2) / D);
    e(7, 6, -(-1.0 + y) / (x * (3.0 + x) * y));
    e(7, 8, (7.0 - 6.0 * x - 3.0 * x2 - 5.0 * y + x * y + x2 * y - 2.0 * y2 + 2.0 * x * y2 + x2 * y2) / D);

    e(8, 2, 3.0 / (x * (3.0 + x)));
    e(8, 4, -3.0 * (-3.0 + 2.0 * x + x2 - y) / D);
    e(8, 5, -(-9.0 - x + x2 - 3.0 * y - x * y) / (x * (3.0 + x) * (3.0 + y)));
    e(8, 6, -(-3.0 + 2.0 * x + x2 - x * y) / (x * (3.0 + x) * y));
    e(8, 8, (9.0 - 6.0 * x - 3.0 * x2 - 6.0 * y - x * y + x2 * y - 3.0 * y2 + x * y2 + x2 * y2) / D);

    e(9, 4, (1.0 + y) * (3.0 - 2.0 * x + y - x * y) / (x * y * (3.0 + y)));
    e(9, 5, (3.0 - x + y) * (1.0 + y) / (x * y * (3.0 + y)));
    e(9, 8, -(1.0 + y) / (y * (3.0 + y)));

    e(10, 4, (-2.0 + 3.0 * x - 2.0 * y) / (x * y * (3.0 + y)));
    e(10, 5, -(1.0 - 3.0 * x + 2.0 * y + x * y + y2 + x * y2) / (x * y * (3.0 + y)));
    e(10, 8, (-1.0 + y + x * y) / (x * y * (3.0 + y)));

    e(11, 2, 3.0 / (x * (3.0 + x) * y));
    e(11, 4, (-9.0 + 5.0 * x + 3.0 * x2 - 3.0 * y - x * y) / D);
    e(11, 5, (x - 9.0 * y + x2 * y - 3.0 * y2 - x * y2) / D);
    e(11, 6, -(-x - 3.0 * y + 2.0 * x * y + x2 * y) / (x * (3.0 + x) * y));
    e(11, 8, -(9.0 - 4.0 * x - 3.0 * x2 - 6.0 * y + 2.0 * x * y + x2 * y - 3.0 * y2 + 2.0 * x * y2 + x2 * y2) / D);
    return a;
}

LabeledTensor apply_a_operator(int m, const LabeledTensor& x, cplx lambda1, cplx lambda2, cplx lambda3) {
    check_m(m);
    const std::vector<cplx> diffs = m == 2 ? std::vector<cplx>{lambda1 - lambda2}
                                           : std::vector<cplx>{lambda1 - lambda2, lambda1 - lambda3};
    LabeledTensor cur = x;
    std::string line = "i3";
    int step = 0;
    auto next = [&step] { return "_line" + std::to_string(step++); };
    for (int j = 1; j < m; ++j) {
        const std::string nl = next();
        cur = cross(cur, line, "s" + std::to_string(j), RKind::FA, diffs[static_cast<std::size_t>(j - 1)] + 3.0, nl);
        line = nl;
    }
    for (int j = m - 1; j >= 1; --j) {
        const std::string nl = next();
        cur = cross(cur, line, "r" + std::to_string(j), RKind::FF, diffs[static_cast<std::size_t>(j - 1)], nl);
        line = nl;
    }
    cur = cur.relabeled({{"i2", "_t3"}, {"i1", "_t2"}, {line, "_t1"}});
    cur = cur.relabeled({{"_t1", "i1"}, {"_t2", "i2"}, {"_t3", "i3"}});
    return cur.permuted(leg_order_for(m));
}

AMatrixResult a_matrix(int m, cplx lambda1, cplx lambda2, std::optional<cplx> lambda3) {
    check_m(m);
    if (m == 3 && !lambda3) throw std::invalid_argument("a_matrix(3, ...) needs lambda3");
    const cplx l3 = lambda3.value_or(0.0);
    std::vector<std::pair<cplx, std::string>> params = {{lambda1 - lambda2, m == 2 ? "lambda" : "y"}};
    if (m == 3) params.emplace_back(lambda1 - l3, "x");
    for (const auto& [v, name] : params) {
        reject_if_zero(v, name);
        reject_if_zero(v + 3.0, name + "+3");
    }
    if (m == 3) reject_if_zero(params[1].first - params[0].first, "x-y");

    const SingletBasis& b = build_basis(m);
    const auto n = static_cast<Eigen::Index>(b.dim());
    const Eigen::MatrixXcd minv = rational_to_matrix(b.gram_inverse);
    Eigen::MatrixXcd w(n, n);
    std::vector<LabeledTensor> images;
    for (Eigen::Index k = 0; k < n; ++k) {
        images.push_back(apply_a_operator(m, b.elements[static_cast<std::size_t>(k)], lambda1, lambda2, l3));
        for (Eigen::Index i = 0; i < n; ++i) w(i, k) = inner(b.elements[static_cast<std::size_t>(i)], images.back());
    }
    const Eigen::MatrixXcd raw = minv * w;

    AMatrixResult out;
    for (Eigen::Index k = 0; k < n; ++k) {
        LabeledTensor rebuilt = images[static_cast<std::size_t>(k)];
        for (Eigen::Index j = 0; j < n; ++j) rebuilt -= raw(j, k) * b.elements[static_cast<std::size_t>(j)];
        out.span_residual = std::max(out.span_residual, max_abs(rebuilt));
    }
    const Eigen::RowVectorXcd row = b.gram.row(0).cast<cplx>();
    const Eigen::RowVectorXcd image = row * raw;
    out.normalization_factor = (image * row.transpose())(0) / row.squaredNorm();
    out.eigen_residual = (image - out.normalization_factor * row).cwiseAbs().maxCoeff();
    out.expected_factor = 1.0;
    for (const auto& p : params) out.expected_factor *= -p.first * (p.first + 3.0);
    out.a = raw / out.normalization_factor;
    return out;
}

Eigen::MatrixXcd site_permutation(int m, int a, int b) {
    std::vector<int> image(static_cast<std::size_t>(m));
    for (int s = 0; s < m; ++s) image[static_cast<std::size_t>(s)] = s;
    std::swap(image[static_cast<std::size_t>(a - 1)], image[static_cast<std::size_t>(b - 1)]);
    return permutation_matrix(m, image);
}

std::vector<Eigen::MatrixXcd> correlator_operators(int m) {
    check_m(m);
    const int dim = m == 2 ? 9 : 27;
    if (m == 2) return {Eigen::MatrixXcd::Identity(dim, dim), site_permutation(2, 1, 2)};
    const Eigen::MatrixXcd p12 = site_permutation(3, 1, 2), p23 = site_permutation(3, 2, 3);
    return {Eigen::MatrixXcd::Identity(dim, dim), p12, p23, site_permutation(3, 1, 3), p12 * p23, p23 * p12};
}

Eigen::MatrixXcd reduce_to_physical(int m, const Eigen::VectorXcd& rho) {
    check_m(m);
    const auto ops = correlator_operators(m);
    if (m == 2) {
        if (rho.size() != 3) throw std::invalid_argument("m = 2 needs 3 coefficients");
        return (2.0 * rho(0) + rho(2)) * ops[0] + (2.0 * rho(1) - rho(2)) * ops[1];
    }
    if (rho.size() != 11) throw std::invalid_argument("m = 3 needs 11 coefficients");
    const auto r = [&rho](int k) { return rho(k - 1); };
    return (2.0 * r(1) + r(7) + r(9)) * ops[0] + (2.0 * r(2) - r(7)) * ops[1] + (2.0 * r(3) + r(10) + r(11)) * ops[2] +
           (2.0 * r(4) + r(8) - r(9)) * ops[3] + (2.0 * r(6) - r(11)) * ops[4] + (2.0 * r(5) - r(8) - r(10)) * ops[5];
}

Eigen::MatrixXcd physical_by_contraction(int m, const Eigen::VectorXcd& rho) {
    const SingletBasis& b = build_basis(m);
    if (rho.size() != static_cast<Eigen::Index>(b.dim())) throw std::invalid_argument("coefficient count mismatch");
    LabeledTensor sum = 0.0 * b.elements[0];
    for (std::size_t k = 0; k < b.dim(); ++k) sum += rho(static_cast<Eigen::Index>(k)) * b.elements[k];
    LabeledTensor eps = structural_tensor(StructuralKind::Epsilon, kN).relabeled({{"e1", "out1"}});
    LabeledTensor d = contract(eps, sum, {{"e2", "i2"}, {"e3", "i3"}});
    std::vector<std::string> rows = {"out1"}, cols = {"i1"};
    for (int j = 1; j < m; ++j) {
        rows.push_back("s" + std::to_string(j));
        cols.push_back("r" + std::to_string(j));
    }
    return as_matrix(d, rows, cols);
}

std::string basis_json(int m) {
    const SingletBasis& b = build_basis(m);
    nlohmann::json j;
    j["m"] = m;
    j["legs"] = b.leg_order;
    nlohmann::json gram = nlohmann::json::array(), inv = nlohmann::json::array();
    for (Eigen::Index r = 0; r < b.gram.rows(); ++r) {
        nlohmann::json grow = nlohmann::json::array(), irow = nlohmann::json::array();
        for (Eigen::Index c = 0; c < b.gram.cols(); ++c) {
            grow.push_back(b.gram(r, c));
            const Rational& q = b.gram_inverse[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            irow.push_back({{"num", q.num()}, {"den", q.den()}});
        }
        gram.push_back(grow);
        inv.push_back(irow);
    }
    j["gram"] = gram;
    j["gram_inverse"] = inv;
    nlohmann::json elems = nlohmann::json::array();
    for (const Diagram& d : diagrams(m)) {
        nlohmann::json e;
        e["sign"] = d.sign;
        e["epsilon"] = d.eps;
        nlohmann::json ds = nlohmann::json::array();
        for (const auto& [up, low] : d.deltas) ds.push_back({up, low});
        e["deltas"] = ds;
        elems.push_back(e);
    }
    j["elements"] = elems;
    return j.dump(2);
}

}  // namespace su3
