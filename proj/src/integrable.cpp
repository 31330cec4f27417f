#include "su3/integrable.hpp"

#include <array>
#include <stdexcept>

namespace su3 {

RKind kind_of(Rep first, Rep second) {
    if (first == Rep::Fundamental) return second == Rep::Fundamental ? RKind::FF : RKind::FA;
    return second == Rep::Fundamental ? RKind::AF : RKind::AA;
}

std::string to_string(RKind kind) {
    switch (kind) {
        case RKind::FF: return "FF";
        case RKind::FA: return "FA";
        case RKind::AF: return "AF";
        case RKind::AA: return "AA";
    }
    return "?";
}

LabeledTensor r_matrix(RKind kind, int n, cplx lambda) {
    if (n < 2) throw std::invalid_argument("r_matrix needs n >= 2");
    const auto F = Orientation::Fundamental;
    const auto A = Orientation::Antifundamental;
    const bool mixed = (kind == RKind::FA || kind == RKind::AF);
    auto base = structural_tensor(mixed ? StructuralKind::TemperleyLieb : StructuralKind::Identity, n);
    auto perm = structural_tensor(StructuralKind::Permutation, n);
    const cplx coeff = mixed ? -lambda : lambda;

    std::vector<Leg> legs;
    switch (kind) {
        case RKind::FF: legs = {{n, F, "i"}, {n, F, "k"}, {n, A, "j"}, {n, A, "l"}}; break;
        case RKind::AA: legs = {{n, A, "i"}, {n, A, "k"}, {n, F, "j"}, {n, F, "l"}}; break;
        case RKind::FA: legs = {{n, F, "i"}, {n, A, "k"}, {n, F, "j"}, {n, A, "l"}}; break;
        case RKind::AF: legs = {{n, A, "i"}, {n, F, "k"}, {n, A, "j"}, {n, F, "l"}}; break;
    }
    std::vector<cplx> data(base.size());
    for (std::size_t e = 0; e < data.size(); ++e) data[e] = base.data()[e] + coeff * perm.data()[e];
    return LabeledTensor(std::move(legs), std::move(data));
}

Eigen::MatrixXcd r_operator(RKind kind, int n, cplx lambda) {
    return as_matrix(r_matrix(kind, n, lambda), {"j", "l"}, {"i", "k"});
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

Eigen::MatrixXcd on12(const Eigen::MatrixXcd& r, int n) { return kron(r, Eigen::MatrixXcd::Identity(n, n)); }
Eigen::MatrixXcd on23(const Eigen::MatrixXcd& r, int n) { return kron(Eigen::MatrixXcd::Identity(n, n), r); }

Eigen::MatrixXcd rop(Rep a, Rep b, int n, cplx x) { return r_operator(kind_of(a, b), n, x); }

// Two-site operator acting on factors `a` and `last` of a product of `sites` spaces.
Eigen::MatrixXcd embed_pair(const Eigen::MatrixXcd& op, int n, int sites, int a, int last) {
    Eigen::Index dim = 1;
    for (int s = 0; s < sites; ++s) dim *= n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<Eigen::Index> stride(sites, 1);
    for (int s = sites - 2; s >= 0; --s) stride[s] = stride[s + 1] * n;
    for (Eigen::Index col = 0; col < dim; ++col) {
        const int xa = static_cast<int>((col / stride[a]) % n);
        const int xb = static_cast<int>((col / stride[last]) % n);
        const Eigen::Index rest = col - xa * stride[a] - xb * stride[last];
        for (int ya = 0; ya < n; ++ya)
            for (int yb = 0; yb < n; ++yb) {
                const cplx v = op(ya * n + yb, xa * n + xb);
                if (v != cplx{0.0, 0.0}) out(rest + ya * stride[a] + yb * stride[last], col) += v;
            }
    }
    return out;
}

}  // namespace

bool is_special_combination(Rep r1, Rep r2, Rep r3) { return r1 == r3 && r1 != r2; }

double yang_baxter_residual(Rep r1, Rep r2, Rep r3, cplx lambda, cplx mu, cplx nu, cplx shift, int n) {
    const Eigen::MatrixXcd lhs = on12(rop(r1, r2, n, lambda - mu + shift), n) *
                                 on23(rop(r1, r3, n, lambda - nu), n) * on12(rop(r2, r3, n, mu - nu), n);
    const Eigen::MatrixXcd rhs = on23(rop(r2, r3, n, mu - nu), n) * on12(rop(r1, r3, n, lambda - nu), n) *
                                 on23(rop(r1, r2, n, lambda - mu + shift), n);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double check_yang_baxter(Rep r1, Rep r2, Rep r3, cplx lambda, cplx mu, cplx nu, int n, ShiftMode mode) {
    const bool special = is_special_combination(r1, r2, r3);
    if (special && mode == ShiftMode::Omitted)
        throw std::invalid_argument("special Yang-Baxter combination requires the +n shift");
    const cplx shift = special ? cplx(n, 0.0) : cplx(0.0, 0.0);
    return yang_baxter_residual(r1, r2, r3, lambda, mu, nu, shift, n);
}

IdentityCheck check_unitarity(UnitarityKind kind, int n, cplx lambda, cplx mu) {
    const cplx d = lambda - mu;
    const cplx nn(n, 0.0);
    Eigen::MatrixXcd product;
    IdentityCheck out;
    switch (kind) {
        case UnitarityKind::Standard:
            product = r_operator(RKind::FF, n, d) * r_operator(RKind::FF, n, -d);
            out.scalar = 1.0 - d * d;
            break;
        case UnitarityKind::Special1:
            product = r_operator(RKind::FA, n, d + nn) * r_operator(RKind::AF, n, -d);
            out.scalar = (-d) * (d + nn);
            break;
        case UnitarityKind::Special2:
            product = r_operator(RKind::AF, n, d) * r_operator(RKind::FA, n, -d + nn);
            out.scalar = d * (-d + nn);
            break;
    }
    const Eigen::MatrixXcd ref = out.scalar * Eigen::MatrixXcd::Identity(product.rows(), product.cols());
    out.residual = (product - ref).cwiseAbs().maxCoeff();
    return out;
}

IdentityCheck check_fusion(int n, cplx lambda, cplx mu, FusionDirection direction) {
    if (n != 3) throw std::invalid_argument("fusion relations are implemented for n = 3 only");
    const RKind kind = direction == FusionDirection::Up ? RKind::AF : RKind::AA;
    const Eigen::Index dim = 81;
    Eigen::MatrixXcd swap = as_matrix(structural_tensor(StructuralKind::Permutation, n), {"j", "l"}, {"i", "k"});

    Eigen::MatrixXcd chain = Eigen::MatrixXcd::Identity(dim, dim);
    for (int line = 0; line < 3; ++line) {
        const Eigen::MatrixXcd crossing = swap * r_operator(kind, n, lambda + static_cast<double>(line) - mu);
        chain = chain * embed_pair(crossing, n, 4, line, 3);
    }

    auto eps = structural_tensor(StructuralKind::Epsilon, n);
    Eigen::MatrixXcd bra = Eigen::MatrixXcd::Zero(n, dim);
    for (int e = 0; e < 27; ++e)
        for (int a = 0; a < n; ++a) bra(a, e * n + a) = eps.data()[static_cast<std::size_t>(e)];

    IdentityCheck out;
    if (direction == FusionDirection::Up)
        out.scalar = (lambda + 2.0 - mu) * (1.0 - (lambda - mu) * (lambda - mu));
    else
        out.scalar = (mu - lambda) * (1.0 - (lambda + 2.0 - mu) * (lambda + 2.0 - mu));
    out.residual = (bra * chain - out.scalar * bra).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace su3
