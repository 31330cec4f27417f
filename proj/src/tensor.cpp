#include "su3/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace su3 {

Orientation flipped(Orientation o) {
    return o == Orientation::Fundamental ? Orientation::Antifundamental : Orientation::Fundamental;
}

namespace {

std::size_t product_of_dims(const std::vector<Leg>& legs) {
    std::size_t n = 1;
    for (const auto& l : legs) n *= static_cast<std::size_t>(l.dim);
    return n;
}

// Offsets of all multi-indices over the given leg positions, enumerated in
// row-major order of those positions.
std::vector<std::size_t> enumerate_offsets(const std::vector<int>& dims,
                                           const std::vector<std::size_t>& strides) {
    std::size_t count = 1;
    for (int d : dims) count *= static_cast<std::size_t>(d);
    std::vector<std::size_t> out(count, 0);
    std::vector<int> idx(dims.size(), 0);
    std::size_t off = 0;
    for (std::size_t n = 0; n < count; ++n) {
        out[n] = off;
        for (int p = static_cast<int>(dims.size()) - 1; p >= 0; --p) {
            if (++idx[p] < dims[p]) {
                off += strides[p];
                break;
            }
            off -= strides[p] * static_cast<std::size_t>(dims[p] - 1);
            idx[p] = 0;
        }
    }
    return out;
}

}  // namespace

LabeledTensor::LabeledTensor() : data_(1, cplx{0.0, 0.0}) {}

LabeledTensor::LabeledTensor(std::vector<Leg> legs) : legs_(std::move(legs)) {
    data_.assign(product_of_dims(legs_), cplx{0.0, 0.0});
    compute_strides();
    check_invariants();
}

LabeledTensor::LabeledTensor(std::vector<Leg> legs, std::vector<cplx> entries)
    : legs_(std::move(legs)), data_(std::move(entries)) {
    compute_strides();
    check_invariants();
}

LabeledTensor LabeledTensor::scalar(cplx value) {
    LabeledTensor t;
    t.data_[0] = value;
    return t;
}

void LabeledTensor::compute_strides() {
    strides_.assign(legs_.size(), 1);
    for (int p = static_cast<int>(legs_.size()) - 2; p >= 0; --p)
        strides_[p] = strides_[p + 1] * static_cast<std::size_t>(legs_[p + 1].dim);
}

void LabeledTensor::check_invariants() const {
    std::set<std::string> seen;
    for (const auto& l : legs_) {
        if (l.dim <= 0) throw std::invalid_argument("leg '" + l.label + "' has nonpositive dimension");
        if (!seen.insert(l.label).second) throw std::invalid_argument("duplicate leg label '" + l.label + "'");
    }
    if (data_.size() != product_of_dims(legs_))
        throw std::invalid_argument("entry count does not match the product of leg dimensions");
}

int LabeledTensor::leg_index(const std::string& label) const {
    for (std::size_t p = 0; p < legs_.size(); ++p)
        if (legs_[p].label == label) return static_cast<int>(p);
    throw std::out_of_range("unknown leg label '" + label + "'");
}

bool LabeledTensor::has_leg(const std::string& label) const {
    return std::any_of(legs_.begin(), legs_.end(), [&](const Leg& l) { return l.label == label; });
}

std::size_t LabeledTensor::offset(const std::vector<int>& idx) const {
    if (idx.size() != legs_.size()) throw std::invalid_argument("index rank mismatch");
    std::size_t off = 0;
    for (std::size_t p = 0; p < idx.size(); ++p) {
        if (idx[p] < 0 || idx[p] >= legs_[p].dim) throw std::out_of_range("index out of range");
        off += strides_[p] * static_cast<std::size_t>(idx[p]);
    }
    return off;
}

cplx LabeledTensor::value() const {
    if (!legs_.empty()) throw std::logic_error("value() requires a rank-0 tensor");
    return data_[0];
}

LabeledTensor LabeledTensor::relabeled(
    const std::vector<std::pair<std::string, std::string>>& renames) const {
    std::vector<Leg> legs = legs_;
    for (const auto& [from, to] : renames) legs[leg_index(from)].label = to;
    return LabeledTensor(std::move(legs), data_);
}

LabeledTensor LabeledTensor::with_orientation(const std::string& label, Orientation o) const {
    std::vector<Leg> legs = legs_;
    legs[leg_index(label)].orientation = o;
    return LabeledTensor(std::move(legs), data_);
}

LabeledTensor LabeledTensor::permuted(const std::vector<std::string>& order) const {
    if (order.size() != legs_.size()) throw std::invalid_argument("permutation must list every leg");
    std::vector<Leg> legs;
    std::vector<int> dims;
    std::vector<std::size_t> strides;
    for (const auto& label : order) {
        int p = leg_index(label);
        legs.push_back(legs_[p]);
        dims.push_back(legs_[p].dim);
        strides.push_back(strides_[p]);
    }
    auto src = enumerate_offsets(dims, strides);
    std::vector<cplx> data(src.size());
    for (std::size_t n = 0; n < src.size(); ++n) data[n] = data_[src[n]];
    return LabeledTensor(std::move(legs), std::move(data));
}

LabeledTensor LabeledTensor::dual() const {
    std::vector<Leg> legs = legs_;
    for (auto& l : legs) l.orientation = flipped(l.orientation);
    std::vector<cplx> data(data_.size());
    std::transform(data_.begin(), data_.end(), data.begin(), [](cplx z) { return std::conj(z); });
    return LabeledTensor(std::move(legs), std::move(data));
}

namespace {

std::vector<std::string> labels_of(const LabeledTensor& t) {
    std::vector<std::string> out;
    for (const auto& l : t.legs()) out.push_back(l.label);
    return out;
}

LabeledTensor aligned_to(const LabeledTensor& ref, const LabeledTensor& t) {
    if (ref.rank() != t.rank()) throw std::invalid_argument("tensors have different rank");
    auto aligned = t.permuted(labels_of(ref));
    for (std::size_t p = 0; p < ref.rank(); ++p)
        if (ref.legs()[p].dim != aligned.legs()[p].dim)
            throw std::invalid_argument("leg '" + ref.legs()[p].label + "' dimension mismatch");
    return aligned;
}

}  // namespace

LabeledTensor& LabeledTensor::operator+=(const LabeledTensor& other) {
    auto b = aligned_to(*this, other);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += b.data()[n];
    return *this;
}

LabeledTensor& LabeledTensor::operator-=(const LabeledTensor& other) {
    auto b = aligned_to(*this, other);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] -= b.data()[n];
    return *this;
}

LabeledTensor& LabeledTensor::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

LabeledTensor operator+(LabeledTensor a, const LabeledTensor& b) { return a += b; }
LabeledTensor operator-(LabeledTensor a, const LabeledTensor& b) { return a -= b; }
LabeledTensor operator*(cplx s, LabeledTensor a) { return a *= s; }

double max_abs_diff(const LabeledTensor& a, const LabeledTensor& b) {
    auto bb = aligned_to(a, b);
    double m = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) m = std::max(m, std::abs(a.data()[n] - bb.data()[n]));
    return m;
}

double max_abs(const LabeledTensor& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

LabeledTensor structural_tensor(StructuralKind kind, int n) {
    if (n < 2) throw std::invalid_argument("structural tensors need n >= 2");
    const auto F = Orientation::Fundamental;
    const auto A = Orientation::Antifundamental;
    switch (kind) {
        case StructuralKind::Identity:
        case StructuralKind::Permutation: {
            LabeledTensor t({{n, F, "i"}, {n, F, "k"}, {n, A, "j"}, {n, A, "l"}});
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k) {
                    if (kind == StructuralKind::Identity) t({i, k, i, k}) = 1.0;
                    else t({i, k, k, i}) = 1.0;
                }
            return t;
        }
        case StructuralKind::TemperleyLieb: {
            LabeledTensor t({{n, F, "i"}, {n, A, "k"}, {n, F, "j"}, {n, A, "l"}});
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) t({i, i, j, j}) = 1.0;
            return t;
        }
        case StructuralKind::Delta: {
            LabeledTensor t({{n, F, "i"}, {n, A, "j"}});
            for (int i = 0; i < n; ++i) t({i, i}) = 1.0;
            return t;
        }
        case StructuralKind::Epsilon: {
            std::vector<Leg> legs;
            for (int p = 0; p < n; ++p) legs.push_back({n, F, "e" + std::to_string(p + 1)});
            LabeledTensor t(legs);
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                int inversions = 0;
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b)
                        if (perm[a] > perm[b]) ++inversions;
                t.at(perm) = (inversions % 2 == 0) ? 1.0 : -1.0;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return t;
        }
    }
    throw std::invalid_argument("unknown structural kind");
}

namespace {

void check_pair(const Leg& x, const Leg& y) {
    if (x.dim != y.dim)
        throw std::invalid_argument("dimension mismatch contracting '" + x.label + "' with '" + y.label + "'");
    if (x.orientation == y.orientation)
        throw std::invalid_argument("orientation mismatch contracting '" + x.label + "' with '" + y.label +
                                    "': a fundamental leg must meet an antifundamental leg");
}

struct Split {
    std::vector<Leg> free_legs;
    std::vector<int> free_dims, pair_dims;
    std::vector<std::size_t> free_strides, pair_strides;
};

std::vector<std::size_t> strides_of(const LabeledTensor& t) {
    std::vector<std::size_t> s(t.rank(), 1);
    for (int p = static_cast<int>(t.rank()) - 2; p >= 0; --p)
        s[p] = s[p + 1] * static_cast<std::size_t>(t.legs()[p + 1].dim);
    return s;
}

}  // namespace

LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b,
                       const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<bool> used_a(a.rank(), false), used_b(b.rank(), false);
    const auto sa = strides_of(a);
    const auto sb = strides_of(b);
    std::vector<int> pair_dims;
    std::vector<std::size_t> pa, pb;
    for (const auto& [la, lb] : pairs) {
        int ia = a.leg_index(la);
        int ib = b.leg_index(lb);
        if (used_a[ia] || used_b[ib]) throw std::invalid_argument("leg contracted twice");
        used_a[ia] = used_b[ib] = true;
        check_pair(a.legs()[ia], b.legs()[ib]);
        pair_dims.push_back(a.legs()[ia].dim);
        pa.push_back(sa[ia]);
        pb.push_back(sb[ib]);
    }
    std::vector<Leg> legs;
    std::vector<int> fda, fdb;
    std::vector<std::size_t> fsa, fsb;
    for (std::size_t p = 0; p < a.rank(); ++p)
        if (!used_a[p]) {
            legs.push_back(a.legs()[p]);
            fda.push_back(a.legs()[p].dim);
            fsa.push_back(sa[p]);
        }
    for (std::size_t p = 0; p < b.rank(); ++p)
        if (!used_b[p]) {
            legs.push_back(b.legs()[p]);
            fdb.push_back(b.legs()[p].dim);
            fsb.push_back(sb[p]);
        }
    const auto offA = enumerate_offsets(fda, fsa);
    const auto offB = enumerate_offsets(fdb, fsb);
    const auto cA = enumerate_offsets(pair_dims, pa);
    const auto cB = enumerate_offsets(pair_dims, pb);
    std::vector<cplx> out(offA.size() * offB.size());
    const auto& da = a.data();
    const auto& db = b.data();
    for (std::size_t x = 0; x < offA.size(); ++x)
        for (std::size_t y = 0; y < offB.size(); ++y) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < cA.size(); ++k) s += da[offA[x] + cA[k]] * db[offB[y] + cB[k]];
            out[x * offB.size() + y] = s;
        }
    return LabeledTensor(std::move(legs), std::move(out));
}

LabeledTensor trace(const LabeledTensor& a,
                    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<bool> used(a.rank(), false);
    const auto s = strides_of(a);
    std::vector<int> pair_dims;
    std::vector<std::size_t> pair_strides;
    for (const auto& [l1, l2] : pairs) {
        int i1 = a.leg_index(l1);
        int i2 = a.leg_index(l2);
        if (i1 == i2 || used[i1] || used[i2]) throw std::invalid_argument("leg traced twice");
        used[i1] = used[i2] = true;
        check_pair(a.legs()[i1], a.legs()[i2]);
        pair_dims.push_back(a.legs()[i1].dim);
        pair_strides.push_back(s[i1] + s[i2]);
    }
    std::vector<Leg> legs;
    std::vector<int> fd;
    std::vector<std::size_t> fs;
    for (std::size_t p = 0; p < a.rank(); ++p)
        if (!used[p]) {
            legs.push_back(a.legs()[p]);
            fd.push_back(a.legs()[p].dim);
            fs.push_back(s[p]);
        }
    const auto off = enumerate_offsets(fd, fs);
    const auto diag = enumerate_offsets(pair_dims, pair_strides);
    std::vector<cplx> out(off.size());
    for (std::size_t x = 0; x < off.size(); ++x) {
        cplx acc{0.0, 0.0};
        for (auto d : diag) acc += a.data()[off[x] + d];
        out[x] = acc;
    }
    return LabeledTensor(std::move(legs), std::move(out));
}

cplx inner(const LabeledTensor& a, const LabeledTensor& b) {
    auto bb = aligned_to(a, b);
    cplx s{0.0, 0.0};
    for (std::size_t n = 0; n < a.size(); ++n) s += std::conj(a.data()[n]) * bb.data()[n];
    return s;
}

Eigen::MatrixXcd as_matrix(const LabeledTensor& t, const std::vector<std::string>& rows,
                           const std::vector<std::string>& cols) {
    std::vector<std::string> order = rows;
    order.insert(order.end(), cols.begin(), cols.end());
    auto p = t.permuted(order);
    Eigen::Index nr = 1, nc = 1;
    for (const auto& r : rows) nr *= t.leg(r).dim;
    for (const auto& c : cols) nc *= t.leg(c).dim;
    Eigen::MatrixXcd m(nr, nc);
    for (Eigen::Index r = 0; r < nr; ++r)
        for (Eigen::Index c = 0; c < nc; ++c) m(r, c) = p.data()[static_cast<std::size_t>(r * nc + c)];
    return m;
}

LabeledTensor from_matrix(const Eigen::MatrixXcd& m, const std::vector<Leg>& rows,
                          const std::vector<Leg>& cols) {
    std::vector<Leg> legs = rows;
    legs.insert(legs.end(), cols.begin(), cols.end());
    LabeledTensor t(legs);
    if (static_cast<std::size_t>(m.size()) != t.size())
        throw std::invalid_argument("matrix size does not match leg dimensions");
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            t.data()[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
    return t;
}

}  // namespace su3
