#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace su3 {

using cplx = std::complex<double>;

// Index position of a leg. A fundamental leg is a lower (covariant) index and an
// antifundamental leg is an upper one; only opposite orientations may be joined.
enum class Orientation { Fundamental, Antifundamental };

Orientation flipped(Orientation o);

struct Leg {
    int dim = 0;
    Orientation orientation = Orientation::Fundamental;
    std::string label;
};

// Dense complex tensor with labeled legs. Storage is row-major in leg order,
// so the last leg varies fastest.
class LabeledTensor {
public:
    LabeledTensor();  // rank-0 tensor holding 0
    explicit LabeledTensor(std::vector<Leg> legs);
    LabeledTensor(std::vector<Leg> legs, std::vector<cplx> entries);

    static LabeledTensor scalar(cplx value);

    const std::vector<Leg>& legs() const { return legs_; }
    std::size_t rank() const { return legs_.size(); }
    std::size_t size() const { return data_.size(); }
    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    int leg_index(const std::string& label) const;
    bool has_leg(const std::string& label) const;
    const Leg& leg(const std::string& label) const { return legs_[leg_index(label)]; }

    std::size_t offset(const std::vector<int>& idx) const;
    cplx& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
    const cplx& at(const std::vector<int>& idx) const { return data_[offset(idx)]; }
    cplx& operator()(std::initializer_list<int> idx) { return at(std::vector<int>(idx)); }
    const cplx& operator()(std::initializer_list<int> idx) const { return at(std::vector<int>(idx)); }

    cplx value() const;  // only for rank 0

    LabeledTensor relabeled(const std::vector<std::pair<std::string, std::string>>& renames) const;
    LabeledTensor with_orientation(const std::string& label, Orientation o) const;
    LabeledTensor permuted(const std::vector<std::string>& order) const;
    // Complex conjugate with every orientation flipped.
    LabeledTensor dual() const;

    LabeledTensor& operator+=(const LabeledTensor& other);
    LabeledTensor& operator-=(const LabeledTensor& other);
    LabeledTensor& operator*=(cplx s);

private:
    void check_invariants() const;
    std::vector<Leg> legs_;
    std::vector<std::size_t> strides_;
    std::vector<cplx> data_;
    void compute_strides();
};

LabeledTensor operator+(LabeledTensor a, const LabeledTensor& b);
LabeledTensor operator-(LabeledTensor a, const LabeledTensor& b);
LabeledTensor operator*(cplx s, LabeledTensor a);

// Largest entrywise difference after aligning legs by label. Throws if the
// leg sets differ.
double max_abs_diff(const LabeledTensor& a, const LabeledTensor& b);
double max_abs(const LabeledTensor& a);

enum class StructuralKind { Identity, Permutation, TemperleyLieb, Epsilon, Delta };

// Identity, Permutation and TemperleyLieb carry legs i,k (in) and j,l (out) with
// the conventions I = δij δkl, P = δil δjk, E = δik δjl. Identity and
// Permutation act on two fundamental spaces; TemperleyLieb acts on a
// fundamental and an antifundamental space. Epsilon has n lower legs e1..en with
// ε_{12..n} = +1. Delta has a lower leg "i" and an upper leg "j".
LabeledTensor structural_tensor(StructuralKind kind, int n);

// Contract legs of a with legs of b. Every pair must join a fundamental leg to
// an antifundamental leg of equal dimension. Result legs are the free legs of a
// followed by those of b, in original order.
LabeledTensor contract(const LabeledTensor& a, const LabeledTensor& b,
                       const std::vector<std::pair<std::string, std::string>>& pairs);

// Contract pairs of legs within a single tensor.
LabeledTensor trace(const LabeledTensor& a,
                    const std::vector<std::pair<std::string, std::string>>& pairs);

inline LabeledTensor outer(const LabeledTensor& a, const LabeledTensor& b) {
    return contract(a, b, {});
}

// Full contraction <a, b> = sum conj(a) b over legs matched by label.
cplx inner(const LabeledTensor& a, const LabeledTensor& b);

// Flatten into a matrix with the given row legs and column legs (all legs must
// be listed once). Row index uses the order of `rows` with the last fastest.
Eigen::MatrixXcd as_matrix(const LabeledTensor& t, const std::vector<std::string>& rows,
                           const std::vector<std::string>& cols);

LabeledTensor from_matrix(const Eigen::MatrixXcd& m, const std::vector<Leg>& rows,
                          const std::vector<Leg>& cols);

}  // namespace su3
