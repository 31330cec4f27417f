#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "su3/rational.hpp"
#include "su3/tensor.hpp"

namespace su3 {

// Invariant tensors spanning the mixed density operator for m = 2 (3 elements)
// or m = 3 (11 elements). Legs are ordered i1, i2, i3, r1..r_{m-1},
// s1..s_{m-1}; i and r legs are upper indices, s legs are lower.
struct SingletBasis {
    int m = 0;
    std::vector<std::string> leg_order;
    std::vector<LabeledTensor> elements;
    Eigen::MatrixXi gram;
    RationalMatrix gram_inverse;

    std::size_t dim() const { return elements.size(); }
};

// Built once per m and cached; the returned reference stays valid.
const SingletBasis& build_basis(int m);

// Reference integer Gram matrices. The m = 3 one is the matrix M.
Eigen::MatrixXi reference_gram(int m);

// Closed forms: A^[2](λ) with λ = λ1 − λ2, and A^[3](x, y) with
// x = λ1 − λ3, y = λ1 − λ2.
Eigen::MatrixXcd closed_form_a2(cplx lambda);
Eigen::MatrixXcd closed_form_a3(cplx x, cplx y);

struct AMatrixResult {
    Eigen::MatrixXcd a;               // renormalized so that row_norm · A = row_norm
    cplx normalization_factor{1.0};   // scalar removed from M⁻¹W
    cplx expected_factor{1.0};        // Π_j [−λ_j(λ_j + 3)], λ_j = λ1 − λ_{j+1}
    double eigen_residual = 0.0;      // |row_norm · M⁻¹W − factor · row_norm|_max
    double span_residual = 0.0;       // distance of 𝔄 P_k from the span of the basis
};

// Applies the R-matrix product 𝔄_m to each basis element and expands the
// result in the basis. Throws std::invalid_argument at singular parameters,
// naming the vanishing denominator. λ3 is required for m = 3 and ignored for m = 2.
AMatrixResult a_matrix(int m, cplx lambda1, cplx lambda2, std::optional<cplx> lambda3 = std::nullopt);

// The operator 𝔄_m applied to a tensor with the basis leg layout.
LabeledTensor apply_a_operator(int m, const LabeledTensor& x, cplx lambda1, cplx lambda2, cplx lambda3 = 0.0);

// Physical density operator on (C^3)^{⊗m} from the coefficients ρ_k.
// Rows and columns use site 1 as the most significant base-3 digit.
Eigen::MatrixXcd reduce_to_physical(int m, const Eigen::VectorXcd& rho);

// Independent route: contract ε over the open i legs of Σ ρ_k P_k.
Eigen::MatrixXcd physical_by_contraction(int m, const Eigen::VectorXcd& rho);

// Permutation operators on (C^3)^{⊗m}; sites are 1-based.
Eigen::MatrixXcd site_permutation(int m, int a, int b);

// Operators O_k with tr(O_k D) = (M ρ)_k for k = 1..6 at m = 3 (I, P12, P23,
// P13, P12 P23, P23 P12), or k = 1..2 at m = 2 (I, P12).
std::vector<Eigen::MatrixXcd> correlator_operators(int m);

std::string basis_json(int m);

}  // namespace su3
