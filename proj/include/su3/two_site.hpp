#pragma once

#include <complex>
#include <vector>

namespace su3::two_site {

using cplx = std::complex<double>;

// Generating function G(λ) = (ω33(λ) + 1)/(λ² − 1), written with digamma
// functions. Even in λ; poles at λ = ±3, ±4, ±6, ...
cplx G(cplx lambda);
cplx G_prime(cplx lambda);

cplx sigma(cplx lambda);
cplx sigma_prime(cplx lambda);

cplx omega33(cplx lambda);
cplx omega33_prime(cplx lambda);

// ω̄33(λ) obtained by solving the first two-site equation for it. Regular at 0.
cplx omega_bar(cplx lambda);

cplx alpha33(cplx lambda);

struct OmegaTriple {
    cplx omega33, omega_bar, alpha33;
};
OmegaTriple omega(cplx lambda);

// Exact homogeneous values.
double omega33_homogeneous();  // 1 − π/(3√3) − ln 3
double alpha33_homogeneous();  // (2 − π/√3 − 3 ln 3)/24

enum class ZetaSign { Corrected, Positive };

// Coefficients c_0..c_K of G(λ) = Σ c_k λ^{2k}. The constant term is
// (2/3)[ψ0(1) − ψ0(4/3)]. For k ≥ 1 the coefficient is
// −(2/3)[ζ(2k+1,1) − ζ(2k+1,4/3)]/9^k. Positive drops the minus sign and
// exists only to document the discrepancy.
std::vector<double> zeta_expansion(int K, ZetaSign sign = ZetaSign::Corrected);

// Taylor coefficients of G at 0 from a Cauchy integral on |λ| = radius
// (trapezoid rule with `points` nodes). Independent oracle for zeta_expansion.
std::vector<double> taylor_coefficients_numeric(int K, double radius = 1.5, int points = 96);

struct QkzResiduals {
    double first = 0.0;
    double second = 0.0;
};
QkzResiduals check_qkz_two_site(cplx lambda);

// σ(λ+1) + σ(λ) + σ(λ−1) − (λ² + 2)/((λ² − 4)(λ² − 1)).
double three_term_residual(cplx lambda);

}  // namespace su3::two_site
