#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "su3/three_site.hpp"

namespace su3::density {

using cplx = std::complex<double>;

// Linear relations between the eleven three-site correlators f_k = (Mρ)_k and
// the known two-site functions and F1..F3, at x = λ1 − λ3, y = λ1 − λ2.
Eigen::MatrixXcd inter_matrix(cplx x, cplx y);
Eigen::VectorXcd inter_rhs(cplx x, cplx y, cplx F1, cplx F2, cplx F3);

// Correlator vector at (λ1, 0, s) from the inhomogeneous three-site solution.
Eigen::VectorXcd correlators_off_line(const three_site::ThreeSiteProblem& problem, cplx lambda1, cplx s);

struct HomogeneousCorrelators {
    Eigen::VectorXd f;                // f_k at the origin, k = 1..11
    double extrapolation_error = 0.0; // max over k of the last Neville correction
    double imaginary_leakage = 0.0;
};

// Evaluates along the ray (λ1, s) = (h, ray_slope·h) and extrapolates h → 0.
HomogeneousCorrelators homogeneous_correlators(const three_site::ThreeSiteProblem& problem,
                                               const std::vector<double>& scales = {0.32, 0.28, 0.24, 0.2, 0.16, 0.12,
                                                                                    0.08},
                                               double ray_slope = 0.4);

// Two-site density operator at the origin, from the closed form aI + bP12.
Eigen::MatrixXcd density2_homogeneous();
// Same operator from the m = 2 singlet basis with f = (1, ω33(0), ω̄(−1)).
Eigen::MatrixXcd density2_from_basis();

Eigen::MatrixXcd density3_from_correlators(const Eigen::VectorXd& f);

// Traces out the last site of an operator on (C^3)^{⊗sites}.
Eigen::MatrixXcd partial_trace_last(const Eigen::MatrixXcd& d, int sites);

struct DensityCheck {
    double trace_error = 0.0;     // |tr D − 1|
    double hermiticity = 0.0;     // max |D − D†|
    double min_eigenvalue = 0.0;  // of the Hermitian part
};
DensityCheck check_density(const Eigen::MatrixXcd& d);

struct ThreeSiteDensity {
    HomogeneousCorrelators correlators;
    Eigen::MatrixXcd D3, D2;
    DensityCheck check3, check2;
    double partial_trace_error = 0.0;  // max |tr_3 D3 − D2|
    double p13 = 0.0;
};
ThreeSiteDensity three_site_density(const three_site::ThreeSiteProblem& problem);

}  // namespace su3::density
