#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace su3::three_site {

using cplx = std::complex<double>;

// Primitive cube root of unity w = e^{2πi/3}.
cplx cube_root_of_unity(int power);

// Quadrature setup. The integration line is Re ν = −delta, parametrized as
// ν = −delta + i·sinh(u) with u on a uniform grid of spacing `step` over
// [−half_width, half_width], so the line is truncated at |Im ν| = sinh(half_width).
struct ThreeSiteProblem {
    double delta = 0.5;
    double step = 0.05;
    double half_width = 40.0;
    int threads = 1;
    // F_k(λ,0,0) is sampled at λ_j = extrapolation_start·2^{−j}, j < extrapolation_depth.
    cplx extrapolation_start{0.05, 0.5};
    int extrapolation_depth = 8;
};

// Inhomogeneity of the three-site equations and its homogeneous limit.
cplx r_inhom(cplx lambda1, cplx lambda2, cplx lambda3);
cplx phi(cplx lambda);

// Closed form h_l(z) = −2πi e^{2πbz}/(e^{2πz} − 1), b = 0, 1/3, 2/3 for
// l = 0, 1, −1, evaluated without overflow for large |Re z|.
cplx h_kernel(int l, cplx z);

struct QuadratureEstimate {
    cplx value;
    double error = 0.0;
};
// Direct numerical evaluation of the defining k-integral for real z ≠ 0.
QuadratureEstimate h_kernel_quadrature(int l, double z, double cutoff = 60.0);

// Residue of f at `center` by the trapezoid rule on a circle.
cplx circle_residue(const std::function<cplx(cplx)>& f, cplx center, double radius = 0.25, int points = 128);

// Solution of G1(λ) − G1(λ+3) = source(λ) given by the Cauchy integral over
// the line with the period-3 kernel (π/3)cot(π(ν−λ)/3), plus the constant that
// makes G1(anchor) = 0. Valid for −delta < Re λ < 3 − delta.
class ContourSolution {
public:
    ContourSolution(const ThreeSiteProblem& problem, const std::function<cplx(cplx)>& source, cplx anchor);

    cplx G1(cplx lambda) const;
    // order 1 or 2, by differentiating the kernel.
    cplx G1_derivative(int order, cplx lambda) const;
    // Continuation to 3 − delta < Re λ < 6 − delta by moving the line to
    // Re ν = 3 − delta and adding the residues of source·kernel at `source_poles`.
    cplx G1_continued(cplx lambda, const std::vector<cplx>& source_poles) const;

    cplx constant() const { return constant_; }
    std::size_t node_count() const { return nodes_.size(); }

private:
    cplx integral(cplx lambda, int order, double shift) const;
    std::function<cplx(cplx)> source_;
    double c_;
    std::vector<cplx> nodes_;
    std::vector<cplx> weighted_;          // w_j · source(ν_j)
    std::vector<cplx> weighted_shifted_;  // same on Re ν = 3 − delta
    cplx constant_{0.0, 0.0};
};

// The decoupled functions g_l(λ) = (1/2π)∫ h_l(λ − μ) φ(μ) dμ, written on the
// vertical line, with the additive constant of g_0 fixed by G1(0) = 0.
// Valid for −delta < Re λ < 1 − delta; g_at_shifted covers the next strip.
class DecoupledSolution {
public:
    explicit DecoupledSolution(const ThreeSiteProblem& problem);

    cplx g(int l, cplx lambda) const;
    cplx g_shifted(int l, cplx lambda) const;
    cplx G(int k, cplx lambda) const;  // k = 1, 2, 3 by the inverse discrete Fourier relations
    cplx constant() const { return constant_; }
    double delta() const { return c_ * -1.0; }

private:
    cplx raw(int l, cplx lambda, bool shifted) const;
    double c_;
    std::vector<cplx> nodes_, weighted_, nodes_shifted_, weighted_shifted_;
    std::vector<double> weights_, weights_shifted_;
    cplx constant_{0.0, 0.0};
};

cplx solve_g(const ThreeSiteProblem& problem, int l, cplx lambda);

// g_l(λ) − w^l g_l(λ+1) − φ(λ); the second term uses the shifted line.
double recursion_residual(const DecoupledSolution& sol, int l, cplx lambda);

// One-sided sum Σ_{k<terms} w^{lk} φ(λ+k). Solves the same recursion with a
// different boundary condition; kept only as a diagnostic.
cplx naive_g(int l, cplx lambda, int terms = 20000);
cplx naive_G1(cplx lambda, int terms = 20000);

struct Extrapolation {
    cplx value;
    double error = 0.0;        // |last − second to last| of the diagonal
    bool converging = true;    // diagonal differences decrease
    std::vector<cplx> diagonal;
};
// Neville extrapolation to 0 of samples f(x_j).
Extrapolation extrapolate_to_zero(const std::vector<cplx>& xs, const std::vector<cplx>& fs);

struct ThreeSiteSolution {
    double F1 = 0.0, F2 = 0.0, F3 = 0.0;
    double p12p23 = 0.0;
    struct Diagnostics {
        double max_recursion_residual = 0.0;
        double max_imaginary_leakage = 0.0;
        double extrapolation_error = 0.0;
        bool extrapolation_converging = true;
        double G1_prime_at_0 = 0.0;
        double G1_linear_coefficient = 0.0;
        double F1_kernel_derivative = 0.0;  // 2 G1''(0) from the differentiated kernel
        double integration_constant = 0.0;
        double naive_series_lambda2_G1 = 0.0;  // λ²·G1_naive(λ) at λ = 1e−3, → −2
        std::size_t nodes = 0;
    } diagnostics;
};

ThreeSiteSolution three_site_correlator(const ThreeSiteProblem& problem);

}  // namespace su3::three_site
