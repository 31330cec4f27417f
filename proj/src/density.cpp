#include "su3/density.hpp"

#include <algorithm>
#include <stdexcept>

#include "su3/singlet_basis.hpp"
#include "su3/two_site.hpp"

namespace su3::density {

using three_site::ContourSolution;
using three_site::ThreeSiteProblem;
using two_site::omega33;
using two_site::omega_bar;

Eigen::MatrixXcd inter_matrix(cplx x, cplx y) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(11, 11);
    const cplx x2 = x * x, y2 = y * y;
    const cplx u = x2 - x * y - x + y - 1.0;
    const cplx v = x2 - x * y + 2.0 * x - 2.0 * y - 1.0;

    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    c(2, 6) = 1.0;

    c(3, 2) = 1.0;
    c(3, 3) = -y2;
    c(3, 4) = -y;
    c(3, 5) = y;

    c(4, 6) = 1.0;
    c(4, 8) = -(y - 1.0) * (y + 2.0);
    c(4, 9) = -y - 2.0;
    c(4, 10) = y - 1.0;

    c(5, 1) = x * (x - y) * (x2 - x * y - 2.0);
    c(5, 2) = -(x - y - 1.0) * (x - y + 1.0);
    c(5, 3) = x * (x - 2.0 * y);
    c(5, 4) = x * (x * y - y2 - 1.0);
    c(5, 5) = -x * (x * y - y2 - 1.0);

    c(6, 6) = u * v;
    c(6, 8) = -(y - 1.0) * (y + 2.0);
    c(6, 9) = (y + 2.0) * u;
    c(6, 10) = -(y - 1.0) * v;

    c(7, 2) = 1.0;

    c(8, 0) = 2.0 * x * y * (x + 2.0) * (y + 2.0);
    c(8, 1) = 2.0 * x * (x + 2.0) * (y + 2.0);
    c(8, 3) = 2.0 * y * (x + 2.0) * (y + 2.0);
    c(8, 4) = 2.0 * (x + 2.0) * (y + 2.0);

    c(9, 0) = 2.0 * (y + 2.0) * (x2 * y + 2.0 * x * y - x - 1.0);
    c(9, 1) = -2.0 * (y + 2.0) * (x2 + x - 1.0);
    c(9, 2) = 2.0 * (x + 1.0) * (y + 2.0);
    c(9, 3) = -2.0 * (x * y2 + x * y - x + 2.0 * y2 + 2.0 * y - 1.0);
    c(9, 4) = -2.0 * (x * y + x + 2.0 * y + 1.0);
    c(9, 5) = 2.0 * (y + 2.0);
    c(9, 6) = -2.0 * (x2 * y + x2 + x * y - y - 2.0);
    c(9, 7) = 2.0 * (x - y + 1.0);
    c(9, 8) = -2.0 * (x + 1.0) * (y - 1.0) * (y + 2.0);
    c(9, 9) = -2.0 * (x + 1.0) * (y + 2.0);
    c(9, 10) = -2.0 * x;

    c(10, 0) = 2.0 * (x2 - 1.0) * (y2 - 1.0);
    c(10, 6) = 2.0 * (x2 - 1.0) * (y + 1.0);
    c(10, 8) = 2.0 * (x + 1.0) * (y2 - 1.0);
    c(10, 9) = 2.0 * (x + 1.0) * (y + 1.0);
    return c;
}

Eigen::VectorXcd inter_rhs(cplx x, cplx y, cplx F1, cplx F2, cplx F3) {
    const cplx d = x - y;
    Eigen::VectorXcd r(11);
    r << 1.0, omega33(y), omega_bar(y - 1.0), omega33(x) * (1.0 - y * y),
        omega_bar(x - 1.0) * (1.0 - y) * (2.0 + y), omega33(y) * (1.0 - x * x) * (1.0 - d * d),
        omega_bar(y - 1.0) * (1.0 - x) * (2.0 + x) * (1.0 - d * d), omega33(d), F1, F2, F3;
    return r;
}

Eigen::VectorXcd correlators_off_line(const ThreeSiteProblem& problem, cplx lambda1, cplx s) {
    const ContourSolution sol(
        problem, [s](cplx nu) { return three_site::r_inhom(nu, 0.0, s); }, 0.0);
    const cplx x = lambda1 - s, y = lambda1;
    const cplx common = (x * x - 1.0) * (y * y - 1.0);
    const cplx F1 = sol.G1(lambda1) * common * (x + 2.0) * (y + 2.0) / (x * y);
    const cplx F2 = sol.G1(lambda1 + 1.0) * common * (x + 2.0) * (y + 2.0) / ((x + 1.0) * (y + 1.0));
    const cplx F3 = sol.G1(lambda1 + 2.0) * common;
    return inter_matrix(x, y).partialPivLu().solve(inter_rhs(x, y, F1, F2, F3));
}

HomogeneousCorrelators homogeneous_correlators(const ThreeSiteProblem& problem, const std::vector<double>& scales,
                                               double ray_slope) {
    if (scales.size() < 3) throw std::invalid_argument("homogeneous_correlators needs at least 3 scales");
    std::vector<cplx> hs;
    std::vector<Eigen::VectorXcd> samples;
    for (double h : scales) {
        hs.emplace_back(h, 0.0);
        samples.push_back(correlators_off_line(problem, h, ray_slope * h));
    }
    HomogeneousCorrelators out;
    out.f.resize(11);
    for (int k = 0; k < 11; ++k) {
        std::vector<cplx> fk;
        for (const auto& v : samples) fk.push_back(v(k));
        const auto e = three_site::extrapolate_to_zero(hs, fk);
        out.f(k) = e.value.real();
        out.extrapolation_error = std::max(out.extrapolation_error, e.error);
        out.imaginary_leakage = std::max(out.imaginary_leakage, std::abs(e.value.imag()));
    }
    return out;
}

Eigen::MatrixXcd density2_homogeneous() {
    const double w = two_site::omega33_homogeneous();
    const auto ops = correlator_operators(2);
    return ((3.0 - w) / 24.0) * ops[0] + ((3.0 * w - 1.0) / 24.0) * ops[1];
}

Eigen::MatrixXcd density2_from_basis() {
    const SingletBasis& b = build_basis(2);
    Eigen::VectorXcd f(3);
    f << 1.0, two_site::omega33_homogeneous(), omega_bar(-1.0);
    Eigen::VectorXcd rho = Eigen::VectorXcd::Zero(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rho(i) += b.gram_inverse[i][j].to_double() * f(j);
    return reduce_to_physical(2, rho);
}

Eigen::MatrixXcd density3_from_correlators(const Eigen::VectorXd& f) {
    if (f.size() != 11) throw std::invalid_argument("density3_from_correlators needs 11 correlators");
    const SingletBasis& b = build_basis(3);
    Eigen::VectorXcd rho = Eigen::VectorXcd::Zero(11);
    for (int i = 0; i < 11; ++i)
        for (int j = 0; j < 11; ++j) rho(i) += b.gram_inverse[i][j].to_double() * f(j);
    return reduce_to_physical(3, rho);
}

Eigen::MatrixXcd partial_trace_last(const Eigen::MatrixXcd& d, int sites) {
    int dim = 1;
    for (int s = 0; s < sites; ++s) dim *= 3;
    if (sites < 2 || d.rows() != dim || d.cols() != dim) throw std::invalid_argument("partial_trace_last: shape");
    const int rest = dim / 3;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rest, rest);
    for (int a = 0; a < rest; ++a)
        for (int b = 0; b < rest; ++b)
            for (int k = 0; k < 3; ++k) out(a, b) += d(3 * a + k, 3 * b + k);
    return out;
}

DensityCheck check_density(const Eigen::MatrixXcd& d) {
    DensityCheck c;
    c.trace_error = std::abs(d.trace() - 1.0);
    c.hermiticity = (d - d.adjoint()).cwiseAbs().maxCoeff();
    const Eigen::MatrixXcd herm = 0.5 * (d + d.adjoint());
    c.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    return c;
}

ThreeSiteDensity three_site_density(const ThreeSiteProblem& problem) {
    ThreeSiteDensity out;
    out.correlators = homogeneous_correlators(problem);
    out.D3 = density3_from_correlators(out.correlators.f);
    out.D2 = density2_homogeneous();
    out.check3 = check_density(out.D3);
    out.check2 = check_density(out.D2);
    out.partial_trace_error = (partial_trace_last(out.D3, 3) - out.D2).cwiseAbs().maxCoeff();
    out.p13 = out.correlators.f(3);
    return out;
}

}  // namespace su3::density
