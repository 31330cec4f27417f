#include <doctest.h>

#include "su3/density.hpp"
#include "su3/singlet_basis.hpp"
#include "su3/two_site.hpp"

using namespace su3;
using namespace su3::density;

TEST_CASE("two-site density from the basis equals the closed form") {
    const auto a = density2_from_basis();
    const auto b = density2_homogeneous();
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    const auto c = check_density(b);
    CHECK(c.trace_error < 1e-14);
    CHECK(c.hermiticity < 1e-14);
    CHECK(c.min_eigenvalue > 0.0);
    const double p12 = (site_permutation(2, 1, 2) * b).trace().real();
    CHECK(std::abs(p12 - two_site::omega33(0.0).real()) < 1e-13);
}

TEST_CASE("partial trace of a product state") {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3, 3), b = Eigen::MatrixXcd::Zero(3, 3);
    a(0, 0) = 0.5;
    a(1, 1) = 0.5;
    b(2, 2) = 1.0;
    Eigen::MatrixXcd ab(9, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ab.block(3 * i, 3 * j, 3, 3) = a(i, j) * b;
    CHECK((partial_trace_last(ab, 2) - a).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("inter relations are consistent with the homogeneous line data") {
    const cplx x(0.31, 0.2), y(0.17, -0.1);
    const auto m = inter_matrix(x, y);
    CHECK(m.rows() == 11);
    CHECK(m.cols() == 11);
    CHECK(std::abs(m.determinant()) > 1e-12);
}

TEST_CASE("three-site density at the homogeneous point") {
    const auto d = three_site_density(three_site::ThreeSiteProblem{});
    const auto& f = d.correlators.f;
    CHECK(std::abs(f(0) - 1.0) < 1e-8);
    CHECK(std::abs(f(1) - two_site::omega33(0.0).real()) < 1e-7);
    CHECK(std::abs(f(2) - two_site::omega33(0.0).real()) < 1e-7);
    CHECK(std::abs(f(4) - 0.191368820116674) < 1e-7);
    CHECK(std::abs(f(5) - 0.191368820116674) < 1e-7);
    CHECK(std::abs(d.p13 - 0.0447082066) < 1e-7);
    CHECK(d.check3.trace_error < 1e-8);
    CHECK(d.check3.hermiticity < 1e-8);
    CHECK(d.check3.min_eigenvalue > -1e-8);
    CHECK(d.check2.min_eigenvalue > -1e-8);
    CHECK(d.partial_trace_error < 1e-5);
    CHECK(d.correlators.imaginary_leakage < 1e-8);
}
