#include <doctest.h>

#include "su3/lattice_ed.hpp"

using namespace su3::ed;

TEST_CASE("bond operators") {
    const auto p = bond_operator(HamiltonianForm::Permutation);
    const auto s = bond_operator(HamiltonianForm::Spin1);
    CHECK((s - p - Eigen::Matrix<double, 9, 9>::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((p * p - Eigen::Matrix<double, 9, 9>::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(p(3 * 0 + 1, 3 * 1 + 0) == 1.0);
}

TEST_CASE("Hamiltonian forms differ by L times the identity") {
    const ChainSpec spec{3};
    const Sector all = full_space(spec);
    const Hamiltonian hp(all, HamiltonianForm::Permutation), hs(all, HamiltonianForm::Spin1);
    const Eigen::MatrixXd dp = hp.dense(), ds = hs.dense();
    CHECK((ds - dp - 3.0 * Eigen::MatrixXd::Identity(27, 27)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((dp - dp.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Hamiltonian conserves color numbers") {
    const ChainSpec spec{3};
    const Sector all = full_space(spec);
    const Eigen::MatrixXd h = Hamiltonian(all, HamiltonianForm::Permutation).dense();
    auto count = [](std::int64_t s, int color) {
        int c = 0;
        for (int k = 0; k < 3; ++k, s /= 3)
            if (s % 3 == color) ++c;
        return c;
    };
    for (int color = 0; color < 3; ++color) {
        Eigen::MatrixXd n = Eigen::MatrixXd::Zero(27, 27);
        for (int s = 0; s < 27; ++s) n(s, s) = count(s, color);
        CHECK((h * n - n * h).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("sector sizes") {
    CHECK(hilbert_dimension(ChainSpec{9}) == 19683);
    CHECK(balanced_sector(ChainSpec{6}).states.size() == 90);
    CHECK(balanced_sector(ChainSpec{9}).states.size() == 1680);
    CHECK(color_sector(ChainSpec{4}, 2, 1, 1).states.size() == 12);
    CHECK_THROWS(balanced_sector(ChainSpec{4}));
}

TEST_CASE("L = 3 ground state is the totally antisymmetric singlet") {
    const ChainSpec spec{3};
    const auto r = ground_state(spec);
    CHECK(std::abs(r.energy_per_bond + 1.0) < 1e-12);
    CHECK(std::abs(r.observables.at("p12p23") - 1.0) < 1e-12);
    CHECK(r.degeneracy == 1);
    const Eigen::VectorXd v = r.ground_space.front();
    CHECK((apply_site_swap(spec, v, 1, 2) + v).norm() < 1e-12);
    CHECK((apply_site_swap(spec, v, 2, 3) + v).norm() < 1e-12);
}

TEST_CASE("L = 6 dense diagonalization") {
    const auto r = ground_state(ChainSpec{6});
    CHECK(r.method == "dense");
    CHECK(std::abs(r.energy_per_bond - (-0.767591879243998)) < 1e-10);
    CHECK(std::abs(r.observables.at("p12p23") - 0.309579305659537) < 1e-10);
    CHECK(std::abs(r.observables.at("p12") - r.energy_per_bond) < 1e-12);
    CHECK(r.global_minimum_checked);
    CHECK(std::abs(r.global_minimum_gap) < 1e-10);
    CHECK(r.residual < 1e-10);
}

TEST_CASE("L = 9 Lanczos ground state") {
    const auto r = ground_state(ChainSpec{9}, 2);
    CHECK(r.method == "lanczos");
    CHECK(r.residual < 1e-10);
    // value of the periodic chain, reproduced by dense sector diagonalization
    CHECK(std::abs(r.energy_per_bond - (-0.731048417676279)) < 1e-11);
    CHECK(std::abs(r.observables.at("p12p23") - 0.239661721591669) < 1e-8);
    CHECK(std::abs(r.observables.at("p12") - r.energy_per_bond) < 1e-12);

    const double tr = r.rdm2.trace();
    CHECK(std::abs(tr - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.rdm2);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    const Eigen::MatrixXd p = bond_operator(HamiltonianForm::Permutation);
    CHECK(std::abs((p * r.rdm2).trace() - r.observables.at("p12")) < 1e-12);
    CHECK(std::abs(r.rdm3.trace() - 1.0) < 1e-12);
}

TEST_CASE("L = 9 Lanczos agrees with dense sector diagonalization") {
    const ChainSpec spec{9};
    const Sector sec = balanced_sector(spec);
    const Hamiltonian h(sec, HamiltonianForm::Permutation);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense(), Eigen::EigenvaluesOnly);
    const auto r = lanczos_ground_state(h);
    CHECK(std::abs(r.E0 - es.eigenvalues()(0)) < 1e-10);
}

TEST_CASE("finite-size values decrease toward the thermodynamic limit") {
    const auto r6 = ground_state(ChainSpec{6});
    const auto r9 = ground_state(ChainSpec{9});
    CHECK(r6.observables.at("p12p23") > r9.observables.at("p12p23"));
    CHECK(r9.observables.at("p12p23") > 0.191368820116674);
    CHECK(r6.energy_per_bond < r9.energy_per_bond);
    CHECK(r9.energy_per_bond < -0.703212076746182);
}

TEST_CASE("matrix-free action is independent of the thread count") {
    const Sector sec = balanced_sector(ChainSpec{9});
    const Hamiltonian h1(sec, HamiltonianForm::Permutation, 1), h4(sec, HamiltonianForm::Permutation, 4);
    Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(h1.dim()), -1.0, 2.0);
    Eigen::VectorXd y1, y4;
    h1.apply(x, y1);
    h4.apply(x, y4);
    CHECK((y1 - y4).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lengths that are not multiples of three use all color sectors") {
    const auto r = ground_state(ChainSpec{4});
    CHECK(r.residual < 1e-10);
    CHECK(std::abs(r.observables.at("p12") - r.energy_per_bond) < 1e-12);
    // full-space check
    const Sector all = full_space(ChainSpec{4});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hamiltonian(all, HamiltonianForm::Permutation).dense(),
                                                      Eigen::EigenvaluesOnly);
    CHECK(std::abs(r.E0 - es.eigenvalues()(0)) < 1e-10);
}
