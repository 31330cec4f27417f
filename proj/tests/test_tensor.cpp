#include <doctest.h>

#include <random>

#include "su3/tensor.hpp"

using namespace su3;

namespace {

LabeledTensor random_tensor(std::mt19937_64& rng, std::vector<Leg> legs) {
    std::normal_distribution<double> g;
    LabeledTensor t(std::move(legs));
    for (auto& e : t.data()) e = cplx(g(rng), g(rng));
    return t;
}

LabeledTensor eps_dual(const std::string& a, const std::string& b, const std::string& c) {
    return structural_tensor(StructuralKind::Epsilon, 3).dual().relabeled({{"e1", a}, {"e2", b}, {"e3", c}});
}

}  // namespace

TEST_CASE("structural tensors follow the index conventions") {
    const auto P = structural_tensor(StructuralKind::Permutation, 3);
    CHECK(P({0, 1, 1, 0}) == cplx(1.0));
    CHECK(P({0, 1, 0, 1}) == cplx(0.0));

    const auto I = structural_tensor(StructuralKind::Identity, 3);
    CHECK(I({0, 1, 0, 1}) == cplx(1.0));
    CHECK(I({0, 1, 1, 0}) == cplx(0.0));

    const auto E = structural_tensor(StructuralKind::TemperleyLieb, 3);
    CHECK(E({0, 0, 2, 2}) == cplx(1.0));
    CHECK(E({0, 1, 2, 2}) == cplx(0.0));

    const auto eps = structural_tensor(StructuralKind::Epsilon, 3);
    CHECK(eps({0, 1, 2}) == cplx(1.0));
    CHECK(eps({1, 0, 2}) == cplx(-1.0));
    CHECK(eps({0, 0, 1}) == cplx(0.0));
    CHECK(eps({2, 0, 1}) == cplx(1.0));

    CHECK_THROWS_AS(structural_tensor(StructuralKind::Delta, 1), std::invalid_argument);
}

TEST_CASE("identity contracted with a vector returns the vector") {
    std::mt19937_64 rng(1);
    const auto v = random_tensor(rng, {{3, Orientation::Antifundamental, "a"}, {3, Orientation::Antifundamental, "b"}});
    const auto I = structural_tensor(StructuralKind::Identity, 3);
    const auto out = contract(I, v, {{"i", "a"}, {"k", "b"}});
    CHECK(max_abs_diff(out.relabeled({{"j", "a"}, {"l", "b"}}), v) == doctest::Approx(0.0));
}

TEST_CASE("epsilon and delta contraction identities") {
    const auto eps = structural_tensor(StructuralKind::Epsilon, 3);
    const auto up = eps_dual("f1", "f2", "f3");
    CHECK(contract(eps, up, {{"e1", "f1"}, {"e2", "f2"}, {"e3", "f3"}}).value().real() == doctest::Approx(6.0));

    const auto delta = structural_tensor(StructuralKind::Delta, 3);
    CHECK(trace(delta, {{"i", "j"}}).value().real() == doctest::Approx(3.0));

    // ε_{e1 e2 k} ε^{k f2 f3} entrywise
    const auto two = contract(eps, up, {{"e3", "f1"}});
    double worst = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    const double expected = (a == c && b == d ? 1.0 : 0.0) - (a == d && b == c ? 1.0 : 0.0);
                    worst = std::max(worst, std::abs(two.at({a, b, c, d}) - expected));
                }
    CHECK(worst < 1e-12);

    // ε_{e1 j k} ε^{j k f3} = 2 δ
    const auto one = contract(eps, up, {{"e2", "f1"}, {"e3", "f2"}});
    worst = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int d = 0; d < 3; ++d) worst = std::max(worst, std::abs(one.at({a, d}) - (a == d ? 2.0 : 0.0)));
    CHECK(worst < 1e-12);
}

TEST_CASE("contraction rejects mismatched legs") {
    const auto eps = structural_tensor(StructuralKind::Epsilon, 3);
    SUBCASE("orientation") { CHECK_THROWS(contract(eps, eps.relabeled({{"e1", "x"}}), {{"e1", "x"}})); }
    SUBCASE("dimension") {
        const LabeledTensor v({{2, Orientation::Antifundamental, "x"}});
        CHECK_THROWS(contract(eps, v, {{"e1", "x"}}));
    }
    SUBCASE("unknown label") { CHECK_THROWS(contract(eps, eps_dual("a", "b", "c"), {{"zz", "a"}})); }
}

TEST_CASE("tensor invariants are enforced at construction") {
    CHECK_THROWS(LabeledTensor({{3, Orientation::Fundamental, "a"}, {3, Orientation::Fundamental, "a"}}));
    CHECK_THROWS(LabeledTensor({{3, Orientation::Fundamental, "a"}}, std::vector<cplx>(4)));
    const LabeledTensor t({{3, Orientation::Fundamental, "a"}, {2, Orientation::Fundamental, "b"}});
    CHECK(t.size() == 6);
}

TEST_CASE("contraction is bilinear") {
    std::mt19937_64 rng(7);
    const std::vector<Leg> la = {{3, Orientation::Fundamental, "a"}, {3, Orientation::Antifundamental, "b"}};
    const std::vector<Leg> lb = {{3, Orientation::Antifundamental, "c"}, {3, Orientation::Fundamental, "d"}};
    for (int trial = 0; trial < 10; ++trial) {
        const auto a1 = random_tensor(rng, la), a2 = random_tensor(rng, la);
        const auto b1 = random_tensor(rng, lb), b2 = random_tensor(rng, lb);
        const cplx s(0.3, -1.2), t(-0.7, 0.4);
        const std::vector<std::pair<std::string, std::string>> pairs = {{"a", "c"}};
        const auto left = contract(s * a1 + t * a2, b1, pairs);
        const auto right = s * contract(a1, b1, pairs) + t * contract(a2, b1, pairs);
        CHECK(max_abs_diff(left, right) < 1e-12);
        const auto left2 = contract(a1, s * b1 + t * b2, pairs);
        const auto right2 = s * contract(a1, b1, pairs) + t * contract(a1, b2, pairs);
        CHECK(max_abs_diff(left2, right2) < 1e-12);
    }
}

TEST_CASE("contraction order of independent pairs does not matter") {
    std::mt19937_64 rng(11);
    const auto a = random_tensor(rng, {{3, Orientation::Fundamental, "a"},
                                       {3, Orientation::Fundamental, "b"},
                                       {3, Orientation::Antifundamental, "c"}});
    const auto b = random_tensor(rng, {{3, Orientation::Antifundamental, "x"},
                                       {3, Orientation::Antifundamental, "y"},
                                       {3, Orientation::Fundamental, "z"}});
    const auto both = contract(a, b, {{"a", "x"}, {"b", "y"}});
    const auto stepwise = trace(contract(a, b, {{"a", "x"}}), {{"b", "y"}});
    const auto reversed = trace(contract(a, b, {{"b", "y"}}), {{"a", "x"}});
    CHECK(max_abs_diff(both, stepwise.permuted({"c", "z"})) < 1e-12);
    CHECK(max_abs_diff(both, reversed.permuted({"c", "z"})) < 1e-12);
}
