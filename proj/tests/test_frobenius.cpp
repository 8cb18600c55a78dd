#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "flatsub/frobenius.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace flatsub;

namespace {

Ten3<Rational> golden_c(const std::vector<Rational>& pt) {
    return structure_constants<Rational>(fixtures::golden_phi(),
                                         metric_view<Rational>(fixtures::golden_eta()), pt)
        .c;
}

} // namespace

TEST_CASE("structure constants of a quadratic potential vanish") {
    Polynomial quad(2);
    quad.add_term({2, 0}, Rational(1, 2));
    quad.add_term({1, 1}, Rational(3));
    auto sc = structure_constants<Rational>(quad, metric_view<Rational>(MetricMatrix::identity(2)),
                                            {Rational(1), Rational(-2)});
    CHECK(sc.c.max_abs() == Rational(0));
}

TEST_CASE("separable potential gives a diagonal algebra") {
    // phi = u1^3/6 + u2^4/24 with the identity metric:
    // c^k_{ij} = delta_{ijk} f_i'''(u^i) = diag(1, u2)
    Polynomial phi(2);
    phi.add_term({3, 0}, Rational(1, 6));
    phi.add_term({0, 4}, Rational(1, 24));
    std::vector<Rational> pt = {Rational(2, 3), Rational(-5, 7)};
    auto sc = structure_constants<Rational>(phi, metric_view<Rational>(MetricMatrix::identity(2)), pt);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Rational expect =
                    (i == j && j == k) ? (i == 0 ? Rational(1) : pt[1]) : Rational(0);
                CHECK(sc.c(k, i, j) == expect);
            }
    CHECK(associativity_residual(sc.c).value == Rational(0));
}

TEST_CASE("structure constants against hand expansion, antidiagonal metric") {
    // phi = 1/2 u1^2 u3 + 1/2 u1 u2^2; nonzero third partials are
    // phi_113 = 1 and phi_122 = 1. With eta^{13} = eta^{22} = eta^{31} = 1:
    // c^1 = phi_3.., c^2 = phi_2.., c^3 = phi_1..
    Polynomial phi(3);
    phi.add_term({2, 0, 1}, Rational(1, 2));
    phi.add_term({1, 2, 0}, Rational(1, 2));
    auto sc = structure_constants<Rational>(phi, metric_view<Rational>(MetricMatrix::antidiagonal(3)),
                                            {Rational(4), Rational(-1), Rational(9)});
    Ten3<Rational> expect(3, 3, 3);
    expect(0, 0, 0) = Rational(1); // c^1_{11} = phi_{311}
    expect(1, 0, 1) = expect(1, 1, 0) = Rational(1);
    expect(2, 0, 2) = expect(2, 2, 0) = Rational(1);
    expect(2, 1, 1) = Rational(1);
    CHECK(sc.c == expect);

    // e_1 is the unity of this algebra: c^k_{1j} = delta^k_j
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            CHECK(sc.c(k, 0, j) == (k == j ? Rational(1) : Rational(0)));
}

TEST_CASE("lower-index symmetry is structural") {
    std::mt19937 g(71);
    for (int t = 0; t < 10; ++t) {
        Polynomial phi = oracle::rand_polynomial(g, 3, 5, 12);
        MetricMatrix eta = oracle::rand_sym_metric(g, 3);
        auto sc = structure_constants<Rational>(phi, metric_view<Rational>(eta.inverse()),
                                                oracle::rand_point(g, 3));
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(sc.c(k, i, j) == sc.c(k, j, i));
    }
}

TEST_CASE("associativity and invariance on the certified solution") {
    std::mt19937 g(72);
    for (int t = 0; t < 10; ++t) {
        std::vector<Rational> pt = oracle::rand_point(g, 3);
        Ten3<Rational> c = golden_c(pt);
        CHECK(associativity_residual(c).value == Rational(0));
        CHECK(invariance_residual(c, metric_view<Rational>(fixtures::golden_eta().inverse())).value ==
              Rational(0));
    }
}

TEST_CASE("perturbed potential breaks associativity at a generic point") {
    std::vector<Rational> pt = {Rational(1, 2), Rational(-1, 3), Rational(2, 5)};
    auto sc = structure_constants<Rational>(fixtures::perturbed_phi(Rational(1, 100)),
                                            metric_view<Rational>(fixtures::golden_eta()), pt);
    CHECK(associativity_residual(sc.c).value > Rational(0));
    CHECK(wdvv_residual(ThirdTensorEvaluator(fixtures::perturbed_phi(Rational(1, 100))),
                        metric_view<Rational>(fixtures::golden_eta()), pt)
              .value > Rational(0));
}

TEST_CASE("invariance residual vanishes identically for potentials") {
    // both pairings reduce to the fully symmetric third derivative
    std::mt19937 g(73);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + static_cast<int>(g() % 3);
        Polynomial phi = oracle::rand_polynomial(g, n, 5, 10);
        MetricMatrix eta_cov = oracle::rand_sym_metric(g, n);
        auto sc = structure_constants<Rational>(phi, metric_view<Rational>(eta_cov.inverse()),
                                                oracle::rand_point(g, n));
        CHECK(invariance_residual(sc.c, metric_view<Rational>(eta_cov)).value == Rational(0));
    }
}

TEST_CASE("broken-symmetry fixture has positive invariance residual") {
    // c^2_{11} = 1, all else zero, identity form: <e1 o e1, e2> = 1 but
    // <e1, e1 o e2> = 0
    Ten3<Rational> c(2, 2, 2);
    c(1, 0, 0) = Rational(1);
    MaxAbs<Rational> r = invariance_residual(c, metric_view<Rational>(MetricMatrix::identity(2)));
    CHECK(r.value == Rational(1));
}

TEST_CASE("wdvv residual closed forms") {
    Mat<Rational> id2 = metric_view<Rational>(MetricMatrix::identity(2));
    Polynomial quad(2);
    quad.add_term({2, 0}, Rational(5));
    CHECK(wdvv_residual(ThirdTensorEvaluator(quad), id2,
                        {Rational(3), Rational(-8)})
              .value == Rational(0));

    Polynomial sep(2);
    sep.add_term({3, 0}, Rational(1, 6));
    sep.add_term({0, 5}, Rational(1, 120));
    CHECK(wdvv_residual(ThirdTensorEvaluator(sep), id2, {Rational(1, 3), Rational(1, 7)}).value ==
          Rational(0));
}

TEST_CASE("associativity tensor is the metric-raised wdvv tensor") {
    // sum_s eta_{sc} Assoc(i,j,k; s) == W(i,j,c,k), so one vanishes iff
    // the other does
    std::mt19937 g(74);
    for (int t = 0; t < 15; ++t) {
        int n = 2 + static_cast<int>(g() % 2);
        Polynomial phi = oracle::rand_polynomial(g, n, 5, 10);
        MetricMatrix eta_cov = oracle::rand_sym_metric(g, n);
        MetricMatrix eta_contra = eta_cov.inverse();
        std::vector<Rational> pt = oracle::rand_point(g, n);
        Ten3<Rational> t3 = third_tensor(phi, pt);
        auto sc = structure_constants<Rational>(phi, metric_view<Rational>(eta_contra), pt);
        Ten4<Rational> assoc = associativity_residual_tensor(sc.c);
        Ten4<Rational> wdvv = wdvv_residual_tensor(t3, metric_view<Rational>(eta_contra));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int c = 0; c < n; ++c) {
                        Rational lowered(0);
                        for (int s = 0; s < n; ++s) lowered += eta_cov(s, c) * assoc(i, j, k, s);
                        CHECK(lowered == wdvv(i, j, c, k));
                    }
        CHECK(assoc.all_zero() == wdvv.all_zero());
    }
}

TEST_CASE("weingarten operators") {
    // psi all zero
    std::vector<Polynomial> zero = {Polynomial(2)};
    auto w0 = weingarten_operators<Rational>(zero, metric_view<Rational>(MetricMatrix::identity(2)),
                                             {Rational(0), Rational(0)});
    CHECK(w0.ops[0].max_abs() == Rational(0));

    // psi1 = 1/2 sum (u^i)^2 with the identity metric: A_1 = -I
    Polynomial round(3);
    round.add_term({2, 0, 0}, Rational(1, 2));
    round.add_term({0, 2, 0}, Rational(1, 2));
    round.add_term({0, 0, 2}, Rational(1, 2));
    auto w1 =
        weingarten_operators<Rational>({round}, metric_view<Rational>(MetricMatrix::identity(3)),
                                       {Rational(1), Rational(2), Rational(3)});
    CHECK(w1.ops[0] == Mat<Rational>::identity(3).scaled(Rational(-1)));
}

TEST_CASE("potential case ties weingarten operators to structure constants") {
    // (-A_alpha)^k_i equals c^k_{alpha i}
    std::mt19937 g(75);
    for (int t = 0; t < 10; ++t) {
        Polynomial phi = oracle::rand_polynomial(g, 3, 5, 12);
        MetricMatrix eta = oracle::rand_sym_metric(g, 3).inverse();
        std::vector<Rational> pt = oracle::rand_point(g, 3);
        auto sc = structure_constants<Rational>(phi, metric_view<Rational>(eta), pt);
        auto w = weingarten_operators<Rational>(gradient_potentials(phi),
                                                metric_view<Rational>(eta), pt);
        for (int a = 0; a < 3; ++a)
            for (int k = 0; k < 3; ++k)
                for (int i = 0; i < 3; ++i)
                    CHECK(Rational(0) - w.ops[a](k, i) == sc.c(k, a, i));
    }
}

TEST_CASE("weingarten commutator defect") {
    // a single operator commutes with itself
    Polynomial one(2);
    one.add_term({3, 0}, Rational(1, 2));
    auto w1 = weingarten_operators<Rational>({one}, metric_view<Rational>(MetricMatrix::identity(2)),
                                             {Rational(1), Rational(1)});
    CHECK(weingarten_commutator_defect(w1.ops).value == Rational(0));

    std::mt19937 g(76);
    for (int t = 0; t < 5; ++t) {
        std::vector<Rational> pt = oracle::rand_point(g, 3);
        // certified solution: flat normal connection forces commuting
        // operators, exactly
        auto ws = weingarten_operators<Rational>(gradient_potentials(fixtures::golden_phi()),
                                                 metric_view<Rational>(fixtures::golden_eta()), pt);
        CHECK(weingarten_commutator_defect(ws.ops).value == Rational(0));

        auto wp = weingarten_operators<Rational>(
            gradient_potentials(fixtures::perturbed_phi(Rational(1, 100))),
            metric_view<Rational>(fixtures::golden_eta()), pt);
        if (!(pt[0].is_zero() && pt[1].is_zero()))
            CHECK(weingarten_commutator_defect(wp.ops).value > Rational(0));
    }
}

TEST_CASE("adding a quadratic to the potential changes nothing") {
    std::mt19937 g(77);
    for (int t = 0; t < 10; ++t) {
        Polynomial phi = oracle::rand_polynomial(g, 3, 5, 10);
        Polynomial shift(3);
        shift.add_term({2, 0, 0}, oracle::rand_rational(g));
        shift.add_term({1, 1, 0}, oracle::rand_rational(g));
        shift.add_term({0, 0, 1}, oracle::rand_rational(g));
        shift.add_term({0, 0, 0}, oracle::rand_rational(g));
        MetricMatrix eta = oracle::rand_sym_metric(g, 3).inverse();
        std::vector<Rational> pt = oracle::rand_point(g, 3);
        auto a = structure_constants<Rational>(phi, metric_view<Rational>(eta), pt);
        auto b = structure_constants<Rational>(phi + shift, metric_view<Rational>(eta), pt);
        CHECK(a.c == b.c);
        CHECK(wdvv_residual(ThirdTensorEvaluator(phi), metric_view<Rational>(eta), pt).value ==
              wdvv_residual(ThirdTensorEvaluator(phi + shift), metric_view<Rational>(eta), pt).value);
    }
}

TEST_CASE("dimension mismatches are rejected") {
    Polynomial phi(3);
    phi.add_term({3, 0, 0}, Rational(1));
    CHECK_THROWS(structure_constants<Rational>(phi, metric_view<Rational>(MetricMatrix::identity(2)),
                                               {Rational(0), Rational(0), Rational(0)}));
    CHECK_THROWS(wdvv_residual(ThirdTensorEvaluator(phi),
                               metric_view<Rational>(MetricMatrix::identity(2)),
                               {Rational(0), Rational(0), Rational(0)}));
    std::vector<Polynomial> psi = {Polynomial(3)};
    CHECK_THROWS(weingarten_operators<Rational>(psi, metric_view<Rational>(MetricMatrix::identity(2)),
                                                {Rational(0), Rational(0)}));
}
