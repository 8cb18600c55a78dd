#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "flatsub/bonnet.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace flatsub;

namespace {

ProblemSpec golden_small(int grid) {
    ProblemSpec spec = fixtures::load("wdvv3.json");
    spec.domain.grid = grid;
    return spec;
}

} // namespace

TEST_CASE("initial frame spans the block form exactly") {
    auto [f, G] = initial_frame(MetricMatrix::identity(2), MetricMatrix::identity(1));
    CHECK(f.r == std::vector<double>{0, 0, 0});
    CHECK(f.tangents[0] == std::vector<double>{1, 0, 0});
    CHECK(f.normals[0] == std::vector<double>{0, 0, 1});
    CHECK(G.g == Mat<double>::identity(3));

    // blockdiag of two antidiagonal 3x3 blocks: each block contributes
    // (2,1), so the ambient form has signature (4,2)
    MetricMatrix anti = MetricMatrix::antidiagonal(3);
    CHECK(anti.signature() == std::pair<int, int>{2, 1});
    Mat<Rational> block(6, 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            block(i, j) = anti(i, j);
            block(3 + i, 3 + j) = anti(i, j);
        }
    CHECK(MetricMatrix(block).signature() == std::pair<int, int>{4, 2});

    std::mt19937 g(93);
    for (int t = 0; t < 5; ++t) {
        MetricMatrix eta = oracle::rand_sym_metric(g, 3);
        MetricMatrix mu = oracle::rand_sym_metric(g, 2);
        auto [fr, Gr] = initial_frame(eta, mu);
        // identity basis: the frame Gram matrix IS the ambient form
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(Gr.inner(fr.tangents[i], fr.tangents[j]) ==
                      doctest::Approx(eta(i, j).to_double()).epsilon(1e-15));
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < 3; ++i) CHECK(Gr.inner(fr.normals[a], fr.tangents[i]) == 0.0);
    }

    Mat<Rational> sing(2, 2);
    sing(0, 0) = Rational(1);
    sing(0, 1) = Rational(1);
    sing(1, 0) = Rational(1);
    sing(1, 1) = Rational(1);
    CHECK_THROWS_AS(initial_frame(MetricMatrix(sing), MetricMatrix::identity(1)),
                    DegenerateMetricError);
}

TEST_CASE("zero forms reconstruct the flat plane") {
    ProblemSpec spec;
    spec.n = 2;
    spec.l = 1;
    spec.eta_contra = MetricMatrix::identity(2);
    spec.eta_cov = MetricMatrix::identity(2);
    spec.mu_contra = MetricMatrix::identity(1);
    spec.mu_cov = MetricMatrix::identity(1);
    spec.psi = {Polynomial(2)};
    spec.domain.base = {Rational(0), Rational(0)};
    spec.domain.half_width = Rational(1);
    spec.domain.grid = 9;

    IntegrateOptions opt;
    opt.substeps = 4;
    ImmersionGrid grid = integrate_frame(spec, opt);
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);
    for (size_t node = 0; node < grid.frames.size(); ++node) {
        const Frame& f = grid.frames[node];
        std::vector<double> u = grid.grid.point_double(node);
        CHECK(std::fabs(f.r[0] - u[0]) < 1e-14);
        CHECK(std::fabs(f.r[1] - u[1]) < 1e-14);
        CHECK(std::fabs(f.r[2]) < 1e-14);
        CHECK(f.tangents[0] == f0.tangents[0]);
        CHECK(f.normals[0] == f0.normals[0]);
    }
    CHECK(verify_induced_metric(grid, G, spec.eta_cov) < 1e-14);
    CHECK(verify_second_forms(grid, G, spec.psi) < 1e-14);
    CHECK(verify_torsion(grid, G) == 0.0); // single normal: vacuous
}

TEST_CASE("curvature one reconstructs the unit circle") {
    ProblemSpec spec = fixtures::load("circle.json", ArithmeticMode::floating);
    IntegrateOptions opt;
    opt.substeps = 8;
    ImmersionGrid grid = integrate_frame(spec, opt);
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);

    // closed form: r(u) = (sin u, 1 - cos u), center (0, 1)
    for (size_t node = 0; node < grid.frames.size(); ++node) {
        double u = grid.grid.point_double(node)[0];
        const Frame& f = grid.frames[node];
        CHECK(std::fabs(f.r[0] - std::sin(u)) < 1e-8);
        CHECK(std::fabs(f.r[1] - (1 - std::cos(u))) < 1e-8);
        double radius = std::hypot(f.r[0], f.r[1] - 1.0);
        CHECK(std::fabs(radius - 1.0) < 1e-6);
    }
    CHECK(verify_induced_metric(grid, G, spec.eta_cov) < 1e-8);
    CHECK(verify_second_forms(grid, G, spec.psi) < 1e-4);
}

TEST_CASE("rank-1 sheet passes every verification") {
    ProblemSpec spec = fixtures::load("rank1_sheet.json", ArithmeticMode::floating);
    IntegrateOptions opt;
    opt.substeps = 8;
    ImmersionGrid grid = integrate_frame(spec, opt);
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);
    CHECK(verify_induced_metric(grid, G, spec.eta_cov) < 1e-10);
    CHECK(verify_second_forms(grid, G, spec.psi) < 1e-4);
    CHECK(gram_drift(grid, G) < 1e-10);

    IntegrateOptions rev = opt;
    rev.axis_order = {1, 0};
    ImmersionGrid grid2 = integrate_frame(spec, rev);
    CHECK(frame_difference(grid, grid2) < 1e-10);
}

TEST_CASE("certified solution on a coarse grid: all verifications within scale") {
    ProblemSpec spec = golden_small(9);
    IntegrateOptions opt;
    opt.substeps = 8;
    ImmersionGrid grid = integrate_frame(spec, opt);
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);
    CHECK(verify_induced_metric(grid, G, spec.eta_cov) < 1e-10);
    CHECK(verify_torsion(grid, G) < 2e-3);      // h = 1/16: O(h^2) finite differences
    CHECK(verify_second_forms(grid, G, spec.psi) < 2e-3);
    CHECK(gram_drift(grid, G) < 1e-10);

    IntegrateOptions rev = opt;
    rev.axis_order = {2, 1, 0};
    ImmersionGrid grid2 = integrate_frame(spec, rev);
    CHECK(frame_difference(grid, grid2) < 1e-10);
}

TEST_CASE("path dependence separates the perturbed fixture") {
    ProblemSpec spec = fixtures::load("wdvv3_perturbed_01.json", ArithmeticMode::floating);
    spec.domain.grid = 9;
    IntegrateOptions a, b;
    a.substeps = 8;
    b.substeps = 8;
    b.axis_order = {2, 1, 0};
    ImmersionGrid g1 = integrate_frame(spec, a);
    ImmersionGrid g2 = integrate_frame(spec, b);
    double worst_far = 0;
    for (size_t node = 0; node < g1.frames.size(); ++node) {
        std::vector<double> u = g1.grid.point_double(node);
        double linf = 0;
        for (double x : u) linf = std::max(linf, std::fabs(x));
        if (linf >= 1.0 - 1e-12) worst_far = std::max(worst_far, frame_difference_at(g1, g2, node));
    }
    CHECK(worst_far > 1e-4);
}

TEST_CASE("gram drift falls at the integrator order in the substep count") {
    ProblemSpec spec = fixtures::load("wdvv3_perturbed_01.json", ArithmeticMode::floating);
    spec.domain.grid = 5;
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);
    IntegrateOptions o1, o2;
    o1.substeps = 2;
    o2.substeps = 4;
    double d1 = gram_drift(integrate_frame(spec, o1), G);
    double d2 = gram_drift(integrate_frame(spec, o2), G);
    CHECK(d1 > 0);
    CHECK(d2 > 0);
    CHECK(std::log2(d1 / d2) > 3.0);
}

TEST_CASE("motions of the initial frame transport through the construction") {
    ProblemSpec spec = golden_small(5);
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);
    int amb = spec.n + spec.l;

    // G-orthogonal map via the Cayley transform of a G-skew generator
    std::mt19937 g(94);
    std::uniform_real_distribution<double> d(-0.3, 0.3);
    Mat<double> K(amb, amb);
    for (int i = 0; i < amb; ++i)
        for (int j = i + 1; j < amb; ++j) {
            double v = d(g);
            K(i, j) = v;
            K(j, i) = -v;
        }
    Mat<double> Ginv = invert_metric_float(G.g);
    Mat<double> S = Ginv * K;
    Mat<double> I = Mat<double>::identity(amb);
    Mat<double> A(amb, amb), B(amb, amb);
    for (int i = 0; i < amb; ++i)
        for (int j = 0; j < amb; ++j) {
            A(i, j) = I(i, j) - 0.5 * S(i, j);
            B(i, j) = I(i, j) + 0.5 * S(i, j);
        }
    Mat<double> Q = invert_metric_float(A) * B;

    // confirm Q preserves G
    Mat<double> QtGQ = Q.transposed() * G.g * Q;
    for (int i = 0; i < amb; ++i)
        for (int j = 0; j < amb; ++j) CHECK(std::fabs(QtGQ(i, j) - G.g(i, j)) < 1e-12);

    std::vector<double> shift = {0.3, -0.2, 0.5, 0.1, 0.0, -0.4};
    Frame moved = f0;
    auto apply = [&](const std::vector<double>& v) {
        std::vector<double> out(amb, 0.0);
        for (int i = 0; i < amb; ++i)
            for (int j = 0; j < amb; ++j) out[i] += Q(i, j) * v[j];
        return out;
    };
    moved.r = shift;
    for (auto& t : moved.tangents) t = apply(t);
    for (auto& nn : moved.normals) nn = apply(nn);

    IntegrateOptions base_opt;
    base_opt.substeps = 8;
    ImmersionGrid plain = integrate_frame(spec, base_opt);
    IntegrateOptions moved_opt = base_opt;
    moved_opt.initial = moved;
    ImmersionGrid transformed = integrate_frame(spec, moved_opt);

    for (size_t node = 0; node < plain.frames.size(); ++node) {
        const Frame& a = plain.frames[node];
        const Frame& b = transformed.frames[node];
        std::vector<double> qr = apply(a.r);
        for (int c = 0; c < amb; ++c) CHECK(std::fabs(b.r[c] - (qr[c] + shift[c])) < 1e-9);
        for (int i = 0; i < spec.n; ++i) {
            std::vector<double> qt = apply(a.tangents[i]);
            for (int c = 0; c < amb; ++c) CHECK(std::fabs(b.tangents[i][c] - qt[c]) < 1e-9);
        }
        for (int q = 0; q < spec.l; ++q) {
            std::vector<double> qn = apply(a.normals[q]);
            for (int c = 0; c < amb; ++c) CHECK(std::fabs(b.normals[q][c] - qn[c]) < 1e-9);
        }
    }
}

TEST_CASE("integration rejects bad grids and orders") {
    ProblemSpec spec = golden_small(4); // even
    CHECK_THROWS_AS(integrate_frame(spec, {}), SpecError);
    ProblemSpec ok = golden_small(5);
    IntegrateOptions bad_order;
    bad_order.axis_order = {0, 1, 1};
    CHECK_THROWS_AS(integrate_frame(ok, bad_order), SpecError);
    IntegrateOptions bad_sub;
    bad_sub.substeps = 0;
    CHECK_THROWS_AS(integrate_frame(ok, bad_sub), SpecError);

    ProblemSpec tiny = golden_small(1);
    ImmersionGrid g = integrate_frame(tiny, {});
    auto [f0, G] = initial_frame(tiny.eta_cov, tiny.mu_cov);
    CHECK_THROWS_AS(verify_second_forms(g, G, tiny.psi), SpecError);
    CHECK_THROWS_AS(verify_torsion(g, G), SpecError);
}

TEST_CASE("csv export shape") {
    ProblemSpec spec = fixtures::load("circle.json", ArithmeticMode::floating);
    spec.domain.grid = 9;
    IntegrateOptions opt;
    opt.substeps = 4;
    ImmersionGrid grid = integrate_frame(spec, opt);
    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);

    std::string path = "/tmp/flatsub_test_circle.csv";
    write_point_cloud_csv(grid, G, path, {true, true});
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "u1,r1,r2,t1_1,t1_2,n1_1,n1_2,gram_drift");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 9);
}
