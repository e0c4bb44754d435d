#include "doctest.h"

#include <cmath>
#include <random>

#include "artifact/extend.hpp"
#include "artifact/spectra.hpp"

using namespace artifact;
using namespace artifact::spectra;
using structures::WeightedGraph;

namespace {

WeightedGraph graph_of(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<structures::WeightedEdge> es;
    for (auto [i, j] : edges) es.push_back({i, j, 1});
    return WeightedGraph::from_edges(n, es);
}

WeightedGraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.push_back({i, j});
    return graph_of(n, e);
}

WeightedGraph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
    return graph_of(n, e);
}

WeightedGraph random_connected(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.5, 2);
    std::vector<structures::WeightedEdge> es;
    for (int i = 1; i < n; ++i) es.push_back({static_cast<int>(rng() % i), i, u(rng)});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng() % 3 == 0) es.push_back({i, j, u(rng)});
    WeightedGraph g(n);
    for (const auto& e : es) g.set_weight(e.i, e.j, g.weight(e.i, e.j) + e.w);
    return g;
}

std::vector<Rational> exact_set(const TernaryResult& r) {
    std::vector<Rational> out;
    for (const auto& e : r.eigenvalues) {
        REQUIRE(e.exact.has_value());
        out.push_back(*e.exact);
    }
    return out;
}

Matrix normalized_laplacian_pair_d(const WeightedGraph& g) { return linalg::diagonal_matrix(g.degrees()); }

}  // namespace

TEST_CASE("quadratic pair spectra") {
    const auto p3 = graph_of(3, {{0, 1}, {1, 2}});
    const auto s = quadratic_pair_spectrum(p3.laplacian(), normalized_laplacian_pair_d(p3));
    CHECK(s.values[0] == doctest::Approx(0).epsilon(1e-12));
    CHECK(s.values[1] == doctest::Approx(1).epsilon(1e-12));
    CHECK(s.values[2] == doctest::Approx(2).epsilon(1e-12));
    CHECK(s.max_residual <= 1e-9);
    const auto id = quadratic_pair_spectrum(Matrix::identity(4), Matrix::identity(4));
    for (double v : id.values) CHECK(v == doctest::Approx(1));
    const auto adj = quadratic_pair_spectrum(p3.weights(), Matrix::identity(3));
    CHECK(adj.values[0] == doctest::Approx(-std::sqrt(2.0)));
    CHECK(std::abs(adj.values[1]) <= 1e-12);
    CHECK(adj.values[2] == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS(quadratic_pair_spectrum(Matrix::identity(2), Matrix{{1, 0}, {0, -1}}));
}

TEST_CASE("Euler identity and the ratio law") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-1, 1);
    for (double p : {1.5, 2.0, 3.0}) {
        const auto g = random_connected(rng, 5);
        const auto pair = graph_p_laplacian(g, p);
        Vec x(5);
        for (double& v : x) v = u(rng);
        const Vec gf = pair.one_subgradient_F(x), gg = pair.one_subgradient_G(x);
        CHECK(linalg::dot(gf, x) == doctest::Approx(p * pair.F(x)).epsilon(1e-9));
        CHECK(linalg::dot(gg, x) == doctest::Approx(p * pair.G(x)).epsilon(1e-9));
        Vec tx = x;
        for (double& v : tx) v *= 2.5;
        CHECK(pair.F(tx) == doctest::Approx(std::pow(2.5, p) * pair.F(x)).epsilon(1e-12));
    }
    // eigenvectors of the quadratic pair: residual zero and lambda = F/G
    const auto g = random_connected(rng, 6);
    const auto spec = quadratic_pair_spectrum(g.laplacian(), linalg::diagonal_matrix(g.degrees()));
    const auto pair = graph_p_laplacian(g, 2);
    for (int i = 0; i < 6; ++i) {
        Vec v(6);
        for (int r = 0; r < 6; ++r) v[r] = spec.vectors(r, i);
        CHECK(eigen_residual(pair, spec.values[i], v) <= 1e-10);
        CHECK(pair.F(v) / pair.G(v) == doctest::Approx(spec.values[i]).epsilon(1e-10));
    }
    Vec x(6);
    for (double& v : x) v = u(rng);
    CHECK(eigen_residual(pair, pair.F(x) / pair.G(x), x) > 1e-6);
}

TEST_CASE("eigen residual on the K5 1-Laplacian") {
    const auto pair = graph_p_laplacian(complete(5), 1);
    const Vec x = extend::indicator(5, 0b00011);
    CHECK(pair.F(x) / pair.G(x) == doctest::Approx(0.75));
    CHECK(eigen_residual(pair, 0.75, x) <= 1e-9);
    CHECK(eigen_residual(pair, 0.6, x) > 1e-6);
}

TEST_CASE("ternary enumeration") {
    const auto k5 = ternary_eigen_enumerate(graph_p_laplacian(complete(5), 1));
    CHECK(exact_set(k5) == std::vector<Rational>{Rational(0), Rational(3, 4), Rational(1)});
    CHECK(k5.exact_domain);
    const auto edge = ternary_eigen_enumerate(graph_p_laplacian(graph_of(2, {{0, 1}}), 1));
    CHECK(exact_set(edge) == std::vector<Rational>{Rational(0), Rational(1)});
    for (int n : {4, 6}) {
        const auto plain = ternary_eigen_enumerate(graph_p_laplacian(cycle(n), 1));
        const auto signless = ternary_eigen_enumerate(graph_signless_p_laplacian(cycle(n), 1));
        CHECK(exact_set(plain) == exact_set(signless));
    }
    for (const auto& e : k5.eigenvalues) CHECK(e.residual <= 1e-9);
    CHECK_THROWS(ternary_eigen_enumerate(graph_p_laplacian(complete(9), 1)));
}

TEST_CASE("odd linear bijections leave the spectrum unchanged") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1, 1);
    const auto g = random_connected(rng, 5);
    Matrix m(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = u(rng) + (i == j ? 3 : 0);
    const Matrix a = g.laplacian(), b = linalg::diagonal_matrix(g.degrees());
    const auto s1 = quadratic_pair_spectrum(a, b);
    const auto s2 = quadratic_pair_spectrum(m.transpose() * a * m, m.transpose() * b * m);
    for (int i = 0; i < 5; ++i) CHECK(s1.values[i] == doctest::Approx(s2.values[i]).epsilon(1e-9));
    // signed permutation on the K5 1-Laplacian: ternary points map to ternary points
    Matrix sp(5, 5);
    const int perm[] = {3, 0, 4, 1, 2};
    for (int i = 0; i < 5; ++i) sp(i, perm[i]) = i % 2 ? -1 : 1;
    const auto pair = graph_p_laplacian(complete(5), 1);
    const auto composed = compose_linear(pair, sp);
    std::vector<double> got, want;
    for (const auto& e : ternary_eigen_enumerate(composed).eigenvalues) got.push_back(e.lambda);
    for (const auto& e : ternary_eigen_enumerate(pair).eigenvalues) want.push_back(e.lambda);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("projection onto a direction") {
    const Vec w{1, 2, 3}, ones{1, 1, 1}, x{4, 1, 0};
    const auto mean = g_pi_projection(w, 2, ones, x);
    CHECK(mean.t == doctest::Approx((4 + 2 + 0) / 6.0));
    // weighted median with weights (1, 2, 2.5) on values (4, 1, 0): half the mass 2.75 is passed at 1
    const auto med = g_pi_projection(Vec{1, 2, 2.5}, 1, ones, x);
    CHECK(med.t == doctest::Approx(1));
    CHECK(med.value == doctest::Approx(3 + 2.5));
    const auto centered = g_pi_projection(w, 2, ones, Vec{1, 1, -1});
    CHECK(std::abs(centered.t) <= 1e-12);
    // p = 3: the minimizer satisfies the zero-derivative condition
    const auto cubic = g_pi_projection(w, 3, ones, x);
    double deriv = 0;
    for (int i = 0; i < 3; ++i) {
        const double r = x[i] - cubic.t;
        deriv += w[i] * 3 * r * std::abs(r);
    }
    CHECK(std::abs(deriv) <= 1e-6);
}

TEST_CASE("Dinkelbach iteration") {
    const auto c4 = cycle(4);
    const auto pair = graph_p_laplacian(c4, 2);
    const auto proj = weighted_power_projection(c4.degrees(), 2, Vec(4, 1.0));
    const auto r = dinkelbach_multistart(pair, proj, {Vec{1, 0, -1, 0.5}});
    CHECK(r.estimate.lambda == doctest::Approx(1).epsilon(1e-6));
    std::mt19937_64 rng(43);
    for (int t = 0; t < 5; ++t) {
        const auto g = random_connected(rng, 6);
        const auto pg = graph_p_laplacian(g, 2);
        const auto lam2 = quadratic_pair_spectrum(g.laplacian(), linalg::diagonal_matrix(g.degrees())).values[1];
        DinkelbachParams params;
        params.random_starts = 16;
        const auto res = dinkelbach_multistart(pg, weighted_power_projection(g.degrees(), 2, Vec(6, 1.0)), {}, params);
        CHECK(res.estimate.lambda == doctest::Approx(lam2).epsilon(1e-6));
        for (std::size_t k = 1; k < res.ratios.size(); ++k) CHECK(res.ratios[k] <= res.ratios[k - 1] + 1e-12);
    }
    // exact eigenvector start: the ratio does not move
    const auto spec = quadratic_pair_spectrum(c4.laplacian(), linalg::diagonal_matrix(c4.degrees()));
    Vec v(4);
    for (int i = 0; i < 4; ++i) v[i] = spec.vectors(i, 1);
    const auto fixed = dinkelbach_ratiodca(pair, proj, v);
    for (double q : fixed.ratios) CHECK(q == doctest::Approx(fixed.ratios.front()).epsilon(1e-12));
}

TEST_CASE("second eigenvalue characterizations") {
    // two components: triangle and an edge
    const auto g = graph_of(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
    const Matrix l = g.laplacian(), d = linalg::diagonal_matrix(g.degrees());
    Matrix pi(5, 2);
    for (int i = 0; i < 3; ++i) pi(i, 0) = 1;
    for (int i = 3; i < 5; ++i) pi(i, 1) = 1;
    const auto rep = second_eigen_characterizations(l, d, pi);
    const auto spec = quadratic_pair_spectrum(l, d);
    CHECK(rep.hypotheses_ok);
    CHECK(rep.deflation == doctest::Approx(spec.values[2]).epsilon(1e-9));
    CHECK(rep.gap <= 1e-8);
    std::mt19937_64 rng(44);
    const auto h = random_connected(rng, 6);
    Matrix ones(6, 1);
    for (int i = 0; i < 6; ++i) ones(i, 0) = 1;
    const auto rep2 = second_eigen_characterizations(h.laplacian(), linalg::diagonal_matrix(h.degrees()), ones);
    CHECK(rep2.deflation ==
          doctest::Approx(quadratic_pair_spectrum(h.laplacian(), linalg::diagonal_matrix(h.degrees())).values[1]).epsilon(1e-9));
    CHECK(rep2.mountain_pass == doctest::Approx(rep2.deflation).epsilon(1e-8));
    CHECK(rep2.gap <= 1e-8);
}

TEST_CASE("Collatz-Wielandt iteration") {
    const auto p3 = collatz_wielandt_max(Matrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
    CHECK(p3.lambda == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(p3.upper - p3.lower <= 1e-10);
    const auto swap = collatz_wielandt_max(Matrix{{0, 1}, {1, 0}});
    CHECK(swap.lambda == doctest::Approx(1).epsilon(1e-12));
    structures::UniformHypergraph h{3, 3, {{0, 1, 2}}};
    const auto [t, deg] = structures::adjacency_tensor(h);
    const auto cw = collatz_wielandt_max(t, Vec(3, 1.0));
    CHECK(cw.lambda == doctest::Approx(2).epsilon(1e-10));
    CHECK(cw.upper - cw.lower <= 1e-9);
    for (double v : cw.x) CHECK(v == doctest::Approx(cw.x[0]));
    CHECK_THROWS(collatz_wielandt_max(Matrix{{0, -1}, {1, 0}}));
}

TEST_CASE("duality of operator norms") {
    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix t(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t(i, j) = u(rng);
        const auto r22 = duality_spectrum_check(t, 2, 2);
        CHECK(r22.exact);
        CHECK(r22.gap <= 1e-12);
        // max ||T x||_2 over the cube is attained at a sign vector
        double oracle = 0;
        for (int s = 0; s < 8; ++s) {
            Vec x{s & 1 ? 1.0 : -1.0, s & 2 ? 1.0 : -1.0, s & 4 ? 1.0 : -1.0};
            oracle = std::max(oracle, linalg::norm_p(linalg::multiply(t, x), 2));
        }
        const auto r2inf = duality_spectrum_check(t, 2, INFINITY);
        CHECK(r2inf.primal == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(r2inf.gap <= 1e-6);
    }
    // incidence matrix of C4: vertex and edge Laplacians share their nonzero spectrum
    Matrix b(4, 4);  // oriented incidence of C4
    for (int e = 0; e < 4; ++e) b(e, e) = 1, b((e + 1) % 4, e) = -1;
    const auto inc = incidence_spectra(b);
    CHECK(inc.same_count);
    CHECK(inc.gap <= 1e-9);
    const auto lap = quadratic_pair_spectrum(cycle(4).laplacian(), Matrix::identity(4));
    REQUIRE(inc.vertex.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(inc.vertex[i] == doctest::Approx(lap.values[i + 1]).epsilon(1e-10));
}

TEST_CASE("dual inner problem") {
    const auto zero = dual_inner_problem_check(1, Matrix::identity(3), Vec(3, 0.0), Ball::L2);
    CHECK(std::abs(zero.primal) <= 1e-9);
    CHECK(std::abs(zero.dual) <= 1e-9);
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> u(-1, 1);
    std::normal_distribution<double> gauss;
    Matrix t(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = u(rng);
    const Vec uvec{u(rng), u(rng), u(rng)};
    const auto mn = dual_inner_problem_check(2, t, uvec, Ball::L2);
    CHECK(mn.gap <= 1e-6);
    const auto mx = dual_inner_problem_check(2, t, uvec, Ball::L2, true);
    CHECK(mx.gap <= 1e-6);
    // sampling oracle for the max over the unit ball (a convex function peaks on the sphere)
    double best = -INFINITY;
    for (int s = 0; s < 200000; ++s) {
        Vec x{gauss(rng), gauss(rng), gauss(rng)};
        const double nx = linalg::norm_p(x, 2);
        for (double& v : x) v /= nx;
        best = std::max(best, linalg::norm_p(linalg::multiply(t, x), 2) - linalg::dot(x, uvec));
    }
    CHECK(mx.primal >= best - 1e-9);
    CHECK(mx.primal - best <= 1e-3);
}

TEST_CASE("lattice points attain the optimum of piecewise linear ratios") {
    // F/G with F, G Lovasz extensions of positive set functions is constant on rays and
    // linear-fractional on each sorting cone, so its maximum over the orthant sits on an indicator.
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3;
        std::vector<Rational> ft(8), gt(8);
        for (int a = 1; a < 8; ++a) ft[a] = Rational(1 + static_cast<int>(rng() % 9)), gt[a] = Rational(1 + static_cast<int>(rng() % 9));
        const auto f = setfn::SetTupleFunction::from_table(n, 1, ft), g = setfn::SetTupleFunction::from_table(n, 1, gt);
        auto ratio = [&](const Vec& x) { return extend::lovasz<double>(f, x) / extend::lovasz<double>(g, x); };
        double lattice = 0;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b)
                for (int c = 0; c < 7; ++c)
                    if (a + b + c > 0) lattice = std::max(lattice, ratio(Vec{double(a), double(b), double(c)}));
        double indicators = 0;
        for (int a = 1; a < 8; ++a) indicators = std::max(indicators, ft[a].to_double() / gt[a].to_double());
        CHECK(lattice == doctest::Approx(indicators).epsilon(1e-12));
        for (int s = 0; s < 2000; ++s) CHECK(ratio(Vec{u(rng), u(rng), u(rng)}) <= indicators + 1e-12);
    }
}
