#include "doctest.h"

#include <cmath>
#include <map>
#include <random>

#include "artifact/extend.hpp"

using namespace artifact;
using namespace artifact::extend;
using setfn::Edge;
using setfn::full_mask;

namespace {

// Threshold-integral form: x_min f(V) + sum over consecutive distinct values v_j < v_{j+1}
// of (v_{j+1} - v_j) f({i : x_i > v_j}).
Rational threshold_oracle(const SetTupleFunction& f, const std::vector<Rational>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<Rational> v(x);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    Rational total = v[0] * f.eval_exact({full_mask(n)});
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        Mask above = 0;
        for (int i = 0; i < n; ++i)
            if (v[j] < x[i]) above |= Mask{1} << i;
        total += (v[j + 1] - v[j]) * f.eval_exact({above});
    }
    return total;
}

std::vector<Rational> random_rationals(std::mt19937_64& rng, int n, int range = 5) {
    std::vector<Rational> x(n);
    for (auto& v : x) v = Rational(static_cast<int>(rng() % (2 * range + 1)) - range, 1 + static_cast<int>(rng() % 3));
    return x;
}

double norm1(const std::vector<double>& x) {
    double s = 0;
    for (double v : x) s += std::abs(v);
    return s;
}

SetTupleFunction random_table(std::mt19937_64& rng, int n, int k) {
    std::vector<Rational> t(std::size_t{1} << (n * k));
    for (auto& v : t) v = Rational(static_cast<int>(rng() % 11) - 5, 1 + static_cast<int>(rng() % 4));
    return SetTupleFunction::from_table(n, k, t);
}

}  // namespace

TEST_CASE("Lovasz extension of the path cut function") {
    const std::vector<Edge> p3 = {{0, 1}, {1, 2}};
    const auto cut = setfn::cut_function(3, p3);
    CHECK(lovasz<double>(cut, {0.5, 1, 0}) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(lovasz<Rational>(cut, {Rational(1, 2), Rational(1), Rational(0)}) == Rational(3, 2));
    CHECK(lovasz<double>(cut, {2, 2, 2}) == 0);
    CHECK(lovasz<double>(setfn::cardinality(3), {2, 2, 2}) == 6);  // t * f(V)
}

TEST_CASE("Lovasz extension matches the threshold integral") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto f = random_table(rng, n, 1);
        const auto x = random_rationals(rng, n);
        CHECK(lovasz<Rational>(f, x) == threshold_oracle(f, x));
    }
}

TEST_CASE("disjoint pair extension") {
    const auto card = DisjointPairFunction::exact(2, 1, [](std::span<const DisjointPair> t) {
        return Rational(std::popcount(t[0].plus | t[0].minus));
    });
    const auto one = DisjointPairFunction::exact(2, 1, [](std::span<const DisjointPair>) { return Rational(1); });
    CHECK(disjoint_pair_lovasz<Rational>(card, {Rational(1), Rational(-2)}) == Rational(3));
    CHECK(disjoint_pair_lovasz<Rational>(one, {Rational(1), Rational(-2)}) == Rational(2));
    // signed indicators reproduce the table on every disjoint pair
    std::mt19937_64 rng(22);
    const int n = 3;
    std::map<std::pair<Mask, Mask>, Rational> vals;
    const auto f = DisjointPairFunction::exact(n, 1, [&](std::span<const DisjointPair> t) {
        auto it = vals.find({t[0].plus, t[0].minus});
        if (it == vals.end()) it = vals.emplace(std::pair{t[0].plus, t[0].minus}, Rational(static_cast<int>(rng() % 9) - 4)).first;
        return it->second;
    });
    for (Mask a = 0; a <= full_mask(n); ++a)
        for (Mask b = 0; b <= full_mask(n); ++b) {
            if (a & b || (a | b) == 0) continue;
            const DisjointPair p{a, b};
            const DisjointPair t[] = {p};
            CHECK(disjoint_pair_lovasz<Rational>(f, signed_indicator_exact(n, p)) == f.eval_exact(t));
        }
}

TEST_CASE("multilinear extension table rows") {
    CHECK(multilinear<double>(setfn::cardinality_product(2), {{1, 2}, {3, 0}}) == 9);
    CHECK(multilinear<double>(setfn::intersection_count(3), {{1, 1, 0}, {1, 1, 0}}) == 2);
}

TEST_CASE("multilinear extension reproduces the table at indicators") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3), k = 1 + static_cast<int>(rng() % 3);
        const auto f = random_table(rng, n, k);
        for (std::size_t idx = 0; idx < f.exact_table().size(); ++idx) {
            RealTuple<Rational> xs;
            bool empty = false;
            for (int l = 0; l < k; ++l) {
                const Mask m = static_cast<Mask>((idx >> (l * n)) & full_mask(n));
                empty = empty || m == 0;
                xs.push_back(indicator_exact(n, m));
            }
            CHECK(multilinear<Rational>(f, xs) == (empty ? Rational(0) : f.exact_table()[idx]));
        }
    }
}

TEST_CASE("positive homogeneity and tie independence") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3), k = 1 + static_cast<int>(rng() % 2);
        const auto f = random_table(rng, n, k);
        RealTuple<Rational> xs;
        for (int l = 0; l < k; ++l) xs.push_back(random_rationals(rng, n, 2));  // small range forces ties
        const Rational t(7, 3);
        RealTuple<Rational> scaled = xs;
        Rational tk(1);
        for (auto& b : scaled)
            for (auto& v : b) v = v * t;
        for (int l = 0; l < k; ++l) tk = tk * t;
        CHECK(multilinear<Rational>(f, scaled) == tk * multilinear<Rational>(f, xs));
        // relabel the ground set: ties are broken in a different order, the value must not move
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto g = SetTupleFunction::exact(n, k, [&](std::span<const Mask> tup) {
            std::vector<Mask> back(tup.size());
            // g(B) = f(pi^{-1} B)
            for (std::size_t l = 0; l < tup.size(); ++l) {
                Mask m = 0;
                for (int i = 0; i < n; ++i)
                    if ((tup[l] >> perm[i]) & 1) m |= Mask{1} << i;
                back[l] = m;
            }
            return f.eval_exact(back);
        });
        RealTuple<Rational> ys(k, std::vector<Rational>(n));
        for (int l = 0; l < k; ++l)
            for (int i = 0; i < n; ++i) ys[l][perm[i]] = xs[l][i];
        CHECK(multilinear<Rational>(g, ys) == multilinear<Rational>(f, xs));
    }
}

TEST_CASE("modular functions give extensions linear in each block") {
    std::mt19937_64 rng(25);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 2;
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && rng() % 2) edges.push_back({i, j});
        const auto f = setfn::edge_count(n, edges);
        std::vector<double> x(n), x2(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = u(rng), x2[i] = u(rng), y[i] = u(rng);
        const double a = u(rng), b = u(rng);
        std::vector<double> mix(n);
        for (int i = 0; i < n; ++i) mix[i] = a * x[i] + b * x2[i];
        CHECK(multilinear<double>(f, {mix, y}) ==
              doctest::Approx(a * multilinear<double>(f, {x, y}) + b * multilinear<double>(f, {x2, y})).epsilon(1e-12));
    }
    // a non-modular first component breaks linearity somewhere
    const auto cut = setfn::cut_function(2, {{0, 1}});
    CHECK(lovasz<double>(cut, {1, 0}) + lovasz<double>(cut, {0, 1}) != lovasz<double>(cut, {1, 1}));
}

TEST_CASE("separable products factor into Lovasz extensions") {
    std::mt19937_64 rng(26);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto f1 = random_table(rng, n, 1), f2 = random_table(rng, n, 1);
        const auto prod = SetTupleFunction::exact(n, 2, [&](std::span<const Mask> t) {
            return f1.eval_exact({t[0]}) * f2.eval_exact({t[1]});
        });
        const auto x = random_rationals(rng, n), y = random_rationals(rng, n);
        CHECK(multilinear<Rational>(prod, {x, y}) == lovasz<Rational>(f1, x) * lovasz<Rational>(f2, y));
    }
}

TEST_CASE("fixing all blocks but one leaves a Lovasz extension") {
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const auto f = random_table(rng, n, 2);
        const auto x = random_rationals(rng, n), y = random_rationals(rng, n);
        const auto induced = SetTupleFunction::exact(n, 1, [&](std::span<const Mask> t) {
            return t[0] == 0 ? Rational(0) : multilinear<Rational>(f, {indicator_exact(n, t[0]), y});
        });
        CHECK(multilinear<Rational>(f, {x, y}) == lovasz<Rational>(induced, x));
    }
}

TEST_CASE("multiple integral extension") {
    std::mt19937_64 rng(28);
    std::uniform_real_distribution<double> u(-2, 2);
    const int n = 3;
    const auto prod = DisjointPairFunction::exact(n, 2, [](std::span<const DisjointPair> t) {
        return Rational(std::popcount(t[0].plus | t[0].minus) * std::popcount(t[1].plus | t[1].minus));
    });
    for (int s = 0; s < 20; ++s) {
        std::vector<double> x(n), y(n);
        for (int i = 0; i < n; ++i) x[i] = u(rng), y[i] = u(rng);
        CHECK(multiple_integral<double>(prod, {x, y}) ==
              doctest::Approx(norm1(x) * norm1(y)).epsilon(1e-12));
    }
}

TEST_CASE("multiple integral agrees with the multilinear extension on the nonnegative orthant") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto f = random_table(rng, n, 2);
        const auto g = DisjointPairFunction::exact(n, 2, [&](std::span<const DisjointPair> t) {
            return f.eval_exact({t[0].plus, t[1].plus});
        });
        RealTuple<Rational> xs(2, std::vector<Rational>(n));
        for (auto& b : xs)
            for (auto& v : b) v = Rational(static_cast<int>(rng() % 6), 1 + static_cast<int>(rng() % 3));
        CHECK(multiple_integral<Rational>(g, xs) == multilinear<Rational>(f, xs));
    }
}

TEST_CASE("diagonal extension") {
    const auto h = setfn::hyperedge_count(3, 3, {{0, 1, 2}});
    CHECK(diagonal<double>(h, {1, 1, 1}) == 6);
    // modular in each component: the diagonal is the quadratic form of the coefficient matrix
    std::mt19937_64 rng(30);
    std::uniform_real_distribution<double> u(-1, 1);
    const int n = 4;
    std::vector<std::vector<int>> c(n, std::vector<int>(n));
    for (auto& row : c)
        for (int& v : row) v = static_cast<int>(rng() % 5) - 2;
    const auto f = SetTupleFunction::exact(n, 2, [&](std::span<const Mask> t) {
        long long s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (((t[0] >> i) & 1) && ((t[1] >> j) & 1)) s += c[i][j];
        return Rational(s);
    });
    for (int s = 0; s < 20; ++s) {
        std::vector<double> x(n);
        for (double& v : x) v = u(rng);
        double poly = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) poly += c[i][j] * x[i] * x[j];
        CHECK(diagonal<double>(f, x) == doctest::Approx(poly).epsilon(1e-12));
    }
    for (Mask a = 1; a < 16; ++a) CHECK(diagonal<Rational>(f, indicator_exact(n, a)) == f.eval_exact({a, a}));
}

TEST_CASE("comonotonicity") {
    CHECK(comonotone_check({{1, 2}, {0, 5}}));
    CHECK_FALSE(comonotone_check({{1, 2}, {5, 0}}));
    const int n = 4;
    for (Mask a = 0; a < 16; ++a)
        for (Mask b = 0; b < 16; ++b) {
            const bool nested = (a & b) == a || (a & b) == b;
            CHECK(comonotone_check({indicator(n, a), indicator(n, b)}) == nested);
        }
    CHECK(absolutely_comonotone_check({{1, -2}, {1, -3}}));
    CHECK_FALSE(absolutely_comonotone_check({{1, -2}, {1, 3}}));
}

TEST_CASE("perfect domain pair membership") {
    CHECK(perfect_pair_membership({{0, 1, 2}, {0, 2, 3}}, Family::Chain));
    CHECK_FALSE(perfect_pair_membership({{0, 1, 2}, {2, 1, 0}}, Family::Chain));
    auto nonempty = [](std::span<const Mask> t) {
        for (Mask m : t)
            if (m == 0) return false;
        return true;
    };
    CHECK(perfect_pair_membership({{1, 2, 3}, {3, 1, 2}}, Family::Custom, nonempty));
    CHECK(perfect_pair_membership({{1, 2}, {1, 2}}, Family::Diagonal));
    CHECK_FALSE(perfect_pair_membership({{1, 2}, {2, 1}}, Family::Diagonal));
}

TEST_CASE("level set decomposition is nested") {
    const std::vector<double> x{0.3, -1, 0.3, 2};
    const auto d = decompose<double>(x);
    CHECK(d.upper[0] == full_mask(4));
    for (std::size_t i = 1; i < d.upper.size(); ++i) {
        CHECK((d.upper[i] & d.upper[i - 1]) == d.upper[i]);
        CHECK(d.sorted[i - 1] <= d.sorted[i]);
    }
    CHECK(d.weight[0] == -1);
}
