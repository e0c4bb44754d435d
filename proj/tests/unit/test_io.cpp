#include "doctest.h"

#include <random>
#include <sstream>

#include "io.hpp"

using namespace artifact;
using namespace artifact::io;
using namespace artifact::structures;

namespace {

template <typename T>
T round_trip(const T& s, Kind kind) {
    std::ostringstream out;
    emit(out, s);
    std::istringstream in(out.str());
    return std::get<T>(parse(in, kind));
}

template <typename T>
T parse_text(const std::string& text, Kind kind) {
    std::istringstream in(text);
    return std::get<T>(parse(in, kind));
}

int error_line(const std::string& text, Kind kind) {
    std::istringstream in(text);
    try {
        parse(in, kind);
    } catch (const parse_error& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("parse examples") {
    const auto p3 = parse_text<WeightedGraph>("3\n1 2 1\n2 3 1\n", Kind::Graph);
    CHECK(p3.n() == 3);
    CHECK(p3.edges().size() == 2);
    CHECK(p3.adjacent(0, 1));
    CHECK(p3.adjacent(1, 2));
    const auto tri = parse_text<SimplicialComplex>("1 2 3\n", Kind::Complex);
    CHECK(tri.simplices(0).size() == 3);
    CHECK(tri.simplices(1).size() == 3);
    CHECK(tri.simplices(2).size() == 1);
    const auto t = parse_text<SymmetricTensor>("3 3\n1 2 3 1.0\n", Kind::Tensor);
    CHECK(t.expanded_nonzeros() == 6);
    CHECK(t.get({2, 0, 1}) == 1);
    const auto chem = parse_text<ChemicalHypergraph>("# reaction\nin: 1 2 | out: 3\n", Kind::ChemicalHypergraph);
    CHECK(chem.n() == 3);
    CHECK(chem.edges()[0].in == 0b011);
    CHECK(chem.edges()[0].out == 0b100);
    const auto f = parse_text<setfn::SetTupleFunction>("1 3\n5 1/2\n2 3\n", Kind::SetfnTable);
    CHECK(f.eval_exact({0b101}) == Rational(1, 2));
    CHECK(f.eval_exact({0b010}) == Rational(3));
    CHECK(f.eval_exact({0b001}) == Rational(0));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("3\n1 2 1\n2 x 1\n", Kind::Graph) == 3);
    CHECK(error_line("3\n1 4 1\n", Kind::Graph) == 2);
    CHECK(error_line("2 3\n1 2 4\n", Kind::UniformHypergraph) == 2);
    CHECK(error_line("in: 1 2 out: 3\n", Kind::ChemicalHypergraph) == 1);
    CHECK(error_line("1 1 2\n", Kind::Complex) == 1);
    CHECK_THROWS_AS(parse_kind("hypergraph?"), std::invalid_argument);
}

TEST_CASE("round trips for every kind") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.1, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + trial % 4;
        WeightedGraph g(n);
        SignedGraph s(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() % 2) {
                    g.set_weight(i, j, u(rng));
                    s.set_weight(i, j, rng() % 2 ? u(rng) : -u(rng));
                }
        CHECK(round_trip(g, Kind::Graph).weights() == g.weights());
        CHECK(round_trip(s, Kind::SignedGraph).weights() == s.weights());

        std::vector<ChemicalEdge> es;
        for (int e = 0; e < n; ++e) {
            const int a = static_cast<int>(rng() % n), b = (a + 1 + static_cast<int>(rng() % (n - 1))) % n;
            es.push_back({setfn::Mask{1} << a, (setfn::Mask{1} << b) | (rng() % 2 ? setfn::Mask{1} << a : 0)});
        }
        const ChemicalHypergraph h(n, es);
        const auto h2 = round_trip(h, Kind::ChemicalHypergraph);
        REQUIRE(h2.edges().size() == es.size());
        CHECK(h2.n() == n);
        for (std::size_t e = 0; e < es.size(); ++e) {
            CHECK(h2.edges()[e].in == es[e].in);
            CHECK(h2.edges()[e].out == es[e].out);
        }

        UniformHypergraph uh{n, 3, {}};
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    if (rng() % 3 == 0) uh.edges.push_back({a, b, c});
        const auto uh2 = round_trip(uh, Kind::UniformHypergraph);
        CHECK(uh2.n == uh.n);
        CHECK(uh2.k == uh.k);
        CHECK(uh2.edges == uh.edges);

        SymmetricTensor t(3, n);
        for (int e = 0; e < 4; ++e)
            t.set({static_cast<int>(rng() % n), static_cast<int>(rng() % n), static_cast<int>(rng() % n)}, u(rng));
        const auto t2 = round_trip(t, Kind::Tensor);
        CHECK(t2.order() == 3);
        CHECK(t2.dim() == n);
        CHECK(t2.entries() == t.entries());

        std::vector<std::vector<int>> cleaned{{0, 1, 2}};
        for (int a = 0; a + 1 < n; ++a)
            if (rng() % 2) cleaned.push_back({a, a + 1});
        cleaned.push_back({n - 1});
        const auto k = SimplicialComplex::from_maximal(cleaned);
        const auto k2 = round_trip(k, Kind::Complex);
        CHECK(k2.maximal() == k.maximal());
        for (int d = 0; d <= k.dim(); ++d) CHECK(k2.simplices(d) == k.simplices(d));

        const int kk = 1 + trial % 2;
        std::vector<Rational> table(std::size_t{1} << (n * kk));
        for (auto& v : table) v = rng() % 3 ? Rational(0) : Rational(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 5));
        const auto f = setfn::SetTupleFunction::from_table(n, kk, table);
        const auto f2 = round_trip(f, Kind::SetfnTable);
        CHECK(f2.n() == n);
        CHECK(f2.k() == kk);
        CHECK(f2.exact_table() == f.exact_table());
    }
}

TEST_CASE("real-valued set function tables round trip bit for bit") {
    const auto f = setfn::SetTupleFunction::real(2, 1, [](std::span<const setfn::Mask> t) { return t[0] * 0.1; });
    const auto f2 = round_trip(f, Kind::SetfnTable);
    CHECK(f2.real_table() == f.real_table());
}

TEST_CASE("rational literals") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_FALSE(parse_rational("1e-30").has_value());
}
