// Acceptance run: one PASS/FAIL line per criterion. Eigen and brute-force enumeration serve as
// independent oracles; the library is never used to check itself where an oracle is cheap.

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "artifact/constants.hpp"
#include "artifact/extend.hpp"
#include "artifact/spectra.hpp"
#include "artifact/verify.hpp"

namespace {

using namespace artifact;
using linalg::Matrix;
using linalg::Vec;
using setfn::Mask;
using setfn::SetTupleFunction;
using structures::WeightedGraph;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

int count_fail(const std::vector<verify::VerificationReport>& reps, std::string& first) {
    int fails = 0;
    for (const auto& r : reps)
        if (r.verdict == verify::Verdict::Fail) {
            if (fails++ == 0) first = r.id;
        }
    return fails;
}

Outcome suite_outcome(const std::string& name, std::size_t expected_min) {
    const auto reps = verify::run_inequality_suites(name, 42);
    std::string first;
    const int fails = count_fail(reps, first);
    Outcome o;
    o.pass = fails == 0 && reps.size() >= expected_min;
    o.detail = std::to_string(reps.size()) + " reports, " + std::to_string(fails) + " failed" +
               (fails ? " (first " + first + ")" : "");
    return o;
}

// ---------------------------------------------------------------- 1

Outcome indicator_consistency() {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 6), nn(1, 5), kk(1, 3);
    long long checked = 0;
    int bad = 0;
    for (int f_id = 0; f_id < 200; ++f_id) {
        const int n = nn(rng), k = kk(rng);
        const std::size_t size = std::size_t{1} << (n * k);
        std::vector<Rational> table(size);
        for (auto& v : table) v = Rational(num(rng), den(rng));
        const auto f = SetTupleFunction::from_table(n, k, table);
        std::vector<Mask> tuple(k);
        for (std::size_t idx = 0; idx < size; ++idx) {
            extend::RealTuple<Rational> xs;
            for (int l = 0; l < k; ++l) {
                tuple[l] = static_cast<Mask>((idx >> (l * n)) & setfn::full_mask(n));
                xs.push_back(extend::indicator_exact(n, tuple[l]));
            }
            ++checked;
            // an empty block is the zero vector: its stored entry must carry zero weight
            bool empty = false;
            for (Mask m : tuple) empty = empty || m == 0;
            const Rational want = empty ? Rational(0) : table[idx];
            if (!(extend::multilinear<Rational>(f, xs) == want)) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " tuples, " + std::to_string(bad) + " mismatches"};
}

// ---------------------------------------------------------------- 2

Outcome table_reproduction() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    const int n = 5;
    auto vec = [&](int len) {
        Vec x(len);
        for (double& e : x) e = u(rng);
        return x;
    };
    const auto g = verify::random_graph(n, 0.5, 7, true);
    std::vector<setfn::Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({e.i, e.j});
    const auto e_ab = setfn::edge_count(n, edges);
    const auto cst = setfn::constant_pair(n, Rational(3, 2));
    const auto prod = setfn::cardinality_product(n);
    const auto inter = setfn::intersection_count(n);
    double worst = 0;
    for (int s = 0; s < 100; ++s) {
        const Vec x = vec(n), y = vec(n);
        double ce = 0, sx = 0, sy = 0, dot = 0;
        for (const auto& e : g.edges()) ce += x[e.i] * y[e.j] + x[e.j] * y[e.i];
        for (int i = 0; i < n; ++i) sx += x[i], sy += y[i], dot += x[i] * y[i];
        const double mx = *std::max_element(x.begin(), x.end()), my = *std::max_element(y.begin(), y.end());
        worst = std::max(worst, std::abs(extend::multilinear<double>(e_ab, {x, y}) - ce));
        worst = std::max(worst, std::abs(extend::multilinear<double>(cst, {x, y}) - 1.5 * mx * my));
        worst = std::max(worst, std::abs(extend::multilinear<double>(prod, {x, y}) - sx * sy));
        worst = std::max(worst, std::abs(extend::multilinear<double>(inter, {x, y}) - dot));
    }
    const int m = 4;
    for (int k = 1; k <= 3; ++k) {
        const auto card = setfn::DisjointPairFunction::exact(m, k, [](std::span<const setfn::DisjointPair> t) {
            Rational r(1);
            for (const auto& p : t) r = r * Rational(std::popcount(p.plus | p.minus));
            return r;
        });
        const auto one = setfn::DisjointPairFunction::exact(m, k, [](std::span<const setfn::DisjointPair>) { return Rational(1); });
        for (int s = 0; s < 100; ++s) {
            extend::RealTuple<double> xs;
            double p1 = 1, pinf = 1;
            for (int l = 0; l < k; ++l) {
                xs.push_back(vec(m));
                p1 *= linalg::norm_p(xs.back(), 1);
                pinf *= linalg::norm_p(xs.back(), INFINITY);
            }
            worst = std::max(worst, std::abs(extend::multiple_integral<double>(card, xs) - p1));
            worst = std::max(worst, std::abs(extend::multiple_integral<double>(one, xs) - pinf));
        }
    }
    return {worst <= 1e-12, "6 rows (+k=1..3 for the integral rows), worst gap " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 3

Outcome k5_one_laplacian() {
    std::vector<structures::WeightedEdge> edges;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) edges.push_back({i, j, 1});
    const auto k5 = WeightedGraph::from_edges(5, edges);
    const auto tern = spectra::ternary_eigen_enumerate(spectra::graph_p_laplacian(k5, 1));
    std::vector<Rational> got;
    bool all_exact = true;
    for (const auto& e : tern.eigenvalues) {
        all_exact = all_exact && e.exact.has_value();
        if (e.exact) got.push_back(*e.exact);
    }
    const std::vector<Rational> want{Rational(0), Rational(3, 4), Rational(1)};
    const auto h2 = constants::k_way_cheeger(k5, 2), h3 = constants::k_way_cheeger(k5, 3);
    bool h_ok = h2.exact && *h2.exact == Rational(3, 4) && h3.exact && *h3.exact == Rational(1);
    for (int k = 4; k <= 5; ++k) {
        const auto hk = constants::k_way_cheeger(k5, k);
        h_ok = h_ok && hk.exact && *hk.exact == Rational(1);
    }
    // The eigenvalue 1 has multiplicity 2 (clique covering number 1), so lambda_4 = lambda_5 = 1 and
    // lambda_2 = lambda_3 = 3/4 among the five minimax eigenvalues.
    const Rational lambda3 = got.size() == 3 ? got[1] : Rational(-1);
    const bool strict = lambda3 < *h3.exact;
    Outcome o;
    o.pass = all_exact && got == want && h_ok && strict;
    o.detail = "eigenvalues {";
    for (std::size_t i = 0; i < got.size(); ++i) o.detail += (i ? ", " : "") + got[i].str();
    o.detail += "}, h2=" + h2.exact->str() + ", h3=" + h3.exact->str() + ", lambda3=" + lambda3.str() +
                (strict ? " < h3 recorded" : "");
    return o;
}

// ---------------------------------------------------------------- 4

// Zero-sum value min_p max_q p'Cq by enumerating equal-size supports of the row player.
double support_enumeration_value(const Matrix& c) {
    const int n = c.rows(), m = c.cols();
    double best = INFINITY;
    for (Mask rows = 1; rows < (Mask{1} << n); ++rows)
        for (Mask cols = 1; cols < (Mask{1} << m); ++cols) {
            const int r = std::popcount(rows);
            if (std::popcount(cols) != r) continue;
            std::vector<int> ri, ci;
            for (int i = 0; i < n; ++i)
                if ((rows >> i) & 1) ri.push_back(i);
            for (int j = 0; j < m; ++j)
                if ((cols >> j) & 1) ci.push_back(j);
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(r + 1, r + 1);
            Eigen::VectorXd b = Eigen::VectorXd::Zero(r + 1);
            for (int s = 0; s < r; ++s) {
                for (int t = 0; t < r; ++t) a(s, t) = c(ri[t], ci[s]);
                a(s, r) = -1;
            }
            for (int t = 0; t < r; ++t) a(r, t) = 1;
            b(r) = 1;
            Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
            if (lu.rank() < r + 1) continue;
            const Eigen::VectorXd sol = lu.solve(b);
            bool feasible = true;
            for (int t = 0; t < r; ++t) feasible = feasible && sol(t) >= -1e-12;
            if (!feasible) continue;
            double worst = -INFINITY;
            for (int j = 0; j < m; ++j) {
                double v = 0;
                for (int t = 0; t < r; ++t) v += sol(t) * c(ri[t], j);
                worst = std::max(worst, v);
            }
            best = std::min(best, worst);
        }
    return best;
}

Outcome saddle_transfer() {
    const auto f = setfn::edge_count(3, {{0, 1}, {1, 2}});
    const auto g = setfn::intersection_count(3);
    const auto d = verify::discrete_minimax(f, g);
    const auto c = verify::continuous_inf_sup(f, g);
    const double p3_gap = std::abs(c.value - std::sqrt(2.0));
    bool ok = d.min_max == 2 && d.max_min == 1 && p3_gap <= 1e-8;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + i % 3;
        Matrix cm(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) cm(a, b) = u(rng);
        const auto [pf, pg] = verify::payoff_game(cm);
        const double oracle = support_enumeration_value(cm);
        const double up = verify::continuous_inf_sup(pf, pg).value;
        const double down = verify::continuous_sup_inf(pf, pg).value;
        const double lp = verify::payoff_game_value(cm);
        worst = std::max({worst, std::abs(up - oracle), std::abs(down - oracle), std::abs(lp - oracle)});
    }
    ok = ok && worst <= 1e-6;
    return {ok, "P3 discrete (" + fmt("%g", d.min_max) + ", " + fmt("%g", d.max_min) + "), continuous " +
                    fmt("%.12f", c.value) + "; 20 games worst gap " + fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 5

int brute_clique(const WeightedGraph& g) {
    const int n = g.n();
    int best = 0;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        bool clique = true;
        for (int i = 0; i < n && clique; ++i)
            for (int j = i + 1; j < n && clique; ++j)
                if (((s >> i) & 1) && ((s >> j) & 1) && !g.adjacent(i, j)) clique = false;
        if (clique) best = std::max(best, std::popcount(s));
    }
    return best;
}

Outcome motzkin_straus() {
    double worst_below = 0, worst_above = -INFINITY;
    bool omega_ok = true;
    for (int i = 0; i < 20; ++i) {
        const int n = 3 + i % 6;
        const auto g = verify::random_graph(n, 0.5, 500 + i, false, false);
        const int omega = brute_clique(g);
        const auto r = constants::motzkin_straus(g, 42);
        const double target = 1.0 - 1.0 / omega;
        omega_ok = omega_ok && r.omega == omega;
        worst_below = std::max(worst_below, target - r.best);
        worst_above = std::max(worst_above, r.best - target);
    }
    return {omega_ok && worst_below <= 1e-6 && worst_above <= 1e-8,
            "max shortfall " + fmt("%.3g", worst_below) + ", max excess " + fmt("%.3g", worst_above)};
}

// ---------------------------------------------------------------- 6

bool strongly_connected(const Matrix& a) {
    const int n = a.rows();
    for (int s = 0; s < n; ++s) {
        std::vector<bool> seen(n, false);
        std::vector<int> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w)
                if (a(v, w) > 0 && !seen[w]) seen[w] = true, stack.push_back(w);
        }
        for (bool b : seen)
            if (!b) return false;
    }
    return true;
}

Outcome collatz_wielandt() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    bool certified = true;
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + i % 5;
        Matrix a(n, n);
        do {
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) a(r, c) = u(rng) < 0.3 ? 0.0 : u(rng);
        } while (!strongly_connected(a));
        const auto res = spectra::collatz_wielandt_max(a);
        const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(to_eigen(a)).eigenvalues();
        double rho = 0;
        for (int j = 0; j < ev.size(); ++j) rho = std::max(rho, std::abs(ev(j)));
        worst = std::max(worst, std::abs(res.lambda - rho));
        certified = certified && res.lower <= rho + 1e-9 && rho <= res.upper + 1e-9;
    }
    const auto p3 = spectra::collatz_wielandt_max(Matrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
    const double p3_gap = std::abs(p3.lambda - std::sqrt(2.0));
    return {certified && worst <= 1e-6 && p3_gap <= 1e-6,
            "worst Perron gap " + fmt("%.3g", worst) + ", P3 " + fmt("%.12f", p3.lambda)};
}

// ---------------------------------------------------------------- 7

double sign_vector_max(const Eigen::MatrixXd& t) {
    // max over s in {-1,1}^cols of ||t s||_2
    const int n = static_cast<int>(t.cols());
    double best = 0;
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
        Eigen::VectorXd x(n);
        for (int i = 0; i < n; ++i) x(i) = ((s >> i) & 1) ? 1.0 : -1.0;
        best = std::max(best, (t * x).norm());
    }
    return best;
}

Outcome duality() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0, worst_oracle = 0;
    for (int i = 0; i < 20; ++i) {
        Matrix t(3, 4);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c) t(r, c) = u(rng);
        const Eigen::MatrixXd te = to_eigen(t);
        const double sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(te).singularValues()(0);
        const double oracle_2inf = sign_vector_max(te);              // max ||Tx||_2 over the inf-ball
        const double oracle_12 = sign_vector_max(te.transpose());    // max ||T'y||_2 = max ||Tx||_1 / ||x||_2
        const std::vector<std::tuple<double, double, double>> cases = {
            {2, 2, sigma}, {2, INFINITY, oracle_2inf}, {1, 2, oracle_12}};
        for (const auto& [p, q, oracle] : cases) {
            const auto r = spectra::duality_spectrum_check(t, p, q, 42 + i);
            worst = std::max(worst, r.gap);
            worst_oracle = std::max({worst_oracle, std::abs(r.primal - oracle), std::abs(r.dual - oracle)});
        }
    }
    double inc_gap = 0;
    bool counts = true;
    for (int i = 0; i < 10; ++i) {
        const auto g = verify::random_graph(3 + i % 6, 0.5, 700 + i, true);
        const auto edges = g.edges();
        Matrix b(g.n(), static_cast<int>(edges.size()));  // oriented incidence, i -> j for i < j
        for (std::size_t e = 0; e < edges.size(); ++e) b(edges[e].i, static_cast<int>(e)) = 1, b(edges[e].j, static_cast<int>(e)) = -1;
        const auto s = spectra::incidence_spectra(b);
        counts = counts && s.same_count;
        inc_gap = std::max(inc_gap, s.gap);
        // oracle: nonzero eigenvalues of B B' from Eigen
        const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(to_eigen(b) * to_eigen(b).transpose()).eigenvalues();
        std::vector<double> nz;
        for (int j = 0; j < ev.size(); ++j)
            if (ev(j) > 1e-9) nz.push_back(ev(j));
        counts = counts && !nz.empty() && nz.size() == s.edge.size();
        for (std::size_t j = 0; j < nz.size() && j < s.edge.size(); ++j) inc_gap = std::max(inc_gap, std::abs(nz[j] - s.edge[j]));
    }
    return {worst <= 1e-5 && worst_oracle <= 1e-5 && counts && inc_gap <= 1e-9,
            "primal/dual gap " + fmt("%.3g", worst) + ", oracle gap " + fmt("%.3g", worst_oracle) +
                ", incidence gap " + fmt("%.3g", inc_gap)};
}

// ---------------------------------------------------------------- 8

Outcome cheeger() {
    const auto lib = suite_outcome("cheeger", 50);
    const auto chem = suite_outcome("chemical-cheeger", 10);
    // independent: brute-force conductance and Eigen's generalized solver on separate instances
    double worst = 0, solver_gap = 0;
    for (int i = 0; i < 50; ++i) {
        const int n = 3 + i % 8;
        const auto g = verify::random_graph(n, 0.5, 800 + i, true);
        const Vec deg = g.degrees();
        double total = 0;
        for (double v : deg) total += v;
        double h = INFINITY;
        for (Mask a = 1; a + 1 < (Mask{1} << n); ++a) {
            double cut = 0, vol = 0;
            for (int x = 0; x < n; ++x) {
                if (!((a >> x) & 1)) continue;
                vol += deg[x];
                for (int y = 0; y < n; ++y)
                    if (!((a >> y) & 1)) cut += g.weight(x, y);
            }
            h = std::min(h, cut / std::min(vol, total - vol));
        }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g.laplacian()),
                                                                      to_eigen(linalg::diagonal_matrix(deg)));
        const double l2 = es.eigenvalues()(1);
        const double ours = spectra::quadratic_pair_spectrum(g.laplacian(), linalg::diagonal_matrix(deg)).values[1];
        solver_gap = std::max(solver_gap, std::abs(l2 - ours));
        worst = std::max({worst, h * h / 2 - l2, l2 - 2 * h});
        worst = std::max(worst, std::abs(constants::cheeger(g).value - h));
    }
    Outcome o;
    o.pass = lib.pass && chem.pass && worst <= 1e-8 && solver_gap <= 1e-9;
    o.detail = "graphs: " + lib.detail + "; chemical: " + chem.detail + "; oracle violation " +
               fmt("%.3g", std::max(0.0, worst)) + ", solver gap " + fmt("%.3g", solver_gap);
    return o;
}

// ---------------------------------------------------------------- 13

Outcome full_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto a = verify::run_full_suite(42);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto b = verify::run_full_suite(42);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
        same = a[i].id == b[i].id && a[i].verdict == b[i].verdict && a[i].lhs == b[i].lhs && a[i].rhs == b[i].rhs &&
               a[i].gap == b[i].gap && a[i].values == b[i].values;
    std::string first;
    const int fails = count_fail(a, first);
    return {same && fails == 0 && secs < 300,
            std::to_string(a.size()) + " reports, " + std::to_string(fails) + " failed, " + fmt("%.1f s", secs) +
                (same ? ", rerun identical" : ", rerun differs")};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double limit_s;  // 0 = no runtime limit
    };
    const std::vector<Criterion> criteria = {
        {"indicator consistency", indicator_consistency, 10},
        {"table reproduction", table_reproduction, 0},
        {"K5 1-Laplacian", k5_one_laplacian, 30},
        {"saddle transfer", saddle_transfer, 0},
        {"Motzkin-Straus", motzkin_straus, 0},
        {"Collatz-Wielandt", collatz_wielandt, 0},
        {"duality", duality, 0},
        {"Cheeger suite", cheeger, 0},
        {"simplicial identity", [] { return suite_outcome("simplicial-identity", 180); }, 0},
        {"Huang", [] { return suite_outcome("huang", 6); }, 60},
        {"inertia/nodal", [] { return suite_outcome("nodal-inertia", 30); }, 0},
        {"bipartite spectra", [] { return suite_outcome("bipartite", 20); }, 0},
        {"full verify suite", full_suite, 0},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].limit_s > 0 && secs >= criteria[i].limit_s) {
            o.pass = false;
            o.detail += " (over the time limit)";
        }
        failed += !o.pass;
        std::printf("%s %2zu %-22s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs, o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
