#include "artifact/constants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "artifact/errors.hpp"

namespace artifact::constants {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Mask bit(int i) { return Mask{1} << i; }

void require_size(int n, int cap, const char* what) {
    if (n > cap) throw cap_exceeded(std::string(what) + ": instance exceeds the enumeration cap");
}

bool integral(double v) { return std::abs(v - std::round(v)) < 1e-12 && std::abs(v) < 1e15; }

bool integral_weights(const WeightedGraph& g) {
    for (const auto& e : g.edges())
        if (!integral(e.w)) return false;
    return true;
}

std::optional<Rational> exact_ratio(double num, double den) {
    if (!integral(num) || !integral(den) || den == 0) return std::nullopt;
    return Rational(static_cast<std::int64_t>(std::llround(num)), static_cast<std::int64_t>(std::llround(den)));
}

// cut and volume of every subset, built by adding the lowest vertex.
struct SubsetTables {
    std::vector<double> cut, vol;
};

SubsetTables subset_tables(const WeightedGraph& g) {
    const int n = g.n();
    const std::size_t total = std::size_t{1} << n;
    SubsetTables t{std::vector<double>(total, 0.0), std::vector<double>(total, 0.0)};
    const Vec deg = g.degrees();
    for (std::size_t m = 1; m < total; ++m) {
        const int v = std::countr_zero(m);
        const std::size_t prev = m & (m - 1);
        double inside = 0;
        for (std::size_t r = prev; r; r &= r - 1) inside += g.weight(v, std::countr_zero(r));
        t.cut[m] = t.cut[prev] + deg[v] - 2 * inside;
        t.vol[m] = t.vol[prev] + deg[v];
    }
    return t;
}

struct DisjointSearch {
    double value = kInf;
    std::vector<Mask> blocks;
    long long visited = 0;
};

// min over k disjoint nonempty blocks of max_i val[block_i], blocks in increasing order of their lowest element.
DisjointSearch min_max_disjoint(int n, int k, const std::vector<double>& val) {
    DisjointSearch out;
    const Mask full = setfn::full_mask(n);
    std::vector<Mask> stack;
    std::function<void(int, Mask, int, double)> dfs = [&](int level, Mask used, int prev, double cur) {
        if (level == k) {
            ++out.visited;
            if (cur < out.value) {
                out.value = cur;
                out.blocks = stack;
            }
            return;
        }
        const Mask free = full & ~used;
        for (int b = prev + 1; b < n; ++b) {
            if (!((free >> b) & 1)) continue;
            const Mask above = free & ~((bit(b) << 1) - 1);
            if (std::popcount(above) < k - level - 1) break;
            // enumerate every subset of the free vertices above b
            for (Mask sub = above;; sub = (sub - 1) & above) {
                const Mask s = sub | bit(b);
                const double v = std::max(cur, val[s]);
                if (v < out.value) {
                    stack.push_back(s);
                    dfs(level + 1, used | s, b, v);
                    stack.pop_back();
                } else {
                    ++out.visited;
                }
                if (sub == 0) break;
            }
        }
    };
    dfs(0, 0, -1, -kInf);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- graph Cheeger constants

double conductance(const WeightedGraph& g, Mask a) {
    double cut = 0, va = 0, vb = 0;
    for (int i = 0; i < g.n(); ++i) ((a >> i) & 1 ? va : vb) += g.degree(i);
    for (const auto& e : g.edges())
        if (((a >> e.i) & 1) != ((a >> e.j) & 1)) cut += e.w;
    const double den = std::min(va, vb);
    return den > 0 ? cut / den : kInf;
}

double expansion(const WeightedGraph& g, Mask s) {
    double cut = 0, vol = 0;
    for (int i = 0; i < g.n(); ++i)
        if ((s >> i) & 1) vol += g.degree(i);
    for (const auto& e : g.edges())
        if (((s >> e.i) & 1) != ((s >> e.j) & 1)) cut += e.w;
    return vol > 0 ? cut / vol : kInf;
}

double bipartiteness_ratio(const WeightedGraph& g, Mask s, Mask t) {
    if (s & t) throw std::invalid_argument("bipartiteness_ratio: sets must be disjoint");
    double e_st = 0, vol = 0;
    for (int i = 0; i < g.n(); ++i)
        if (((s | t) >> i) & 1) vol += g.degree(i);
    for (const auto& e : g.edges()) {
        const bool a = ((s >> e.i) & 1) && ((t >> e.j) & 1);
        const bool b = ((t >> e.i) & 1) && ((s >> e.j) & 1);
        if (a || b) e_st += e.w;
    }
    return vol > 0 ? 2 * e_st / vol : -kInf;
}

CheegerReport cheeger(const WeightedGraph& g) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("cheeger: need at least two vertices");
    require_size(n, kCheegerMaxN, "cheeger");
    CheegerReport r;
    r.variant = "cheeger";
    const bool exact = integral_weights(g);
    const Mask full = setfn::full_mask(n);
    if (!g.connected()) {
        // the component of vertex 0 has no boundary
        Mask comp = 1;
        for (bool grew = true; grew;) {
            grew = false;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (((comp >> i) & 1) && !((comp >> j) & 1) && g.adjacent(i, j)) {
                        comp |= bit(j);
                        grew = true;
                    }
        }
        r.value = 0;
        r.sets = {comp};
        if (exact) r.exact = Rational(0);
        return r;
    }
    const SubsetTables t = subset_tables(g);
    double best_num = 0, best_den = 0;
    r.value = kInf;
    // A and V\A give the same ratio; keep the side without vertex n-1
    for (Mask a = 1; a < bit(n - 1); ++a) {
        ++r.enumerated;
        const double den = std::min(t.vol[a], t.vol[full & ~a]);
        if (!(den > 0)) continue;
        const double v = t.cut[a] / den;
        if (v < r.value) {
            r.value = v;
            r.sets = {a};
            best_num = t.cut[a];
            best_den = den;
        }
    }
    if (exact) r.exact = exact_ratio(best_num, best_den);
    return r;
}

CheegerReport k_way_cheeger(const WeightedGraph& g, int k) {
    const int n = g.n();
    if (k < 1 || k > n) throw std::invalid_argument("k_way_cheeger: need 1 <= k <= n");
    require_size(n, kKWayMaxN, "k_way_cheeger");
    const SubsetTables t = subset_tables(g);
    std::vector<double> val(t.cut.size(), kInf);
    for (std::size_t m = 1; m < val.size(); ++m)
        if (t.vol[m] > 0) val[m] = t.cut[m] / t.vol[m];
    const DisjointSearch s = min_max_disjoint(n, k, val);
    CheegerReport r;
    r.variant = "k-way";
    r.value = s.value;
    r.sets = s.blocks;
    r.enumerated = s.visited;
    if (integral_weights(g) && !r.sets.empty()) {
        std::optional<Rational> best;
        for (Mask m : r.sets) {
            auto q = exact_ratio(t.cut[m], t.vol[m]);
            if (!q) return r;
            if (!best || *best < *q) best = q;
        }
        r.exact = best;
    }
    return r;
}

CheegerReport dual_cheeger_k(const WeightedGraph& g, int k) {
    const int n = g.n();
    if (k < 1 || 2 * k > n) throw std::invalid_argument("dual_cheeger_k: need 1 <= 2k <= n");
    require_size(n, kKWayMaxN, "dual_cheeger_k");
    const SubsetTables t = subset_tables(g);
    // best split of every U, stored negated for the min-max search
    std::vector<double> neg(t.cut.size(), kInf);
    std::vector<Mask> split(t.cut.size(), 0);
    std::vector<double> num(t.cut.size(), 0.0);
    long long count = 0;
    for (std::size_t u = 1; u < neg.size(); ++u) {
        if (!(t.vol[u] > 0) || std::popcount(u) < 2) continue;
        const Mask low = static_cast<Mask>(u & (~u + 1));
        const Mask rest = static_cast<Mask>(u) & ~low;
        // S contains the lowest vertex of U and T = U \ S is nonempty
        for (Mask sub = rest;; sub = (sub - 1) & rest) {
            const Mask s = sub | low;
            const Mask tt = static_cast<Mask>(u) & ~s;
            ++count;
            if (tt != 0) {
                const double two_e = t.cut[s] + t.cut[tt] - t.cut[u];
                const double v = two_e / t.vol[u];
                if (-v < neg[u]) {
                    neg[u] = -v;
                    split[u] = s;
                    num[u] = two_e;
                }
            }
            if (sub == 0) break;
        }
    }
    const DisjointSearch s = min_max_disjoint(n, k, neg);
    CheegerReport r;
    r.variant = "dual-k-way";
    r.value = -s.value;
    r.enumerated = count + s.visited;
    for (Mask u : s.blocks) {
        r.sets.push_back(split[u]);
        r.sets.push_back(u & ~split[u]);
    }
    if (integral_weights(g) && !s.blocks.empty()) {
        std::optional<Rational> worst;
        for (Mask u : s.blocks) {
            auto q = exact_ratio(num[u], t.vol[u]);
            if (!q) return r;
            if (!worst || *q < *worst) worst = q;
        }
        r.exact = worst;
    }
    return r;
}

// ---------------------------------------------------------------- maxcut

double maxcut_continuous_form(const WeightedGraph& g, const Vec& x, const Vec& y) {
    const int n = g.n();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw std::invalid_argument("maxcut_continuous_form: vector length != n");
    double xi = 0, yi = 0, s = 0;
    for (int i = 0; i < n; ++i) {
        if (x[i] < 0 || y[i] < 0) throw std::invalid_argument("maxcut_continuous_form: entries must be >= 0");
        if (x[i] * y[i] != 0) throw std::invalid_argument("maxcut_continuous_form: supports must be disjoint");
        xi = std::max(xi, x[i]);
        yi = std::max(yi, y[i]);
    }
    if (xi == 0 || yi == 0) return 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += g.weight(i, j) * x[i] * y[j];
    return s / (xi * yi);
}

MaxcutReport maxcut(const WeightedGraph& g, std::uint64_t seed, int samples) {
    const int n = g.n();
    if (n < 2) throw std::invalid_argument("maxcut: need at least two vertices");
    require_size(n, kMaxcutMaxN, "maxcut");
    MaxcutReport r;
    // Gray code over subsets of the first n-1 vertices
    std::vector<char> side(n, 0);
    double cut = 0;
    r.value = 0;
    r.witness = 0;
    Mask cur = 0;
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    for (std::uint64_t step = 1; step < steps; ++step) {
        const int v = std::countr_zero(step);
        double same = 0, other = 0;
        for (int u = 0; u < n; ++u) {
            if (u == v) continue;
            (side[u] == side[v] ? same : other) += g.weight(u, v);
        }
        cut += same - other;
        side[v] ^= 1;
        cur ^= bit(v);
        if (cut > r.value) {
            r.value = cut;
            r.witness = cur;
        }
    }
    Vec x(n, 0.0), y(n, 0.0);
    for (int i = 0; i < n; ++i) ((r.witness >> i) & 1 ? x : y)[i] = 1;
    r.continuous_at_witness = maxcut_continuous_form(g, x, y);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> which(0, 2);
    r.samples = samples;
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < n; ++i) {
            x[i] = y[i] = 0;
            const int w = which(rng);
            if (w == 0) x[i] = unit(rng);
            if (w == 1) y[i] = unit(rng);
        }
        const double v = maxcut_continuous_form(g, x, y);
        r.continuous_sample_max = std::max(r.continuous_sample_max, v);
        if (v > r.value * (1 + 1e-12) + 1e-12) r.samples_bounded = false;
    }
    return r;
}

// ---------------------------------------------------------------- independence and cliques

namespace {

struct CliqueSearch {
    int best = 0;
    Mask witness = 0;
};

void expand_clique(const std::vector<Mask>& adj, Mask r, Mask p, CliqueSearch& s) {
    if (p == 0) {
        if (std::popcount(r) > s.best) {
            s.best = std::popcount(r);
            s.witness = r;
        }
        return;
    }
    while (p) {
        if (std::popcount(r) + std::popcount(p) <= s.best) return;
        const int v = std::countr_zero(p);
        expand_clique(adj, r | bit(v), p & adj[v], s);
        p &= ~bit(v);
    }
}

CliqueSearch max_clique(const std::vector<Mask>& adj, int n) {
    CliqueSearch s;
    expand_clique(adj, 0, setfn::full_mask(n), s);
    return s;
}

}  // namespace

IndependenceReport independence_clique(const WeightedGraph& g) {
    const int n = g.n();
    require_size(n, kCliqueMaxN, "independence_clique");
    std::vector<Mask> adj(n, 0), co(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) (g.adjacent(i, j) ? adj : co)[i] |= bit(j);
    IndependenceReport r;
    const auto c = max_clique(adj, n);
    const auto a = max_clique(co, n);
    r.omega = c.best;
    r.clique_witness = c.witness;
    r.alpha = a.best;
    r.independent_witness = a.witness;
    return r;
}

IndependenceReport independence_clique(const UniformHypergraph& h) {
    const int n = h.n;
    require_size(n, kCliqueMaxN, "independence_clique");
    std::vector<Mask> edges;
    std::vector<std::vector<Mask>> by_vertex(n);
    std::unordered_set<Mask> edge_set;
    for (const auto& e : h.edges) {
        Mask m = 0;
        for (int v : e) m |= bit(v);
        edges.push_back(m);
        edge_set.insert(m);
        for (int v : e) by_vertex[v].push_back(m);
    }
    IndependenceReport r;
    // independent sets: include/exclude with a size bound
    std::function<void(int, Mask)> indep = [&](int v, Mask cur) {
        if (std::popcount(cur) + (n - v) <= r.alpha) return;
        if (v == n) {
            r.alpha = std::popcount(cur);
            r.independent_witness = cur;
            return;
        }
        const Mask with = cur | bit(v);
        bool ok = true;
        for (Mask e : by_vertex[v])
            if ((e & ~with) == 0) ok = false;
        if (ok) indep(v + 1, with);
        indep(v + 1, cur);
    };
    indep(0, 0);
    // cliques: every k-subset must be an edge; adding v needs every (k-1)-subset of cur
    const int k = h.k;
    std::function<bool(Mask, int, int, Mask)> all_edges = [&](Mask cur, int need, int from, Mask acc) -> bool {
        if (need == 0) return edge_set.count(acc) > 0;
        for (int u = from; u < n; ++u)
            if ((cur >> u) & 1)
                if (!all_edges(cur, need - 1, u + 1, acc | bit(u))) return false;
        return true;
    };
    std::function<void(int, Mask)> clique = [&](int v, Mask cur) {
        if (std::popcount(cur) + (n - v) <= r.omega) return;
        if (v == n) {
            r.omega = std::popcount(cur);
            r.clique_witness = cur;
            return;
        }
        if (std::popcount(cur) < k - 1 || all_edges(cur, k - 1, 0, bit(v))) clique(v + 1, cur | bit(v));
        clique(v + 1, cur);
    };
    clique(0, 0);
    return r;
}

LevelIndependenceReport lambda_level_independence(const spectra::HomogeneousPair& pair, double lambda, double tol,
                                                  std::uint64_t seed) {
    const int n = pair.n;
    require_size(n, kLevelIndependenceMaxN, "lambda_level_independence");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    auto level_ok = [&](const std::vector<Mask>& fam) {
        const int k = static_cast<int>(fam.size());
        auto test = [&](const std::vector<double>& c) {
            Vec x(n, 0.0);
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < n; ++i)
                    if ((fam[j] >> i) & 1) x[i] = c[j];
            const double g = pair.G(x);
            if (!(std::abs(g) > 1e-14)) return true;  // G = 0 points are excluded
            const double f = pair.F(x);
            return std::abs(f - lambda * g) <= tol * std::max({1.0, std::abs(f), std::abs(lambda * g)});
        };
        std::vector<double> c(k, 0.0);
        if (k <= 6) {
            long long total = 1;
            for (int j = 0; j < k; ++j) total *= 3;
            for (long long code = 1; code < total; ++code) {
                long long q = code;
                for (int j = 0; j < k; ++j) {
                    c[j] = static_cast<double>(q % 3) - 1;
                    q /= 3;
                }
                if (!test(c)) return false;
            }
        } else {
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    for (double sb : {1.0, -1.0}) {
                        std::fill(c.begin(), c.end(), 0.0);
                        c[a] = 1;
                        c[b] = sb;
                        if (!test(c)) return false;
                    }
        }
        for (int s = 0; s < 16; ++s) {
            for (double& e : c) e = nd(rng);
            if (!test(c)) return false;
        }
        return true;
    };
    // single blocks passing the test, grouped by lowest element
    std::vector<std::vector<Mask>> good(n);
    LevelIndependenceReport r;
    for (Mask m = 1; m <= setfn::full_mask(n); ++m)
        if (level_ok({m})) {
            good[std::countr_zero(m)].push_back(m);
            ++r.candidates;
        }
    for (auto& v : good)
        std::sort(v.begin(), v.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b) || (std::popcount(a) == std::popcount(b) && a < b); });
    std::vector<Mask> fam;
    std::function<void(Mask, int)> dfs = [&](Mask used, int prev) {
        if (static_cast<int>(fam.size()) > r.alpha) {
            r.alpha = static_cast<int>(fam.size());
            r.family = fam;
        }
        const Mask free = setfn::full_mask(n) & ~used;
        for (int b = prev + 1; b < n; ++b) {
            if (!((free >> b) & 1)) continue;
            // each further block needs a free vertex at or above b
            if (static_cast<int>(fam.size()) + std::popcount(free >> b) <= r.alpha) return;
            for (Mask m : good[b]) {
                if (m & used) continue;
                fam.push_back(m);
                if (level_ok(fam)) dfs(used | m, b);
                fam.pop_back();
            }
        }
    };
    dfs(0, -1);
    return r;
}

// ---------------------------------------------------------------- Motzkin-Straus and Lagrangians

namespace {

struct AscentOutcome {
    Vec x;
    bool stagnated = false;
};

// Multiplicative ascent x_i <- x_i grad_i / sum_j x_j grad_j for a form with nonnegative gradient.
AscentOutcome multiplicative_ascent(Vec x, const std::function<Vec(const Vec&)>& grad, int max_iter = 200000) {
    AscentOutcome out;
    const int n = static_cast<int>(x.size());
    for (int it = 0; it < max_iter; ++it) {
        const Vec gr = grad(x);
        double s = 0;
        for (int i = 0; i < n; ++i) s += x[i] * gr[i];
        if (!(s > 0)) break;
        double change = 0;
        for (int i = 0; i < n; ++i) {
            const double v = x[i] * gr[i] / s;
            change += std::abs(v - x[i]);
            x[i] = v;
        }
        if (change < 1e-15) {
            out.x = x;
            return out;
        }
    }
    out.x = x;
    out.stagnated = true;
    return out;
}

Vec dirichlet(int n, std::mt19937_64& rng) {
    std::exponential_distribution<double> ex(1.0);
    Vec x(n);
    double s = 0;
    for (double& e : x) s += (e = ex(rng));
    for (double& e : x) e /= s;
    return x;
}

Vec uniform_on(int n, Mask m) {
    Vec x(n, 0.0);
    const double v = 1.0 / std::popcount(m);
    for (int i = 0; i < n; ++i)
        if ((m >> i) & 1) x[i] = v;
    return x;
}

double quad(const Matrix& a, const Vec& x) { return linalg::dot(x, linalg::multiply(a, x)); }

}  // namespace

MotzkinStrausReport motzkin_straus(const WeightedGraph& g, std::uint64_t seed, int random_starts) {
    const int n = g.n();
    require_size(n, kCliqueMaxN, "motzkin_straus");
    const IndependenceReport ic = independence_clique(g);
    MotzkinStrausReport r;
    r.omega = ic.omega;
    r.target = Rational(1) - Rational(1, ic.omega);
    Matrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a(i, j) = g.adjacent(i, j) ? 1.0 : 0.0;
            b(i, j) = a(i, j) + (i == j ? 0.5 : 0.0);
        }
    r.uniform_clique = quad(a, uniform_on(n, ic.clique_witness));
    std::vector<Vec> starts{Vec(n, 1.0 / n)};
    for (int v = 0; v < n; ++v) {
        Mask nb = bit(v);
        for (int u = 0; u < n; ++u)
            if (g.adjacent(u, v)) nb |= bit(u);
        starts.push_back(uniform_on(n, nb));
    }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < random_starts; ++s) starts.push_back(dirichlet(n, rng));
    auto grad = [&](const Vec& x) { return linalg::multiply(b, x); };
    r.best = 0;
    for (const Vec& x0 : starts) {
        const auto out = multiplicative_ascent(x0, grad);
        ++r.starts;
        if (out.stagnated) ++r.stagnated;
        r.best = std::max(r.best, quad(a, out.x));
    }
    return r;
}

IndependenceRepresentation independence_representation(const WeightedGraph& g, std::uint64_t seed) {
    const int n = g.n();
    WeightedGraph comp(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.adjacent(i, j)) comp.set_weight(i, j, 1);
    IndependenceRepresentation r;
    r.alpha = independence_clique(g).alpha;
    // x'(A + I)x = 1 - x'A_c x on the simplex
    r.min_value = 1.0 - motzkin_straus(comp, seed).best;
    return r;
}

LagrangianReport hypergraph_lagrangian(const UniformHypergraph& h, std::uint64_t seed, int random_starts) {
    const int n = h.n, k = h.k;
    require_size(n, kCheegerMaxN, "hypergraph_lagrangian");
    if (h.edges.empty()) throw std::invalid_argument("hypergraph_lagrangian: no hyperedges");
    std::vector<Mask> edges;
    for (const auto& e : h.edges) {
        Mask m = 0;
        for (int v : e) m |= bit(v);
        edges.push_back(m);
    }
    LagrangianReport r;
    for (Mask u = 1; u <= setfn::full_mask(n); ++u) {
        int c = 0;
        for (Mask e : edges) c += (e & ~u) == 0;
        const double v = c / std::pow(static_cast<double>(std::popcount(u)), k);
        if (v > r.discrete) {
            r.discrete = v;
            r.witness = u;
        }
    }
    auto lag = [&](const Vec& x) {
        double s = 0;
        for (const auto& e : h.edges) {
            double p = 1;
            for (int v : e) p *= x[v];
            s += p;
        }
        return s;
    };
    auto grad = [&](const Vec& x) {
        Vec g(n, 0.0);
        for (const auto& e : h.edges)
            for (int v : e) {
                double p = 1;
                for (int u : e)
                    if (u != v) p *= x[u];
                g[v] += p;
            }
        return g;
    };
    std::vector<Vec> starts{Vec(n, 1.0 / n)};
    for (int v = 0; v < n; ++v) {
        Mask nb = bit(v);
        for (Mask e : edges)
            if ((e >> v) & 1) nb |= e;
        starts.push_back(uniform_on(n, nb));
    }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < random_starts; ++s) starts.push_back(dirichlet(n, rng));
    for (const Vec& x0 : starts) {
        if (!(lag(x0) > 0)) continue;
        const auto out = multiplicative_ascent(x0, grad);
        ++r.starts;
        if (out.stagnated) ++r.stagnated;
        r.ascent = std::max(r.ascent, lag(out.x));
    }
    return r;
}

// ---------------------------------------------------------------- chemical hypergraphs

bool chemical_boundary(const structures::ChemicalEdge& e, Mask a) {
    const bool crossing = (e.in & a) != 0 && (e.out & ~a) != 0;
    const bool reversed = (e.out & ~a) == 0 && (a & e.in) == 0;
    return crossing || reversed;
}

namespace {

std::pair<int, int> chemical_parts(const ChemicalHypergraph& h, Mask a, const Vec& deg) {
    int bd = 0;
    for (const auto& e : h.edges()) bd += chemical_boundary(e, a);
    double va = 0, vb = 0;
    for (int i = 0; i < h.n(); ++i) ((a >> i) & 1 ? va : vb) += deg[i];
    return {bd, static_cast<int>(std::min(va, vb))};
}

}  // namespace

double chemical_ratio(const ChemicalHypergraph& h, Mask a) {
    const auto [bd, den] = chemical_parts(h, a, h.degrees());
    return den > 0 ? static_cast<double>(bd) / den : kInf;
}

CheegerReport chemical_cheeger(const ChemicalHypergraph& h) {
    const int n = h.n();
    if (n < 2) throw std::invalid_argument("chemical_cheeger: need at least two vertices");
    require_size(n, kCheegerMaxN, "chemical_cheeger");
    const Vec deg = h.degrees();
    CheegerReport r;
    r.variant = "chemical";
    r.value = kInf;
    std::pair<int, int> best{0, 0};
    // the boundary is not symmetric under complement, so every proper subset is visited
    for (Mask a = 1; a < setfn::full_mask(n); ++a) {
        ++r.enumerated;
        const auto parts = chemical_parts(h, a, deg);
        if (parts.second <= 0) continue;
        const double v = static_cast<double>(parts.first) / parts.second;
        if (v < r.value) {
            r.value = v;
            r.sets = {a};
            best = parts;
        }
    }
    if (best.second > 0) r.exact = Rational(best.first, best.second);
    return r;
}

// ---------------------------------------------------------------- simplicial constants

namespace {

struct SignedMasks {
    std::vector<Mask> pos, neg;
    std::vector<int> deg;
};

SignedMasks signed_masks(const SimplicialComplex& k, int d) {
    const auto g = structures::anti_signed_graph(k, d);
    SignedMasks s;
    const int m = g.n();
    s.pos.assign(m, 0);
    s.neg.assign(m, 0);
    s.deg = k.up_degrees(d);
    for (const auto& e : g.edges()) {
        auto& side = e.w > 0 ? s.pos : s.neg;
        side[e.i] |= bit(e.j);
        side[e.j] |= bit(e.i);
    }
    return s;
}

struct BetaParts {
    int num = 0;
    int vol = 0;
};

BetaParts beta_parts(const SignedMasks& s, Mask a, Mask a2) {
    const Mask u = a | a2;
    BetaParts b;
    int inner_neg = 0, cross_pos = 0, boundary = 0;
    for (int t = 0; t < static_cast<int>(s.deg.size()); ++t) {
        if (!((u >> t) & 1)) continue;
        const Mask nb = s.pos[t] | s.neg[t];
        boundary += std::popcount(nb & ~u);
        if ((a >> t) & 1) {
            inner_neg += std::popcount(s.neg[t] & a);
            cross_pos += std::popcount(s.pos[t] & a2);
        } else {
            inner_neg += std::popcount(s.neg[t] & a2);
        }
        b.vol += s.deg[t];
    }
    // inner negative edges were seen from both endpoints
    b.num = inner_neg + 2 * cross_pos + boundary;
    return b;
}

}  // namespace

double simplicial_beta(const SimplicialComplex& k, int d, Mask a, Mask a2) {
    if (a & a2) throw std::invalid_argument("simplicial_beta: sets must be disjoint");
    const auto s = signed_masks(k, d);
    const BetaParts b = beta_parts(s, a, a2);
    return b.vol > 0 ? static_cast<double>(b.num) / b.vol : kInf;
}

CheegerReport simplicial_cheeger(const SimplicialComplex& k, int d, int kk) {
    const auto s = signed_masks(k, d);
    const int m = static_cast<int>(s.deg.size());
    if (kk < 1 || kk > m) throw std::invalid_argument("simplicial_cheeger: need 1 <= k <= #S_d");
    require_size(m, kSimplicialMaxFaces, "simplicial_cheeger");
    const std::size_t total = std::size_t{1} << m;
    std::vector<double> val(total, kInf);
    std::vector<Mask> split(total, 0);
    std::vector<BetaParts> parts(total);
    long long count = 0;
    for (std::size_t u = 1; u < total; ++u) {
        const Mask low = static_cast<Mask>(u & (~u + 1));
        const Mask rest = static_cast<Mask>(u) & ~low;
        // beta is symmetric in its arguments, so A holds the lowest element of U
        for (Mask sub = rest;; sub = (sub - 1) & rest) {
            const Mask a = sub | low;
            const BetaParts b = beta_parts(s, a, static_cast<Mask>(u) & ~a);
            ++count;
            if (b.vol > 0) {
                const double v = static_cast<double>(b.num) / b.vol;
                if (v < val[u]) {
                    val[u] = v;
                    split[u] = a;
                    parts[u] = b;
                }
            }
            if (sub == 0) break;
        }
    }
    const DisjointSearch res = min_max_disjoint(m, kk, val);
    CheegerReport r;
    r.variant = "simplicial-k-way";
    r.value = res.value;
    r.enumerated = count + res.visited;
    std::optional<Rational> worst;
    for (Mask u : res.blocks) {
        r.sets.push_back(split[u]);
        r.sets.push_back(u & ~split[u]);
        const Rational q(parts[u].num, parts[u].vol);
        if (!worst || *worst < q) worst = q;
    }
    r.exact = worst;
    return r;
}

namespace {

// Columns of the incidence as sparse (row, sign) lists; x ranges over {-N..N}^m.
MultisetLevel multiset_level(const std::vector<std::vector<std::pair<int, int>>>& cols, int rows,
                             const std::vector<int>& deg, int nb) {
    const int m = static_cast<int>(cols.size());
    MultisetLevel lvl;
    lvl.n_bound = nb;
    lvl.value = kInf;
    const int radix = 2 * nb + 1;
    long double pts = 1;
    for (int i = 0; i < m; ++i) pts *= radix;
    if (pts > static_cast<long double>(kMultisetMaxPoints))
        throw cap_exceeded("multiset enumeration: (2N+1)^#S_d exceeds the cap");
    const long long total = static_cast<long long>(pts);
    lvl.points = total;

    struct Entry {
        std::uint64_t hash;
        int vol;
        int l1;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(total));
    std::vector<int> x(m, -nb), y(rows, 0);
    int vol = 0;
    for (int i = 0; i < m; ++i) {
        vol += deg[i] * nb;
        for (auto [r, sg] : cols[i]) y[r] += sg * -nb;
    }
    auto hash_y = [&]() {
        std::uint64_t h = 1469598103934665603ULL;
        for (int v : y) {
            h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(v) + 0x9E3779B9);
            h *= 1099511628211ULL;
        }
        return h;
    };
    auto l1_y = [&]() {
        int s = 0;
        for (int v : y) s += std::abs(v);
        return s;
    };
    auto step = [&]() {
        // odometer increment with incremental updates of y and vol
        for (int i = 0; i < m; ++i) {
            const int old = x[i];
            const int nv = old == nb ? -nb : old + 1;
            x[i] = nv;
            vol += deg[i] * (std::abs(nv) - std::abs(old));
            for (auto [r, sg] : cols[i]) y[r] += sg * (nv - old);
            if (nv != -nb) return;
        }
    };
    for (long long c = 0; c < total; ++c) {
        entries.push_back({hash_y(), vol, l1_y()});
        step();
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.hash < b.hash || (a.hash == b.hash && a.vol < b.vol);
    });
    std::uint64_t best_hash = 0;
    int best_vol = 0;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        while (j < entries.size() && entries[j].hash == entries[i].hash) ++j;
        const Entry& e = entries[i];  // smallest volume in the group
        if (e.l1 > 0 && e.vol > 0) {
            const double v = static_cast<double>(e.l1) / e.vol;
            if (v < lvl.value) {
                lvl.value = v;
                best_hash = e.hash;
                best_vol = e.vol;
            }
        }
        i = j;
    }
    if (lvl.value < kInf) {
        // second pass for the witness
        std::fill(x.begin(), x.end(), -nb);
        std::fill(y.begin(), y.end(), 0);
        vol = 0;
        for (int i = 0; i < m; ++i) {
            vol += deg[i] * nb;
            for (auto [r, sg] : cols[i]) y[r] += sg * -nb;
        }
        for (long long c = 0; c < total; ++c) {
            if (vol == best_vol && hash_y() == best_hash) {
                lvl.witness = x;
                break;
            }
            step();
        }
    }
    return lvl;
}

SimplicialHReport multiset_report(const std::vector<std::vector<std::pair<int, int>>>& cols, int rows,
                                  const std::vector<int>& deg, const std::vector<int>& n_list, int betti) {
    SimplicialHReport r;
    r.reduced_betti = betti;
    for (int nb : n_list) {
        if (nb < 1) throw std::invalid_argument("multiset enumeration: N must be >= 1");
        r.levels.push_back(multiset_level(cols, rows, deg, nb));
    }
    r.stable = r.levels.size() >= 2 &&
               std::abs(r.levels[r.levels.size() - 1].value - r.levels[r.levels.size() - 2].value) < 1e-12;
    return r;
}

int int_rank(const linalg::IntMatrix& b) { return b.rows() && b.cols() ? linalg::rank(linalg::to_real(b)) : 0; }

}  // namespace

SimplicialHReport simplicial_h(const SimplicialComplex& k, int d, const std::vector<int>& n_list) {
    if (d < 0 || d + 1 > k.dim()) throw std::invalid_argument("simplicial_h: needs (d+1)-simplices");
    const auto b = k.boundary_matrix(d + 1);  // rows S_d, columns S_{d+1}
    const int m = b.rows(), rows = b.cols();
    std::vector<std::vector<std::pair<int, int>>> cols(m);
    for (int t = 0; t < m; ++t)
        for (int s = 0; s < rows; ++s)
            if (b(t, s) != 0) cols[t].push_back({s, static_cast<int>(b(t, s))});
    const int lower = d == 0 ? 1 : int_rank(k.boundary_matrix(d));
    const int betti = m - int_rank(b) - lower;
    return multiset_report(cols, rows, k.up_degrees(d), n_list, betti);
}

SimplicialHReport down_cheeger(const SimplicialComplex& k, int d, const std::vector<int>& n_list) {
    if (d < 1 || d > k.dim()) throw std::invalid_argument("down_cheeger: need 1 <= d <= dim K");
    const auto b = k.boundary_matrix(d);  // rows S_{d-1}, columns S_d
    const int rows = b.rows(), m = b.cols();
    std::vector<std::vector<std::pair<int, int>>> cols(m);
    for (int t = 0; t < m; ++t)
        for (int s = 0; s < rows; ++s)
            if (b(s, t) != 0) cols[t].push_back({s, static_cast<int>(b(s, t))});
    const int upper = d + 1 <= k.dim() ? int_rank(k.boundary_matrix(d + 1)) : 0;
    const int betti = m - int_rank(b) - upper;
    return multiset_report(cols, rows, std::vector<int>(m, d + 1), n_list, betti);
}

// ---------------------------------------------------------------- nodal domains

namespace {

int support_components(const Vec& x, const std::function<bool(int, int)>& adjacent, double tol) {
    const int n = static_cast<int>(x.size());
    std::vector<int> seen(n, 0);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (seen[s] || !(std::abs(x[s]) > tol)) continue;
        ++count;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (int u = 0; u < n; ++u)
                if (!seen[u] && std::abs(x[u]) > tol && adjacent(u, v)) {
                    seen[u] = 1;
                    q.push(u);
                }
        }
    }
    return count;
}

}  // namespace

int nodal_domains(const Vec& x, const WeightedGraph& g, double tol) {
    if (static_cast<int>(x.size()) != g.n()) throw std::invalid_argument("nodal_domains: length != n");
    return support_components(x, [&](int u, int v) { return g.adjacent(u, v); }, tol);
}

int nodal_domains(const Vec& x, const ChemicalHypergraph& h, double tol) {
    return nodal_domains(x, h.underlying_graph(), tol);
}

int nodal_domains(const Vec& x, const UniformHypergraph& h, double tol) {
    if (static_cast<int>(x.size()) != h.n) throw std::invalid_argument("nodal_domains: length != n");
    std::vector<Mask> nb(h.n, 0);
    for (const auto& e : h.edges)
        for (int a : e)
            for (int b : e)
                if (a != b) nb[a] |= bit(b);
    return support_components(x, [&](int u, int v) { return ((nb[v] >> u) & 1) != 0; }, tol);
}

}  // namespace artifact::constants
