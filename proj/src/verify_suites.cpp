#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "artifact/constants.hpp"
#include "artifact/errors.hpp"
#include "artifact/spectra.hpp"
#include "artifact/verify.hpp"

namespace artifact::verify {

namespace {

using Clock = std::chrono::steady_clock;
using structures::ChemicalEdge;
using structures::ChemicalHypergraph;
using structures::SimplicialComplex;
using structures::WeightedEdge;
using structures::WeightedGraph;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t instance_seed(std::uint64_t seed, int i) {
    return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(i + 1));
}

std::string graph_descriptor(const WeightedGraph& g) {
    return "n=" + std::to_string(g.n()) + " m=" + std::to_string(g.edges().size());
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Groups ascending values into clusters of (numerically) equal eigenvalues: cluster[i] = {first, last}, 0-based.
std::vector<std::pair<int, int>> eigen_clusters(const Vec& values, double tol = 1e-8) {
    const int n = static_cast<int>(values.size());
    std::vector<std::pair<int, int>> out(n);
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || values[i] - values[i - 1] > tol * std::max(1.0, std::abs(values[i]))) {
            for (int j = start; j < i; ++j) out[j] = {start, i - 1};
            start = i;
        }
    }
    return out;
}

// min over admissible 1-based indices i in the cluster of min{i + r - 1, n - i + r}.
int nodal_bound(int n, std::pair<int, int> cluster) {
    const int r = cluster.second - cluster.first + 1;
    int best = n;
    for (int i = cluster.first + 1; i <= cluster.second + 1; ++i) best = std::min({best, i + r - 1, n - i + r});
    return best;
}

Matrix principal_submatrix(const Matrix& m, const std::vector<int>& keep) {
    const int k = static_cast<int>(keep.size());
    Matrix s(k, k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) s(a, b) = m(keep[a], keep[b]);
    return s;
}

VerificationReport make(std::string id, std::string anchor, std::string instance, double tol) {
    VerificationReport r;
    r.id = std::move(id);
    r.anchor = std::move(anchor);
    r.instance = std::move(instance);
    r.tolerance = tol;
    return r;
}

void finish(VerificationReport& r, bool ok, Clock::time_point t0) {
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.runtime_ms = elapsed_ms(t0);
}

// ---------------------------------------------------------------- suites

void cheeger_suite(std::uint64_t seed, std::vector<VerificationReport>& out) {
    for (int i = 0; i < 50; ++i) {
        const auto t0 = Clock::now();
        const std::uint64_t s = instance_seed(seed, i);
        std::mt19937_64 rng(s);
        const int n = uniform_int(rng, 3, 10);
        const WeightedGraph g = random_graph(n, 0.5, s, true);
        const double h = constants::cheeger(g).value;
        const auto spec = spectra::quadratic_pair_spectrum(g.laplacian(), linalg::diagonal_matrix(g.degrees()));
        const double l2 = spec.values[1];
        auto r = make("cheeger/graph/" + std::to_string(i), "h^2/2 <= lambda_2 <= 2h for the normalized graph Laplacian",
                      graph_descriptor(g), kSlack);
        r.lhs = h * h / 2;
        r.rhs = 2 * h;
        r.values = {{"h", h}, {"lambda_2", l2}, {"solver_residual", spec.max_residual}};
        r.gap = std::max(0.0, std::max(r.lhs - l2, l2 - r.rhs));
        finish(r, r.gap <= kSlack, t0);
        out.push_back(std::move(r));
    }
}

void chemical_cheeger_suite(std::uint64_t seed, std::vector<VerificationReport>& out) {
    int id = 0;
    for (int i = 0; i < 10; ++i) {
        // Random oriented hypergraphs often have a set with empty boundary (h = 0), which makes both
        // bounds vacuous; redraw until h > 0.
        std::uint64_t s = 0;
        int n = 0;
        ChemicalHypergraph h;
        constants::CheegerReport ch;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            s = instance_seed(seed ^ 0xC4E3ULL, 1000 * i + attempt);
            std::mt19937_64 rng(s);
            n = uniform_int(rng, 4, 8);
            const int m = uniform_int(rng, n, 2 * n);
            h = random_chemical_hypergraph(n, m, s);
            ch = constants::chemical_cheeger(h);
            if (ch.value > 0) break;
        }
        for (double p : {1.5, 2.0}) {
            const auto t0 = Clock::now();
            const auto pair = spectra::chemical_p_laplacian(h, p);
            const auto proj = spectra::weighted_power_projection(h.degrees(), p, Vec(n, 1.0));
            spectra::DinkelbachParams params;
            params.random_starts = 8;
            params.seed = s;
            const auto res = spectra::dinkelbach_multistart(pair, proj, {extend::indicator(n, ch.sets.front())}, params);
            const double lam = res.estimate.lambda;
            const double hh = ch.value;
            auto r = make("chemical-cheeger/" + std::to_string(id++),
                          "h^p/p^p <= lambda_2 <= 2^(p-1) h for the Lovasz p-Laplacian of a chemical hypergraph",
                          "n=" + std::to_string(n) + " m=" + std::to_string(h.edges().size()) + " p=" +
                              std::to_string(p).substr(0, 3),
                          kIterativeTol);
            r.lhs = std::pow(hh, p) / std::pow(p, p);
            r.rhs = std::pow(2.0, p - 1) * hh;
            r.values = {{"h", hh}, {"lambda_hat", lam}, {"residual", res.estimate.residual},
                        {"outer_iterations", static_cast<double>(res.outer_iterations)}};
            r.gap = std::max(0.0, std::max(r.lhs - lam, lam - r.rhs));
            r.note = "lambda_hat is an upper estimate of lambda_2";
            finish(r, r.gap <= kIterativeTol, t0);
            out.push_back(std::move(r));
        }
    }
}

void nodal_inertia_suite(std::uint64_t seed, std::vector<VerificationReport>& out) {
    for (int i = 0; i < 30; ++i) {
        const auto t0 = Clock::now();
        const std::uint64_t s = instance_seed(seed ^ 0x0DA1ULL, i);
        std::mt19937_64 rng(s);
        const int n = uniform_int(rng, 3, 10);
        const WeightedGraph g = random_graph(n, 0.5, s, false);
        const auto spec = spectra::quadratic_pair_spectrum(g.laplacian(), linalg::diagonal_matrix(g.degrees()));
        const int alpha = constants::independence_clique(g).alpha;
        int below = 0, above = 0;
        for (double v : spec.values) {
            if (v <= 1 + kExactTol) ++below;
            if (v >= 1 - kExactTol) ++above;
        }
        const auto clusters = eigen_clusters(spec.values);
        int worst = -n;  // max of (domains - bound)
        for (int j = 0; j < n; ++j) {
            Vec x(n);
            for (int a = 0; a < n; ++a) x[a] = spec.vectors(a, j);
            worst = std::max(worst, constants::nodal_domains(x, g) - nodal_bound(n, clusters[j]));
        }
        auto r = make("nodal-inertia/" + std::to_string(i),
                      "alpha <= min(#{lambda_i <= 1}, #{lambda_i >= 1}) and support components <= min{i+r-1, n-i+r}",
                      graph_descriptor(g), 0);
        r.lhs = alpha;
        r.rhs = std::min(below, above);
        r.values = {{"alpha", static_cast<double>(alpha)}, {"count_le_1", static_cast<double>(below)},
                    {"count_ge_1", static_cast<double>(above)}, {"nodal_excess", static_cast<double>(worst)}};
        r.gap = std::max(0.0, std::max(r.lhs - r.rhs, static_cast<double>(worst)));
        finish(r, r.gap == 0, t0);
        out.push_back(std::move(r));
    }
}

void bipartite_suite(std::uint64_t seed, std::vector<VerificationReport>& out) {
    for (int i = 0; i < 20; ++i) {
        const auto t0 = Clock::now();
        const std::uint64_t s = instance_seed(seed ^ 0xB1ULL, i);
        std::mt19937_64 rng(s);
        const int n = uniform_int(rng, 3, 10);
        const WeightedGraph g = i % 2 == 0 ? random_bipartite_graph(n, 0.5, s) : random_graph(n, 0.5, s, true);
        const Vec a = linalg::symmetric_eigen(g.laplacian()).values;
        const Vec b = linalg::symmetric_eigen(g.signless_laplacian()).values;
        double diff = 0;
        for (int j = 0; j < n; ++j) diff = std::max(diff, std::abs(a[j] - b[j]));
        const bool coincide = diff <= kExactTol;
        const bool bip = g.bipartite();
        auto r = make("bipartite/" + std::to_string(i),
                      "Laplacian and signless Laplacian spectra coincide iff the graph is bipartite",
                      graph_descriptor(g), kExactTol);
        r.lhs = diff;
        r.rhs = kExactTol;
        r.gap = coincide == bip ? 0 : 1;
        r.values = {{"bipartite", bip ? 1.0 : 0.0}, {"max_spectral_difference", diff}};
        finish(r, coincide == bip, t0);
        out.push_back(std::move(r));
    }
}

void simplicial_identity_suite(std::uint64_t seed, std::vector<VerificationReport>& out) {
    for (int i = 0; i < 30; ++i) {
        const std::uint64_t s = instance_seed(seed ^ 0x5131ULL, i);
        std::mt19937_64 rng(s);
        const int nv = uniform_int(rng, 4, 8);
        const SimplicialComplex k = random_2_complex(nv, 0.5, s);
        for (int d = 0; d <= 1; ++d) {
            const auto t0 = Clock::now();
            const Matrix b = linalg::to_real(k.boundary_matrix(d + 1));  // rows: d-simplices
            const int md = b.rows();
            Matrix up(md, md);
            for (int x = 0; x < md; ++x)
                for (int y = 0; y < md; ++y) {
                    double acc = 0;
                    for (int c = 0; c < b.cols(); ++c) acc += b(x, c) * b(y, c);
                    up(x, y) = acc;
                }
            const auto deg = k.up_degrees(d);
            std::vector<int> keep;
            for (int x = 0; x < md; ++x)
                if (deg[x] > 0) keep.push_back(x);
            const int n = static_cast<int>(keep.size());
            const std::string desc = "vertices=" + std::to_string(nv) + " d=" + std::to_string(d) +
                                     " simplices=" + std::to_string(md) + " active=" + std::to_string(n);
            const std::string base = "simplicial-identity/" + std::to_string(i) + "/d" + std::to_string(d);

            Vec dv(n);
            for (int a = 0; a < n; ++a) dv[a] = deg[keep[a]];
            const auto mu = spectra::quadratic_pair_spectrum(principal_submatrix(up, keep), linalg::diagonal_matrix(dv));
            const auto signed_graph = structures::anti_signed_graph(k, d);
            const Matrix as = principal_submatrix(signed_graph.weights(), keep);
            Matrix lhs_m(n, n), dt(n, n);
            for (int a = 0; a < n; ++a) {
                dt(a, a) = (d + 1) * dv[a];
                for (int c = 0; c < n; ++c) lhs_m(a, c) = (a == c ? dt(a, a) : 0.0) - as(a, c);
            }
            const auto lam = spectra::quadratic_pair_spectrum(lhs_m, dt);
            double gap = 0;
            for (int j = 0; j < n; ++j) gap = std::max(gap, std::abs((d + 2) - mu.values[n - 1 - j] - (d + 1) * lam.values[j]));
            auto r = make(base + "/identity",
                          "d+2 - lambda_(n-i+1)(up Laplacian) = (d+1) lambda_i(anti-signed normalized Laplacian)", desc,
                          kExactTol);
            r.lhs = n > 0 ? (d + 2) - mu.values[n - 1] : 0;
            r.rhs = n > 0 ? (d + 1) * lam.values[0] : 0;
            r.gap = gap;
            r.values = {{"residual_up", mu.max_residual}, {"residual_signed", lam.max_residual}};
            finish(r, gap <= kExactTol, t0);
            out.push_back(std::move(r));

            const auto t1 = Clock::now();
            int top = 0;
            for (double v : mu.values)
                if (std::abs(v - (d + 2)) <= 1e-8) ++top;
            const auto balance = structures::balanced_components(structures::SignedGraph(as));
            auto rb = make(base + "/balance",
                           "multiplicity of the eigenvalue d+2 equals the number of balanced components", desc, 0);
            rb.lhs = top;
            rb.rhs = balance.balanced;
            rb.gap = std::abs(rb.lhs - rb.rhs);
            rb.values = {{"components", static_cast<double>(balance.components)}};
            finish(rb, top == balance.balanced, t1);
            out.push_back(std::move(rb));

            const auto t2 = Clock::now();
            int zeros = 0;
            for (double v : linalg::symmetric_eigen(up).values)
                if (std::abs(v) <= 1e-8) ++zeros;
            const int kernel = md - linalg::rank(b);
            auto rz = make(base + "/zero-multiplicity",
                           "multiplicity of the eigenvalue zero of the up Laplacian is at least d+1", desc, 0);
            rz.lhs = zeros;
            rz.rhs = d + 1;
            rz.gap = std::max(0, d + 1 - zeros) + std::abs(zeros - kernel);
            rz.values = {{"kernel_dimension", static_cast<double>(kernel)}};
            finish(rz, zeros >= d + 1 && zeros == kernel, t2);
            out.push_back(std::move(rz));
        }
    }
}

void huang_suite(std::vector<VerificationReport>& out) {
    for (int m = 2; m <= 4; ++m) {
        const auto t0 = Clock::now();
        const auto w = structures::huang_signing(m);
        const int n = w.rows();
        long long square_defect = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                long long acc = 0;
                for (int c = 0; c < n; ++c) acc += static_cast<long long>(w(a, c)) * w(c, b);
                square_defect = std::max(square_defect, std::llabs(acc - (a == b ? m : 0)));
            }
        auto rs = make("huang/signing-square/m" + std::to_string(m), "the signed hypercube matrix squares to m I",
                       "m=" + std::to_string(m), 0);
        rs.lhs = static_cast<double>(square_defect);
        rs.gap = rs.lhs;
        finish(rs, square_defect == 0, t0);
        out.push_back(std::move(rs));

        const auto t1 = Clock::now();
        const WeightedGraph q = structures::hypercube(m);
        const int size = (1 << (m - 1)) + 1;
        int min_maxdeg = n;
        long long subsets = 0;
        for (Mask s = 0; s < (Mask{1} << n); ++s) {
            if (std::popcount(s) != size) continue;
            ++subsets;
            int maxdeg = 0;
            for (int a = 0; a < n; ++a) {
                if (!((s >> a) & 1)) continue;
                int dgr = 0;
                for (int b = 0; b < n; ++b)
                    if (((s >> b) & 1) && q.adjacent(a, b)) ++dgr;
                maxdeg = std::max(maxdeg, dgr);
            }
            min_maxdeg = std::min(min_maxdeg, maxdeg);
        }
        auto rd = make("huang/induced-degree/m" + std::to_string(m),
                       "every induced subgraph of the hypercube on 2^(m-1)+1 vertices has maximum degree at least sqrt m",
                       "m=" + std::to_string(m) + " subsets=" + std::to_string(subsets), 0);
        rd.lhs = min_maxdeg;
        rd.rhs = std::sqrt(static_cast<double>(m));
        rd.gap = std::max(0.0, rd.rhs - rd.lhs);
        finish(rd, min_maxdeg * min_maxdeg >= m, t1);
        out.push_back(std::move(rd));
    }
}

void k_uniform_inertia_suite(std::uint64_t seed, std::vector<VerificationReport>& out) {
    for (int i = 0; i < 20; ++i) {
        const auto t0 = Clock::now();
        const std::uint64_t s = instance_seed(seed ^ 0x4B55ULL, i);
        std::mt19937_64 rng(s);
        const int n = uniform_int(rng, 3, 10);
        const WeightedGraph g = random_graph(n, 0.5, s, false, false);
        structures::UniformHypergraph h{n, 2, {}};
        for (const auto& e : g.edges()) h.edges.push_back({e.i, e.j});
        const int alpha = constants::independence_clique(h).alpha;
        const auto spec = linalg::symmetric_eigen(g.weights());
        int nonpos = 0, nonneg = 0;
        for (double v : spec.values) {
            if (v <= kExactTol) ++nonpos;
            if (v >= -kExactTol) ++nonneg;
        }
        const auto clusters = eigen_clusters(spec.values);
        int worst = -n;
        for (int j = 0; j < n; ++j) {
            Vec x(n);
            for (int a = 0; a < n; ++a) x[a] = spec.vectors(a, j);
            worst = std::max(worst, constants::nodal_domains(x, h) - nodal_bound(n, clusters[j]));
        }
        auto r = make("k-uniform-inertia/" + std::to_string(i),
                      "independence number <= min(#{lambda_i <= 0}, #{lambda_i >= 0}) for the adjacency tensor, k = 2",
                      graph_descriptor(g), 0);
        r.lhs = alpha;
        r.rhs = std::min(nonpos, nonneg);
        r.values = {{"count_le_0", static_cast<double>(nonpos)}, {"count_ge_0", static_cast<double>(nonneg)},
                    {"nodal_excess", static_cast<double>(worst)}};
        r.gap = std::max(0.0, std::max(r.lhs - r.rhs, static_cast<double>(worst)));
        finish(r, r.gap == 0, t0);
        out.push_back(std::move(r));
    }
}

}  // namespace

// ---------------------------------------------------------------- generators

WeightedGraph random_graph(int n, double p, std::uint64_t seed, bool connected, bool no_isolated) {
    if (n < 1) throw std::invalid_argument("random_graph: n >= 1 required");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    WeightedGraph g(n);
    for (int attempt = 0; attempt < 100; ++attempt) {
        g = WeightedGraph(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (coin(rng)) g.set_weight(i, j, 1);
        if (connected && !g.connected()) continue;
        bool isolated = false;
        for (int i = 0; i < n && n > 1; ++i) isolated = isolated || g.degree(i) == 0;
        if (no_isolated && isolated) continue;
        return g;
    }
    // Fall back to joining consecutive vertices.
    for (int i = 0; i + 1 < n; ++i) g.set_weight(i, i + 1, 1);
    return g;
}

WeightedGraph random_bipartite_graph(int n, double p, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_bipartite_graph: n >= 2 required");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<int> side(n);
    for (int i = 0; i < n; ++i) side[i] = static_cast<int>(rng() & 1);
    side[0] = 0;
    side[1] = 1;
    WeightedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (side[i] != side[j] && coin(rng)) g.set_weight(i, j, 1);
    for (int i = 0; i < n; ++i) {
        if (g.degree(i) > 0) continue;
        std::vector<int> other;
        for (int j = 0; j < n; ++j)
            if (side[j] != side[i]) other.push_back(j);
        g.set_weight(i, other[rng() % other.size()], 1);
    }
    return g;
}

SimplicialComplex random_2_complex(int n, double p, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("random_2_complex: n >= 3 required");
    WeightedGraph g = random_graph(n, 0.5, seed, true);
    std::mt19937_64 rng(seed ^ 0x7A1ULL);
    std::bernoulli_distribution keep(p);
    std::vector<std::vector<int>> triangles;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c) && keep(rng)) triangles.push_back({a, b, c});
    if (triangles.empty()) {
        // guarantee dimension 2
        g.set_weight(0, 1, 1);
        g.set_weight(1, 2, 1);
        g.set_weight(0, 2, 1);
        triangles.push_back({0, 1, 2});
    }
    std::vector<std::vector<int>> maximal = triangles;
    for (const auto& e : g.edges()) {
        bool covered = false;
        for (const auto& t : triangles)
            covered = covered || (std::count(t.begin(), t.end(), e.i) && std::count(t.begin(), t.end(), e.j));
        if (!covered) maximal.push_back({e.i, e.j});
    }
    return SimplicialComplex::from_maximal(maximal);
}

ChemicalHypergraph random_chemical_hypergraph(int n, int m, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_chemical_hypergraph: n >= 2 required");
    std::mt19937_64 rng(seed);
    std::vector<ChemicalEdge> edges;
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    for (int e = 0; e < m; ++e) {
        const int size = uniform_int(rng, 2, std::min(4, n));
        std::shuffle(verts.begin(), verts.end(), rng);
        const int split = uniform_int(rng, 1, size - 1);
        ChemicalEdge ce;
        for (int a = 0; a < size; ++a) (a < split ? ce.in : ce.out) |= Mask{1} << verts[a];
        if (rng() % 4 == 0) ce.out |= Mask{1} << verts[0];  // a vertex on both sides
        edges.push_back(ce);
    }
    for (int v = 0; v < n; ++v) {
        bool covered = false;
        for (const auto& e : edges) covered = covered || (((e.in | e.out) >> v) & 1);
        if (covered) continue;
        const int u = (v + 1 + static_cast<int>(rng() % (n - 1))) % n;
        edges.push_back({Mask{1} << v, Mask{1} << u});
    }
    return ChemicalHypergraph(n, std::move(edges));
}

// ---------------------------------------------------------------- drivers

std::vector<std::string> suite_names() {
    return {"cheeger", "chemical-cheeger", "nodal-inertia", "bipartite", "simplicial-identity", "huang", "k-uniform-inertia"};
}

std::vector<VerificationReport> run_inequality_suites(const std::string& selector, std::uint64_t seed) {
    const auto names = suite_names();
    if (selector != "all" && std::find(names.begin(), names.end(), selector) == names.end())
        throw std::invalid_argument("unknown suite: " + selector);
    auto want = [&](const char* name) { return selector == "all" || selector == name; };
    std::vector<VerificationReport> out;
    if (want("cheeger")) cheeger_suite(seed, out);
    if (want("chemical-cheeger")) chemical_cheeger_suite(seed, out);
    if (want("nodal-inertia")) nodal_inertia_suite(seed, out);
    if (want("bipartite")) bipartite_suite(seed, out);
    if (want("simplicial-identity")) simplicial_identity_suite(seed, out);
    if (want("huang")) huang_suite(out);
    if (want("k-uniform-inertia")) k_uniform_inertia_suite(seed, out);
    return out;
}

namespace {

Matrix random_matrix(int r, int c, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = u(rng);
    return m;
}

std::vector<setfn::Edge> edge_list(const WeightedGraph& g) {
    std::vector<setfn::Edge> out;
    for (const auto& e : g.edges()) out.push_back({e.i, e.j});
    return out;
}

}  // namespace

std::vector<VerificationReport> run_full_suite(std::uint64_t seed) {
    std::vector<VerificationReport> out = run_inequality_suites("all", seed);
    std::mt19937_64 rng(instance_seed(seed, 1000));

    for (int i = 0; i < 10; ++i) {
        const std::uint64_t s = instance_seed(seed ^ 0x5EAULL, i);
        auto r = check_spectral_radius_sandwich(random_graph(3 + i % 6, 0.5, s, false, false));
        r.id += "/" + std::to_string(i);
        out.push_back(std::move(r));
    }
    {
        const auto f = setfn::cardinality_product(4);
        for (auto fam : {extend::Family::Chain, extend::Family::Diagonal}) {
            auto r = check_indicator_and_equalities(f, f, fam, seed);
            r.id += "/f-equals-g";
            out.push_back(std::move(r));
        }
        const WeightedGraph g = random_graph(5, 0.5, instance_seed(seed, 7), true);
        auto r = check_indicator_and_equalities(setfn::edge_count(5, edge_list(g)), setfn::intersection_count(5),
                                                extend::Family::Chain, seed);
        r.id += "/edges-over-intersection";
        out.push_back(std::move(r));
    }
    {
        const auto t0 = Clock::now();
        const WeightedGraph c5 = WeightedGraph::from_edges(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1}});
        const auto mc = constants::maxcut(c5, seed);
        int brute = 0;
        for (Mask a = 0; a < 32; ++a) {
            int cut = 0;
            for (const auto& e : c5.edges()) cut += ((a >> e.i) & 1) != ((a >> e.j) & 1);
            brute = std::max(brute, cut);
        }
        auto r = make("maxcut/c5", "the continuous maxcut form attains the enumerated maxcut", "C5", kExactTol);
        r.lhs = mc.continuous_at_witness;
        r.rhs = brute;
        r.gap = std::abs(r.lhs - r.rhs) + std::abs(mc.value - brute);
        r.values = {{"sample_max", mc.continuous_sample_max}};
        finish(r, r.gap <= kExactTol && mc.samples_bounded, t0);
        out.push_back(std::move(r));
    }
    {
        const auto t0 = Clock::now();
        const auto f = setfn::edge_count(3, {{0, 1}, {1, 2}});
        const auto g = setfn::intersection_count(3);
        const auto d = discrete_minimax(f, g);
        const auto c = continuous_inf_sup(f, g);
        auto r = make("saddle/path3", "discrete min-max 2 and max-min 1, continuous value sqrt 2", "P3", kSlack);
        r.lhs = c.value;
        r.rhs = std::sqrt(2.0);
        r.gap = std::abs(c.value - std::sqrt(2.0));
        r.values = {{"discrete_min_max", d.min_max}, {"discrete_max_min", d.max_min}};
        finish(r, r.gap <= kSlack && d.min_max == 2 && d.max_min == 1, t0);
        out.push_back(std::move(r));
        auto t = check_saddle_transfer(f, g, seed);
        t.id += "/path3";
        out.push_back(std::move(t));
    }
    for (int i = 0; i < 20; ++i) {
        const auto t0 = Clock::now();
        const Matrix cm = random_matrix(3, 3, rng, -1, 1);
        const auto [f, g] = payoff_game(cm);
        const double lp = payoff_game_value(cm);
        const auto up = continuous_inf_sup(f, g);
        const auto down = continuous_sup_inf(f, g);
        auto r = make("saddle/payoff/" + std::to_string(i),
                      "continuous minimax and maximin of the payoff game equal its linear programming value", "3x3",
                      kIterativeTol);
        r.lhs = up.value;
        r.rhs = lp;
        r.gap = std::max(std::abs(up.value - lp), std::abs(down.value - lp));
        r.values = {{"continuous_sup_inf", down.value}};
        finish(r, r.gap <= kIterativeTol, t0);
        out.push_back(std::move(r));
    }
    for (int i = 0; i < 5; ++i) {
        // pure saddle at (0, 0): row 0 below 1/2, column 0 above 1/2
        Matrix cm = random_matrix(3, 3, rng, 0, 1);
        cm(0, 0) = 0.5;
        for (int j = 1; j < 3; ++j) cm(0, j) *= 0.5;
        for (int a = 1; a < 3; ++a) cm(a, 0) = 0.5 + 0.5 * cm(a, 0);
        const auto [f, g] = payoff_game(cm);
        auto r = check_saddle_transfer(f, g, seed + i);
        r.id += "/pure-saddle/" + std::to_string(i);
        out.push_back(std::move(r));
    }
    for (int i = 0; i < 3; ++i) {
        const Matrix cm = random_matrix(3, 3, rng, -1, 1);
        const auto [f, g] = payoff_game(cm);
        auto r = check_sion_case(f, g);
        r.id += "/bilinear/" + std::to_string(i);
        out.push_back(std::move(r));
    }
    for (int i = 0; i < 3; ++i) {
        const int n = 4;
        const auto ga = random_graph(n, 0.5, instance_seed(seed ^ 0x510ULL, 2 * i), false, false);
        const auto gb = random_graph(n, 0.5, instance_seed(seed ^ 0x510ULL, 2 * i + 1), false, false);
        const Matrix cm = random_matrix(n, n, rng, 0, 1);
        const auto cut_a = setfn::cut_function(n, edge_list(ga));
        const auto cut_b = setfn::cut_function(n, edge_list(gb));
        const auto bil = payoff_game(cm).first;
        auto f = SetTupleFunction::real(n, 2, [&](std::span<const Mask> t) {
            return cut_a.eval({t[0]}) - cut_b.eval({t[1]}) + bil.eval(t);
        });
        auto g = SetTupleFunction::real(n, 2, [](std::span<const Mask> t) {
            return static_cast<double>(std::popcount(t[0]) + std::popcount(t[1]));
        });
        auto r = check_sion_case(f, g);
        r.id += "/cut/" + std::to_string(i);
        out.push_back(std::move(r));
    }
    {
        const auto f = SetTupleFunction::real(3, 2, [](std::span<const Mask> t) { return 1.0 + std::popcount(t[0]); });
        auto r = check_sion_case(f, setfn::cardinality_product(3));
        r.id += "/first-block-only";
        out.push_back(std::move(r));
    }
    {
        const auto f = setfn::cardinality(4);
        auto r = check_quasiconcave_composition(Polynomial::Product2, {f, f}, seed);
        r.id += "/equal-arguments";
        out.push_back(std::move(r));
    }
    for (int i = 0; i < 4; ++i) {
        const int n = 4;
        std::vector<SetTupleFunction> fs;
        const int m = i < 2 ? 2 : 3;
        for (int j = 0; j < m; ++j) {
            // monotone: weighted coverage
            const Matrix w = random_matrix(n, 3, rng, 0, 1);
            fs.push_back(SetTupleFunction::real(n, 1, [w, n](std::span<const Mask> t) {
                double s = 0;
                for (int c = 0; c < 3; ++c) {
                    double best = 0;
                    for (int a = 0; a < n; ++a)
                        if ((t[0] >> a) & 1) best = std::max(best, w(a, c));
                    s += best;
                }
                return s;
            }));
        }
        auto r = check_quasiconcave_composition(m == 2 ? Polynomial::Product2 : Polynomial::ElementarySymmetric2, fs,
                                                seed + i);
        r.id += "/coverage/" + std::to_string(i);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace artifact::verify
