#include "artifact/structures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

#include "artifact/errors.hpp"

namespace artifact::structures {

namespace {

void check_symmetric(const Matrix& w, bool nonneg) {
    if (w.rows() != w.cols()) throw std::invalid_argument("weight table must be square");
    for (int i = 0; i < w.rows(); ++i) {
        if (w(i, i) != 0) throw std::invalid_argument("weight table must have zero diagonal");
        for (int j = 0; j < w.cols(); ++j) {
            if (w(i, j) != w(j, i)) throw std::invalid_argument("weight table must be symmetric");
            if (nonneg && w(i, j) < 0) throw std::invalid_argument("weights must be nonnegative");
            if (!std::isfinite(w(i, j))) throw std::invalid_argument("weights must be finite");
        }
    }
}

long long factorial(int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Number of distinct orderings of a sorted multiset.
long long orderings(const std::vector<int>& sorted) {
    long long r = factorial(static_cast<int>(sorted.size()));
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        r /= factorial(static_cast<int>(j - i));
        i = j;
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------- WeightedGraph

WeightedGraph::WeightedGraph(Matrix w) : n_(w.rows()), w_(std::move(w)) { check_symmetric(w_, true); }

WeightedGraph WeightedGraph::from_edges(int n, const std::vector<WeightedEdge>& edges) {
    WeightedGraph g(n);
    for (const auto& e : edges) {
        if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) throw std::out_of_range("edge endpoint out of range");
        if (e.i == e.j) throw std::invalid_argument("self loops are not allowed");
        g.set_weight(e.i, e.j, e.w);
    }
    return g;
}

void WeightedGraph::set_weight(int i, int j, double w) {
    if (i == j) throw std::invalid_argument("self loops are not allowed");
    if (w < 0 || !std::isfinite(w)) throw std::invalid_argument("weights must be finite and nonnegative");
    w_(i, j) = w_(j, i) = w;
}

double WeightedGraph::degree(int i) const {
    double s = 0;
    for (int j = 0; j < n_; ++j) s += w_(i, j);
    return s;
}

Vec WeightedGraph::degrees() const {
    Vec d(n_);
    for (int i = 0; i < n_; ++i) d[i] = degree(i);
    return d;
}

std::vector<WeightedEdge> WeightedGraph::edges() const {
    std::vector<WeightedEdge> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (w_(i, j) > 0) out.push_back({i, j, w_(i, j)});
    return out;
}

std::vector<std::pair<int, int>> WeightedGraph::edge_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : edges()) out.emplace_back(e.i, e.j);
    return out;
}

int WeightedGraph::component_count() const {
    std::vector<int> seen(n_, 0);
    int count = 0;
    for (int s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        ++count;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n_; ++v)
                if (w_(u, v) > 0 && !seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
        }
    }
    return count;
}

bool WeightedGraph::bipartite() const {
    std::vector<int> color(n_, -1);
    for (int s = 0; s < n_; ++s) {
        if (color[s] >= 0) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n_; ++v) {
                if (w_(u, v) <= 0) continue;
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

Matrix WeightedGraph::laplacian() const {
    Matrix l(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) l(i, j) = i == j ? degree(i) : -w_(i, j);
    return l;
}

Matrix WeightedGraph::signless_laplacian() const {
    Matrix l(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) l(i, j) = i == j ? degree(i) : w_(i, j);
    return l;
}

// ---------------------------------------------------------------- SignedGraph

SignedGraph::SignedGraph(Matrix w) : n_(w.rows()), w_(std::move(w)) { check_symmetric(w_, false); }

void SignedGraph::set_weight(int i, int j, double w) {
    if (i == j) throw std::invalid_argument("self loops are not allowed");
    w_(i, j) = w_(j, i) = w;
}

double SignedGraph::degree(int i) const {
    double s = 0;
    for (int j = 0; j < n_; ++j) s += std::abs(w_(i, j));
    return s;
}

std::vector<WeightedEdge> SignedGraph::edges() const {
    std::vector<WeightedEdge> out;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (w_(i, j) != 0) out.push_back({i, j, w_(i, j)});
    return out;
}

SignedGraph SignedGraph::negated() const { return SignedGraph(-1.0 * w_); }

SignedGraph SignedGraph::switched(const std::vector<int>& signs) const {
    if (static_cast<int>(signs.size()) != n_) throw std::invalid_argument("switching length != n");
    Matrix w = w_;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) w(i, j) *= signs[i] * signs[j];
    return SignedGraph(w);
}

BalanceReport balanced_components(const SignedGraph& g) {
    const int n = g.n();
    BalanceReport r;
    r.component.assign(n, -1);
    r.switching.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        if (r.component[s] >= 0) continue;
        const int c = r.components++;
        bool ok = true;
        std::queue<int> q;
        q.push(s);
        r.component[s] = c;
        r.switching[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v = 0; v < n; ++v) {
                const double w = g.weight(u, v);
                if (w == 0) continue;
                const int want = w > 0 ? r.switching[u] : -r.switching[u];
                if (r.component[v] < 0) {
                    r.component[v] = c;
                    r.switching[v] = want;
                    q.push(v);
                } else if (r.switching[v] != want) {
                    ok = false;
                }
            }
        }
        r.is_balanced.push_back(ok);
        r.balanced += ok;
    }
    return r;
}

// ---------------------------------------------------------------- ChemicalHypergraph

ChemicalHypergraph::ChemicalHypergraph(int n, std::vector<ChemicalEdge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 1 || n > setfn::kMaxGround) throw std::invalid_argument("chemical hypergraph: n must be in [1, 24]");
    const Mask full = setfn::full_mask(n);
    for (const auto& e : edges_) {
        if (e.in == 0 || e.out == 0) throw std::invalid_argument("chemical hypergraph: empty input or output set");
        if (((e.in | e.out) & ~full) != 0) throw std::out_of_range("chemical hypergraph: vertex out of range");
        if (std::popcount(e.in | e.out) < 2) throw std::invalid_argument("chemical hypergraph: edge spans < 2 vertices");
    }
}

Vec ChemicalHypergraph::degrees() const {
    Vec d(n_, 0.0);
    for (const auto& e : edges_)
        for (int i = 0; i < n_; ++i)
            if (((e.in | e.out) >> i) & 1) d[i] += 1;
    return d;
}

Matrix ChemicalHypergraph::incidence() const {
    Matrix m(n_, static_cast<int>(edges_.size()));
    for (std::size_t c = 0; c < edges_.size(); ++c)
        for (int i = 0; i < n_; ++i)
            m(i, static_cast<int>(c)) = static_cast<double>((edges_[c].in >> i) & 1) - static_cast<double>((edges_[c].out >> i) & 1);
    return m;
}

WeightedGraph ChemicalHypergraph::underlying_graph() const {
    WeightedGraph g(n_);
    for (const auto& e : edges_) {
        const Mask s = e.in | e.out;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (((s >> i) & 1) && ((s >> j) & 1)) g.set_weight(i, j, 1);
    }
    return g;
}

ChemicalHypergraph ChemicalHypergraph::from_graph(const WeightedGraph& g) {
    std::vector<ChemicalEdge> edges;
    for (const auto& e : g.edges()) {
        const Mask m = (Mask{1} << e.i) | (Mask{1} << e.j);
        edges.push_back({m, m});
    }
    return ChemicalHypergraph(g.n(), std::move(edges));
}

// ---------------------------------------------------------------- UniformHypergraph

Vec UniformHypergraph::degrees() const {
    Vec d(n, 0.0);
    for (const auto& e : edges)
        for (int v : e) d[v] += 1;
    return d;
}

bool UniformHypergraph::independent(Mask s) const {
    for (const auto& e : edges) {
        bool inside = true;
        for (int v : e) inside = inside && ((s >> v) & 1);
        if (inside) return false;
    }
    return true;
}

// ---------------------------------------------------------------- SymmetricTensor

void SymmetricTensor::set(std::vector<int> idx, double v) {
    if (static_cast<int>(idx.size()) != k_) throw std::invalid_argument("tensor index length != order");
    for (int i : idx)
        if (i < 0 || i >= n_) throw std::out_of_range("tensor index out of range");
    std::sort(idx.begin(), idx.end());
    if (v == 0)
        entries_.erase(idx);
    else
        entries_[idx] = v;
}

double SymmetricTensor::get(std::vector<int> idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    return it == entries_.end() ? 0.0 : it->second;
}

std::size_t SymmetricTensor::expanded_nonzeros() const {
    std::size_t c = 0;
    for (const auto& [idx, v] : entries_) c += static_cast<std::size_t>(orderings(idx));
    return c;
}

Vec SymmetricTensor::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("tensor apply: dimension mismatch");
    Vec y(n_, 0.0);
    for (const auto& [idx, v] : entries_) {
        for (std::size_t p = 0; p < idx.size(); ++p) {
            if (p > 0 && idx[p] == idx[p - 1]) continue;  // one term per distinct leading index
            std::vector<int> rest;
            rest.reserve(idx.size() - 1);
            for (std::size_t q = 0; q < idx.size(); ++q)
                if (q != p) rest.push_back(idx[q]);
            double prod = static_cast<double>(orderings(rest));
            for (int r : rest) prod *= x[r];
            y[idx[p]] += v * prod;
        }
    }
    return y;
}

double SymmetricTensor::form(const Vec& x) const {
    double s = 0;
    for (const auto& [idx, v] : entries_) {
        double prod = static_cast<double>(orderings(idx));
        for (int r : idx) prod *= x[r];
        s += v * prod;
    }
    return s;
}

bool SymmetricTensor::nonnegative() const {
    for (const auto& [idx, v] : entries_)
        if (v < 0) return false;
    return true;
}

SymmetricTensor SymmetricTensor::from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("tensor from matrix: not square");
    SymmetricTensor t(2, m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) throw std::invalid_argument("tensor from matrix: not symmetric");
            if (m(i, j) != 0) t.set({i, j}, m(i, j));
        }
    return t;
}

SymmetricTensor SymmetricTensor::diagonal(int order, const Vec& d) {
    SymmetricTensor t(order, static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) t.set(std::vector<int>(order, static_cast<int>(i)), d[i]);
    return t;
}

std::pair<SymmetricTensor, Vec> adjacency_tensor(const UniformHypergraph& h) {
    SymmetricTensor t(h.k, h.n);
    for (const auto& e : h.edges) {
        if (static_cast<int>(e.size()) != h.k) throw std::invalid_argument("hyperedge size != k");
        std::set<int> distinct(e.begin(), e.end());
        if (static_cast<int>(distinct.size()) != h.k) throw std::invalid_argument("hyperedge has repeated vertices");
        t.set(e, 1.0);
    }
    return {t, h.degrees()};
}

// ---------------------------------------------------------------- SimplicialComplex

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<std::vector<int>>& simplices) {
    std::vector<std::set<std::vector<int>>> by_dim;
    for (auto s : simplices) {
        if (s.empty()) continue;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex has repeated vertices");
        if (s.front() < 0) throw std::out_of_range("negative vertex id");
        if (s.size() > 20) throw cap_exceeded("simplex dimension exceeds 19");
        const int k = static_cast<int>(s.size());
        for (std::uint32_t m = 1; m < (1u << k); ++m) {
            std::vector<int> face;
            for (int j = 0; j < k; ++j)
                if ((m >> j) & 1) face.push_back(s[j]);
            const std::size_t d = face.size() - 1;
            if (by_dim.size() <= d) by_dim.resize(d + 1);
            by_dim[d].insert(face);
        }
    }
    SimplicialComplex c;
    c.simplices_.resize(by_dim.size());
    c.index_.resize(by_dim.size());
    for (std::size_t d = 0; d < by_dim.size(); ++d) {
        c.simplices_[d].assign(by_dim[d].begin(), by_dim[d].end());
        for (std::size_t i = 0; i < c.simplices_[d].size(); ++i) c.index_[d][c.simplices_[d][i]] = static_cast<int>(i);
    }
    return c;
}

int SimplicialComplex::vertex_count() const { return simplices_.empty() ? 0 : static_cast<int>(simplices_[0].size()); }

const std::vector<std::vector<int>>& SimplicialComplex::simplices(int d) const {
    static const std::vector<std::vector<int>> none;
    if (d < 0 || d >= static_cast<int>(simplices_.size())) return none;
    return simplices_[d];
}

int SimplicialComplex::index_of(const std::vector<int>& s) const {
    const int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(index_.size())) return -1;
    auto it = index_[d].find(s);
    return it == index_[d].end() ? -1 : it->second;
}

std::vector<std::vector<int>> SimplicialComplex::maximal() const {
    std::vector<std::vector<int>> out;
    for (int d = 0; d <= dim(); ++d) {
        const auto up = up_degrees(d);
        for (std::size_t i = 0; i < simplices_[d].size(); ++i)
            if (up[i] == 0) out.push_back(simplices_[d][i]);
    }
    return out;
}

IntMatrix SimplicialComplex::boundary_matrix(int d) const {
    if (d < 1 || d > dim()) throw std::out_of_range("boundary_matrix: d must be in [1, dim K]");
    const auto& cols = simplices_[d];
    IntMatrix b(static_cast<int>(simplices_[d - 1].size()), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        for (int j = 0; j <= d; ++j) {
            std::vector<int> face;
            for (int q = 0; q <= d; ++q)
                if (q != j) face.push_back(cols[c][q]);
            b(index_[d - 1].at(face), static_cast<int>(c)) = (j % 2 == 0) ? 1 : -1;
        }
    }
    return b;
}

std::vector<int> SimplicialComplex::up_degrees(int d) const {
    std::vector<int> deg(simplices(d).size(), 0);
    if (d + 1 > dim()) return deg;
    for (const auto& s : simplices_[d + 1])
        for (int j = 0; j <= d + 1; ++j) {
            std::vector<int> face;
            for (int q = 0; q <= d + 1; ++q)
                if (q != j) face.push_back(s[q]);
            ++deg[index_[d].at(face)];
        }
    return deg;
}

SignedGraph anti_signed_graph(const SimplicialComplex& k, int d) {
    if (d < 0 || d + 1 > k.dim()) throw std::out_of_range("anti_signed_graph: needs (d+1)-simplices");
    const IntMatrix b = k.boundary_matrix(d + 1);
    SignedGraph g(b.rows());
    for (int s = 0; s < b.cols(); ++s) {
        std::vector<int> faces;
        for (int r = 0; r < b.rows(); ++r)
            if (b(r, s) != 0) faces.push_back(r);
        for (std::size_t a = 0; a < faces.size(); ++a)
            for (std::size_t c = a + 1; c < faces.size(); ++c) {
                // two d-simplices span at most one (d+1)-simplex, so no weight is overwritten
                if (g.weight(faces[a], faces[c]) != 0) throw std::logic_error("anti_signed_graph: repeated coface");
                g.set_weight(faces[a], faces[c], static_cast<double>(b(faces[a], s) * b(faces[c], s)));
            }
    }
    return g;
}

SignedGraph up_signed_graph(const SimplicialComplex& k, int d) { return anti_signed_graph(k, d).negated(); }

// ---------------------------------------------------------------- Huang construction

IntMatrix huang_signing(int m) {
    if (m < 1 || m > 10) throw std::out_of_range("huang_signing: m must be in [1, 10]");
    IntMatrix w{{0, 1}, {1, 0}};
    for (int step = 2; step <= m; ++step) {
        const int h = w.rows();
        IntMatrix next(2 * h, 2 * h);
        for (int i = 0; i < h; ++i) {
            for (int j = 0; j < h; ++j) {
                next(i, j) = w(i, j);
                next(h + i, h + j) = -w(i, j);
            }
            next(i, h + i) = 1;
            next(h + i, i) = 1;
        }
        w = std::move(next);
    }
    return w;
}

WeightedGraph cartesian_product(const WeightedGraph& g, const WeightedGraph& h) {
    const int a = g.n(), b = h.n();
    if (static_cast<long long>(a) * b > 4096) throw cap_exceeded("cartesian_product: more than 4096 vertices");
    WeightedGraph p(a * b);
    // vertex (u, v) has index u + a*v
    for (int v = 0; v < b; ++v)
        for (const auto& e : g.edges()) p.set_weight(e.i + a * v, e.j + a * v, e.w);
    for (int u = 0; u < a; ++u)
        for (const auto& e : h.edges()) p.set_weight(u + a * e.i, u + a * e.j, e.w);
    return p;
}

WeightedGraph hypercube(int m, double w) {
    if (m < 1 || m > 12) throw cap_exceeded("hypercube: m must be in [1, 12]");
    WeightedGraph edge = WeightedGraph::from_edges(2, {{0, 1, w}});
    WeightedGraph q = edge;
    for (int i = 2; i <= m; ++i) q = cartesian_product(q, edge);
    return q;
}

}  // namespace artifact::structures
