#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "artifact/linalg.hpp"
#include "artifact/setfn.hpp"

namespace artifact::structures {

using linalg::IntMatrix;
using linalg::Matrix;
using linalg::Vec;
using setfn::Mask;

struct WeightedEdge {
    int i = 0;
    int j = 0;
    double w = 1;
};

/// Symmetric nonnegative weights with zero diagonal.
class WeightedGraph {
public:
    WeightedGraph() = default;
    explicit WeightedGraph(int n) : n_(n), w_(n, n) {}
    explicit WeightedGraph(Matrix w);
    static WeightedGraph from_edges(int n, const std::vector<WeightedEdge>& edges);

    int n() const { return n_; }
    double weight(int i, int j) const { return w_(i, j); }
    void set_weight(int i, int j, double w);
    double degree(int i) const;
    Vec degrees() const;
    const Matrix& weights() const { return w_; }
    std::vector<WeightedEdge> edges() const;  // i < j, w > 0
    std::vector<std::pair<int, int>> edge_pairs() const;
    bool adjacent(int i, int j) const { return w_(i, j) > 0; }

    int component_count() const;
    bool connected() const { return component_count() == 1; }
    bool bipartite() const;

    /// Unnormalized Laplacian D - W.
    Matrix laplacian() const;
    /// Signless Laplacian D + W.
    Matrix signless_laplacian() const;

private:
    int n_ = 0;
    Matrix w_;
};

/// Symmetric signed weights with zero diagonal.
class SignedGraph {
public:
    SignedGraph() = default;
    explicit SignedGraph(int n) : n_(n), w_(n, n) {}
    explicit SignedGraph(Matrix w);

    int n() const { return n_; }
    double weight(int i, int j) const { return w_(i, j); }
    void set_weight(int i, int j, double w);
    const Matrix& weights() const { return w_; }
    /// deg_i = sum_j |w_ij|.
    double degree(int i) const;
    std::vector<WeightedEdge> edges() const;
    SignedGraph negated() const;
    /// Applies the switching x -> s_i s_j w_ij.
    SignedGraph switched(const std::vector<int>& signs) const;

private:
    int n_ = 0;
    Matrix w_;
};

struct BalanceReport {
    int components = 0;
    int balanced = 0;
    std::vector<int> component;       // component id per vertex
    std::vector<int> switching;       // +-1 per vertex, valid on balanced components
    std::vector<bool> is_balanced;    // per component
};

/// Spanning-tree sign propagation per connected component.
BalanceReport balanced_components(const SignedGraph& g);

struct ChemicalEdge {
    Mask in = 0;
    Mask out = 0;
};

/// Hypergraph whose edges carry input and output vertex sets.
class ChemicalHypergraph {
public:
    ChemicalHypergraph() = default;
    ChemicalHypergraph(int n, std::vector<ChemicalEdge> edges);

    int n() const { return n_; }
    const std::vector<ChemicalEdge>& edges() const { return edges_; }
    /// deg(i) = #{e : i in e_in u e_out}.
    Vec degrees() const;
    /// Entry [i in e_in] - [i in e_out]; rows are vertices.
    Matrix incidence() const;
    /// Vertices i ~ j when some edge contains both.
    WeightedGraph underlying_graph() const;

    static ChemicalHypergraph from_graph(const WeightedGraph& g);

private:
    int n_ = 0;
    std::vector<ChemicalEdge> edges_;
};

/// k-uniform hypergraph with 0-based vertex lists.
struct UniformHypergraph {
    int n = 0;
    int k = 0;
    std::vector<std::vector<int>> edges;

    Vec degrees() const;
    bool independent(Mask s) const;  // contains no hyperedge
};

/// Symmetric order-k tensor over R^n stored by sorted index multisets.
class SymmetricTensor {
public:
    SymmetricTensor() = default;
    SymmetricTensor(int order, int dim) : k_(order), n_(dim) {}

    int order() const { return k_; }
    int dim() const { return n_; }
    /// Sets the value of every permutation of idx.
    void set(std::vector<int> idx, double v);
    double get(std::vector<int> idx) const;
    const std::map<std::vector<int>, double>& entries() const { return entries_; }
    /// Number of index tuples with a nonzero value (all permutations counted).
    std::size_t expanded_nonzeros() const;

    /// (C x^{k-1})_i = sum over i_2..i_k of c_{i i_2 .. i_k} x_{i_2} .. x_{i_k}.
    Vec apply(const Vec& x) const;
    /// C x^k.
    double form(const Vec& x) const;
    bool nonnegative() const;

    static SymmetricTensor from_matrix(const Matrix& m);
    /// Diagonal tensor with d_{i..i} = d_i.
    static SymmetricTensor diagonal(int order, const Vec& d);

private:
    int k_ = 0;
    int n_ = 0;
    std::map<std::vector<int>, double> entries_;
};

/// Entry 1 on every permutation of every hyperedge; the diagonal tensor of degrees is returned too.
std::pair<SymmetricTensor, Vec> adjacency_tensor(const UniformHypergraph& h);

/// Downward closed family of simplices, stored per dimension in lexicographic order.
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    /// Closure of the given simplices (vertex lists, 0-based).
    static SimplicialComplex from_maximal(const std::vector<std::vector<int>>& simplices);

    int dim() const { return static_cast<int>(simplices_.size()) - 1; }
    int vertex_count() const;
    const std::vector<std::vector<int>>& simplices(int d) const;
    int index_of(const std::vector<int>& s) const;  // -1 when absent
    std::vector<std::vector<int>> maximal() const;

    /// B_d: rows (d-1)-simplices, columns d-simplices, entry (-1)^j for dropping the j-th vertex.
    IntMatrix boundary_matrix(int d) const;
    /// deg_tau = number of (d+1)-cofaces of each d-simplex.
    std::vector<int> up_degrees(int d) const;

private:
    std::vector<std::vector<std::vector<int>>> simplices_;
    std::vector<std::map<std::vector<int>, int>> index_;
};

/// Graph on the d-simplices; tau ~ tau' through their common (d+1)-coface, signed by the
/// product of their boundary signs in that coface.
SignedGraph anti_signed_graph(const SimplicialComplex& k, int d);
/// The opposite-sign variant, built by negation.
SignedGraph up_signed_graph(const SimplicialComplex& k, int d);

/// Recursive signing with |W'| the hypercube adjacency and W'^2 = m I.
IntMatrix huang_signing(int m);
WeightedGraph hypercube(int m, double w = 1);
WeightedGraph cartesian_product(const WeightedGraph& g, const WeightedGraph& h);

}  // namespace artifact::structures
