#pragma once

#include <optional>
#include <string>
#include <vector>

#include "artifact/rational.hpp"
#include "artifact/spectra.hpp"
#include "artifact/structures.hpp"

namespace artifact::constants {

using linalg::Matrix;
using linalg::Vec;
using setfn::Mask;
using structures::ChemicalHypergraph;
using structures::SimplicialComplex;
using structures::UniformHypergraph;
using structures::WeightedGraph;

inline constexpr int kCheegerMaxN = 20;
inline constexpr int kKWayMaxN = 12;
inline constexpr int kMaxcutMaxN = 24;
inline constexpr int kCliqueMaxN = 24;
inline constexpr int kSimplicialMaxFaces = 14;
inline constexpr int kLevelIndependenceMaxN = 10;
inline constexpr long long kMultisetMaxPoints = 4000000;

struct CheegerReport {
    double value = 0;
    std::optional<Rational> exact;  // set when all weights are integers
    std::vector<Mask> sets;         // optimizer; pairs are stored consecutively for the dual variants
    long long enumerated = 0;
    std::string variant;
};

/// |boundary A| / min(vol A, vol V\A); +inf when the denominator vanishes.
double conductance(const WeightedGraph& g, Mask a);
/// |boundary S| / vol S.
double expansion(const WeightedGraph& g, Mask s);
/// 2 |E(S, T)| / vol(S u T).
double bipartiteness_ratio(const WeightedGraph& g, Mask s, Mask t);

/// Minimum conductance over nonempty proper subsets; 0 for disconnected graphs.
CheegerReport cheeger(const WeightedGraph& g);
/// min over disjoint nonempty S_1..S_k of max_i |boundary S_i| / vol S_i.
CheegerReport k_way_cheeger(const WeightedGraph& g, int k);
/// max over disjoint pairs (V_1,V_2),..,(V_2k-1,V_2k) of min_i 2|E(V_2i-1, V_2i)| / vol(V_2i-1 u V_2i).
CheegerReport dual_cheeger_k(const WeightedGraph& g, int k);

struct MaxcutReport {
    double value = 0;
    Mask witness = 0;
    double continuous_at_witness = 0;  // continuous form at x = 1_S, y = 1_{V\S}
    double continuous_sample_max = 0;  // best of the random samples
    int samples = 0;
    bool samples_bounded = true;       // every sample <= value (+ 1e-12 relative)
};

/// sum w_ij x_i y_j / (||x||_inf ||y||_inf) for x, y >= 0 with x'y = 0.
double maxcut_continuous_form(const WeightedGraph& g, const Vec& x, const Vec& y);
MaxcutReport maxcut(const WeightedGraph& g, std::uint64_t seed = 42, int samples = 2000);

struct IndependenceReport {
    int alpha = 0;
    int omega = 0;
    Mask independent_witness = 0;
    Mask clique_witness = 0;
};

IndependenceReport independence_clique(const WeightedGraph& g);
/// alpha: largest set containing no hyperedge; omega: largest set whose k-subsets are all hyperedges.
IndependenceReport independence_clique(const UniformHypergraph& h);

struct LevelIndependenceReport {
    int alpha = 0;
    std::vector<Mask> family;  // pairwise disjoint blocks U_1..U_alpha
    long long candidates = 0;  // single blocks passing the level test
};

/// Largest k with disjoint U_1..U_k such that F/G = lambda on span(1_{U_1},..,1_{U_k}) minus G = 0.
/// Span constancy is tested on every {-1,0,1} combination plus seeded Gaussian combinations.
LevelIndependenceReport lambda_level_independence(const spectra::HomogeneousPair& pair, double lambda,
                                                  double tol = 1e-9, std::uint64_t seed = 42);

struct MotzkinStrausReport {
    int omega = 0;
    Rational target;              // 1 - 1/omega
    double best = 0;              // best x'Ax reached by the ascent
    double uniform_clique = 0;    // x'Ax at the uniform vector on a maximum clique
    int starts = 0;
    int stagnated = 0;            // starts that hit the iteration cap before the step tolerance
};

/// Replicator ascent on x'(A + I/2)x over the simplex, reporting x'Ax (each edge counted in both orders).
MotzkinStrausReport motzkin_straus(const WeightedGraph& g, std::uint64_t seed = 42, int random_starts = 64);

struct IndependenceRepresentation {
    int alpha = 0;
    double min_value = 0;  // min over the simplex of x'(A + I)x, expected 1/alpha
};

/// 1/alpha = min x'(A + I)x over the simplex, through the complement graph.
IndependenceRepresentation independence_representation(const WeightedGraph& g, std::uint64_t seed = 42);

struct LagrangianReport {
    double discrete = 0;  // max over U of #{e in U} / #U^k
    Mask witness = 0;
    double ascent = 0;    // best sum_e prod_{i in e} x_i over the simplex found by Baum-Eagon updates
    int starts = 0;
    int stagnated = 0;
};

LagrangianReport hypergraph_lagrangian(const UniformHypergraph& h, std::uint64_t seed = 42, int random_starts = 64);

/// #boundary A / min(vol A, vol V\A) with deg(i) = #{e : i in e_in u e_out}.
double chemical_ratio(const ChemicalHypergraph& h, Mask a);
bool chemical_boundary(const structures::ChemicalEdge& e, Mask a);
CheegerReport chemical_cheeger(const ChemicalHypergraph& h);

/// beta(A, A') on the anti-signed graph of S_d (simplices as bit positions in lexicographic order).
double simplicial_beta(const SimplicialComplex& k, int d, Mask a, Mask a2);
/// min over disjoint (A_1,A_2),..,(A_2k-1,A_2k) of max_i beta(A_2i-1, A_2i).
CheegerReport simplicial_cheeger(const SimplicialComplex& k, int d, int kk);

struct MultisetLevel {
    int n_bound = 0;
    double value = 0;  // +inf when no multiset has a nonzero coboundary
    std::vector<int> witness;
    long long points = 0;
};

struct SimplicialHReport {
    std::vector<MultisetLevel> levels;  // one entry per N, in the order given
    bool stable = false;                // the last two levels agree
    int reduced_betti = 0;              // dim of reduced (co)homology in degree d; h = 0 when positive
};

/// min over multisets with multiplicities in {-N..N} of |coboundary S| / vol[S], vol[S] taken over the same range.
/// An upper-bound family indexed by N.
SimplicialHReport simplicial_h(const SimplicialComplex& k, int d, const std::vector<int>& n_list = {1, 2});
/// Same construction with the boundary B_d and the down degree d + 1.
SimplicialHReport down_cheeger(const SimplicialComplex& k, int d, const std::vector<int>& n_list = {1, 2});

/// Connected components of supp(x) = {i : |x_i| > tol} in the carrier.
int nodal_domains(const Vec& x, const WeightedGraph& g, double tol = 1e-9);
int nodal_domains(const Vec& x, const ChemicalHypergraph& h, double tol = 1e-9);
int nodal_domains(const Vec& x, const UniformHypergraph& h, double tol = 1e-9);

}  // namespace artifact::constants
