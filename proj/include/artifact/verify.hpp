#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "artifact/extend.hpp"
#include "artifact/linalg.hpp"
#include "artifact/setfn.hpp"
#include "artifact/structures.hpp"

namespace artifact::verify {

using linalg::Matrix;
using linalg::Vec;
using setfn::Mask;
using setfn::SetTupleFunction;

enum class Verdict { Pass, Fail, Skip };

const char* verdict_name(Verdict v);

struct VerificationReport {
    std::string id;        // e.g. "cheeger/graph/17"
    std::string anchor;    // the statement being checked, in words
    std::string instance;  // instance descriptor
    double lhs = 0;
    double rhs = 0;
    double gap = 0;
    double tolerance = 0;
    Verdict verdict = Verdict::Skip;
    double runtime_ms = 0;
    std::map<std::string, double> values;  // auxiliary quantities, sorted by name
    std::string note;

    bool passed() const { return verdict != Verdict::Fail; }
};

inline constexpr double kExactTol = 1e-9;
inline constexpr double kIterativeTol = 1e-6;
inline constexpr double kSlack = 1e-8;

// ---------------------------------------------------------------- perfect domain pairs

/// Discrete max/min of f/g over the family against the extensions on its continuous domain:
/// Chain uses the multilinear extension on nonnegative comonotone tuples, Diagonal the diagonal
/// extension on (x,..,x) with x >= 0.
VerificationReport check_indicator_and_equalities(const SetTupleFunction& f, const SetTupleFunction& g,
                                                  extend::Family family, std::uint64_t seed = 42,
                                                  int samples = 400);

/// max_S average degree of G[S] <= lambda_max(W) <= max degree, each side from an enumeration.
VerificationReport check_spectral_radius_sandwich(const structures::WeightedGraph& g);

// ---------------------------------------------------------------- saddle points

struct ContinuousMinimax {
    double value = 0;   // inf over the first block, sup over the second
    Vec outer;          // an (approximate) optimal first block, normalized to sum 1
    int cones = 0;
    int bisection_steps = 0;
};

/// inf_{x >= 0} sup_{y >= 0} f^M(x,y) / g^M(x,y) for two-block f, g (n <= 6).
/// For each ordering cone of x the inner sup is <= t iff (f - t g)^M(x, 1_B) <= 0 for every B,
/// a linear feasibility problem in x; t is found by bisection.
ContinuousMinimax continuous_inf_sup(const SetTupleFunction& f, const SetTupleFunction& g, double tol = 1e-11);
/// sup_{y >= 0} inf_{x >= 0} of the same ratio (x is still the first block).
ContinuousMinimax continuous_sup_inf(const SetTupleFunction& f, const SetTupleFunction& g, double tol = 1e-11);

struct DiscreteMinimax {
    double min_max = 0;  // min_A max_B f/g
    double max_min = 0;  // max_B min_A f/g
    Mask a_star = 0;     // argmin of the first
    Mask b_star = 0;     // argmax of the second
};

/// Ratios over nonempty A, B; f/0 is +inf (or -inf) for f != 0 and 0/0 pairs are skipped.
DiscreteMinimax discrete_minimax(const SetTupleFunction& f, const SetTupleFunction& g);

VerificationReport check_saddle_transfer(const SetTupleFunction& f, const SetTupleFunction& g,
                                         std::uint64_t seed = 42);

/// min_p max_q p'Cq over probability vectors (p indexes rows), by linear programming.
double payoff_game_value(const Matrix& c);
/// f(A,B) = sum_{i in A, j in B} c_ij with g(A,B) = #A #B.
std::pair<SetTupleFunction, SetTupleFunction> payoff_game(const Matrix& c);

/// f submodular in the first block and supermodular in the second, g modular in both:
/// continuous inf-sup equals sup-inf. Skips when the structure checks fail.
VerificationReport check_sion_case(const SetTupleFunction& f, const SetTupleFunction& g);

// ---------------------------------------------------------------- quasi-concave compositions

enum class Polynomial { Product2, ElementarySymmetric2 };

/// H(z) = P(z) / (z_1 + .. + z_m)^2.
double composition_value(Polynomial p, const Vec& z);

/// min over nonempty A of H(f_1(A),..,f_m(A)) against H of the Lovasz extensions on x >= 0.
VerificationReport check_quasiconcave_composition(Polynomial p, const std::vector<SetTupleFunction>& fs,
                                                  std::uint64_t seed = 42, int samples = 400);

// ---------------------------------------------------------------- suites

/// Suite names: cheeger, chemical-cheeger, nodal-inertia, bipartite, simplicial-identity, huang,
/// k-uniform-inertia, or "all".
std::vector<std::string> suite_names();
std::vector<VerificationReport> run_inequality_suites(const std::string& selector, std::uint64_t seed = 42);

/// The inequality suites followed by the extension, saddle and composition checks.
std::vector<VerificationReport> run_full_suite(std::uint64_t seed = 42);

// Seeded instance generators.
structures::WeightedGraph random_graph(int n, double p, std::uint64_t seed, bool connected, bool no_isolated = true);
structures::WeightedGraph random_bipartite_graph(int n, double p, std::uint64_t seed);
structures::SimplicialComplex random_2_complex(int n, double p, std::uint64_t seed);
structures::ChemicalHypergraph random_chemical_hypergraph(int n, int m, std::uint64_t seed);

}  // namespace artifact::verify
