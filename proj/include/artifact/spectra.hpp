#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "artifact/linalg.hpp"
#include "artifact/rational.hpp"
#include "artifact/structures.hpp"

namespace artifact::spectra {

using linalg::Matrix;
using linalg::Vec;

enum class PairTag { QuadraticForm, PiecewiseLinear, PowerForm, TensorForm, Composite };

/// A Clarke subdifferential as center + sum_j t_j seg_j (t_j in [-1,1]) + sum_f conv(hulls[f]).
/// The zonotope part keeps tie-heavy points (e.g. constant vectors) polynomial in size.
struct Subdiff {
    Vec center;
    std::vector<Vec> segments;
    std::vector<std::vector<Vec>> hulls;

    explicit Subdiff(int n = 0) : center(n, 0.0) {}
    /// center plus the first vertex of every hull (segments at t = 0).
    Vec representative() const;
    /// All vertices of the set, up to cap (throws cap_exceeded beyond it).
    std::vector<Vec> generators(std::size_t cap = 1u << 14) const;
    /// Applies x -> M^T x to every part (chain rule for F(Mx)).
    Subdiff pulled_back(const Matrix& m) const;
};

/// Two positively p-homogeneous functions with subgradient oracles.
struct HomogeneousPair {
    int n = 0;
    double p = 1;
    PairTag tag = PairTag::Composite;
    std::function<double(const Vec&)> F, G;
    std::function<Subdiff(const Vec&)> dF, dG;
    // Optional fast paths returning one element of dF / dG.
    std::function<Vec(const Vec&)> gradF, gradG;

    Vec one_subgradient_F(const Vec& x) const { return gradF ? gradF(x) : dF(x).representative(); }
    Vec one_subgradient_G(const Vec& x) const { return gradG ? gradG(x) : dG(x).representative(); }
};

struct EigenPair {
    double lambda = 0;
    Vec x;
    double residual = 0;
};

// ---------------------------------------------------------------- pair builders

/// F = sum w_ij |x_i - x_j|^p; G = sum deg_i |x_i|^p (normalized) or sum |x_i|^p.
HomogeneousPair graph_p_laplacian(const structures::WeightedGraph& g, double p, bool normalized = true);
/// F = sum w_ij |x_i + x_j|^p with the same G.
HomogeneousPair graph_signless_p_laplacian(const structures::WeightedGraph& g, double p, bool normalized = true);
/// F = x'Ax, G = x'Bx.
HomogeneousPair quadratic_pair(const Matrix& a, const Matrix& b);
/// F = sum_e |max_{e_in} x - min_{e_out} x|^p, G = sum deg_i |x_i|^p.
HomogeneousPair chemical_p_laplacian(const structures::ChemicalHypergraph& h, double p);
/// (F o M, G o M) for an invertible M.
HomogeneousPair compose_linear(const HomogeneousPair& pair, const Matrix& m);

// ---------------------------------------------------------------- quadratic pairs

struct GeneralizedEigen {
    Vec values;      // ascending
    Matrix vectors;  // B-orthonormal columns
    double max_residual = 0;  // max_i ||A v - lambda B v|| / ||A||
};

/// All generalized eigenpairs of (A, B) via Jacobi on B^{-1/2} A B^{-1/2}.
GeneralizedEigen quadratic_pair_spectrum(const Matrix& a, const Matrix& b);

/// Dimension of the eigenspace of lambda (eigenvalues within tol).
int eigenspace_dimension(const GeneralizedEigen& e, double lambda, double tol = 1e-8);

// ---------------------------------------------------------------- certification

/// min over the subdifferentials of || u - lambda v ||_inf, solved as a linear program.
double eigen_residual(const HomogeneousPair& pair, double lambda, const Vec& x);

// ---------------------------------------------------------------- projections

struct ProjectionResult {
    double value = 0;
    double t = 0;  // minimizer of sum w_i |x_i - t v_i|^p
};

/// min_t sum_i w_i |x_i - t v_i|^p: weighted mean (p = 2), weighted median (p = 1), ternary search otherwise.
ProjectionResult g_pi_projection(const Vec& w, double p, const Vec& v, const Vec& x);

/// G_Pi(x) = inf_{z in Pi} G(x + z) with its minimizing shift.
struct SubspaceProjection {
    Matrix basis;  // n x dim(Pi); zero columns for Pi = {0}
    std::function<std::pair<double, Vec>(const Vec&)> evaluate;  // (G_Pi(x), z*)
};

/// Pi = {0}.
SubspaceProjection no_projection(const HomogeneousPair& pair);
/// Pi = span(v) for G = sum w_i |x_i|^p.
SubspaceProjection weighted_power_projection(const Vec& w, double p, const Vec& v);

// ---------------------------------------------------------------- Dinkelbach / RatioDCA

struct DinkelbachParams {
    int max_outer = 200;
    double rtol = 1e-13;
    double inner_tol = 1e-12;
    int inner_max_iter = 200000;
    int random_starts = 64;
    std::uint64_t seed = 42;
};

struct DinkelbachResult {
    EigenPair estimate;          // x is the G-optimal representative x + z*
    std::vector<double> ratios;  // r^0 >= r^1 >= ...
    bool converged = false;
    int outer_iterations = 0;
};

/// Inverse-power style iteration on F / G_Pi from a single start.
/// Requires F convex and vanishing along Pi, G convex and positive off Pi.
DinkelbachResult dinkelbach_ratiodca(const HomogeneousPair& pair, const SubspaceProjection& proj, const Vec& x0,
                                     const DinkelbachParams& params = {});

/// Runs the given starts plus params.random_starts seeded starts; returns the smallest final ratio.
DinkelbachResult dinkelbach_multistart(const HomogeneousPair& pair, const SubspaceProjection& proj,
                                       const std::vector<Vec>& starts, const DinkelbachParams& params = {});

// ---------------------------------------------------------------- second eigenvalue (p = 2)

struct SecondEigenReport {
    double spectrum_index = 0;   // lambda_{dim Pi + 1}
    double deflation = 0;        // min over x orthogonal to Pi of F(x) / G_Pi(x)
    double constrained = 0;      // min F/G over {x : grad G(x) orthogonal to Pi}
    double mountain_pass = 0;    // min over y orthogonal to x_1 of F(y) / min_t G(y - t x_1)
    double gap = 0;              // max pairwise difference of the four
    bool hypotheses_ok = true;   // F vanishes on Pi and B is positive definite
    std::string note;
};

/// Compares the characterizations for the quadratic pair (L, D) and subspace Pi (columns).
SecondEigenReport second_eigen_characterizations(const Matrix& l, const Matrix& d, const Matrix& pi);

// ---------------------------------------------------------------- Collatz-Wielandt

struct CollatzResult {
    double lambda = 0;
    Vec x;
    double lower = 0;  // min_i (C x^{k-1})_i / (D x^{k-1})_i
    double upper = 0;  // max_i of the same ratio
    int iterations = 0;
    bool converged = false;
};

/// Shifted power iteration for C x^{k-1} = lambda D x^{k-1} with D = diag(d).
CollatzResult collatz_wielandt_max(const structures::SymmetricTensor& c, const Vec& d, double tol = 1e-13,
                                   int max_iter = 200000);
/// Matrix case (k = 2) for any entrywise nonnegative square matrix, D = I.
CollatzResult collatz_wielandt_max(const Matrix& w, double tol = 1e-13, int max_iter = 200000);

// ---------------------------------------------------------------- ternary enumeration

struct TernaryEigen {
    double lambda = 0;
    std::optional<Rational> exact;  // set when F and G are integral at the witness
    Vec witness;
    double residual = 0;
};

struct TernaryResult {
    std::vector<TernaryEigen> eigenvalues;  // ascending, deduplicated
    long long points = 0;
    bool exact_domain = false;  // pair tagged piecewise-linear of Laplacian type
    std::string note;
};

inline constexpr int kTernaryMaxN = 8;

/// Certifies F(x)/G(x) at every nonzero x in {-1,0,1}^n and keeps those with residual <= tol.
TernaryResult ternary_eigen_enumerate(const HomogeneousPair& pair, double tol = 1e-9);

// ---------------------------------------------------------------- duality

struct DualityReport {
    double primal = 0;  // max ||T x||_p / ||x||_q
    double dual = 0;    // max ||T' y||_{q*} / ||y||_{p*}
    double gap = 0;
    bool exact = false;  // p = q = 2 through singular values
};

double conjugate_exponent(double p);

/// Multi-start nonlinear power ascent on both sides (extreme points added for polyhedral balls).
DualityReport duality_spectrum_check(const Matrix& t, double p, double q, std::uint64_t seed = 42, int starts = 64);

struct IncidenceSpectra {
    Vec vertex;  // nonzero eigenvalues of B B'
    Vec edge;    // nonzero eigenvalues of B' B
    double gap = 0;
    bool same_count = false;
};

/// p = 2 vertex/edge Laplacian correspondence for an incidence matrix.
IncidenceSpectra incidence_spectra(const Matrix& b, double zero_tol = 1e-9);

enum class Ball { L2, Linf };

struct DualInnerReport {
    double primal = 0;
    double dual = 0;
    double gap = 0;
    bool maximize = false;
};

/// min (or max) over x in B of ||T x||_p - x.u against the dual
/// -min_{||y||_{p*} <= 1} h_B(u - T'y) (or max_{||y||_{p*} <= 1} h_B(T'y - u)).
DualInnerReport dual_inner_problem_check(double p, const Matrix& t, const Vec& u, Ball ball, bool maximize = false,
                                         std::uint64_t seed = 42);

}  // namespace artifact::spectra
