#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "artifact/rational.hpp"

namespace artifact::setfn {

using Mask = std::uint32_t;

inline constexpr int kMaxGround = 24;
inline constexpr int kDenseBits = 24;       // k*n for SetTupleFunction tables
inline constexpr int kDenseTrits = 14;      // k*n for DisjointPairFunction tables
inline constexpr int kChainBits = 20;       // k*n for enumerate_chains

struct GroundSet {
    int n = 0;
    std::vector<std::string> labels;

    GroundSet() = default;
    explicit GroundSet(int n_, std::vector<std::string> labels_ = {});
    Mask full() const { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
};

struct DisjointPair {
    Mask plus = 0;
    Mask minus = 0;
    bool operator==(const DisjointPair&) const = default;
};

inline Mask full_mask(int n) { return (Mask{1} << n) - 1; }
int popcount(Mask m);

/// Real-valued function on k-tuples of subsets of {0..n-1}.
/// Dense tables are indexed by the concatenation A_0 | A_1<<n | ... .
class SetTupleFunction {
public:
    using ExactFn = std::function<Rational(std::span<const Mask>)>;
    using RealFn = std::function<double(std::span<const Mask>)>;

    /// Tabulates fn into an exact rational table (k*n <= 24).
    static SetTupleFunction exact(int n, int k, const ExactFn& fn);
    /// Tabulates fn into a double table (k*n <= 24).
    static SetTupleFunction real(int n, int k, const RealFn& fn);
    /// Wraps fn without tabulating; no size cap beyond n <= 24.
    static SetTupleFunction callback(int n, int k, RealFn fn);
    /// Builds from an explicit exact table in index order.
    static SetTupleFunction from_table(int n, int k, std::vector<Rational> values);

    int n() const { return n_; }
    int k() const { return k_; }
    bool is_exact() const { return !q_.empty(); }
    bool is_dense() const { return !d_.empty(); }

    double eval(std::span<const Mask> tuple) const;
    double eval(std::initializer_list<Mask> tuple) const { return eval(std::span<const Mask>(tuple.begin(), tuple.size())); }
    Rational eval_exact(std::span<const Mask> tuple) const;
    Rational eval_exact(std::initializer_list<Mask> tuple) const {
        return eval_exact(std::span<const Mask>(tuple.begin(), tuple.size()));
    }

    std::size_t index(std::span<const Mask> tuple) const;
    std::size_t table_size() const { return d_.size(); }
    const std::vector<Rational>& exact_table() const { return q_; }
    const std::vector<double>& real_table() const { return d_; }

private:
    void check(std::span<const Mask> tuple) const;

    int n_ = 0;
    int k_ = 0;
    std::vector<Rational> q_;
    std::vector<double> d_;
    RealFn cb_;
};

/// Real-valued function on k-tuples of disjoint pairs (A+, A-).
/// Each pair is encoded per element as a trit (0 absent, 1 in A+, 2 in A-).
class DisjointPairFunction {
public:
    using ExactFn = std::function<Rational(std::span<const DisjointPair>)>;
    using RealFn = std::function<double(std::span<const DisjointPair>)>;

    static DisjointPairFunction exact(int n, int k, const ExactFn& fn);
    static DisjointPairFunction real(int n, int k, const RealFn& fn);
    static DisjointPairFunction callback(int n, int k, RealFn fn);

    int n() const { return n_; }
    int k() const { return k_; }
    bool is_exact() const { return !q_.empty(); }

    double eval(std::span<const DisjointPair> tuple) const;
    Rational eval_exact(std::span<const DisjointPair> tuple) const;
    std::size_t index(std::span<const DisjointPair> tuple) const;

private:
    void check(std::span<const DisjointPair> tuple) const;

    int n_ = 0;
    int k_ = 0;
    std::vector<Rational> q_;
    std::vector<double> d_;
    RealFn cb_;
};

/// Returns the value of f at the tuple (thin wrapper kept for symmetry with the CLI).
double eval_tuple(const SetTupleFunction& f, std::span<const Mask> tuple);

/// f(A u B) + f(A n B) == f(A) + f(B) in the given component, for all other components fixed.
bool modularity_check(const SetTupleFunction& f, int component);
/// f(A u B) + f(A n B) <= f(A) + f(B) in the given component.
bool submodularity_check(const SetTupleFunction& f, int component);

/// All k-tuples whose members are totally ordered by inclusion, in index order.
std::vector<std::vector<Mask>> enumerate_chains(int n, int k);
bool is_chain(std::span<const Mask> tuple);

// Standard combinatorial functions, built exactly. Edges are 0-based.
using Edge = std::pair<int, int>;

/// f(A) = #A.
SetTupleFunction cardinality(int n);
/// f(A) = number of edges with exactly one endpoint in A.
SetTupleFunction cut_function(int n, const std::vector<Edge>& edges);
/// f(A,B) = #{(i,j) ordered : i in A, j in B, ij an edge}.
SetTupleFunction edge_count(int n, const std::vector<Edge>& edges);
/// f(A_1..A_k) = #{(i_1..i_k) : i_l in A_l, {i_1..i_k} a hyperedge}.
SetTupleFunction hyperedge_count(int n, int k, const std::vector<std::vector<int>>& hyperedges);
/// f(A,B) = #(A n B).
SetTupleFunction intersection_count(int n);
/// f(A,B) = #A * #B.
SetTupleFunction cardinality_product(int n);
/// f(A,B) = c for nonempty A,B (c*1 with the empty convention giving 0).
SetTupleFunction constant_pair(int n, Rational c);

}  // namespace artifact::setfn
