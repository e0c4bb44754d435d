#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

#include "artifact/errors.hpp"
#include "artifact/rational.hpp"
#include "artifact/setfn.hpp"

namespace artifact::extend {

using setfn::DisjointPair;
using setfn::DisjointPairFunction;
using setfn::Mask;
using setfn::SetTupleFunction;

template <typename T>
using RealTuple = std::vector<std::vector<T>>;

inline constexpr double kMaxProbes = 1e6;

/// Upper level sets of one block sorted non-decreasingly (index breaks ties).
/// upper[i] is V^(i+1) = positions i..n-1 of the sorted order, weight[i] is
/// x_(i+1) - x_(i) with x_(0) = 0, so upper[0] is the whole ground set.
template <typename T>
struct LevelSetDecomposition {
    std::vector<int> perm;
    std::vector<T> sorted;
    std::vector<Mask> upper;
    std::vector<T> weight;
};

namespace detail {

inline double value_of(const SetTupleFunction& f, std::span<const Mask> t, double) { return f.eval(t); }
inline Rational value_of(const SetTupleFunction& f, std::span<const Mask> t, const Rational&) {
    return f.eval_exact(t);
}
inline double value_of(const DisjointPairFunction& f, std::span<const DisjointPair> t, double) { return f.eval(t); }
inline Rational value_of(const DisjointPairFunction& f, std::span<const DisjointPair> t, const Rational&) {
    return f.eval_exact(t);
}

inline double absval(double v) { return std::abs(v); }
inline Rational absval(const Rational& v) { return abs(v); }

inline void check_probes(const std::vector<std::size_t>& sizes) {
    double probes = 1;
    for (auto s : sizes) probes *= static_cast<double>(std::max<std::size_t>(s, 1));
    if (probes > kMaxProbes) throw cap_exceeded("extension requires prod n_l <= 1e6 probes");
}

}  // namespace detail

template <typename T>
LevelSetDecomposition<T> decompose(std::span<const T> x) {
    const int n = static_cast<int>(x.size());
    if (n > setfn::kMaxGround) throw cap_exceeded("block length exceeds 24");
    LevelSetDecomposition<T> d;
    d.perm.resize(n);
    std::iota(d.perm.begin(), d.perm.end(), 0);
    std::stable_sort(d.perm.begin(), d.perm.end(), [&](int a, int b) { return x[a] < x[b]; });
    d.sorted.resize(n);
    d.upper.resize(n);
    d.weight.resize(n);
    Mask suffix = 0;
    for (int i = n - 1; i >= 0; --i) {
        suffix |= Mask{1} << d.perm[i];
        d.upper[i] = suffix;
        d.sorted[i] = x[d.perm[i]];
    }
    for (int i = 0; i < n; ++i) d.weight[i] = i == 0 ? d.sorted[0] : d.sorted[i] - d.sorted[i - 1];
    return d;
}

/// Piecewise multilinear extension: sum over (i_1..i_k) of prod_l w^l_{i_l} f(V^(i_1),..,V^(i_k)).
/// Zero weights skip the table probe, so entries with an empty level set are never read.
template <typename T>
T multilinear(const SetTupleFunction& f, const RealTuple<T>& xs) {
    const int k = f.k();
    if (static_cast<int>(xs.size()) != k) throw std::invalid_argument("multilinear: block count != arity");
    std::vector<std::size_t> sizes;
    for (const auto& b : xs) {
        if (static_cast<int>(b.size()) != f.n()) throw std::invalid_argument("multilinear: block length != n");
        sizes.push_back(b.size());
    }
    detail::check_probes(sizes);
    std::vector<LevelSetDecomposition<T>> dec;
    dec.reserve(k);
    for (const auto& b : xs) dec.push_back(decompose<T>(std::span<const T>(b)));
    std::vector<Mask> tuple(k);
    T total{0};
    std::function<void(int, const T&)> rec = [&](int l, const T& w) {
        if (l == k) {
            total += w * detail::value_of(f, tuple, T{});
            return;
        }
        for (std::size_t i = 0; i < dec[l].weight.size(); ++i) {
            const T& wi = dec[l].weight[i];
            if (wi == T{0}) continue;
            tuple[l] = dec[l].upper[i];
            rec(l + 1, w * wi);
        }
    };
    rec(0, T{1});
    return total;
}

/// Original Lovasz extension (k = 1).
template <typename T>
T lovasz(const SetTupleFunction& f, const std::vector<T>& x) {
    if (f.k() != 1) throw std::invalid_argument("lovasz: arity must be 1");
    return multilinear<T>(f, RealTuple<T>{x});
}

/// Diagonal extension: multilinear(f, (x, .., x)).
template <typename T>
T diagonal(const SetTupleFunction& f, const std::vector<T>& x) {
    return multilinear<T>(f, RealTuple<T>(f.k(), x));
}

/// Multiple integral extension over disjoint pairs: the integral over the box
/// prod [0, ||x^l||_inf] of f(V_t^+(x^1), V_t^-(x^1), ...), summed cell by cell.
/// Cells are half-open [b_{i-1}, b_i) between distinct sorted |x| values.
template <typename T>
T multiple_integral(const DisjointPairFunction& f, const RealTuple<T>& xs) {
    const int k = f.k();
    if (static_cast<int>(xs.size()) != k) throw std::invalid_argument("multiple_integral: block count != arity");
    struct Cell {
        T len;
        DisjointPair pair;
    };
    std::vector<std::vector<Cell>> cells(k);
    std::vector<std::size_t> sizes;
    for (int l = 0; l < k; ++l) {
        const auto& x = xs[l];
        if (static_cast<int>(x.size()) != f.n()) throw std::invalid_argument("multiple_integral: block length != n");
        std::vector<T> br;
        for (const auto& v : x)
            if (!(v == T{0})) br.push_back(detail::absval(v));
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end()), br.end());
        T prev{0};
        for (const auto& b : br) {
            DisjointPair p;
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (x[j] >= b) p.plus |= Mask{1} << j;
                if (-x[j] >= b) p.minus |= Mask{1} << j;
            }
            cells[l].push_back({b - prev, p});
            prev = b;
        }
        sizes.push_back(cells[l].size());
    }
    detail::check_probes(sizes);
    std::vector<DisjointPair> tuple(k);
    T total{0};
    std::function<void(int, const T&)> rec = [&](int l, const T& w) {
        if (l == k) {
            total += w * detail::value_of(f, tuple, T{});
            return;
        }
        for (const auto& c : cells[l]) {
            tuple[l] = c.pair;
            rec(l + 1, w * c.len);
        }
    };
    rec(0, T{1});
    return total;
}

/// Disjoint-pair Lovasz extension (multiple integral with k = 1).
template <typename T>
T disjoint_pair_lovasz(const DisjointPairFunction& f, const std::vector<T>& x) {
    if (f.k() != 1) throw std::invalid_argument("disjoint_pair_lovasz: arity must be 1");
    return multiple_integral<T>(f, RealTuple<T>{x});
}

// Indicator helpers.
std::vector<double> indicator(int n, Mask a);
std::vector<Rational> indicator_exact(int n, Mask a);
std::vector<Rational> signed_indicator_exact(int n, DisjointPair p);

/// (x_i - x_j)(y_i - y_j) >= 0 for every pair of blocks and every i, j.
bool comonotone_check(const RealTuple<double>& xs);
/// x_i y_i >= 0 and (|x_i|-|x_j|)(|y_i|-|y_j|) >= 0 for every pair of blocks.
bool absolutely_comonotone_check(const RealTuple<double>& xs);
/// Some index attains the maximum of every block simultaneously.
bool comaximal_check(const RealTuple<double>& xs);

enum class Family { Chain, Diagonal, Custom };

using TuplePredicate = std::function<bool(std::span<const Mask>)>;

/// Level-set tuples (V^(i_1)(x^1), .., V^(i_k)(x^k)) that carry nonzero weight.
std::vector<std::vector<Mask>> level_set_tuples(const RealTuple<double>& xs);

/// Membership of xs in the continuous domain of a family.
/// Chain: pairwise comonotone. Diagonal: all blocks equal. Custom: every
/// weighted level-set tuple lies in the family or has an empty component.
/// All families require nonnegative blocks.
bool perfect_pair_membership(const RealTuple<double>& xs, Family family, const TuplePredicate& custom = {});

/// The family A(D) induced by a sample of points: all weighted level-set tuples.
std::set<std::vector<Mask>> induced_family(const std::vector<RealTuple<double>>& points);

/// Checks D(A(D(A))) = D(A) on the sample: points accepted by the custom family are
/// also accepted by the family they induce, and the induced family stays inside A.
bool idempotence_check(const TuplePredicate& family, const std::vector<RealTuple<double>>& samples);

}  // namespace artifact::extend
