#include "artifact/setfn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "artifact/errors.hpp"

namespace artifact::setfn {

int popcount(Mask m) { return std::popcount(m); }

GroundSet::GroundSet(int n_, std::vector<std::string> labels_) : n(n_), labels(std::move(labels_)) {
    if (n < 1 || n > kMaxGround) throw std::invalid_argument("GroundSet: n must be in [1, 24]");
    if (!labels.empty()) {
        if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("GroundSet: label count != n");
        std::unordered_set<std::string> seen(labels.begin(), labels.end());
        if (static_cast<int>(seen.size()) != n) throw std::invalid_argument("GroundSet: labels not distinct");
    }
}

namespace {

void check_shape(int n, int k) {
    if (n < 1 || n > kMaxGround) throw std::invalid_argument("set function: n must be in [1, 24]");
    if (k < 1) throw std::invalid_argument("set function: arity must be >= 1");
}

std::size_t ipow3(int e) {
    std::size_t r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

// Decodes a dense table index into its tuple of masks.
void decode(std::size_t idx, int n, int k, std::vector<Mask>& out) {
    out.resize(k);
    const Mask m = full_mask(n);
    for (int l = 0; l < k; ++l) out[l] = static_cast<Mask>((idx >> (l * n)) & m);
}

void decode_pairs(std::size_t idx, int n, int k, std::vector<DisjointPair>& out) {
    out.assign(k, DisjointPair{});
    for (int l = 0; l < k; ++l) {
        for (int j = 0; j < n; ++j) {
            auto t = idx % 3;
            idx /= 3;
            if (t == 1) out[l].plus |= Mask{1} << j;
            if (t == 2) out[l].minus |= Mask{1} << j;
        }
    }
}

}  // namespace

// ---------------------------------------------------------------- SetTupleFunction

SetTupleFunction SetTupleFunction::exact(int n, int k, const ExactFn& fn) {
    check_shape(n, k);
    if (n * k > kDenseBits) throw cap_exceeded("dense table requires k*n <= 24");
    SetTupleFunction f;
    f.n_ = n;
    f.k_ = k;
    const std::size_t size = std::size_t{1} << (n * k);
    f.q_.resize(size);
    f.d_.resize(size);
    std::vector<Mask> t;
    for (std::size_t i = 0; i < size; ++i) {
        decode(i, n, k, t);
        f.q_[i] = fn(t);
        f.d_[i] = f.q_[i].to_double();
    }
    return f;
}

SetTupleFunction SetTupleFunction::real(int n, int k, const RealFn& fn) {
    check_shape(n, k);
    if (n * k > kDenseBits) throw cap_exceeded("dense table requires k*n <= 24");
    SetTupleFunction f;
    f.n_ = n;
    f.k_ = k;
    const std::size_t size = std::size_t{1} << (n * k);
    f.d_.resize(size);
    std::vector<Mask> t;
    for (std::size_t i = 0; i < size; ++i) {
        decode(i, n, k, t);
        f.d_[i] = fn(t);
    }
    return f;
}

SetTupleFunction SetTupleFunction::callback(int n, int k, RealFn fn) {
    check_shape(n, k);
    SetTupleFunction f;
    f.n_ = n;
    f.k_ = k;
    f.cb_ = std::move(fn);
    return f;
}

SetTupleFunction SetTupleFunction::from_table(int n, int k, std::vector<Rational> values) {
    check_shape(n, k);
    if (n * k > kDenseBits) throw cap_exceeded("dense table requires k*n <= 24");
    if (values.size() != (std::size_t{1} << (n * k))) throw std::invalid_argument("table size != 2^(k*n)");
    SetTupleFunction f;
    f.n_ = n;
    f.k_ = k;
    f.q_ = std::move(values);
    f.d_.resize(f.q_.size());
    for (std::size_t i = 0; i < f.q_.size(); ++i) f.d_[i] = f.q_[i].to_double();
    return f;
}

void SetTupleFunction::check(std::span<const Mask> tuple) const {
    if (static_cast<int>(tuple.size()) != k_) throw std::invalid_argument("set function: arity mismatch");
    const Mask full = full_mask(n_);
    for (Mask m : tuple)
        if ((m & ~full) != 0) throw std::out_of_range("set function: mask out of range");
}

std::size_t SetTupleFunction::index(std::span<const Mask> tuple) const {
    check(tuple);
    std::size_t idx = 0;
    for (int l = 0; l < k_; ++l) idx |= static_cast<std::size_t>(tuple[l]) << (l * n_);
    return idx;
}

double SetTupleFunction::eval(std::span<const Mask> tuple) const {
    if (!d_.empty()) return d_[index(tuple)];
    check(tuple);
    return cb_(tuple);
}

Rational SetTupleFunction::eval_exact(std::span<const Mask> tuple) const {
    if (q_.empty()) throw std::logic_error("set function: not in exact mode");
    return q_[index(tuple)];
}

// ---------------------------------------------------------------- DisjointPairFunction

DisjointPairFunction DisjointPairFunction::exact(int n, int k, const ExactFn& fn) {
    check_shape(n, k);
    if (n * k > kDenseTrits) throw cap_exceeded("disjoint-pair table requires k*n <= 14");
    DisjointPairFunction f;
    f.n_ = n;
    f.k_ = k;
    const std::size_t size = ipow3(n * k);
    f.q_.resize(size);
    f.d_.resize(size);
    std::vector<DisjointPair> t;
    for (std::size_t i = 0; i < size; ++i) {
        decode_pairs(i, n, k, t);
        f.q_[i] = fn(t);
        f.d_[i] = f.q_[i].to_double();
    }
    return f;
}

DisjointPairFunction DisjointPairFunction::real(int n, int k, const RealFn& fn) {
    check_shape(n, k);
    if (n * k > kDenseTrits) throw cap_exceeded("disjoint-pair table requires k*n <= 14");
    DisjointPairFunction f;
    f.n_ = n;
    f.k_ = k;
    const std::size_t size = ipow3(n * k);
    f.d_.resize(size);
    std::vector<DisjointPair> t;
    for (std::size_t i = 0; i < size; ++i) {
        decode_pairs(i, n, k, t);
        f.d_[i] = fn(t);
    }
    return f;
}

DisjointPairFunction DisjointPairFunction::callback(int n, int k, RealFn fn) {
    check_shape(n, k);
    DisjointPairFunction f;
    f.n_ = n;
    f.k_ = k;
    f.cb_ = std::move(fn);
    return f;
}

void DisjointPairFunction::check(std::span<const DisjointPair> tuple) const {
    if (static_cast<int>(tuple.size()) != k_) throw std::invalid_argument("pair function: arity mismatch");
    const Mask full = full_mask(n_);
    for (const auto& p : tuple) {
        if (((p.plus | p.minus) & ~full) != 0) throw std::out_of_range("pair function: mask out of range");
        if ((p.plus & p.minus) != 0) throw std::invalid_argument("pair function: plus and minus overlap");
    }
}

std::size_t DisjointPairFunction::index(std::span<const DisjointPair> tuple) const {
    check(tuple);
    std::size_t idx = 0;
    for (int l = k_ - 1; l >= 0; --l) {
        for (int j = n_ - 1; j >= 0; --j) {
            std::size_t t = 0;
            if (tuple[l].plus >> j & 1) t = 1;
            if (tuple[l].minus >> j & 1) t = 2;
            idx = idx * 3 + t;
        }
    }
    return idx;
}

double DisjointPairFunction::eval(std::span<const DisjointPair> tuple) const {
    if (!d_.empty()) return d_[index(tuple)];
    check(tuple);
    return cb_(tuple);
}

Rational DisjointPairFunction::eval_exact(std::span<const DisjointPair> tuple) const {
    if (q_.empty()) throw std::logic_error("pair function: not in exact mode");
    return q_[index(tuple)];
}

// ---------------------------------------------------------------- checks

double eval_tuple(const SetTupleFunction& f, std::span<const Mask> tuple) { return f.eval(tuple); }

namespace {

// Visits every (A, B) in the component with the remaining components fixed;
// cmp receives lhs = f(AuB)+f(AnB) and rhs = f(A)+f(B) and returns false to stop.
template <typename Cmp>
bool lattice_scan(const SetTupleFunction& f, int component, Cmp cmp) {
    const int n = f.n(), k = f.k();
    if (component < 0 || component >= k) throw std::out_of_range("component index out of range");
    if (n * (k + 1) > 30) throw cap_exceeded("lattice check requires n*(k+1) <= 30");
    const std::size_t others = std::size_t{1} << (n * (k - 1));
    const Mask full = full_mask(n);
    std::vector<Mask> t(k);
    auto value = [&](Mask a) -> Rational {
        t[component] = a;
        return f.eval_exact(t);
    };
    auto rvalue = [&](Mask a) -> double {
        t[component] = a;
        return f.eval(t);
    };
    for (std::size_t o = 0; o < others; ++o) {
        std::size_t rest = o;
        for (int l = 0; l < k; ++l) {
            if (l == component) continue;
            t[l] = static_cast<Mask>(rest & full);
            rest >>= n;
        }
        for (Mask a = 0; a <= full; ++a) {
            for (Mask b = a + 1; b <= full; ++b) {
                if ((a & b) == a || (a & b) == b) continue;  // comparable pairs are trivial
                if (f.is_exact()) {
                    Rational lhs = value(a | b) + value(a & b);
                    Rational rhs = value(a) + value(b);
                    if (!cmp(lhs.to_double(), rhs.to_double(), lhs == rhs, lhs <= rhs)) return false;
                } else {
                    double lhs = rvalue(a | b) + rvalue(a & b);
                    double rhs = rvalue(a) + rvalue(b);
                    double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
                    if (!cmp(lhs, rhs, std::abs(lhs - rhs) <= tol, lhs <= rhs + tol)) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace

bool modularity_check(const SetTupleFunction& f, int component) {
    return lattice_scan(f, component, [](double, double, bool eq, bool) { return eq; });
}

bool submodularity_check(const SetTupleFunction& f, int component) {
    return lattice_scan(f, component, [](double, double, bool, bool le) { return le; });
}

bool is_chain(std::span<const Mask> tuple) {
    for (std::size_t a = 0; a < tuple.size(); ++a)
        for (std::size_t b = a + 1; b < tuple.size(); ++b) {
            Mask i = tuple[a] & tuple[b];
            if (i != tuple[a] && i != tuple[b]) return false;
        }
    return true;
}

std::vector<std::vector<Mask>> enumerate_chains(int n, int k) {
    check_shape(n, k);
    if (n * k > kChainBits) throw cap_exceeded("enumerate_chains requires k*n <= 20");
    std::vector<std::vector<Mask>> out;
    std::vector<Mask> t;
    const std::size_t size = std::size_t{1} << (n * k);
    for (std::size_t i = 0; i < size; ++i) {
        decode(i, n, k, t);
        if (is_chain(t)) out.push_back(t);
    }
    return out;
}

// ---------------------------------------------------------------- builders

SetTupleFunction cardinality(int n) {
    return SetTupleFunction::exact(n, 1, [](std::span<const Mask> t) { return Rational(popcount(t[0])); });
}

SetTupleFunction cut_function(int n, const std::vector<Edge>& edges) {
    return SetTupleFunction::exact(n, 1, [&](std::span<const Mask> t) {
        std::int64_t c = 0;
        for (auto [i, j] : edges) c += ((t[0] >> i) & 1) != ((t[0] >> j) & 1);
        return Rational(c);
    });
}

SetTupleFunction edge_count(int n, const std::vector<Edge>& edges) {
    return SetTupleFunction::exact(n, 2, [&](std::span<const Mask> t) {
        std::int64_t c = 0;
        for (auto [i, j] : edges) {
            c += ((t[0] >> i) & 1) & ((t[1] >> j) & 1);
            c += ((t[0] >> j) & 1) & ((t[1] >> i) & 1);
        }
        return Rational(c);
    });
}

SetTupleFunction hyperedge_count(int n, int k, const std::vector<std::vector<int>>& hyperedges) {
    for (const auto& e : hyperedges)
        if (static_cast<int>(e.size()) != k) throw std::invalid_argument("hyperedge size != k");
    return SetTupleFunction::exact(n, k, [&](std::span<const Mask> t) {
        std::int64_t c = 0;
        for (auto e : hyperedges) {
            std::sort(e.begin(), e.end());
            do {
                bool in = true;
                for (int l = 0; l < k && in; ++l) in = (t[l] >> e[l]) & 1;
                c += in;
            } while (std::next_permutation(e.begin(), e.end()));
        }
        return Rational(c);
    });
}

SetTupleFunction intersection_count(int n) {
    return SetTupleFunction::exact(n, 2, [](std::span<const Mask> t) { return Rational(popcount(t[0] & t[1])); });
}

SetTupleFunction cardinality_product(int n) {
    return SetTupleFunction::exact(
        n, 2, [](std::span<const Mask> t) { return Rational(popcount(t[0])) * Rational(popcount(t[1])); });
}

SetTupleFunction constant_pair(int n, Rational c) {
    return SetTupleFunction::exact(n, 2, [c](std::span<const Mask>) { return c; });
}

}  // namespace artifact::setfn
