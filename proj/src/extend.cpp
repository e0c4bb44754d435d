#include "artifact/extend.hpp"

namespace artifact::extend {

std::vector<double> indicator(int n, Mask a) {
    std::vector<double> x(n, 0.0);
    for (int j = 0; j < n; ++j) x[j] = (a >> j) & 1 ? 1.0 : 0.0;
    return x;
}

std::vector<Rational> indicator_exact(int n, Mask a) {
    std::vector<Rational> x(n);
    for (int j = 0; j < n; ++j) x[j] = (a >> j) & 1 ? 1 : 0;
    return x;
}

std::vector<Rational> signed_indicator_exact(int n, DisjointPair p) {
    std::vector<Rational> x(n);
    for (int j = 0; j < n; ++j) x[j] = ((p.plus >> j) & 1) ? 1 : (((p.minus >> j) & 1) ? -1 : 0);
    return x;
}

namespace {

void check_lengths(const RealTuple<double>& xs) {
    for (const auto& b : xs)
        if (b.size() != xs.front().size()) throw std::invalid_argument("blocks must have equal length");
}

}  // namespace

bool comonotone_check(const RealTuple<double>& xs) {
    if (xs.empty()) return true;
    check_lengths(xs);
    const std::size_t n = xs.front().size();
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if ((xs[a][i] - xs[a][j]) * (xs[b][i] - xs[b][j]) < 0) return false;
    return true;
}

bool absolutely_comonotone_check(const RealTuple<double>& xs) {
    if (xs.empty()) return true;
    check_lengths(xs);
    const std::size_t n = xs.front().size();
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            for (std::size_t i = 0; i < n; ++i) {
                if (xs[a][i] * xs[b][i] < 0) return false;
                for (std::size_t j = i + 1; j < n; ++j)
                    if ((std::abs(xs[a][i]) - std::abs(xs[a][j])) * (std::abs(xs[b][i]) - std::abs(xs[b][j])) < 0)
                        return false;
            }
    return true;
}

bool comaximal_check(const RealTuple<double>& xs) {
    if (xs.empty()) return true;
    check_lengths(xs);
    const std::size_t n = xs.front().size();
    for (std::size_t i = 0; i < n; ++i) {
        bool all = true;
        for (const auto& b : xs) all = all && b[i] == *std::max_element(b.begin(), b.end());
        if (all) return true;
    }
    return false;
}

std::vector<std::vector<Mask>> level_set_tuples(const RealTuple<double>& xs) {
    std::vector<LevelSetDecomposition<double>> dec;
    std::vector<std::size_t> sizes;
    for (const auto& b : xs) {
        dec.push_back(decompose<double>(std::span<const double>(b)));
        sizes.push_back(b.size());
    }
    detail::check_probes(sizes);
    std::vector<std::vector<Mask>> out;
    std::vector<Mask> t(xs.size());
    std::function<void(std::size_t)> rec = [&](std::size_t l) {
        if (l == xs.size()) {
            out.push_back(t);
            return;
        }
        for (std::size_t i = 0; i < dec[l].weight.size(); ++i) {
            if (dec[l].weight[i] == 0.0) continue;
            t[l] = dec[l].upper[i];
            rec(l + 1);
        }
    };
    rec(0);
    return out;
}

bool perfect_pair_membership(const RealTuple<double>& xs, Family family, const TuplePredicate& custom) {
    for (const auto& b : xs)
        for (double v : b)
            if (v < 0) return false;
    switch (family) {
        case Family::Chain:
            return comonotone_check(xs);
        case Family::Diagonal:
            for (const auto& b : xs)
                if (b != xs.front()) return false;
            return true;
        case Family::Custom: {
            if (!custom) throw std::invalid_argument("custom family requires a predicate");
            for (const auto& t : level_set_tuples(xs)) {
                bool has_empty = std::any_of(t.begin(), t.end(), [](Mask m) { return m == 0; });
                if (!has_empty && !custom(t)) return false;
            }
            return true;
        }
    }
    return false;
}

std::set<std::vector<Mask>> induced_family(const std::vector<RealTuple<double>>& points) {
    std::set<std::vector<Mask>> fam;
    for (const auto& p : points)
        for (auto& t : level_set_tuples(p)) fam.insert(std::move(t));
    return fam;
}

bool idempotence_check(const TuplePredicate& family, const std::vector<RealTuple<double>>& samples) {
    std::vector<RealTuple<double>> inside;
    for (const auto& s : samples)
        if (perfect_pair_membership(s, Family::Custom, family)) inside.push_back(s);
    auto induced = induced_family(inside);
    for (const auto& t : induced) {
        bool has_empty = std::any_of(t.begin(), t.end(), [](Mask m) { return m == 0; });
        if (!has_empty && !family(t)) return false;
    }
    TuplePredicate again = [&](std::span<const Mask> t) {
        return induced.count(std::vector<Mask>(t.begin(), t.end())) > 0;
    };
    for (const auto& s : inside)
        if (!perfect_pair_membership(s, Family::Custom, again)) return false;
    return true;
}

}  // namespace artifact::extend
