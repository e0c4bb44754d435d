#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "artifact/errors.hpp"
#include "artifact/verify.hpp"

namespace artifact::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double scale_of(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

std::vector<double> indicator(int n, Mask a) { return extend::indicator(n, a); }

// Ratio with the conventions f/0 = +-inf for f != 0 and NaN for 0/0.
double ratio(double f, double g) {
    if (g > 0) return f / g;
    if (f > 0) return kInf;
    if (f < 0) return -kInf;
    return std::numeric_limits<double>::quiet_NaN();
}

// Nonnegative block that is nondecreasing along order: cumulative sums of random increments.
std::vector<double> cone_sample(const std::vector<int>& order, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(order.size(), 0.0);
    double acc = 0;
    for (int i : order) {
        if (u(rng) < 0.7) acc += u(rng);  // zero increments create ties
        x[i] = acc;
    }
    return x;
}

std::vector<double> orthant_sample(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(n);
    for (double& e : x) e = u(rng) < 0.25 ? 0.0 : u(rng);
    return x;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Skip: return "SKIP";
    }
    return "?";
}

// ---------------------------------------------------------------- perfect domain pairs

VerificationReport check_indicator_and_equalities(const SetTupleFunction& f, const SetTupleFunction& g,
                                                  extend::Family family, std::uint64_t seed, int samples) {
    const auto t0 = Clock::now();
    if (f.n() != g.n() || f.k() != g.k()) throw std::invalid_argument("check_indicator_and_equalities: shape mismatch");
    if (family == extend::Family::Custom) throw std::invalid_argument("check_indicator_and_equalities: built-in families only");
    const int n = f.n(), k = f.k();
    VerificationReport r;
    r.id = family == extend::Family::Chain ? "perfect-pair/chain" : "perfect-pair/diagonal";
    r.anchor = "discrete max/min of f/g equal the continuous sup/inf of the extensions on a perfect domain pair";
    r.instance = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    r.tolerance = kExactTol;

    std::vector<std::vector<Mask>> tuples;
    if (family == extend::Family::Chain) {
        tuples = setfn::enumerate_chains(n, k);
    } else {
        for (Mask a = 0; a <= setfn::full_mask(n); ++a) tuples.push_back(std::vector<Mask>(k, a));
    }
    double dmax = -kInf, dmin = kInf;
    std::vector<Mask> amax, amin;
    for (const auto& t : tuples) {
        const double gv = g.eval(t);
        if (!(gv > 0)) continue;
        const double v = f.eval(t) / gv;
        if (v > dmax) dmax = v, amax = t;
        if (v < dmin) dmin = v, amin = t;
    }
    if (amax.empty()) {
        r.verdict = Verdict::Skip;
        r.note = "g vanishes on the whole family";
        r.runtime_ms = elapsed_ms(t0);
        return r;
    }
    auto ext = [&](const SetTupleFunction& h, const extend::RealTuple<double>& xs) {
        return family == extend::Family::Chain ? extend::multilinear<double>(h, xs)
                                               : extend::diagonal<double>(h, xs.front());
    };
    auto cont_ratio = [&](const extend::RealTuple<double>& xs) {
        const double gv = ext(g, xs);
        return gv > 1e-12 ? ext(f, xs) / gv : std::numeric_limits<double>::quiet_NaN();
    };
    auto indicator_tuple = [&](const std::vector<Mask>& t) {
        extend::RealTuple<double> xs;
        for (Mask m : t) xs.push_back(indicator(n, m));
        return xs;
    };
    const double wmax = cont_ratio(indicator_tuple(amax));
    const double wmin = cont_ratio(indicator_tuple(amin));

    std::mt19937_64 rng(seed);
    auto sample = [&]() {
        extend::RealTuple<double> xs;
        if (family == extend::Family::Chain) {
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::shuffle(order.begin(), order.end(), rng);
            for (int l = 0; l < k; ++l) xs.push_back(cone_sample(order, rng));
        } else {
            xs.assign(k, orthant_sample(n, rng));
        }
        return xs;
    };
    double cmax = -kInf, cmin = kInf;
    int counted = 0;
    for (int s = 0; s < samples; ++s) {
        const double v = cont_ratio(sample());
        if (std::isnan(v)) continue;
        ++counted;
        cmax = std::max(cmax, v);
        cmin = std::min(cmin, v);
    }
    const double tol = kExactTol * scale_of(dmax, dmin);
    const bool witnesses = std::abs(wmax - dmax) <= tol && std::abs(wmin - dmin) <= tol;
    const bool bounded = cmax <= dmax + tol && cmin >= dmin - tol;
    r.lhs = dmax;
    r.rhs = std::max(cmax, wmax);
    r.gap = std::max({std::abs(wmax - dmax), std::abs(wmin - dmin), std::max(0.0, cmax - dmax),
                      std::max(0.0, dmin - cmin)});
    r.values = {{"discrete_max", dmax},  {"discrete_min", dmin},  {"witness_max", wmax},
                {"witness_min", wmin},   {"sample_max", cmax},    {"sample_min", cmin},
                {"samples", static_cast<double>(counted)}};
    r.verdict = witnesses && bounded ? Verdict::Pass : Verdict::Fail;
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

VerificationReport check_spectral_radius_sandwich(const structures::WeightedGraph& g) {
    const auto t0 = Clock::now();
    const int n = g.n();
    std::vector<setfn::Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({e.i, e.j});
    const auto f = setfn::edge_count(n, edges);
    const auto c = setfn::intersection_count(n);
    double avg = 0, maxdeg_chain = 0;
    for (Mask a = 1; a <= setfn::full_mask(n); ++a) avg = std::max(avg, f.eval({a, a}) / c.eval({a, a}));
    for (const auto& t : setfn::enumerate_chains(n, 2)) {
        const double gv = c.eval(t);
        if (gv > 0) maxdeg_chain = std::max(maxdeg_chain, f.eval(t) / gv);
    }
    double maxdeg = 0;
    for (int i = 0; i < n; ++i) maxdeg = std::max(maxdeg, g.degree(i));
    const double lmax = linalg::symmetric_eigen(g.weights()).values.back();
    VerificationReport r;
    r.id = "perfect-pair/spectral-radius";
    r.anchor = "max average degree of an induced subgraph <= lambda_max <= max degree";
    r.instance = "n=" + std::to_string(n) + " m=" + std::to_string(edges.size());
    r.tolerance = kExactTol;
    r.lhs = avg;
    r.rhs = maxdeg_chain;
    r.values = {{"lambda_max", lmax}, {"max_degree", maxdeg}};
    r.gap = std::max({0.0, avg - lmax, lmax - maxdeg_chain, std::abs(maxdeg_chain - maxdeg)});
    r.verdict = r.gap <= r.tolerance * scale_of(lmax, maxdeg) ? Verdict::Pass : Verdict::Fail;
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

// ---------------------------------------------------------------- saddle points

DiscreteMinimax discrete_minimax(const SetTupleFunction& f, const SetTupleFunction& g) {
    if (f.k() != 2 || g.k() != 2 || f.n() != g.n()) throw std::invalid_argument("discrete_minimax: need two-block f, g");
    const Mask full = setfn::full_mask(f.n());
    DiscreteMinimax d;
    d.min_max = kInf;
    d.max_min = -kInf;
    bool have_a = false, have_b = false;
    for (Mask a = 1; a <= full; ++a) {
        double m = -kInf;
        bool any = false;
        for (Mask b = 1; b <= full; ++b) {
            const double v = ratio(f.eval({a, b}), g.eval({a, b}));
            if (std::isnan(v)) continue;
            any = true;
            m = std::max(m, v);
        }
        if (any && (!have_a || m < d.min_max)) {
            d.min_max = m;
            d.a_star = a;
            have_a = true;
        }
    }
    for (Mask b = 1; b <= full; ++b) {
        double m = kInf;
        bool any = false;
        for (Mask a = 1; a <= full; ++a) {
            const double v = ratio(f.eval({a, b}), g.eval({a, b}));
            if (std::isnan(v)) continue;
            any = true;
            m = std::min(m, v);
        }
        if (any && (!have_b || m > d.max_min)) {
            d.max_min = m;
            d.b_star = b;
            have_b = true;
        }
    }
    return d;
}

namespace {

inline constexpr int kSaddleMaxN = 6;

struct ConeFeasibility {
    bool feasible = false;
    Vec x;
};

// Is there x >= 0, sum x = 1, such that (f - t g)^M(x, 1_B) <= 0 for every nonempty B?
ConeFeasibility cone_feasible(const SetTupleFunction& f, const SetTupleFunction& g, double t,
                              std::vector<int>& hint) {
    const int n = f.n();
    const Mask full = setfn::full_mask(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto try_order = [&](const std::vector<int>& tau) -> ConeFeasibility {
        // upper[i] = {tau(i), .., tau(n-1)}
        std::vector<Mask> upper(n + 1, 0);
        for (int i = n - 1; i >= 0; --i) upper[i] = upper[i + 1] | (Mask{1} << tau[i]);
        linalg::LinearProgram lp;
        lp.n = n;
        lp.c = Vec(n, 0.0);
        for (int i = 0; i + 1 < n; ++i) {
            Vec a(n, 0.0);
            a[tau[i]] = 1;
            a[tau[i + 1]] = -1;
            lp.add(a, linalg::Sense::LE, 0);
        }
        lp.add(Vec(n, 1.0), linalg::Sense::EQ, 1);
        for (Mask b = 1; b <= full; ++b) {
            Vec a(n, 0.0);
            for (int i = 0; i < n; ++i) {
                const double hi = f.eval({upper[i], b}) - t * g.eval({upper[i], b});
                const double lo = i + 1 < n ? f.eval({upper[i + 1], b}) - t * g.eval({upper[i + 1], b}) : 0.0;
                a[tau[i]] = hi - lo;
            }
            lp.add(a, linalg::Sense::LE, 0);
        }
        const auto res = linalg::solve_lp(lp);
        ConeFeasibility c;
        c.feasible = res.status == linalg::LpStatus::Optimal;
        c.x = res.x;
        return c;
    };
    if (!hint.empty()) {
        auto c = try_order(hint);
        if (c.feasible) return c;
    }
    do {
        if (order == hint) continue;
        auto c = try_order(order);
        if (c.feasible) {
            hint = order;
            return c;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return {};
}

}  // namespace

ContinuousMinimax continuous_inf_sup(const SetTupleFunction& f, const SetTupleFunction& g, double tol) {
    if (f.k() != 2 || g.k() != 2 || f.n() != g.n()) throw std::invalid_argument("continuous_inf_sup: need two-block f, g");
    if (f.n() > kSaddleMaxN) throw cap_exceeded("continuous_inf_sup: n must be <= 6");
    const DiscreteMinimax d = discrete_minimax(f, g);
    ContinuousMinimax out;
    int fact = 1;
    for (int i = 2; i <= f.n(); ++i) fact *= i;
    out.cones = fact;
    std::vector<int> hint;
    // min_A max_B >= inf sup >= sup inf >= max_B min_A brackets the value
    double hi = d.min_max, lo = d.max_min;
    ConeFeasibility best;
    if (std::isinf(hi)) {
        hi = std::max(1.0, std::isfinite(lo) ? std::abs(lo) : 1.0);
        int grow = 0;
        for (; grow < 60; ++grow, hi *= 2) {
            best = cone_feasible(f, g, hi, hint);
            if (best.feasible) break;
        }
        if (!best.feasible) {
            out.value = kInf;
            return out;
        }
    } else {
        best = cone_feasible(f, g, hi, hint);
        if (!best.feasible) throw non_convergence("continuous_inf_sup: the discrete min-max is not feasible");
    }
    if (std::isinf(lo)) {
        lo = -std::max(1.0, std::abs(hi));
        while (cone_feasible(f, g, lo, hint).feasible) lo *= 2;
    }
    while (hi - lo > tol * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        auto c = cone_feasible(f, g, mid, hint);
        ++out.bisection_steps;
        if (c.feasible) {
            hi = mid;
            best = std::move(c);
        } else {
            lo = mid;
        }
        if (out.bisection_steps > 200) break;
    }
    out.value = hi;
    out.outer = best.x;
    return out;
}

ContinuousMinimax continuous_sup_inf(const SetTupleFunction& f, const SetTupleFunction& g, double tol) {
    const int n = f.n();
    // sup_y inf_x f/g = -inf_y sup_x (-f)/g with the blocks swapped
    auto fs = SetTupleFunction::callback(n, 2, [&f](std::span<const Mask> t) { return -f.eval({t[1], t[0]}); });
    auto gs = SetTupleFunction::callback(n, 2, [&g](std::span<const Mask> t) { return g.eval({t[1], t[0]}); });
    ContinuousMinimax r = continuous_inf_sup(fs, gs, tol);
    r.value = -r.value;
    return r;
}

VerificationReport check_saddle_transfer(const SetTupleFunction& f, const SetTupleFunction& g, std::uint64_t seed) {
    const auto t0 = Clock::now();
    const int n = f.n();
    const DiscreteMinimax d = discrete_minimax(f, g);
    const ContinuousMinimax up = continuous_inf_sup(f, g);
    const ContinuousMinimax down = continuous_sup_inf(f, g);
    VerificationReport r;
    r.id = "saddle/transfer";
    r.anchor = "discrete saddle of f/g iff continuous saddle of the multilinear extensions at indicators";
    r.instance = "n=" + std::to_string(n);
    r.tolerance = 1e-8;
    r.lhs = up.value;
    r.rhs = down.value;
    r.values = {{"discrete_min_max", d.min_max}, {"discrete_max_min", d.max_min},
                {"continuous_inf_sup", up.value}, {"continuous_sup_inf", down.value}};
    const double sc = scale_of(up.value, down.value);
    bool ok = down.value <= up.value + r.tolerance * sc;
    ok = ok && up.value <= d.min_max + r.tolerance * sc && down.value >= d.max_min - r.tolerance * sc;
    r.gap = std::abs(up.value - down.value);
    if (d.min_max == d.max_min) {
        const double v = d.min_max;
        ok = ok && std::abs(up.value - v) <= r.tolerance * sc && std::abs(down.value - v) <= r.tolerance * sc;
        // directional sampling around (1_A*, 1_B*)
        std::mt19937_64 rng(seed);
        const auto ia = indicator(n, d.a_star), ib = indicator(n, d.b_star);
        double worst = 0;
        for (int s = 0; s < 200; ++s) {
            const auto x = orthant_sample(n, rng);
            const auto y = orthant_sample(n, rng);
            const double gx = extend::multilinear<double>(g, {x, ib});
            const double gy = extend::multilinear<double>(g, {ia, y});
            if (gx > 1e-12) worst = std::max(worst, v - extend::multilinear<double>(f, {x, ib}) / gx);
            if (gy > 1e-12) worst = std::max(worst, extend::multilinear<double>(f, {ia, y}) / gy - v);
        }
        r.values["saddle_violation"] = worst;
        ok = ok && worst <= r.tolerance * sc;
        r.note = "discrete saddle exists";
    } else {
        r.note = "no discrete saddle; continuous values recorded";
    }
    r.verdict = ok ? Verdict::Pass : Verdict::Fail;
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

double payoff_game_value(const Matrix& c) {
    const int n = c.rows(), m = c.cols();
    linalg::LinearProgram lp;
    lp.n = n + 1;
    lp.c = Vec(n + 1, 0.0);
    lp.c[n] = 1;
    lp.free.assign(n + 1, false);
    lp.free[n] = true;
    for (int j = 0; j < m; ++j) {
        Vec a(n + 1, 0.0);
        for (int i = 0; i < n; ++i) a[i] = c(i, j);
        a[n] = -1;
        lp.add(a, linalg::Sense::LE, 0);
    }
    Vec s(n + 1, 1.0);
    s[n] = 0;
    lp.add(s, linalg::Sense::EQ, 1);
    const auto res = linalg::solve_lp(lp);
    if (res.status != linalg::LpStatus::Optimal) throw non_convergence("payoff_game_value: LP not solved");
    return res.value;
}

std::pair<SetTupleFunction, SetTupleFunction> payoff_game(const Matrix& c) {
    const int n = c.rows();
    if (c.cols() != n) throw std::invalid_argument("payoff_game: square payoff matrix required");
    auto f = SetTupleFunction::real(n, 2, [c, n](std::span<const Mask> t) {
        double s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (((t[0] >> i) & 1) && ((t[1] >> j) & 1)) s += c(i, j);
        return s;
    });
    return {f, setfn::cardinality_product(n)};
}

VerificationReport check_sion_case(const SetTupleFunction& f, const SetTupleFunction& g) {
    const auto t0 = Clock::now();
    VerificationReport r;
    r.id = "saddle/sion";
    r.anchor = "f submodular in x and supermodular in y, g modular: continuous min-max equals max-min";
    r.instance = "n=" + std::to_string(f.n());
    r.tolerance = kIterativeTol;
    const auto neg = SetTupleFunction::callback(f.n(), 2, [&f](std::span<const Mask> t) { return -f.eval(t); });
    const bool structure = setfn::submodularity_check(f, 0) && setfn::submodularity_check(neg, 1) &&
                           setfn::modularity_check(g, 0) && setfn::modularity_check(g, 1);
    if (!structure) {
        r.verdict = Verdict::Skip;
        r.note = "structure hypotheses do not hold";
        r.runtime_ms = elapsed_ms(t0);
        return r;
    }
    const auto up = continuous_inf_sup(f, g);
    const auto down = continuous_sup_inf(f, g);
    r.lhs = up.value;
    r.rhs = down.value;
    r.gap = std::abs(up.value - down.value);
    r.verdict = r.gap <= r.tolerance * scale_of(up.value, down.value) ? Verdict::Pass : Verdict::Fail;
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

// ---------------------------------------------------------------- quasi-concave compositions

double composition_value(Polynomial p, const Vec& z) {
    double s = 0;
    for (double v : z) s += v;
    if (!(s > 0)) return std::numeric_limits<double>::quiet_NaN();
    double num = 0;
    if (p == Polynomial::Product2) {
        if (z.size() != 2) throw std::invalid_argument("composition_value: z1 z2 needs two arguments");
        num = z[0] * z[1];
    } else {
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t j = i + 1; j < z.size(); ++j) num += z[i] * z[j];
    }
    return num / (s * s);
}

VerificationReport check_quasiconcave_composition(Polynomial p, const std::vector<SetTupleFunction>& fs,
                                                  std::uint64_t seed, int samples) {
    const auto t0 = Clock::now();
    if (fs.empty()) throw std::invalid_argument("check_quasiconcave_composition: no functions");
    const int n = fs.front().n();
    for (const auto& f : fs)
        if (f.k() != 1 || f.n() != n) throw std::invalid_argument("check_quasiconcave_composition: need set functions on one ground set");
    VerificationReport r;
    r.id = p == Polynomial::Product2 ? "composition/z1z2" : "composition/e2";
    r.anchor = "min over sets of a zero-homogeneous quasi-concave H equals its inf over the extensions";
    r.instance = "n=" + std::to_string(n) + " m=" + std::to_string(fs.size());
    r.tolerance = kExactTol;
    auto h_at = [&](const Vec& x) {
        Vec z;
        for (const auto& f : fs) z.push_back(extend::lovasz<double>(f, x));
        return composition_value(p, z);
    };
    double dmin = kInf;
    Mask arg = 0;
    for (Mask a = 1; a <= setfn::full_mask(n); ++a) {
        Vec z;
        for (const auto& f : fs) z.push_back(f.eval({a}));
        for (double v : z)
            if (v < 0) throw std::invalid_argument("check_quasiconcave_composition: functions must be nonnegative");
        const double v = composition_value(p, z);
        if (!std::isnan(v) && v < dmin) dmin = v, arg = a;
    }
    if (arg == 0) {
        r.verdict = Verdict::Skip;
        r.note = "all function values vanish";
        r.runtime_ms = elapsed_ms(t0);
        return r;
    }
    const double witness = h_at(indicator(n, arg));
    std::mt19937_64 rng(seed);
    double cmin = kInf, homog = 0;
    for (int s = 0; s < samples; ++s) {
        const Vec x = orthant_sample(n, rng);
        const double v = h_at(x);
        if (std::isnan(v)) continue;
        cmin = std::min(cmin, v);
        Vec tx = x;
        for (double& e : tx) e *= 3.5;
        homog = std::max(homog, std::abs(h_at(tx) - v));
    }
    r.lhs = dmin;
    r.rhs = std::min(cmin, witness);
    r.gap = std::max(std::abs(witness - dmin), std::max(0.0, dmin - cmin));
    r.values = {{"witness", witness}, {"sample_min", cmin}, {"homogeneity_defect", homog}};
    r.verdict = r.gap <= r.tolerance && homog <= 1e-12 ? Verdict::Pass : Verdict::Fail;
    r.runtime_ms = elapsed_ms(t0);
    return r;
}

}  // namespace artifact::verify
