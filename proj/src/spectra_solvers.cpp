#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>

#include "artifact/errors.hpp"
#include "artifact/spectra.hpp"

namespace artifact::spectra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t counter) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(counter), static_cast<std::uint32_t>(counter >> 32)};
    return std::mt19937_64(seq);
}

Vec gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec v(n);
    for (double& e : v) e = nd(rng);
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    Vec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec scaled(Vec a, double s) {
    for (double& e : a) e *= s;
    return a;
}

}  // namespace

// ---------------------------------------------------------------- Dinkelbach / RatioDCA

DinkelbachResult dinkelbach_ratiodca(const HomogeneousPair& pair, const SubspaceProjection& proj, const Vec& x0,
                                     const DinkelbachParams& params) {
    const int n = pair.n;
    const double p = pair.p;
    if (static_cast<int>(x0.size()) != n) throw std::invalid_argument("dinkelbach: start has wrong dimension");
    const Matrix q = linalg::orthogonal_complement(proj.basis, n);
    const int m = q.cols();
    if (m == 0) throw std::invalid_argument("dinkelbach: Pi is the whole space");
    Vec y = linalg::multiply_transpose(q, x0);
    if (linalg::norm2(y) == 0) throw std::invalid_argument("dinkelbach: start lies in Pi");
    auto lift = [&](const Vec& yy) { return linalg::multiply(q, yy); };

    DinkelbachResult res;
    Vec x = lift(y);
    auto [gp, z] = proj.evaluate(x);
    if (!(gp > 0)) throw std::invalid_argument("dinkelbach: G_Pi vanishes at the start");
    double r = pair.F(x) / gp;
    res.ratios.push_back(r);

    for (int outer = 0; outer < params.max_outer; ++outer) {
        res.outer_iterations = outer + 1;
        if (p > 1) {
            x = scaled(x, 1.0 / std::pow(gp, 1.0 / p));
            std::tie(gp, z) = proj.evaluate(x);
        }
        const Vec s = pair.one_subgradient_G(add(x, z));
        Vec c = linalg::multiply_transpose(q, s);
        if (p == 1) c = scaled(c, r);
        auto objective = [&](const Vec& yy, Vec& g) {
            const Vec xx = lift(yy);
            const Vec gf = linalg::multiply_transpose(q, pair.one_subgradient_F(xx));
            for (int i = 0; i < m; ++i) g[i] = gf[i] - c[i];
            return pair.F(xx) - linalg::dot(c, yy);
        };
        const double scale = std::max(1.0, std::abs(pair.F(x)));
        linalg::EllipsoidResult inner;
        if (p == 1) {
            auto ball = [&](const Vec& yy, Vec& g) {
                const double nr = linalg::norm2(yy);
                for (int i = 0; i < m; ++i) g[i] = nr > 0 ? yy[i] / nr : 0.0;
                return nr - 1.0;
            };
            inner = linalg::ellipsoid_minimize(objective, ball, Vec(m, 0.0), 1.0 + 1e-9, params.inner_tol * scale,
                                               params.inner_max_iter);
        } else {
            double radius = 2.0 * std::max(1e-12, linalg::norm2(linalg::multiply_transpose(q, x)));
            for (int grow = 0; grow < 30; ++grow) {
                inner = linalg::ellipsoid_minimize(objective, {}, Vec(m, 0.0), radius, params.inner_tol * scale,
                                                   params.inner_max_iter);
                if (linalg::norm2(inner.x) < 0.75 * radius) break;
                radius *= 4;
            }
        }
        if (!(inner.value < -params.inner_tol * scale)) {
            res.converged = true;  // x is a fixpoint of the inner problem
            break;
        }
        const Vec xn = lift(inner.x);
        auto [gpn, zn] = proj.evaluate(xn);
        if (!(gpn > 0)) break;
        const double rn = pair.F(xn) / gpn;
        if (!(rn < r - 1e-15 * std::max(1.0, std::abs(r)))) {
            res.converged = true;  // inexact inner solve; no further decrease available
            break;
        }
        x = xn;
        gp = gpn;
        z = zn;
        const double drop = r - rn;
        r = rn;
        res.ratios.push_back(r);
        if (drop < params.rtol * std::max(1.0, std::abs(r))) {
            res.converged = true;
            break;
        }
    }
    Vec rep = add(x, z);
    const double g_rep = pair.G(rep);
    if (g_rep > 0) rep = scaled(rep, 1.0 / std::pow(g_rep, 1.0 / p));
    res.estimate.lambda = r;
    res.estimate.x = rep;
    res.estimate.residual = eigen_residual(pair, r, rep);
    return res;
}

DinkelbachResult dinkelbach_multistart(const HomogeneousPair& pair, const SubspaceProjection& proj,
                                       const std::vector<Vec>& starts, const DinkelbachParams& params) {
    std::vector<Vec> all = starts;
    for (int s = 0; s < params.random_starts; ++s) {
        auto rng = stream_rng(params.seed, static_cast<std::uint64_t>(s));
        all.push_back(gaussian(pair.n, rng));
    }
    if (all.empty()) throw std::invalid_argument("dinkelbach_multistart: no starts");
    DinkelbachResult best;
    bool have = false;
    for (const auto& s : all) {
        DinkelbachResult r;
        try {
            r = dinkelbach_ratiodca(pair, proj, s, params);
        } catch (const std::invalid_argument&) {
            continue;  // start in Pi or degenerate
        }
        // order-independent reduction: smallest ratio, ties by earlier start
        if (!have || r.estimate.lambda < best.estimate.lambda) {
            best = std::move(r);
            have = true;
        }
    }
    if (!have) throw std::invalid_argument("dinkelbach_multistart: every start was degenerate");
    return best;
}

// ---------------------------------------------------------------- second eigenvalue

SecondEigenReport second_eigen_characterizations(const Matrix& l, const Matrix& d, const Matrix& pi) {
    const int n = l.rows();
    SecondEigenReport rep;
    const int k = linalg::rank(pi);
    if (k == 0 || k >= n) throw std::invalid_argument("second_eigen_characterizations: need 0 < dim Pi < n");
    // F must vanish on Pi
    Matrix lp = l * pi;
    if (linalg::frobenius(lp) > 1e-9 * std::max(1.0, linalg::frobenius(l))) {
        rep.hypotheses_ok = false;
        rep.note = "F does not vanish on Pi";
    }
    const GeneralizedEigen full = quadratic_pair_spectrum(l, d);
    rep.spectrum_index = full.values[k];

    // deflation: G_Pi(x) = x' M x with M = D - D P (P'DP)^{-1} P'D
    const Matrix p = linalg::orthonormal_basis(pi);
    const Matrix dp = d * p;
    Matrix ptdp = p.transpose() * dp;
    Matrix inv(k, k);
    for (int c = 0; c < k; ++c) {
        Vec e(k, 0.0);
        e[c] = 1;
        Vec col = linalg::solve(ptdp, e);
        for (int r = 0; r < k; ++r) inv(r, c) = col[r];
    }
    const Matrix mproj = d - dp * inv * dp.transpose();
    const Matrix qc = linalg::orthogonal_complement(p, n);
    rep.deflation = quadratic_pair_spectrum(qc.transpose() * l * qc, qc.transpose() * mproj * qc).values.front();

    // constrained: {x : P' D x = 0}
    const Matrix rc = linalg::orthogonal_complement(dp, n);
    rep.constrained = quadratic_pair_spectrum(rc.transpose() * l * rc, rc.transpose() * d * rc).values.front();

    // mountain pass around the first eigenvector
    Matrix x1(n, 1);
    for (int i = 0; i < n; ++i) x1(i, 0) = full.vectors(i, 0);
    const Matrix dx = d * x1;
    const double nx = (x1.transpose() * dx)(0, 0);
    const Matrix m1 = d - (1.0 / nx) * (dx * dx.transpose());
    const Matrix q1 = linalg::orthogonal_complement(x1, n);
    rep.mountain_pass = quadratic_pair_spectrum(q1.transpose() * l * q1, q1.transpose() * m1 * q1).values.front();

    const double a = rep.spectrum_index, b = rep.deflation, c = rep.constrained;
    rep.gap = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
    if (k == 1) rep.gap = std::max(rep.gap, std::abs(rep.mountain_pass - a));
    return rep;
}

// ---------------------------------------------------------------- Collatz-Wielandt

namespace {

template <typename Apply>
CollatzResult cw_iterate(int n, int k, const Vec& d, Apply apply, double tol, int max_iter) {
    CollatzResult res;
    Vec x(n, 1.0);
    auto normalize = [&](Vec& v) {
        double s = 0;
        for (int i = 0; i < n; ++i) s += d[i] * std::pow(v[i], k);
        const double f = std::pow(s, 1.0 / k);
        for (double& e : v) e /= f;
    };
    normalize(x);
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        const Vec cx = apply(x);
        double lo = kInf, hi = -kInf;
        for (int i = 0; i < n; ++i) {
            const double den = d[i] * std::pow(x[i], k - 1);
            if (!(den > 0)) continue;
            lo = std::min(lo, cx[i] / den);
            hi = std::max(hi, cx[i] / den);
        }
        res.lower = lo;
        res.upper = hi;
        res.x = x;
        if (hi - lo <= tol * std::max(1.0, std::abs(hi))) {
            res.converged = true;
            break;
        }
        // shift by D x^{k-1} to rule out periodic orbits
        Vec next(n);
        for (int i = 0; i < n; ++i) next[i] = std::pow(cx[i] / d[i] + std::pow(x[i], k - 1), 1.0 / (k - 1));
        normalize(next);
        x = std::move(next);
    }
    res.lambda = 0.5 * (res.lower + res.upper);
    return res;
}

}  // namespace

CollatzResult collatz_wielandt_max(const structures::SymmetricTensor& c, const Vec& d, double tol, int max_iter) {
    const int n = c.dim();
    if (static_cast<int>(d.size()) != n) throw std::invalid_argument("collatz_wielandt: diagonal length != n");
    if (!c.nonnegative()) throw std::invalid_argument("collatz_wielandt: tensor must be nonnegative");
    for (double v : d)
        if (!(v > 0)) throw std::invalid_argument("collatz_wielandt: diagonal must be positive");
    if (c.order() < 2) throw std::invalid_argument("collatz_wielandt: order must be >= 2");
    return cw_iterate(n, c.order(), d, [&](const Vec& x) { return c.apply(x); }, tol, max_iter);
}

CollatzResult collatz_wielandt_max(const Matrix& w, double tol, int max_iter) {
    const int n = w.rows();
    if (w.cols() != n) throw std::invalid_argument("collatz_wielandt: matrix not square");
    for (double v : w.data())
        if (v < 0) throw std::invalid_argument("collatz_wielandt: matrix must be nonnegative");
    return cw_iterate(n, 2, Vec(n, 1.0), [&](const Vec& x) { return linalg::multiply(w, x); }, tol, max_iter);
}

// ---------------------------------------------------------------- ternary enumeration

TernaryResult ternary_eigen_enumerate(const HomogeneousPair& pair, double tol) {
    const int n = pair.n;
    if (n > kTernaryMaxN) throw cap_exceeded("ternary_eigen_enumerate: n must be <= 8");
    TernaryResult out;
    out.exact_domain = pair.tag == PairTag::PiecewiseLinear && pair.p == 1;
    out.note = out.exact_domain ? "piecewise-linear pair: ternary witnesses assumed complete"
                                : "subset of spectrum: ternary witnesses may miss eigenvalues";
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    // keyed by value; exact keys merge identical rationals, others merge within 1e-9
    std::map<double, TernaryEigen> found;
    std::map<double, bool> rejected_seen;
    Vec x(n);
    for (long long code = 1; code < total; ++code) {
        long long c = code;
        for (int i = 0; i < n; ++i) {
            x[i] = static_cast<double>(c % 3) - 1.0;  // digit 0 -> -1, 1 -> 0, 2 -> +1
            c /= 3;
        }
        bool nonzero = false;
        for (double v : x) nonzero = nonzero || v != 0;
        if (!nonzero) continue;
        ++out.points;
        const double g = pair.G(x);
        if (!(g > 0)) continue;
        const double f = pair.F(x);
        const double lambda = f / g;
        auto near = found.lower_bound(lambda - 1e-9);
        if (near != found.end() && near->first <= lambda + 1e-9) continue;  // already certified
        const double res = eigen_residual(pair, lambda, x);
        if (res > tol) continue;
        TernaryEigen e;
        e.lambda = lambda;
        e.witness = x;
        e.residual = res;
        const double fr = std::round(f), gr = std::round(g);
        if (std::abs(f - fr) < 1e-9 && std::abs(g - gr) < 1e-9 && std::abs(fr) < 9e15 && std::abs(gr) < 9e15)
            e.exact = Rational(static_cast<std::int64_t>(fr), static_cast<std::int64_t>(gr));
        found.emplace(lambda, e);
    }
    for (auto& [k, e] : found) out.eigenvalues.push_back(e);
    return out;
}

// ---------------------------------------------------------------- duality

double conjugate_exponent(double p) {
    if (p == 1) return kInf;
    if (std::isinf(p)) return 1;
    return p / (p - 1);
}

namespace {

// One element of the subdifferential of ||v||_p.
Vec norm_subgradient(const Vec& v, double p) {
    const int n = static_cast<int>(v.size());
    Vec g(n, 0.0);
    const double nv = linalg::norm_p(v, p);
    if (nv == 0) return g;
    if (std::isinf(p)) {
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[best])) best = i;
        g[best] = v[best] > 0 ? 1 : -1;
    } else if (p == 1) {
        for (int i = 0; i < n; ++i) g[i] = v[i] > 0 ? 1 : (v[i] < 0 ? -1 : 0);
    } else {
        for (int i = 0; i < n; ++i)
            g[i] = (v[i] > 0 ? 1 : -1) * std::pow(std::abs(v[i]) / nv, p - 1) * (v[i] == 0 ? 0 : 1);
    }
    return g;
}

// argmax of <c, x> over the unit q-ball.
Vec ball_maximizer(const Vec& c, double q) {
    const int n = static_cast<int>(c.size());
    Vec x(n, 0.0);
    const double qs = conjugate_exponent(q);
    const double nc = linalg::norm_p(c, qs);
    if (nc == 0) return x;
    if (std::isinf(q)) {
        for (int i = 0; i < n; ++i) x[i] = c[i] >= 0 ? 1 : -1;
    } else if (q == 1) {
        int best = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(c[i]) > std::abs(c[best])) best = i;
        x[best] = c[best] >= 0 ? 1 : -1;
    } else {
        for (int i = 0; i < n; ++i) x[i] = (c[i] >= 0 ? 1 : -1) * std::pow(std::abs(c[i]) / nc, qs - 1);
    }
    return x;
}

// Extreme points of the unit q-ball when it is polyhedral and small.
std::vector<Vec> ball_vertices(int n, double q) {
    std::vector<Vec> out;
    if (std::isinf(q) && n <= 16) {
        for (std::uint32_t m = 0; m < (1u << n); ++m) {
            Vec v(n);
            for (int i = 0; i < n; ++i) v[i] = (m >> i) & 1 ? 1.0 : -1.0;
            out.push_back(v);
        }
    } else if (q == 1) {
        for (int i = 0; i < n; ++i)
            for (double s : {1.0, -1.0}) {
                Vec v(n, 0.0);
                v[i] = s;
                out.push_back(v);
            }
    }
    return out;
}

// Maximizes the convex function phi over the unit q-ball by conditional-gradient ascent.
double convex_ball_max(int n, double q, const std::function<double(const Vec&, Vec&)>& phi, std::uint64_t seed,
                       int starts, std::uint64_t stream) {
    std::vector<Vec> init = ball_vertices(n, q);
    for (int s = 0; s < starts; ++s) {
        auto rng = stream_rng(seed, stream * 1000003ULL + static_cast<std::uint64_t>(s));
        Vec v = gaussian(n, rng);
        const double nv = linalg::norm_p(v, q);
        init.push_back(scaled(v, 1.0 / nv));
    }
    double best = -kInf;
    Vec g(n);
    for (Vec x : init) {
        double val = phi(x, g);
        for (int it = 0; it < 500; ++it) {
            Vec nx = ball_maximizer(g, q);
            Vec ng(n);
            const double nvv = phi(nx, ng);
            if (!(nvv > val + 1e-15 * std::max(1.0, std::abs(val)))) break;
            x = std::move(nx);
            g = std::move(ng);
            val = nvv;
        }
        best = std::max(best, val);
    }
    return best;
}

}  // namespace

DualityReport duality_spectrum_check(const Matrix& t, double p, double q, std::uint64_t seed, int starts) {
    if (!(p >= 1) || !(q >= 1)) throw std::invalid_argument("duality_spectrum_check: exponents must be >= 1");
    const int m = t.rows(), n = t.cols();
    const Matrix tt = t.transpose();
    const double ps = conjugate_exponent(p), qs = conjugate_exponent(q);
    DualityReport rep;
    auto primal = [&](const Vec& x, Vec& g) {
        const Vec tx = linalg::multiply(t, x);
        g = linalg::multiply_transpose(t, norm_subgradient(tx, p));
        return linalg::norm_p(tx, p);
    };
    auto dual = [&](const Vec& y, Vec& g) {
        const Vec ty = linalg::multiply(tt, y);
        g = linalg::multiply_transpose(tt, norm_subgradient(ty, qs));
        return linalg::norm_p(ty, qs);
    };
    rep.primal = convex_ball_max(n, q, primal, seed, starts, 1);
    rep.dual = convex_ball_max(m, ps, dual, seed, starts, 2);
    if (p == 2 && q == 2) {
        const auto e = linalg::symmetric_eigen(tt * t);
        const double sigma = std::sqrt(std::max(0.0, e.values.back()));
        rep.exact = true;
        rep.primal = std::max(rep.primal, sigma);
        rep.dual = std::max(rep.dual, sigma);
    }
    rep.gap = std::abs(rep.primal - rep.dual);
    return rep;
}

IncidenceSpectra incidence_spectra(const Matrix& b, double zero_tol) {
    IncidenceSpectra r;
    const auto ev = linalg::symmetric_eigen(b * b.transpose());
    const auto ee = linalg::symmetric_eigen(b.transpose() * b);
    for (double v : ev.values)
        if (v > zero_tol) r.vertex.push_back(v);
    for (double v : ee.values)
        if (v > zero_tol) r.edge.push_back(v);
    r.same_count = r.vertex.size() == r.edge.size();
    if (r.same_count)
        for (std::size_t i = 0; i < r.vertex.size(); ++i) r.gap = std::max(r.gap, std::abs(r.vertex[i] - r.edge[i]));
    else
        r.gap = kInf;
    return r;
}

DualInnerReport dual_inner_problem_check(double p, const Matrix& t, const Vec& u, Ball ball, bool maximize,
                                         std::uint64_t seed) {
    const int m = t.rows(), n = t.cols();
    if (static_cast<int>(u.size()) != n) throw std::invalid_argument("dual_inner_problem_check: u has wrong length");
    const double ps = conjugate_exponent(p);
    const double bq = ball == Ball::L2 ? 2.0 : kInf;        // the ball B as a unit q-ball
    const double hq = ball == Ball::L2 ? 2.0 : 1.0;         // support function h_B = ||.||_{q*}
    const Matrix tt = t.transpose();
    DualInnerReport rep;
    rep.maximize = maximize;
    // phi(x) = ||T x||_p - x.u
    auto phi = [&](const Vec& x, Vec& g) {
        const Vec tx = linalg::multiply(t, x);
        g = linalg::multiply_transpose(t, norm_subgradient(tx, p));
        for (int i = 0; i < n; ++i) g[i] -= u[i];
        return linalg::norm_p(tx, p) - linalg::dot(x, u);
    };
    // psi(y) = h_B(sign * (T'y - u)), sign = +1 for the max variant, -1 for the min variant
    const double sg = maximize ? 1.0 : -1.0;
    auto psi = [&](const Vec& y, Vec& g) {
        Vec w = linalg::multiply(tt, y);
        for (int i = 0; i < n; ++i) w[i] = sg * (w[i] - u[i]);
        g = scaled(linalg::multiply_transpose(tt, norm_subgradient(w, hq)), sg);
        return linalg::norm_p(w, hq);
    };
    if (maximize) {
        rep.primal = convex_ball_max(n, bq, phi, seed, 64, 3);
        rep.dual = convex_ball_max(m, ps, psi, seed, 64, 4);
    } else {
        auto ball_constraint = [&](double q, int dim) {
            return [q, dim](const Vec& x, Vec& g) {
                const double nx = linalg::norm_p(x, q);
                g = norm_subgradient(x, q);
                g.resize(dim, 0.0);
                return nx - 1.0;
            };
        };
        auto wrap = [](const std::function<double(const Vec&, Vec&)>& f) {
            return [f](const Vec& x, Vec& g) {
                Vec gg;
                const double v = f(x, gg);
                g = gg;
                return v;
            };
        };
        const double rx = ball == Ball::L2 ? 1.0 : std::sqrt(static_cast<double>(n));
        const double ry = std::isinf(ps) ? std::sqrt(static_cast<double>(m)) : 1.0;
        auto px = linalg::ellipsoid_minimize(wrap(phi), ball_constraint(bq, n), Vec(n, 0.0), rx * (1 + 1e-9), 1e-11);
        auto py = linalg::ellipsoid_minimize(wrap(psi), ball_constraint(ps, m), Vec(m, 0.0), ry * (1 + 1e-9), 1e-11);
        rep.primal = px.value;
        rep.dual = -py.value;
    }
    rep.gap = std::abs(rep.primal - rep.dual);
    return rep;
}

}  // namespace artifact::spectra
