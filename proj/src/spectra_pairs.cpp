#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "artifact/errors.hpp"
#include "artifact/spectra.hpp"

namespace artifact::spectra {

using linalg::LinearProgram;
using linalg::Sense;

// ---------------------------------------------------------------- Subdiff

Vec Subdiff::representative() const {
    Vec r = center;
    for (const auto& h : hulls)
        if (!h.empty())
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += h.front()[i];
    return r;
}

std::vector<Vec> Subdiff::generators(std::size_t cap) const {
    std::vector<Vec> out{center};
    auto combine = [&](const std::vector<Vec>& options) {
        if (out.size() * options.size() > cap) throw cap_exceeded("subdifferential has too many vertices");
        std::vector<Vec> next;
        next.reserve(out.size() * options.size());
        for (const auto& base : out)
            for (const auto& o : options) {
                Vec v = base;
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += o[i];
                next.push_back(std::move(v));
            }
        out = std::move(next);
    };
    for (const auto& s : segments) {
        Vec neg = s;
        for (double& e : neg) e = -e;
        combine({s, neg});
    }
    for (const auto& h : hulls) combine(h);
    return out;
}

Subdiff Subdiff::pulled_back(const Matrix& m) const {
    Subdiff r;
    r.center = linalg::multiply_transpose(m, center);
    for (const auto& s : segments) r.segments.push_back(linalg::multiply_transpose(m, s));
    for (const auto& h : hulls) {
        std::vector<Vec> hh;
        for (const auto& v : h) hh.push_back(linalg::multiply_transpose(m, v));
        r.hulls.push_back(std::move(hh));
    }
    return r;
}

// ---------------------------------------------------------------- builders

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

void check_p(double p) {
    if (!(p >= 1) || !std::isfinite(p)) throw std::invalid_argument("exponent p must be finite and >= 1");
}

// G = sum c_i |x_i|^p.
void attach_power_g(HomogeneousPair& pair, Vec c) {
    const double p = pair.p;
    pair.G = [c, p](const Vec& x) {
        double s = 0;
        for (std::size_t i = 0; i < x.size(); ++i) s += c[i] * std::pow(std::abs(x[i]), p);
        return s;
    };
    pair.gradG = [c, p](const Vec& x) {
        Vec g(x.size(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            g[i] = p == 1 ? c[i] * sgn(x[i]) : p * c[i] * std::pow(std::abs(x[i]), p - 1) * sgn(x[i]);
        return g;
    };
    pair.dG = [c, p](const Vec& x) {
        const int n = static_cast<int>(x.size());
        Subdiff d(n);
        for (int i = 0; i < n; ++i) {
            if (p == 1 && x[i] == 0) {
                Vec s(n, 0.0);
                s[i] = c[i];
                d.segments.push_back(s);
            } else if (p == 1) {
                d.center[i] = c[i] * sgn(x[i]);
            } else {
                d.center[i] = p * c[i] * std::pow(std::abs(x[i]), p - 1) * sgn(x[i]);
            }
        }
        return d;
    };
}

// F = sum w |x_i + sigma x_j|^p over the edges.
HomogeneousPair edge_power_pair(const structures::WeightedGraph& g, double p, bool normalized, double sigma) {
    check_p(p);
    HomogeneousPair pair;
    pair.n = g.n();
    pair.p = p;
    pair.tag = p == 1 ? PairTag::PiecewiseLinear : (p == 2 ? PairTag::QuadraticForm : PairTag::PowerForm);
    const auto edges = g.edges();
    pair.F = [edges, p, sigma](const Vec& x) {
        double s = 0;
        for (const auto& e : edges) s += e.w * std::pow(std::abs(x[e.i] + sigma * x[e.j]), p);
        return s;
    };
    pair.gradF = [edges, p, sigma](const Vec& x) {
        Vec gr(x.size(), 0.0);
        for (const auto& e : edges) {
            const double d = x[e.i] + sigma * x[e.j];
            const double c = p == 1 ? e.w * sgn(d) : p * e.w * std::pow(std::abs(d), p - 1) * sgn(d);
            gr[e.i] += c;
            gr[e.j] += sigma * c;
        }
        return gr;
    };
    pair.dF = [edges, p, sigma](const Vec& x) {
        const int n = static_cast<int>(x.size());
        Subdiff d(n);
        for (const auto& e : edges) {
            const double v = x[e.i] + sigma * x[e.j];
            if (p == 1 && v == 0) {
                Vec s(n, 0.0);
                s[e.i] = e.w;
                s[e.j] = sigma * e.w;
                d.segments.push_back(s);
                continue;
            }
            const double c = p == 1 ? e.w * sgn(v) : p * e.w * std::pow(std::abs(v), p - 1) * sgn(v);
            d.center[e.i] += c;
            d.center[e.j] += sigma * c;
        }
        return d;
    };
    attach_power_g(pair, normalized ? g.degrees() : Vec(g.n(), 1.0));
    return pair;
}

}  // namespace

HomogeneousPair graph_p_laplacian(const structures::WeightedGraph& g, double p, bool normalized) {
    return edge_power_pair(g, p, normalized, -1.0);
}

HomogeneousPair graph_signless_p_laplacian(const structures::WeightedGraph& g, double p, bool normalized) {
    return edge_power_pair(g, p, normalized, 1.0);
}

HomogeneousPair quadratic_pair(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("quadratic_pair: shape mismatch");
    HomogeneousPair pair;
    pair.n = a.rows();
    pair.p = 2;
    pair.tag = PairTag::QuadraticForm;
    auto form = [](const Matrix& m) { return [m](const Vec& x) { return linalg::dot(x, linalg::multiply(m, x)); }; };
    auto grad = [](const Matrix& m) {
        return [m](const Vec& x) {
            Vec g = linalg::multiply(m, x);
            Vec h = linalg::multiply_transpose(m, x);
            for (std::size_t i = 0; i < g.size(); ++i) g[i] += h[i];
            return g;
        };
    };
    pair.F = form(a);
    pair.G = form(b);
    pair.gradF = grad(a);
    pair.gradG = grad(b);
    pair.dF = [gf = pair.gradF](const Vec& x) {
        Subdiff d;
        d.center = gf(x);
        return d;
    };
    pair.dG = [gg = pair.gradG](const Vec& x) {
        Subdiff d;
        d.center = gg(x);
        return d;
    };
    return pair;
}

HomogeneousPair chemical_p_laplacian(const structures::ChemicalHypergraph& h, double p) {
    check_p(p);
    HomogeneousPair pair;
    pair.n = h.n();
    pair.p = p;
    pair.tag = p == 1 ? PairTag::PiecewiseLinear : PairTag::PowerForm;
    const auto edges = h.edges();
    const int n = h.n();
    struct Extremes {
        double hi, lo;
        std::vector<int> argmax, argmin;
    };
    auto extremes = [n](const structures::ChemicalEdge& e, const Vec& x) {
        Extremes r{-INFINITY, INFINITY, {}, {}};
        for (int i = 0; i < n; ++i) {
            if ((e.in >> i) & 1) {
                if (x[i] > r.hi) {
                    r.hi = x[i];
                    r.argmax.assign(1, i);
                } else if (x[i] == r.hi) {
                    r.argmax.push_back(i);
                }
            }
            if ((e.out >> i) & 1) {
                if (x[i] < r.lo) {
                    r.lo = x[i];
                    r.argmin.assign(1, i);
                } else if (x[i] == r.lo) {
                    r.argmin.push_back(i);
                }
            }
        }
        return r;
    };
    pair.F = [edges, p, extremes](const Vec& x) {
        double s = 0;
        for (const auto& e : edges) {
            auto r = extremes(e, x);
            s += std::pow(std::abs(r.hi - r.lo), p);
        }
        return s;
    };
    pair.gradF = [edges, p, extremes, n](const Vec& x) {
        Vec g(n, 0.0);
        for (const auto& e : edges) {
            auto r = extremes(e, x);
            const double d = r.hi - r.lo;
            const double c = p == 1 ? sgn(d) : p * std::pow(std::abs(d), p - 1) * sgn(d);
            g[r.argmax.front()] += c;
            g[r.argmin.front()] -= c;
        }
        return g;
    };
    pair.dF = [edges, p, extremes, n](const Vec& x) {
        Subdiff d(n);
        for (const auto& e : edges) {
            auto r = extremes(e, x);
            const double diff = r.hi - r.lo;
            if (p > 1 && diff == 0) continue;
            const double c = p == 1 ? sgn(diff) : p * std::pow(std::abs(diff), p - 1) * sgn(diff);
            std::vector<Vec> hull;
            for (int i : r.argmax)
                for (int j : r.argmin) {
                    Vec v(n, 0.0);
                    v[i] += 1;
                    v[j] -= 1;
                    if (diff == 0) {
                        // Clarke subdifferential of |h| at h = 0 is conv(dh u -dh)
                        Vec w = v;
                        for (double& t : w) t = -t;
                        hull.push_back(v);
                        hull.push_back(w);
                    } else {
                        for (double& t : v) t *= c;
                        hull.push_back(v);
                    }
                }
            if (hull.size() == 1) {
                for (int i = 0; i < n; ++i) d.center[i] += hull.front()[i];
            } else {
                d.hulls.push_back(std::move(hull));
            }
        }
        return d;
    };
    attach_power_g(pair, h.degrees());
    return pair;
}

HomogeneousPair compose_linear(const HomogeneousPair& pair, const Matrix& m) {
    if (m.rows() != pair.n || m.cols() != pair.n) throw std::invalid_argument("compose_linear: shape mismatch");
    if (linalg::rank(m) != pair.n) throw std::invalid_argument("compose_linear: matrix not invertible");
    HomogeneousPair r = pair;
    r.tag = PairTag::Composite;
    r.F = [f = pair.F, m](const Vec& x) { return f(linalg::multiply(m, x)); };
    r.G = [g = pair.G, m](const Vec& x) { return g(linalg::multiply(m, x)); };
    r.dF = [d = pair.dF, m](const Vec& x) { return d(linalg::multiply(m, x)).pulled_back(m); };
    r.dG = [d = pair.dG, m](const Vec& x) { return d(linalg::multiply(m, x)).pulled_back(m); };
    r.gradF = [gp = pair, m](const Vec& x) {
        return linalg::multiply_transpose(m, gp.one_subgradient_F(linalg::multiply(m, x)));
    };
    r.gradG = [gp = pair, m](const Vec& x) {
        return linalg::multiply_transpose(m, gp.one_subgradient_G(linalg::multiply(m, x)));
    };
    return r;
}

// ---------------------------------------------------------------- quadratic spectrum

GeneralizedEigen quadratic_pair_spectrum(const Matrix& a, const Matrix& b) {
    const int n = a.rows();
    if (a.cols() != n || b.rows() != n || b.cols() != n) throw std::invalid_argument("quadratic_pair_spectrum: shape mismatch");
    bool diagonal = true;
    for (int i = 0; i < n && diagonal; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && b(i, j) != 0) {
                diagonal = false;
                break;
            }
    Matrix s(n, n);  // B^{-1/2}
    if (diagonal) {
        for (int i = 0; i < n; ++i) {
            if (!(b(i, i) > 0)) throw std::invalid_argument("quadratic_pair_spectrum: B not positive definite");
            s(i, i) = 1 / std::sqrt(b(i, i));
        }
    } else {
        auto eb = linalg::symmetric_eigen(b);
        const double top = std::max(1.0, std::abs(eb.values.back()));
        for (double v : eb.values)
            if (v <= 1e-12 * top) throw std::invalid_argument("quadratic_pair_spectrum: B not positive definite");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double acc = 0;
                for (int k = 0; k < n; ++k) acc += eb.vectors(i, k) * eb.vectors(j, k) / std::sqrt(eb.values[k]);
                s(i, j) = acc;
            }
    }
    Matrix c = s * a * s;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c(i, j) = c(j, i) = 0.5 * (c(i, j) + c(j, i));
    auto ec = linalg::symmetric_eigen(c);
    GeneralizedEigen out;
    out.values = ec.values;
    out.vectors = s * ec.vectors;
    const double scale = std::max(1.0, linalg::frobenius(a));
    for (int k = 0; k < n; ++k) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = out.vectors(i, k);
        Vec av = linalg::multiply(a, v), bv = linalg::multiply(b, v);
        double r = 0;
        for (int i = 0; i < n; ++i) r += (av[i] - out.values[k] * bv[i]) * (av[i] - out.values[k] * bv[i]);
        out.max_residual = std::max(out.max_residual, std::sqrt(r) / scale);
    }
    return out;
}

int eigenspace_dimension(const GeneralizedEigen& e, double lambda, double tol) {
    int c = 0;
    for (double v : e.values) c += std::abs(v - lambda) <= tol;
    return c;
}

// ---------------------------------------------------------------- residual

double eigen_residual(const HomogeneousPair& pair, double lambda, const Vec& x) {
    const int n = pair.n;
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("eigen_residual: dimension mismatch");
    if (linalg::norm2(x) == 0) throw std::invalid_argument("eigen_residual: x must be nonzero");
    const Subdiff df = pair.dF(x), dg = pair.dG(x);
    if (df.center.size() != static_cast<std::size_t>(n) || dg.center.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("eigen_residual: empty subgradient generators");
    // constant part u0 - lambda v0 with segment parameters shifted to [0, 2]
    Vec base(n);
    for (int i = 0; i < n; ++i) base[i] = df.center[i] - lambda * dg.center[i];
    for (const auto& s : df.segments)
        for (int i = 0; i < n; ++i) base[i] -= s[i];
    for (const auto& s : dg.segments)
        for (int i = 0; i < n; ++i) base[i] += lambda * s[i];
    std::vector<Vec> cols;  // column of each variable's contribution
    std::vector<int> seg_vars;
    std::vector<std::pair<int, int>> hull_ranges;
    for (const auto& s : df.segments) {
        seg_vars.push_back(static_cast<int>(cols.size()));
        cols.push_back(s);
    }
    for (const auto& s : dg.segments) {
        seg_vars.push_back(static_cast<int>(cols.size()));
        Vec c = s;
        for (double& v : c) v *= -lambda;
        cols.push_back(c);
    }
    auto add_hulls = [&](const std::vector<std::vector<Vec>>& hulls, double scale) {
        for (const auto& h : hulls) {
            const int start = static_cast<int>(cols.size());
            for (const auto& v : h) {
                Vec c = v;
                for (double& t : c) t *= scale;
                cols.push_back(c);
            }
            hull_ranges.emplace_back(start, static_cast<int>(cols.size()));
        }
    };
    add_hulls(df.hulls, 1.0);
    add_hulls(dg.hulls, -lambda);
    if (cols.empty()) return linalg::norm_p(base, INFINITY);
    const int nv = static_cast<int>(cols.size()) + 1;  // last variable is epsilon
    LinearProgram lp;
    lp.n = nv;
    lp.c.assign(nv, 0.0);
    lp.c[nv - 1] = 1;
    for (int i = 0; i < n; ++i) {
        Vec up(nv, 0.0), down(nv, 0.0);
        for (int v = 0; v + 1 < nv; ++v) {
            up[v] = cols[v][i];
            down[v] = -cols[v][i];
        }
        up[nv - 1] = -1;
        down[nv - 1] = -1;
        lp.add(up, Sense::LE, -base[i]);
        lp.add(down, Sense::LE, base[i]);
    }
    for (int v : seg_vars) {
        Vec r(nv, 0.0);
        r[v] = 1;
        lp.add(r, Sense::LE, 2);
    }
    for (auto [a, b] : hull_ranges) {
        Vec r(nv, 0.0);
        for (int v = a; v < b; ++v) r[v] = 1;
        lp.add(r, Sense::EQ, 1);
    }
    auto res = linalg::solve_lp(lp);
    if (res.status != linalg::LpStatus::Optimal) throw non_convergence("eigen_residual: residual program did not solve");
    return std::max(0.0, res.value);
}

// ---------------------------------------------------------------- projections

ProjectionResult g_pi_projection(const Vec& w, double p, const Vec& v, const Vec& x) {
    check_p(p);
    const std::size_t n = x.size();
    if (w.size() != n || v.size() != n) throw std::invalid_argument("g_pi_projection: dimension mismatch");
    for (double wi : w)
        if (!(wi > 0)) throw std::invalid_argument("g_pi_projection: weights must be positive");
    auto value = [&](double t) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(std::abs(x[i] - t * v[i]), p);
        return s;
    };
    ProjectionResult r;
    bool any = false;
    for (double vi : v) any = any || vi != 0;
    if (!any) {
        r.value = value(0);
        return r;
    }
    if (p == 2) {
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += w[i] * v[i] * x[i];
            den += w[i] * v[i] * v[i];
        }
        r.t = num / den;
    } else if (p == 1) {
        // weighted median of x_i / v_i with weights w_i |v_i|
        std::vector<std::pair<double, double>> pts;
        double total = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) {
                pts.emplace_back(x[i] / v[i], w[i] * std::abs(v[i]));
                total += w[i] * std::abs(v[i]);
            }
        std::sort(pts.begin(), pts.end());
        double acc = 0;
        for (const auto& [t, wt] : pts) {
            acc += wt;
            if (acc >= total / 2) {
                r.t = t;
                break;
            }
        }
        // prefer 0 when it is also a minimizer, so optimal inputs map to t = 0
        if (value(0) <= value(r.t)) r.t = 0;
    } else {
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t i = 0; i < n; ++i)
            if (v[i] != 0) {
                lo = std::min(lo, x[i] / v[i]);
                hi = std::max(hi, x[i] / v[i]);
            }
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
            const double a = lo + (hi - lo) * 0.381966011250105, b = hi - (hi - lo) * 0.381966011250105;
            if (value(a) <= value(b))
                hi = b;
            else
                lo = a;
        }
        r.t = 0.5 * (lo + hi);
        if (value(0) <= value(r.t)) r.t = 0;
    }
    r.value = value(r.t);
    return r;
}

SubspaceProjection no_projection(const HomogeneousPair& pair) {
    SubspaceProjection pr;
    pr.basis = Matrix(pair.n, 0);
    pr.evaluate = [g = pair.G, n = pair.n](const Vec& x) { return std::make_pair(g(x), Vec(n, 0.0)); };
    return pr;
}

SubspaceProjection weighted_power_projection(const Vec& w, double p, const Vec& v) {
    SubspaceProjection pr;
    const int n = static_cast<int>(v.size());
    pr.basis = Matrix(n, 1);
    for (int i = 0; i < n; ++i) pr.basis(i, 0) = v[i];
    pr.evaluate = [w, p, v](const Vec& x) {
        auto r = g_pi_projection(w, p, v, x);
        Vec z(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) z[i] = -r.t * v[i];
        return std::make_pair(r.value, z);
    };
    return pr;
}

}  // namespace artifact::spectra
