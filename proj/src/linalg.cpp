#include "artifact/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "artifact/errors.hpp"

namespace artifact::linalg {

Vec multiply(const Matrix& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.cols()) throw std::invalid_argument("multiply: shape mismatch");
    Vec y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

Vec multiply_transpose(const Matrix& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.rows()) throw std::invalid_argument("multiply_transpose: shape mismatch");
    Vec y(a.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) y[j] += a(i, j) * x[i];
    return y;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_p(const Vec& a, double p) {
    if (std::isinf(p)) {
        double m = 0;
        for (double v : a) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0;
    for (double v : a) s += std::pow(std::abs(v), p);
    return std::pow(s, 1.0 / p);
}

double frobenius(const Matrix& a) {
    double s = 0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

Matrix to_real(const IntMatrix& m) {
    Matrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = static_cast<double>(m(i, j));
    return r;
}

Matrix diagonal_matrix(const Vec& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

SymmetricEigen symmetric_eigen(const Matrix& input) {
    const int n = input.rows();
    if (input.cols() != n) throw std::invalid_argument("symmetric_eigen: matrix not square");
    Matrix a = input;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(a(i, j) - a(j, i)) > 1e-9 * std::max(1.0, frobenius(input)))
                throw std::invalid_argument("symmetric_eigen: matrix not symmetric");
            a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
        }
    Matrix v = Matrix::identity(n);
    const double scale = std::max(frobenius(a), std::numeric_limits<double>::min());
    SymmetricEigen out;
    for (;;) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2 * a(i, j) * a(i, j);
        if (std::sqrt(off) <= kJacobiThreshold * scale || off == 0) break;
        if (out.sweeps == kJacobiMaxSweeps) throw non_convergence("Jacobi: sweep cap reached");
        ++out.sweeps;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0;
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]);
        for (int k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
    }
    return out;
}

Vec solve(Matrix a, Vec b) {
    const int n = a.rows();
    if (a.cols() != n || static_cast<int>(b.size()) != n) throw std::invalid_argument("solve: shape mismatch");
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-14) throw std::domain_error("solve: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            if (f == 0) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

namespace {

// Modified Gram-Schmidt over candidate columns; returns accepted columns.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& cand, double tol, std::vector<Vec> basis = {}) {
    std::vector<Vec> out;
    for (Vec v : cand) {
        const double before = norm2(v);
        if (before == 0) continue;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                const double d = dot(v, b);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
            }
            for (const auto& b : out) {
                const double d = dot(v, b);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
            }
        }
        const double nv = norm2(v);
        if (nv <= tol * std::max(1.0, before)) continue;
        for (double& e : v) e /= nv;
        out.push_back(v);
    }
    return out;
}

std::vector<Vec> columns(const Matrix& m) {
    std::vector<Vec> cols(m.cols(), Vec(m.rows()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) cols[j][i] = m(i, j);
    return cols;
}

Matrix from_columns(const std::vector<Vec>& cols, int n) {
    Matrix m(n, static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = cols[j][i];
    return m;
}

}  // namespace

Matrix orthonormal_basis(const Matrix& cols, double tol) {
    return from_columns(gram_schmidt(columns(cols), tol), cols.rows());
}

Matrix orthogonal_complement(const Matrix& cols, int n, double tol) {
    auto basis = cols.cols() ? gram_schmidt(columns(cols), tol) : std::vector<Vec>{};
    std::vector<Vec> unit;
    for (int i = 0; i < n; ++i) {
        Vec e(n, 0.0);
        e[i] = 1;
        unit.push_back(e);
    }
    return from_columns(gram_schmidt(unit, 1e-8, basis), n);
}

int rank(const Matrix& a, double tol) { return orthonormal_basis(a, tol).cols(); }

// ---------------------------------------------------------------- simplex

namespace {

struct Tableau {
    int m = 0, n = 0;  // constraint rows, structural+slack+artificial columns
    std::vector<double> t;  // (m+1) x (n+1); last row objective, last column rhs
    std::vector<int> basis;

    double& at(int i, int j) { return t[static_cast<std::size_t>(i) * (n + 1) + j]; }

    void pivot(int r, int c) {
        const double pv = at(r, c);
        for (int j = 0; j <= n; ++j) at(r, j) /= pv;
        for (int i = 0; i <= m; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0) continue;
            for (int j = 0; j <= n; ++j) at(i, j) -= f * at(r, j);
        }
        basis[r] = c;
    }

    // Runs Bland-rule iterations on the objective row; allowed[j] false excludes column j.
    LpStatus run(const std::vector<bool>& allowed, int max_iter) {
        for (int it = 0; it < max_iter; ++it) {
            int enter = -1;
            for (int j = 0; j < n; ++j)
                if (allowed[j] && at(m, j) < -kLpTol) {
                    enter = j;
                    break;
                }
            if (enter < 0) return LpStatus::Optimal;
            int leave = -1;
            double best = 0;
            for (int i = 0; i < m; ++i) {
                const double a = at(i, enter);
                if (a <= kLpTol) continue;
                const double ratio = at(i, n) / a;
                if (leave < 0 || ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
        return LpStatus::IterationLimit;
    }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    const int n0 = lp.n;
    if (static_cast<int>(lp.c.size()) != n0) throw std::invalid_argument("solve_lp: objective length != n");
    std::vector<bool> is_free = lp.free.empty() ? std::vector<bool>(n0, false) : lp.free;
    // structural columns: x_j (or x_j+ and x_j- when free)
    std::vector<int> col_of(n0), neg_col(n0, -1);
    int ns = 0;
    for (int j = 0; j < n0; ++j) {
        col_of[j] = ns++;
        if (is_free[j]) neg_col[j] = ns++;
    }
    const int m = static_cast<int>(lp.rows.size());
    int n_slack = 0, n_art = 0;
    for (const auto& r : lp.rows) {
        if (static_cast<int>(r.a.size()) != n0) throw std::invalid_argument("solve_lp: row length != n");
        const bool flip = r.b < 0;
        Sense s = r.sense;
        if (flip && s != Sense::EQ) s = s == Sense::LE ? Sense::GE : Sense::LE;
        if (s != Sense::EQ) ++n_slack;
        if (s != Sense::LE) ++n_art;
    }
    Tableau tb;
    tb.m = m;
    tb.n = ns + n_slack + n_art;
    tb.t.assign(static_cast<std::size_t>(m + 1) * (tb.n + 1), 0.0);
    tb.basis.assign(m, -1);
    int slack = ns, art = ns + n_slack;
    std::vector<bool> artificial(tb.n, false);
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        const double sg = r.b < 0 ? -1.0 : 1.0;
        Sense s = r.sense;
        if (sg < 0 && s != Sense::EQ) s = s == Sense::LE ? Sense::GE : Sense::LE;
        for (int j = 0; j < n0; ++j) {
            tb.at(i, col_of[j]) = sg * r.a[j];
            if (neg_col[j] >= 0) tb.at(i, neg_col[j]) = -sg * r.a[j];
        }
        tb.at(i, tb.n) = sg * r.b;
        if (s == Sense::LE) {
            tb.at(i, slack) = 1;
            tb.basis[i] = slack++;
        } else {
            if (s == Sense::GE) tb.at(i, slack++) = -1;
            tb.at(i, art) = 1;
            artificial[art] = true;
            tb.basis[i] = art++;
        }
    }
    const int max_iter = 50000;
    LpResult res;
    // phase 1
    if (n_art > 0) {
        for (int j = 0; j <= tb.n; ++j) tb.at(m, j) = 0;
        for (int i = 0; i < m; ++i)
            if (artificial[tb.basis[i]])
                for (int j = 0; j <= tb.n; ++j)
                    if (!artificial[j]) tb.at(m, j) -= tb.at(i, j);
        std::vector<bool> allowed(tb.n, true);
        auto st = tb.run(allowed, max_iter);
        if (st == LpStatus::IterationLimit) {
            res.status = st;
            return res;
        }
        if (-tb.at(m, tb.n) > 1e-7) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // drive remaining artificials out of the basis
        for (int i = 0; i < m; ++i) {
            if (!artificial[tb.basis[i]]) continue;
            for (int j = 0; j < tb.n; ++j)
                if (!artificial[j] && std::abs(tb.at(i, j)) > 1e-9) {
                    tb.pivot(i, j);
                    break;
                }
        }
    }
    // phase 2
    for (int j = 0; j <= tb.n; ++j) tb.at(m, j) = 0;
    for (int j = 0; j < n0; ++j) {
        tb.at(m, col_of[j]) = lp.c[j];
        if (neg_col[j] >= 0) tb.at(m, neg_col[j]) = -lp.c[j];
    }
    for (int i = 0; i < m; ++i) {
        const double cb = tb.at(m, tb.basis[i]);
        if (cb == 0) continue;
        for (int j = 0; j <= tb.n; ++j) tb.at(m, j) -= cb * tb.at(i, j);
    }
    std::vector<bool> allowed(tb.n, true);
    for (int j = 0; j < tb.n; ++j) allowed[j] = !artificial[j];
    // an artificial stuck in the basis at zero level marks a redundant row; keep it out of pivots
    auto st = tb.run(allowed, max_iter);
    res.status = st;
    if (st != LpStatus::Optimal) return res;
    Vec y(tb.n, 0.0);
    for (int i = 0; i < m; ++i) y[tb.basis[i]] = tb.at(i, tb.n);
    res.x.assign(n0, 0.0);
    for (int j = 0; j < n0; ++j) res.x[j] = y[col_of[j]] - (neg_col[j] >= 0 ? y[neg_col[j]] : 0.0);
    res.value = dot(lp.c, res.x);
    return res;
}

// ---------------------------------------------------------------- ellipsoid

EllipsoidResult ellipsoid_minimize(const std::function<double(const Vec&, Vec&)>& objective,
                                   const std::function<double(const Vec&, Vec&)>& constraint, const Vec& center,
                                   double radius, double tol, int max_iter) {
    const int n = static_cast<int>(center.size());
    constexpr double inf = std::numeric_limits<double>::infinity();
    EllipsoidResult res;
    res.x = center;
    res.value = inf;
    double lower = -inf;
    Vec x = center;
    Matrix P = (radius * radius) * Matrix::identity(n);
    Vec g(n), Pg(n);
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        bool objective_cut = true;
        double fx = 0;
        std::fill(g.begin(), g.end(), 0.0);
        if (constraint && constraint(x, g) > 0) objective_cut = false;
        if (objective_cut) {
            std::fill(g.begin(), g.end(), 0.0);
            fx = objective(x, g);
            if (fx < res.value) {
                res.value = fx;
                res.x = x;
                res.feasible = true;
            }
        }
        for (int i = 0; i < n; ++i) {
            Pg[i] = 0;
            for (int j = 0; j < n; ++j) Pg[i] += P(i, j) * g[j];
        }
        const double gPg = dot(g, Pg);
        if (gPg <= 0) {
            if (objective_cut) lower = res.value;  // zero subgradient: x is optimal
            break;
        }
        const double w = std::sqrt(gPg);
        if (objective_cut) {
            // the optimum lies in the ellipsoid, so f* >= f(x) - sqrt(g'Pg)
            lower = std::max(lower, fx - w);
            if (res.value - lower <= tol) break;
        }
        if (n == 1) {
            x[0] -= 0.5 * Pg[0] / w;
            P(0, 0) *= 0.25;
            continue;
        }
        const double dn = static_cast<double>(n);
        for (int i = 0; i < n; ++i) x[i] -= Pg[i] / ((dn + 1) * w);
        const double fac = dn * dn / (dn * dn - 1);
        const double beta = 2.0 / (dn + 1);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                const double v = fac * (P(i, j) - beta * Pg[i] * Pg[j] / gPg);
                P(i, j) = P(j, i) = v;
            }
    }
    res.gap_bound = res.feasible ? res.value - lower : inf;
    return res;
}

}  // namespace artifact::linalg
