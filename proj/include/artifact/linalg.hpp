#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace artifact::linalg {

using Vec = std::vector<double>;

/// Row-major dense matrix.
template <typename T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols, T fill = T{}) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}
    DenseMatrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c_) throw std::invalid_argument("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    DenseMatrix transpose() const {
        DenseMatrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix product: shape mismatch");
        DenseMatrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int l = 0; l < a.c_; ++l) {
                const T v = a(i, l);
                if (v == T{}) continue;
                for (int j = 0; j < b.c_; ++j) m(i, j) += v * b(l, j);
            }
        return m;
    }
    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix sum: shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix difference: shape mismatch");
        for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend DenseMatrix operator*(T s, DenseMatrix a) {
        for (auto& v : a.a_) v *= s;
        return a;
    }
    bool operator==(const DenseMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    const std::vector<T>& data() const { return a_; }

private:
    int r_ = 0;
    int c_ = 0;
    std::vector<T> a_;
};

using Matrix = DenseMatrix<double>;
using IntMatrix = DenseMatrix<long long>;

Vec multiply(const Matrix& a, const Vec& x);
Vec multiply_transpose(const Matrix& a, const Vec& x);
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_p(const Vec& a, double p);  // p = infinity allowed
double frobenius(const Matrix& a);
Matrix to_real(const IntMatrix& m);
Matrix diagonal_matrix(const Vec& d);

struct SymmetricEigen {
    Vec values;      // ascending
    Matrix vectors;  // column i pairs with values[i]
    int sweeps = 0;
};

inline constexpr double kJacobiThreshold = 1e-12;
inline constexpr int kJacobiMaxSweeps = 64;

/// Cyclic Jacobi on a symmetric matrix. Throws non_convergence after 64 sweeps.
SymmetricEigen symmetric_eigen(const Matrix& a);

/// Solves a x = b by partial-pivot Gaussian elimination; throws if singular.
Vec solve(Matrix a, Vec b);

/// Orthonormal basis (columns) of the column span, dropping directions below tol.
Matrix orthonormal_basis(const Matrix& cols, double tol = 1e-10);
/// Orthonormal basis of the orthogonal complement of the column span in R^n.
Matrix orthogonal_complement(const Matrix& cols, int n, double tol = 1e-10);
int rank(const Matrix& a, double tol = 1e-10);

// ---------------------------------------------------------------- linear programming

enum class Sense { LE, GE, EQ };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpRow {
    Vec a;
    Sense sense = Sense::LE;
    double b = 0;
};

/// minimize c.x subject to rows, x_j >= 0 unless free[j].
struct LinearProgram {
    int n = 0;
    Vec c;
    std::vector<LpRow> rows;
    std::vector<bool> free;  // empty means all nonnegative

    void add(Vec a, Sense s, double b) { rows.push_back({std::move(a), s, b}); }
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0;
    Vec x;
};

inline constexpr double kLpTol = 1e-9;

/// Dense two-phase simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

// ---------------------------------------------------------------- ellipsoid method

struct EllipsoidResult {
    Vec x;
    double value = 0;
    double gap_bound = 0;  // width of the final ellipsoid along the last cut
    int iterations = 0;
    bool feasible = false;
};

/// Minimizes a convex function over {x : constraint(x) <= 0} inside the ball B(center, radius).
/// oracle(x, g) returns f(x) and writes a subgradient; the constraint oracle likewise (may be empty).
EllipsoidResult ellipsoid_minimize(const std::function<double(const Vec&, Vec&)>& objective,
                                   const std::function<double(const Vec&, Vec&)>& constraint, const Vec& center,
                                   double radius, double tol = 1e-10, int max_iter = 200000);

}  // namespace artifact::linalg
