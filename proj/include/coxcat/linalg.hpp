#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "coxcat/errors.hpp"
#include "coxcat/rational.hpp"

namespace coxcat {

using Vec = std::vector<Rational>;

// Dense rational matrix, row-major.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

    Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool operator==(const Mat& o) const {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

inline Mat identity_matrix(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

inline Mat mat_mul(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw error("mat_mul: dimension mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rational& xik = x.at(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
    if (m.cols != static_cast<int>(v.size())) throw error("mat_vec: dimension mismatch");
    Vec r(m.rows, Rational(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

inline Mat mat_add(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw error("mat_add: dimension mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

inline Mat mat_sub(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw error("mat_sub: dimension mismatch");
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

inline Mat mat_scale(const Rational& c, const Mat& x) {
    Mat r = x;
    for (auto& e : r.a) e *= c;
    return r;
}

inline Mat transpose(const Mat& m) {
    Mat r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

inline Vec vec_add(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw error("vec_add: dimension mismatch");
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

inline Vec vec_sub(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw error("vec_sub: dimension mismatch");
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

inline Vec vec_scale(const Rational& c, const Vec& v) {
    Vec r = v;
    for (auto& e : r) e *= c;
    return r;
}

inline Vec vec_neg(const Vec& v) { return vec_scale(Rational(-1), v); }

inline bool is_zero_vec(const Vec& v) {
    for (const auto& e : v)
        if (e != 0) return false;
    return true;
}

// Euclidean inner product.
inline Rational inner(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw error("inner: dimension mismatch");
    Rational s(0);
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// Inner product under the symmetric bilinear form given by Gram matrix B.
inline Rational inner(const Vec& x, const Vec& y, const Mat& B) {
    return inner(x, mat_vec(B, y));
}

namespace detail {

// Clear denominators of one matrix row: multiply through by the lcm of the
// entries' denominators, returning the integer row.  Row scaling by a
// positive constant changes neither the rank nor the solution set of an
// augmented linear system.
inline std::vector<Int> integer_row(const Mat& m, int i) {
    Int l(1);
    for (int j = 0; j < m.cols; ++j) {
        Int d = m.at(i, j).get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    std::vector<Int> row(m.cols);
    for (int j = 0; j < m.cols; ++j) {
        const Rational& q = m.at(i, j);
        row[j] = q.get_num() * (l / q.get_den());
    }
    return row;
}

// One-step fraction-free (Bareiss) forward elimination over the integers.
// Every intermediate entry is a minor of the input, so the division by the
// previous pivot is exact and entries stay polynomially bounded.
//
// Eliminates in place, with row swaps and zero-column skipping; eliminates
// only the leftmost `limit` columns (the rest ride along, for augmented
// systems).  Returns the pivot positions (row k used column pivot_col[k]).
inline std::vector<int> bareiss_forward(std::vector<std::vector<Int>>& w, int limit) {
    const int rows = static_cast<int>(w.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(w[0].size());
    std::vector<int> pivot_cols;
    Int prev(1);
    int row = 0;
    for (int col = 0; col < limit && row < rows; ++col) {
        int p = -1;
        for (int i = row; i < rows; ++i)
            if (w[i][col] != 0) { p = i; break; }
        if (p < 0) continue;  // column has no pivot below `row`
        std::swap(w[row], w[p]);
        for (int i = row + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j)
                w[i][j] = exact_div(w[row][col] * w[i][j] - w[i][col] * w[row][j], prev,
                                    "bareiss_forward");
            w[i][col] = 0;
        }
        prev = w[row][col];
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

}  // namespace detail

// Exact rank via fraction-free elimination.
inline int matrix_rank(const Mat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    std::vector<std::vector<Int>> w(m.rows);
    for (int i = 0; i < m.rows; ++i) w[i] = detail::integer_row(m, i);
    return static_cast<int>(detail::bareiss_forward(w, m.cols).size());
}

// Exact inverse: fraction-free forward elimination of [M | I], then exact
// rational back-substitution on the integer triangular system.
// Throws singular_error when M is not invertible.
inline Mat matrix_inverse(const Mat& m) {
    if (m.rows != m.cols) throw error("matrix_inverse: matrix not square");
    const int n = m.rows;
    Mat aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    std::vector<std::vector<Int>> w(n);
    for (int i = 0; i < n; ++i) w[i] = detail::integer_row(aug, i);
    if (static_cast<int>(detail::bareiss_forward(w, n).size()) != n)
        throw singular_error("matrix_inverse: singular matrix");
    Mat inv(n, n);
    for (int c = 0; c < n; ++c) {
        std::vector<Rational> x(n);
        for (int i = n - 1; i >= 0; --i) {
            Rational s(w[i][n + c]);
            for (int j = i + 1; j < n; ++j) s -= Rational(w[i][j]) * x[j];
            x[i] = s / Rational(w[i][i]);
        }
        for (int i = 0; i < n; ++i) inv.at(i, c) = x[i];
    }
    return inv;
}

// Determinant via the same elimination (product of Bareiss pivots telescopes
// to the last pivot; sign tracked through row swaps).
inline Rational determinant(const Mat& m) {
    if (m.rows != m.cols) throw error("determinant: matrix not square");
    const int n = m.rows;
    if (n == 0) return Rational(1);
    // Track the row scalings: det(M) = det(W) / prod(scales).
    Rational scale(1);
    std::vector<std::vector<Int>> w(n);
    for (int i = 0; i < n; ++i) {
        Int l(1);
        for (int j = 0; j < n; ++j) {
            Int d = m.at(i, j).get_den();
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
        }
        scale *= Rational(l);
        w[i].resize(n);
        for (int j = 0; j < n; ++j) {
            const Rational& q = m.at(i, j);
            w[i][j] = q.get_num() * (l / q.get_den());
        }
    }
    int sign = 1;
    Int prev(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (w[i][col] != 0) { p = i; break; }
        if (p < 0) return Rational(0);
        if (p != col) { std::swap(w[col], w[p]); sign = -sign; }
        for (int i = col + 1; i < n; ++i) {
            for (int j = col + 1; j < n; ++j)
                w[i][j] = exact_div(w[col][col] * w[i][j] - w[i][col] * w[col][j], prev,
                                    "determinant");
            w[i][col] = 0;
        }
        prev = w[col][col];
    }
    return Rational(sign * prev) / scale;
}

// Reflection in the hyperplane orthogonal to alpha (Euclidean form):
//   R = I - 2 alpha alpha^T / (alpha . alpha).
inline Mat reflection_matrix(const Vec& alpha) {
    if (is_zero_vec(alpha)) throw zero_root_error("reflection_matrix: zero vector");
    const int n = static_cast<int>(alpha.size());
    Rational norm = inner(alpha, alpha);
    Mat r = identity_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) -= Rational(2) * alpha[i] * alpha[j] / norm;
    return r;
}

// Reflection orthogonal to alpha under the bilinear form B:
//   R(x) = x - 2 (alpha, x)_B / (alpha, alpha)_B * alpha,
// i.e. R = I - (2/(alpha,alpha)_B) * alpha (B alpha)^T.
inline Mat reflection_matrix(const Vec& alpha, const Mat& B) {
    if (is_zero_vec(alpha)) throw zero_root_error("reflection_matrix: zero vector");
    Rational norm = inner(alpha, alpha, B);
    if (norm == 0) throw zero_root_error("reflection_matrix: isotropic vector");
    const int n = static_cast<int>(alpha.size());
    Vec balpha = mat_vec(B, alpha);
    Mat r = identity_matrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) -= Rational(2) * alpha[i] * balpha[j] / norm;
    return r;
}

// Reflect a single vector without forming the matrix.
inline Vec reflect(const Vec& alpha, const Vec& x, const Mat& B) {
    Rational norm = inner(alpha, alpha, B);
    if (norm == 0) throw zero_root_error("reflect: isotropic vector");
    Rational c = Rational(2) * inner(alpha, x, B) / norm;
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= c * alpha[i];
    return r;
}

}  // namespace coxcat
