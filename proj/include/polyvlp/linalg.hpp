#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "polyvlp/errors.hpp"
#include "polyvlp/rational.hpp"

namespace polyvlp {

using QVector = std::vector<Rational>;

/// Dense row-major matrix of rationals.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    static QMatrix from_rows(std::span<const QVector> rows, std::size_t cols) {
        QMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw PreconditionError("QMatrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static QMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
        std::vector<QVector> v;
        for (const auto& r : rows) v.emplace_back(r);
        return from_rows(v, v.empty() ? 0 : v.front().size());
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVector row(std::size_t i) const {
        return QVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                       data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    QVector col(std::size_t j) const {
        QVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<QVector> row_list() const {
        std::vector<QVector> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline QVector zeros(std::size_t n) { return QVector(n); }

inline QVector unit_vector(std::size_t n, std::size_t i) {
    QVector v(n);
    v[i] = 1;
    return v;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw PreconditionError("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero(std::span<const Rational> v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
}

inline QVector operator+(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector add: dimension mismatch");
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline QVector operator-(const QVector& a, const QVector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector sub: dimension mismatch");
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline QVector operator-(const QVector& a) {
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline QVector operator*(const Rational& s, const QVector& a) {
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline QVector operator*(const QMatrix& m, const QVector& v) {
    if (m.cols() != v.size()) throw PreconditionError("matrix-vector: dimension mismatch");
    QVector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw PreconditionError("matrix product: dimension mismatch");
    QMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
        }
    return r;
}

/// [top; bottom]
inline QMatrix vstack(const QMatrix& top, const QMatrix& bottom) {
    if (top.cols() != bottom.cols()) throw PreconditionError("vstack: column mismatch");
    QMatrix r(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) r(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) r(top.rows() + i, j) = bottom(i, j);
    return r;
}

/// [left, right]
inline QMatrix hstack(const QMatrix& left, const QMatrix& right) {
    if (left.rows() != right.rows()) throw PreconditionError("hstack: row mismatch");
    QMatrix r(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) r(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) r(i, left.cols() + j) = right(i, j);
    }
    return r;
}

/// Scales v so its first nonzero coordinate is +1 or -1 (sign preserved).
inline QVector normalize_direction(QVector v) {
    for (const auto& x : v) {
        if (sgn(x) != 0) {
            Rational s = abs(x);
            for (auto& y : v) y /= s;
            break;
        }
    }
    return v;
}

inline std::string to_string(const QVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << to_string(v[i]);
    }
    os << ')';
    return os.str();
}

inline std::string to_decimal(const QVector& v, int digits) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << to_decimal(v[i], digits);
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Elimination kernels

struct RrefResult {
    QMatrix reduced;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
};

/// Gauss-Jordan elimination; pivot rows are scaled to a leading 1. Only the
/// first `pivot_cols` columns are eligible as pivots (all by default), which
/// lets callers carry witness columns along with the rows they eliminate.
inline RrefResult rref(QMatrix m, std::size_t pivot_cols) {
    RrefResult out;
    std::size_t r = 0;
    pivot_cols = std::min(pivot_cols, m.cols());
    for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || sgn(m(i, c)) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.reduced = std::move(m);
    return out;
}

inline RrefResult rref(QMatrix m) {
    std::size_t c = m.cols();
    return rref(std::move(m), c);
}

inline std::size_t rank(std::span<const QVector> vectors, std::size_t dim) {
    if (vectors.empty()) return 0;
    return rref(QMatrix::from_rows(vectors, dim)).rank;
}

/// Kernel basis from the RREF free columns (ascending), free coordinate = 1.
inline std::vector<QVector> null_space_basis(const QMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVector v(m.cols());
        v[f] = 1;
        for (std::size_t i = 0; i < rr.rank; ++i) v[rr.pivots[i]] = -rr.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Basis of {z : v^T z = 0 for all v in V}; the standard basis when V is empty.
inline std::vector<QVector> orth_complement_basis(std::span<const QVector> vectors, std::size_t dim) {
    return null_space_basis(QMatrix::from_rows(vectors, dim));
}

/// Canonical basis of Span(vectors): the nonzero rows of their RREF.
inline std::vector<QVector> row_basis(std::span<const QVector> vectors, std::size_t dim) {
    if (vectors.empty()) return {};
    RrefResult rr = rref(QMatrix::from_rows(vectors, dim));
    std::vector<QVector> out;
    for (std::size_t i = 0; i < rr.rank; ++i) out.push_back(rr.reduced.row(i));
    return out;
}

struct LinearSolution {
    QVector particular;
    std::vector<QVector> kernel;
};

/// Solves M x = b. Returns nullopt when the system is inconsistent.
inline std::optional<LinearSolution> solve_linear(const QMatrix& m, const QVector& b) {
    if (m.rows() != b.size()) throw PreconditionError("solve_linear: rows(M) != dim(b)");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RrefResult rr = rref(aug, m.cols());
    for (std::size_t i = rr.rank; i < m.rows(); ++i)
        if (sgn(rr.reduced(i, m.cols())) != 0) return std::nullopt;
    LinearSolution sol;
    sol.particular = QVector(m.cols());
    for (std::size_t i = 0; i < rr.rank; ++i) sol.particular[rr.pivots[i]] = rr.reduced(i, m.cols());
    sol.kernel = null_space_basis(m);
    return sol;
}

/// True iff v lies in Span(basis).
inline bool in_span(std::span<const QVector> basis, const QVector& v) {
    if (basis.empty()) return is_zero(v);
    return solve_linear(QMatrix::from_rows(basis, v.size()).transpose(), v).has_value();
}

/// Orthogonal projection of v onto the complement of Span(basis).
inline QVector project_out(const QVector& v, std::span<const QVector> basis) {
    if (basis.empty()) return v;
    QMatrix b = QMatrix::from_rows(basis, v.size());  // rows span the subspace
    QMatrix gram = b * b.transpose();
    auto sol = solve_linear(gram, b * v);
    if (!sol) throw InternalError("project_out: singular Gram system");
    QVector r = v;
    for (std::size_t i = 0; i < basis.size(); ++i) r = r - sol->particular[i] * basis[i];
    return r;
}

/// Determinant by Gaussian elimination.
inline Rational determinant(QMatrix m) {
    if (m.rows() != m.cols()) throw PreconditionError("determinant: matrix not square");
    Rational det = 1;
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0) continue;
            Rational f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

/// Inverse of a regular square matrix.
inline QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse: matrix not square");
    RrefResult rr = rref(hstack(m, QMatrix::identity(m.rows())), m.cols());
    if (rr.rank != m.rows()) throw PreconditionError("inverse: matrix is singular");
    QMatrix inv(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.rows(); ++j) inv(i, j) = rr.reduced(i, m.cols() + j);
    return inv;
}

}  // namespace polyvlp
