#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polyvlp/linalg.hpp"

namespace polyvlp {

enum class RowKind { ge, eq };
enum class VarBound { free, nonneg };

/// maximize objective^T x  s.t.  row_i(x) >= rhs_i or = rhs_i, with per-variable bounds.
struct LinearProgram {
    QVector objective;
    QMatrix matrix;
    QVector rhs;
    std::vector<RowKind> kinds;
    std::vector<VarBound> bounds;
};

enum class LpStatus { optimal, infeasible, unbounded };

/// `x`, `value` and `dual` are present iff status == optimal. The dual vector
/// y satisfies b^T y = value, y_i <= 0 on >= rows, and (A^T y)_j >= c_j on
/// nonnegative variables with equality on free ones.
struct LpOutcome {
    LpStatus status = LpStatus::infeasible;
    std::optional<QVector> x;
    std::optional<Rational> value;
    std::optional<QVector> dual;
};

/// Convenience builder; <= rows are stored as negated >= rows.
class LpBuilder {
public:
    explicit LpBuilder(std::size_t vars, VarBound bound = VarBound::free)
        : vars_(vars), objective_(vars), bounds_(vars, bound) {}

    std::size_t vars() const { return vars_; }

    void set_bound(std::size_t j, VarBound b) { bounds_.at(j) = b; }

    void add_ge(QVector coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), RowKind::ge); }
    void add_le(QVector coeffs, Rational rhs) { add(-coeffs, -rhs, RowKind::ge); }
    void add_eq(QVector coeffs, Rational rhs) { add(std::move(coeffs), std::move(rhs), RowKind::eq); }

    void maximize(QVector objective) {
        if (objective.size() != vars_) throw PreconditionError("LpBuilder: objective dimension");
        objective_ = std::move(objective);
    }
    void minimize(const QVector& objective) { maximize(-objective); }

    LinearProgram build() const {
        return LinearProgram{objective_, QMatrix::from_rows(rows_, vars_), rhs_, kinds_, bounds_};
    }

private:
    void add(QVector coeffs, Rational rhs, RowKind kind) {
        if (coeffs.size() != vars_) throw PreconditionError("LpBuilder: row dimension");
        rows_.push_back(std::move(coeffs));
        rhs_.push_back(std::move(rhs));
        kinds_.push_back(kind);
    }

    std::size_t vars_;
    QVector objective_;
    std::vector<VarBound> bounds_;
    std::vector<QVector> rows_;
    QVector rhs_;
    std::vector<RowKind> kinds_;
};

namespace detail {

// Two-phase tableau simplex over the standard form
//   A_std z = b, z >= 0,
// where free variables are split (x = z+ - z-) and every >= row gets a
// surplus column. Bland's rule (lowest index) for entering and leaving.
class Simplex {
public:
    explicit Simplex(const LinearProgram& lp) : lp_(lp) {
        const std::size_t n = lp.matrix.cols();
        const std::size_t m = lp.matrix.rows();
        if (lp.objective.size() != n || lp.rhs.size() != m || lp.kinds.size() != m || lp.bounds.size() != n)
            throw PreconditionError("LinearProgram: inconsistent dimensions");

        pos_.resize(n);
        neg_.assign(n, npos);
        std::size_t col = 0;
        for (std::size_t j = 0; j < n; ++j) {
            pos_[j] = col++;
            if (lp.bounds[j] == VarBound::free) neg_[j] = col++;
        }
        surplus_.assign(m, npos);
        for (std::size_t i = 0; i < m; ++i)
            if (lp.kinds[i] == RowKind::ge) surplus_[i] = col++;
        structural_ = col;

        std_ = QMatrix(m, structural_);
        cost_ = QVector(structural_);
        for (std::size_t j = 0; j < n; ++j) {
            cost_[pos_[j]] = lp.objective[j];
            if (neg_[j] != npos) cost_[neg_[j]] = -lp.objective[j];
            for (std::size_t i = 0; i < m; ++i) {
                std_(i, pos_[j]) = lp.matrix(i, j);
                if (neg_[j] != npos) std_(i, neg_[j]) = -lp.matrix(i, j);
            }
        }
        for (std::size_t i = 0; i < m; ++i)
            if (surplus_[i] != npos) std_(i, surplus_[i]) = -1;

        // Tableau with one artificial per row.
        width_ = structural_ + m;
        tab_ = QMatrix(m, width_);
        rhs_ = QVector(m);
        basis_.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const bool flip = sgn(lp.rhs[i]) < 0;
            for (std::size_t j = 0; j < structural_; ++j) tab_(i, j) = flip ? Rational(-std_(i, j)) : std_(i, j);
            tab_(i, structural_ + i) = 1;
            rhs_[i] = flip ? Rational(-lp.rhs[i]) : lp.rhs[i];
            basis_[i] = structural_ + i;
        }
        rows_.resize(m);
        for (std::size_t i = 0; i < m; ++i) rows_[i] = i;
    }

    /// Phase 1. Returns false when infeasible; afterwards no artificial is basic.
    bool find_feasible_basis() {
        QVector reduced(width_);
        for (std::size_t j = structural_; j < width_; ++j) reduced[j] = -1;
        for (std::size_t i = 0; i < tab_.rows(); ++i)
            for (std::size_t j = 0; j < width_; ++j) reduced[j] += tab_(i, j);
        run(reduced, width_);
        Rational infeasibility = 0;
        for (std::size_t i = 0; i < tab_.rows(); ++i)
            if (basis_[i] >= structural_) infeasibility += rhs_[i];
        if (sgn(infeasibility) > 0) return false;

        // Drive remaining (zero-level) artificials out, dropping redundant rows.
        for (std::size_t i = 0; i < tab_.rows();) {
            if (basis_[i] < structural_) {
                ++i;
                continue;
            }
            std::size_t enter = npos;
            for (std::size_t j = 0; j < structural_; ++j)
                if (sgn(tab_(i, j)) != 0) {
                    enter = j;
                    break;
                }
            if (enter == npos) {
                drop_row(i);
                continue;
            }
            QVector dummy(width_);
            pivot(i, enter, dummy);
            ++i;
        }
        return true;
    }

    /// Phase 2 from a feasible basis.
    LpStatus optimize() {
        QVector reduced(width_);
        for (std::size_t j = 0; j < structural_; ++j) {
            reduced[j] = cost_[j];
            for (std::size_t i = 0; i < tab_.rows(); ++i) reduced[j] -= cost_[basis_[i]] * tab_(i, j);
        }
        return run(reduced, structural_) ? LpStatus::optimal : LpStatus::unbounded;
    }

    QVector solution() const {
        QVector z(structural_);
        for (std::size_t i = 0; i < tab_.rows(); ++i)
            if (basis_[i] < structural_) z[basis_[i]] = rhs_[i];
        QVector x(lp_.matrix.cols());
        for (std::size_t j = 0; j < x.size(); ++j) {
            x[j] = z[pos_[j]];
            if (neg_[j] != npos) x[j] -= z[neg_[j]];
        }
        return x;
    }

    /// Solves B^T y = c_B on the surviving rows; dropped rows get y_i = 0.
    QVector dual() const {
        const std::size_t m = tab_.rows();
        QMatrix bt(m, m);
        QVector cb(m);
        for (std::size_t k = 0; k < m; ++k) {
            cb[k] = cost_[basis_[k]];
            for (std::size_t i = 0; i < m; ++i) bt(k, i) = std_(rows_[i], basis_[k]);
        }
        QVector y(lp_.matrix.rows());
        if (m == 0) return y;
        auto sol = solve_linear(bt, cb);
        if (!sol) throw InternalError("simplex: singular basis in dual extraction");
        for (std::size_t i = 0; i < m; ++i) y[rows_[i]] = sol->particular[i];
        return y;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // True on optimality, false on unboundedness. Columns >= `eligible` never enter.
    bool run(QVector& reduced, std::size_t eligible) {
        for (;;) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < eligible; ++j)
                if (sgn(reduced[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == npos) return true;
            std::size_t leave = npos;
            Rational best;
            for (std::size_t i = 0; i < tab_.rows(); ++i) {
                if (sgn(tab_(i, enter)) <= 0) continue;
                Rational ratio = rhs_[i] / tab_(i, enter);
                if (leave == npos || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == npos) return false;
            pivot(leave, enter, reduced);
        }
    }

    void pivot(std::size_t r, std::size_t c, QVector& reduced) {
        Rational inv = 1 / tab_(r, c);
        for (std::size_t j = 0; j < width_; ++j)
            if (sgn(tab_(r, j)) != 0) tab_(r, j) *= inv;
        rhs_[r] *= inv;
        for (std::size_t i = 0; i < tab_.rows(); ++i) {
            if (i == r || sgn(tab_(i, c)) == 0) continue;
            Rational f = tab_(i, c);
            for (std::size_t j = 0; j < width_; ++j)
                if (sgn(tab_(r, j)) != 0) tab_(i, j) -= f * tab_(r, j);
            rhs_[i] -= f * rhs_[r];
        }
        if (sgn(reduced[c]) != 0) {
            Rational f = reduced[c];
            for (std::size_t j = 0; j < width_; ++j)
                if (sgn(tab_(r, j)) != 0) reduced[j] -= f * tab_(r, j);
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        const std::size_t m = tab_.rows();
        QMatrix t(m - 1, width_);
        for (std::size_t i = 0, k = 0; i < m; ++i) {
            if (i == r) continue;
            for (std::size_t j = 0; j < width_; ++j) t(k, j) = tab_(i, j);
            ++k;
        }
        tab_ = std::move(t);
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    }

    const LinearProgram& lp_;
    std::vector<std::size_t> pos_, neg_, surplus_;
    std::size_t structural_ = 0;
    std::size_t width_ = 0;
    QMatrix std_;
    QVector cost_;
    QMatrix tab_;
    QVector rhs_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> rows_;  // original row index of each tableau row
};

}  // namespace detail

inline LpOutcome lp_solve(const LinearProgram& lp) {
    detail::Simplex s(lp);
    LpOutcome out;
    if (!s.find_feasible_basis()) {
        out.status = LpStatus::infeasible;
        return out;
    }
    out.status = s.optimize();
    if (out.status != LpStatus::optimal) return out;
    out.x = s.solution();
    out.value = dot(lp.objective, *out.x);
    out.dual = s.dual();
    return out;
}

/// Phase 1 only: some point satisfying the constraints, or nullopt.
inline std::optional<QVector> feasible_point(const QMatrix& matrix, const QVector& rhs,
                                             const std::vector<RowKind>& kinds,
                                             const std::vector<VarBound>& bounds) {
    LinearProgram lp{QVector(matrix.cols()), matrix, rhs, kinds, bounds};
    detail::Simplex s(lp);
    if (!s.find_feasible_basis()) return std::nullopt;
    return s.solution();
}

inline std::optional<QVector> feasible_point(const LinearProgram& lp) {
    return feasible_point(lp.matrix, lp.rhs, lp.kinds, lp.bounds);
}

}  // namespace polyvlp
