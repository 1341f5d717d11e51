#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "polyvlp/linalg.hpp"
#include "polyvlp/lp.hpp"

namespace polyvlp {

/// normal^T z >= offset (or = offset when stored among equations).
struct Halfspace {
    QVector normal;
    Rational offset;

    bool operator==(const Halfspace&) const = default;
    bool operator<(const Halfspace& o) const {
        return std::tie(normal, offset) < std::tie(o.normal, o.offset);
    }
};

/// {z in R^dim : ineqs hold, eqs hold}.
struct HRep {
    std::size_t dim = 0;
    std::vector<Halfspace> ineqs;
    std::vector<Halfspace> eqs;

    bool operator==(const HRep&) const = default;

    /// The canonical form of the empty set is the single equation 0 = 1.
    bool is_empty_marker() const {
        return ineqs.empty() && eqs.size() == 1 && is_zero(eqs[0].normal) && eqs[0].offset == 1;
    }

    static HRep empty_set(std::size_t dim) { return HRep{dim, {}, {Halfspace{QVector(dim), Rational(1)}}}; }

    /// Cone {z : rows z >= 0}.
    static HRep cone(std::size_t dim, std::span<const QVector> rows, std::span<const QVector> eq_rows = {}) {
        HRep h{dim, {}, {}};
        for (const auto& r : rows) h.ineqs.push_back({r, Rational(0)});
        for (const auto& r : eq_rows) h.eqs.push_back({r, Rational(0)});
        return h;
    }
};

inline bool satisfies(const HRep& h, const QVector& z) {
    for (const auto& hs : h.ineqs)
        if (dot(hs.normal, z) < hs.offset) return false;
    for (const auto& hs : h.eqs)
        if (dot(hs.normal, z) != hs.offset) return false;
    return true;
}

/// Recession cone {d : normal^T d >= 0 / = 0}.
inline HRep recession_cone(const HRep& h) {
    HRep r{h.dim, {}, {}};
    for (const auto& hs : h.ineqs) r.ineqs.push_back({hs.normal, Rational(0)});
    for (const auto& hs : h.eqs) r.eqs.push_back({hs.normal, Rational(0)});
    return r;
}

/// Appends the constraints of h on variables [offset, offset + h.dim) of b.
inline void add_constraints(LpBuilder& b, const HRep& h, std::size_t offset = 0) {
    auto pad = [&](const QVector& n) {
        QVector row(b.vars());
        for (std::size_t j = 0; j < n.size(); ++j) row[offset + j] = n[j];
        return row;
    };
    for (const auto& hs : h.ineqs) b.add_ge(pad(hs.normal), hs.offset);
    for (const auto& hs : h.eqs) b.add_eq(pad(hs.normal), hs.offset);
}

inline std::optional<QVector> some_point(const HRep& h) {
    LpBuilder b(h.dim);
    add_constraints(b, h);
    return feasible_point(b.build());
}

inline bool is_empty_set(const HRep& h) { return !some_point(h).has_value(); }

/// Minimizes objective^T z over h.
inline LpOutcome minimize_over(const HRep& h, const QVector& objective) {
    LpBuilder b(h.dim);
    add_constraints(b, h);
    b.minimize(objective);
    LpOutcome out = lp_solve(b.build());
    if (out.value) out.value = -*out.value;
    return out;
}

/// Indices of inequalities that hold with equality on all of h (h nonempty).
/// Repeatedly maximizes the capped slack sum of the still-undecided rows;
/// rows with positive slack are settled as non-implicit.
inline std::vector<std::size_t> implicit_equalities(const HRep& h) {
    const std::size_t k = h.ineqs.size();
    std::vector<bool> settled(k, false);
    for (;;) {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < k; ++i)
            if (!settled[i]) open.push_back(i);
        if (open.empty()) return {};
        LpBuilder b(h.dim + open.size());
        for (std::size_t t = 0; t < open.size(); ++t) b.set_bound(h.dim + t, VarBound::nonneg);
        add_constraints(b, h);
        QVector obj(b.vars());
        for (std::size_t t = 0; t < open.size(); ++t) {
            const auto& hs = h.ineqs[open[t]];
            QVector row(b.vars());
            for (std::size_t j = 0; j < h.dim; ++j) row[j] = hs.normal[j];
            row[h.dim + t] = -1;
            b.add_ge(row, hs.offset);
            b.add_le(unit_vector(b.vars(), h.dim + t), 1);
            obj[h.dim + t] = 1;
        }
        b.maximize(obj);
        LpOutcome out = lp_solve(b.build());
        if (out.status != LpStatus::optimal) throw PreconditionError("implicit_equalities: empty polyhedron");
        bool progress = false;
        for (std::size_t t = 0; t < open.size(); ++t)
            if (sgn((*out.x)[h.dim + t]) > 0) {
                settled[open[t]] = true;
                progress = true;
            }
        if (!progress) return open;
    }
}

namespace detail {

// Scales so that the first nonzero normal coordinate is +1 or -1.
inline Halfspace normalize_halfspace(Halfspace hs) {
    for (const auto& x : hs.normal)
        if (sgn(x) != 0) {
            Rational s = abs(x);
            for (auto& y : hs.normal) y /= s;
            hs.offset /= s;
            break;
        }
    return hs;
}

// Reduced row echelon form of the equation system [normal | offset].
inline std::pair<std::vector<Halfspace>, std::vector<std::size_t>> echelon_equations(
    const std::vector<Halfspace>& eqs, std::size_t dim) {
    if (eqs.empty()) return {};
    QMatrix m(eqs.size(), dim + 1);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = eqs[i].normal[j];
        m(i, dim) = eqs[i].offset;
    }
    RrefResult rr = rref(m, dim);
    std::vector<Halfspace> out;
    for (std::size_t i = 0; i < rr.rank; ++i) {
        QVector row = rr.reduced.row(i);
        Rational off = row.back();
        row.pop_back();
        out.push_back({std::move(row), std::move(off)});
    }
    return {std::move(out), rr.pivots};
}

// Eliminates the equation pivot coordinates from hs.
inline Halfspace reduce_modulo(Halfspace hs, const std::vector<Halfspace>& echelon,
                               const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < echelon.size(); ++i) {
        Rational f = hs.normal[pivots[i]];
        if (sgn(f) == 0) continue;
        for (std::size_t j = 0; j < hs.normal.size(); ++j) hs.normal[j] -= f * echelon[i].normal[j];
        hs.offset -= f * echelon[i].offset;
    }
    return hs;
}

// Normalizes, drops trivial rows and keeps the tightest of parallel rows.
// Returns false when a row reads 0 >= positive.
inline bool tidy_inequalities(std::vector<Halfspace>& ineqs) {
    std::vector<Halfspace> out;
    for (auto& hs : ineqs) {
        if (is_zero(hs.normal)) {
            if (sgn(hs.offset) > 0) return false;
            continue;
        }
        out.push_back(normalize_halfspace(std::move(hs)));
    }
    std::sort(out.begin(), out.end());
    std::vector<Halfspace> uniq;
    for (auto& hs : out) {
        if (!uniq.empty() && uniq.back().normal == hs.normal) {
            uniq.back().offset = hs.offset;  // sorted ascending, keep the largest
            continue;
        }
        uniq.push_back(std::move(hs));
    }
    ineqs = std::move(uniq);
    return true;
}

// Drops inequalities implied by the remaining ones, scanning in order.
inline void remove_redundant(HRep& h) {
    for (std::size_t i = 0; i < h.ineqs.size();) {
        HRep rest{h.dim, {}, h.eqs};
        for (std::size_t j = 0; j < h.ineqs.size(); ++j)
            if (j != i) rest.ineqs.push_back(h.ineqs[j]);
        LpOutcome out = minimize_over(rest, h.ineqs[i].normal);
        if (out.status == LpStatus::optimal && *out.value >= h.ineqs[i].offset) {
            h.ineqs.erase(h.ineqs.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        ++i;
    }
}

}  // namespace detail

/// Unique representation of the set: equations in reduced echelon form,
/// irredundant inequalities reduced modulo the equation pivots, each scaled
/// to a leading +-1 coefficient, sorted lexicographically.
inline HRep canonicalize(const HRep& input) {
    HRep h = input;
    for (const auto& hs : h.ineqs)
        if (hs.normal.size() != h.dim) throw PreconditionError("canonicalize: dimension mismatch");
    for (const auto& hs : h.eqs)
        if (hs.normal.size() != h.dim) throw PreconditionError("canonicalize: dimension mismatch");
    if (is_empty_set(h)) return HRep::empty_set(h.dim);

    auto implicit = implicit_equalities(h);
    std::vector<bool> is_implicit(h.ineqs.size(), false);
    for (auto i : implicit) is_implicit[i] = true;
    std::vector<Halfspace> ineqs;
    for (std::size_t i = 0; i < h.ineqs.size(); ++i) {
        if (is_implicit[i])
            h.eqs.push_back(h.ineqs[i]);
        else
            ineqs.push_back(h.ineqs[i]);
    }
    auto [echelon, pivots] = detail::echelon_equations(h.eqs, h.dim);
    for (auto& hs : ineqs) hs = detail::reduce_modulo(std::move(hs), echelon, pivots);
    if (!detail::tidy_inequalities(ineqs)) throw InternalError("canonicalize: contradiction in nonempty set");

    HRep out{h.dim, std::move(ineqs), std::move(echelon)};
    detail::remove_redundant(out);
    std::sort(out.ineqs.begin(), out.ineqs.end());
    return out;
}

inline bool same_set(const HRep& a, const HRep& b) { return canonicalize(a) == canonicalize(b); }

/// Lifts {z : a^T z >= b} to the cone {(z,t) : a^T z - b t >= 0, t >= 0}.
inline HRep homogenize(const HRep& h) {
    HRep out{h.dim + 1, {}, {}};
    auto lift = [&](const Halfspace& hs) {
        QVector n = hs.normal;
        n.push_back(-hs.offset);
        return Halfspace{std::move(n), Rational(0)};
    };
    for (const auto& hs : h.ineqs) out.ineqs.push_back(lift(hs));
    for (const auto& hs : h.eqs) out.eqs.push_back(lift(hs));
    out.ineqs.push_back({unit_vector(h.dim + 1, h.dim), Rational(0)});
    return out;
}

namespace detail {

inline Halfspace drop_coordinate(const Halfspace& hs, std::size_t j) {
    Halfspace out{{}, hs.offset};
    out.normal.reserve(hs.normal.size() - 1);
    for (std::size_t i = 0; i < hs.normal.size(); ++i)
        if (i != j) out.normal.push_back(hs.normal[i]);
    return out;
}

inline Halfspace combine(const Halfspace& a, const Rational& fa, const Halfspace& b, const Rational& fb) {
    Halfspace out{QVector(a.normal.size()), fa * a.offset + fb * b.offset};
    for (std::size_t i = 0; i < a.normal.size(); ++i) out.normal[i] = fa * a.normal[i] + fb * b.normal[i];
    return out;
}

}  // namespace detail

/// Projects h onto its first h.dim - count coordinates: Gaussian substitution
/// through equations where possible, Fourier-Motzkin otherwise, with LP
/// redundancy removal after every step. Returns the canonical form.
inline HRep eliminate_trailing(const HRep& input, std::size_t count) {
    if (count > input.dim) throw PreconditionError("eliminate_trailing: count exceeds dimension");
    HRep h = input;
    std::size_t remaining = count;
    while (remaining > 0) {
        const std::size_t first = h.dim - remaining;
        std::size_t var = h.dim;
        // Prefer a variable that occurs in an equation.
        std::size_t eq_row = h.eqs.size();
        for (std::size_t j = first; j < h.dim && var == h.dim; ++j)
            for (std::size_t e = 0; e < h.eqs.size(); ++e)
                if (sgn(h.eqs[e].normal[j]) != 0) {
                    var = j;
                    eq_row = e;
                    break;
                }
        if (var != h.dim) {
            Halfspace piv = h.eqs[eq_row];
            h.eqs.erase(h.eqs.begin() + static_cast<std::ptrdiff_t>(eq_row));
            auto substitute = [&](Halfspace& hs) {
                if (sgn(hs.normal[var]) == 0) return;
                hs = detail::combine(hs, Rational(1), piv, Rational(-hs.normal[var] / piv.normal[var]));
            };
            for (auto& hs : h.eqs) substitute(hs);
            for (auto& hs : h.ineqs) substitute(hs);
        } else {
            // Fourier-Motzkin on the variable with the fewest new rows.
            std::size_t best = 0;
            for (std::size_t j = first; j < h.dim; ++j) {
                std::size_t pos = 0, neg = 0;
                for (const auto& hs : h.ineqs) {
                    pos += sgn(hs.normal[j]) > 0;
                    neg += sgn(hs.normal[j]) < 0;
                }
                std::size_t cost = pos * neg;
                if (var == h.dim || cost < best) {
                    var = j;
                    best = cost;
                }
            }
            std::vector<Halfspace> pos, neg, next;
            for (auto& hs : h.ineqs) {
                int s = sgn(hs.normal[var]);
                if (s > 0)
                    pos.push_back(std::move(hs));
                else if (s < 0)
                    neg.push_back(std::move(hs));
                else
                    next.push_back(std::move(hs));
            }
            for (const auto& p : pos)
                for (const auto& n : neg)
                    next.push_back(detail::combine(p, Rational(-n.normal[var]), n, p.normal[var]));
            h.ineqs = std::move(next);
        }
        for (auto& hs : h.ineqs) hs = detail::drop_coordinate(hs, var);
        for (auto& hs : h.eqs) hs = detail::drop_coordinate(hs, var);
        --h.dim;
        --remaining;

        std::vector<Halfspace> eqs;
        for (auto& hs : h.eqs) {
            if (is_zero(hs.normal)) {
                if (sgn(hs.offset) != 0) return HRep::empty_set(input.dim - count);
                continue;
            }
            eqs.push_back(std::move(hs));
        }
        h.eqs = std::move(eqs);
        if (!detail::tidy_inequalities(h.ineqs)) return HRep::empty_set(input.dim - count);
        if (is_empty_set(h)) return HRep::empty_set(input.dim - count);
        detail::remove_redundant(h);
    }
    return canonicalize(h);
}

/// Point in the relative interior of a nonempty h: maximizes a capped common
/// slack over the non-implicit rows.
inline QVector relative_interior_point(const HRep& h) {
    auto implicit = implicit_equalities(h);
    std::vector<bool> is_implicit(h.ineqs.size(), false);
    for (auto i : implicit) is_implicit[i] = true;
    LpBuilder b(h.dim + 1);
    QVector obj(h.dim + 1);
    obj[h.dim] = 1;
    for (std::size_t i = 0; i < h.ineqs.size(); ++i) {
        QVector row(h.dim + 1);
        for (std::size_t j = 0; j < h.dim; ++j) row[j] = h.ineqs[i].normal[j];
        if (is_implicit[i]) {
            b.add_eq(row, h.ineqs[i].offset);
        } else {
            row[h.dim] = -1;
            b.add_ge(row, h.ineqs[i].offset);
        }
    }
    for (const auto& hs : h.eqs) {
        QVector row = hs.normal;
        row.push_back(0);
        b.add_eq(row, hs.offset);
    }
    b.add_le(unit_vector(h.dim + 1, h.dim), 1);
    b.maximize(obj);
    LpOutcome out = lp_solve(b.build());
    if (out.status != LpStatus::optimal) throw PreconditionError("relative_interior_point: empty polyhedron");
    QVector z = *out.x;
    z.pop_back();
    return z;
}

}  // namespace polyvlp
