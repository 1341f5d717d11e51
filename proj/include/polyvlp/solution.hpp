#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "polyvlp/cone_projection.hpp"
#include "polyvlp/polyhedron.hpp"
#include "polyvlp/vlp.hpp"

namespace polyvlp {

/// Points, directions and lineality directions of the feasible set S.
struct VlpSolution {
    std::vector<QVector> S_poi;
    std::vector<QVector> S_dir;
    std::vector<QVector> S_lin;

    bool operator==(const VlpSolution&) const = default;
};

/// An element (u, w) of T (or of its recession cone) with its image D(u, w).
struct DualObjectivePoint {
    QVector u;
    QVector w;
    QVector value;

    bool operator==(const DualObjectivePoint&) const = default;
};

struct DualVlpSolution {
    std::vector<DualObjectivePoint> T_poi;
    std::vector<DualObjectivePoint> T_dir;
    std::vector<DualObjectivePoint> T_lin;

    bool operator==(const DualVlpSolution&) const = default;
};

/// Primal: witness in (C \ {0}) and in the lineality space of the upper
/// image. Dual: witness in (R* \ {0}) and in the lineality space of the
/// lower image. Coordinates are the normalized ones of the instance.
struct NoSolutionCertificate {
    bool dual = false;
    QVector witness;

    bool operator==(const NoSolutionCertificate&) const = default;

    std::string condition() const { return dual ? "L_D ∩ R* ≠ {0}" : "L_P ∩ C ≠ {0}"; }
};

using PrimalOutcome = std::variant<VlpSolution, NoSolutionCertificate>;
using DualOutcome = std::variant<DualVlpSolution, NoSolutionCertificate>;

namespace detail {

/// max 1^T Z^T z over z in Span(basis) with Z^T z >= 0, capped at 1; a
/// positive optimum yields z in (C \ {0}) on the subspace.
inline std::optional<QVector> cone_meets_subspace(const QMatrix& Z, const std::vector<QVector>& basis) {
    if (basis.empty()) return std::nullopt;
    const std::size_t q = Z.rows();
    QMatrix B = QMatrix::from_rows(basis, q).transpose();  // q x l
    QMatrix ztb = Z.transpose() * B;
    LpBuilder b(basis.size());
    QVector total(basis.size());
    for (std::size_t i = 0; i < ztb.rows(); ++i) {
        b.add_ge(ztb.row(i), 0);
        total = total + ztb.row(i);
    }
    b.add_le(total, 1);
    b.maximize(total);
    LpOutcome out = lp_solve(b.build());
    if (out.status != LpStatus::optimal || sgn(*out.value) <= 0) return std::nullopt;
    return normalize_direction(B * *out.x);
}

/// z in C + Span(basis), i.e. Z^T (z - B lambda) >= 0 for some lambda.
inline bool in_cone_plus_span(const QMatrix& Z, const std::vector<QVector>& basis, const QVector& z) {
    const std::size_t q = Z.rows();
    LpBuilder b(basis.size());
    QMatrix zt = Z.transpose();
    QVector ztz = zt * z;
    QMatrix ztb = basis.empty() ? QMatrix(zt.rows(), 0) : zt * QMatrix::from_rows(basis, q).transpose();
    for (std::size_t i = 0; i < zt.rows(); ++i) b.add_ge(-ztb.row(i), -ztz[i]);
    return feasible_point(b.build()).has_value();
}

inline QVector head(const QVector& v, std::size_t k) { return QVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)); }

inline QVector tail(const QVector& v, std::size_t from) {
    return QVector(v.begin() + static_cast<std::ptrdiff_t>(from), v.end());
}

}  // namespace detail

/// The ordering cone's generators (rays only: C is pointed).
inline std::vector<QVector> ordering_cone_rays(const VlpInstance& v) { return cone_generators(v.ordering_cone()).rays; }

/// Solution of (VLP) from a solution of (P) for build_GH(v), or a
/// certificate that no minimizer exists.
inline PrimalOutcome extract_primal(const VlpInstance& v, const ConeSolution& cs) {
    if (!v.primal_feasible()) throw InfeasibleError("feasible set S is empty");
    const ConeHRep c = v.build_GH();
    const std::size_t q = v.q();
    auto check = [&](const Witnessed& w) {
        if (w.vector.size() != q + 1 || w.witness.size() != v.n())
            throw InconsistentInputError("cone solution has the wrong dimensions");
        for (const auto& s : c.G * w.witness + c.H * w.vector)
            if (sgn(s) < 0) throw InconsistentInputError("cone solution witness violates G x + H y >= 0");
    };
    for (const auto& w : cs.directions) check(w);
    for (const auto& w : cs.lineality) check(w);

    std::vector<QVector> lp_basis;
    for (const auto& l : cs.lineality) {
        if (sgn(l.vector[q]) != 0) throw InconsistentInputError("lineality vector with y_{q+1} != 0");
        lp_basis.push_back(p_of(l.vector));
    }
    lp_basis = row_basis(lp_basis, q);
    if (auto z = detail::cone_meets_subspace(v.Z(), lp_basis)) return NoSolutionCertificate{false, *z};

    VlpSolution sol;
    for (const auto& d : cs.directions) {
        const Rational& t = d.vector[q];
        if (sgn(t) > 0) {
            sol.S_poi.push_back(Rational(1 / t) * d.witness);
        } else if (!detail::in_cone_plus_span(v.Z(), lp_basis, p_of(d.vector))) {
            sol.S_dir.push_back(d.witness);
        }
    }
    for (const auto& l : cs.lineality) {
        if (is_zero(c.G * l.witness + c.H * l.vector)) {
            sol.S_lin.push_back(l.witness);
            continue;
        }
        // The lineality vector has no witness in L(S): both of its
        // orientations are reached through recession directions of S.
        auto neg = witness_for_P(c, -l.vector, false);
        if (!neg) throw InconsistentInputError("negated lineality vector has no witness");
        for (const QVector& x : {l.witness, *neg}) {
            if (is_zero(x)) throw InternalError("extract_primal: zero direction");
            sol.S_dir.push_back(x);
        }
    }
    if (sol.S_poi.empty()) throw InternalError("extract_primal: no points although S is nonempty");
    return sol;
}

/// Solution of (VLP*) from a solution of (P*) for build_GH(v), or a
/// certificate that no maximizer exists. A multiplier vector u of (P*)
/// splits as (u_A, u_Z, u_last); the corresponding element of T is
/// (u_A, Z u_Z) scaled so that p(c)^T w = 1.
inline DualOutcome extract_dual(const VlpInstance& v, const ConeSolution& ds) {
    if (!v.dual_feasible()) throw InfeasibleError("dual feasible set T is empty");
    const ConeHRep c = v.build_GH();
    const std::size_t q = v.q(), m = v.m(), r = v.r();
    const QMatrix Minv = v.transform().Minv;
    auto check = [&](const Witnessed& w) {
        if (w.vector.size() != q + 1 || w.witness.size() != c.k())
            throw InconsistentInputError("dual cone solution has the wrong dimensions");
        for (const auto& x : w.witness)
            if (sgn(x) < 0) throw InconsistentInputError("dual witness u is not nonnegative");
        if (!is_zero(c.G.transpose() * w.witness) || -(c.H.transpose() * w.witness) != w.vector)
            throw InconsistentInputError("dual witness violates G^T u = 0, w = -H^T u");
    };
    for (const auto& w : ds.directions) check(w);
    for (const auto& w : ds.lineality) check(w);

    std::vector<QVector> ld_basis;
    for (const auto& l : ds.lineality) ld_basis.push_back(p_of(Minv * l.vector));
    ld_basis = row_basis(ld_basis, q);
    const QVector eq = unit_vector(q, q - 1);
    if (!ld_basis.empty() && in_span(ld_basis, eq)) return NoSolutionCertificate{true, eq};

    auto element = [&](const QVector& u, Rational s) {
        DualObjectivePoint e;
        e.u = Rational(s) * detail::head(u, m);
        e.w = Rational(s) * (v.Z() * detail::head(detail::tail(u, m), r));
        e.value = v.dual_objective(e.u, e.w);
        return e;
    };
    const std::vector<QVector> down{-eq};

    DualVlpSolution sol;
    const QVector& cvec = v.c();
    for (const auto& d : ds.directions) {
        Rational cw = dot(cvec, d.vector);
        if (sgn(cw) < 0) {
            sol.T_poi.push_back(element(d.witness, Rational(-1 / cw)));
        } else if (sgn(cw) == 0 && !in_cone(down, ld_basis, p_of(Minv * d.vector))) {
            sol.T_dir.push_back(element(d.witness, 1));
        }
    }
    for (const auto& l : ds.lineality) {
        // Prefer a witness with u_A = 0, which gives an element of L(T).
        QVector u = l.witness;
        if (!is_zero(detail::head(u, m))) {
            LpBuilder b(c.k(), VarBound::nonneg);
            for (std::size_t j = 0; j < c.n(); ++j) b.add_eq(c.G.col(j), 0);
            for (std::size_t j = 0; j <= q; ++j) b.add_eq(-c.H.col(j), l.vector[j]);
            for (std::size_t i = 0; i < m; ++i) b.add_eq(unit_vector(c.k(), i), 0);
            if (auto alt = feasible_point(b.build())) u = *alt;
        }
        DualObjectivePoint e = element(u, 1);
        if (is_zero(e.u)) {
            sol.T_lin.push_back(std::move(e));
            continue;
        }
        // No witness inside L(T): both orientations become directions of T.
        auto neg = witness_for_Pstar(c, -l.vector);
        if (!neg) throw InconsistentInputError("negated dual lineality vector has no witness");
        sol.T_dir.push_back(std::move(e));
        sol.T_dir.push_back(element(*neg, 1));
    }
    if (sol.T_poi.empty()) throw InternalError("extract_dual: no points although T is nonempty");
    return sol;
}

/// x is a minimizer (point: x in S; direction: x in 0+S \ {0}).
inline bool verify_minimizer(const VlpInstance& v, const QVector& x, bool direction) {
    if (x.size() != v.n()) throw PreconditionError("verify_minimizer: x has the wrong dimension");
    QVector ax = v.A() * x;
    for (std::size_t i = 0; i < v.m(); ++i)
        if (ax[i] < (direction ? Rational(0) : v.b()[i]))
            throw PreconditionError(direction ? "verify_minimizer: x is not a direction of S"
                                              : "verify_minimizer: x is not in S");
    if (direction && is_zero(x)) throw PreconditionError("verify_minimizer: zero direction");
    // max 1^T Z^T (P x - P x') over x' in S (or 0+S) with Z^T (P x - P x') >= 0
    QMatrix ztp = v.Z().transpose() * v.P();
    QVector ztpx = ztp * x;
    LpBuilder b(v.n());
    for (std::size_t i = 0; i < v.m(); ++i) b.add_ge(v.A().row(i), direction ? Rational(0) : v.b()[i]);
    QVector obj(v.n());
    for (std::size_t i = 0; i < ztp.rows(); ++i) {
        b.add_le(ztp.row(i), ztpx[i]);
        obj = obj - ztp.row(i);
    }
    b.maximize(obj);
    LpOutcome out = lp_solve(b.build());
    if (out.status != LpStatus::optimal) return false;
    Rational base = 0;
    for (const auto& e : ztpx) base += e;
    return *out.value + base == 0;
}

/// (u, w) is a maximizer (point: in T; direction: in 0+T \ {0}): no element
/// of T (or 0+T) with the same w_1..w_{q-1} reaches a larger b^T u.
inline bool verify_maximizer(const VlpInstance& v, const DualObjectivePoint& e, bool direction) {
    const std::size_t m = v.m(), q = v.q(), r = v.r();
    if (e.u.size() != m || e.w.size() != q) throw PreconditionError("verify_maximizer: wrong dimensions");
    // (u, w) in T or 0+T: u >= 0, A^T u = P^T w, w = Z v with v >= 0, p(c)^T w = 1 or 0
    for (const auto& x : e.u)
        if (sgn(x) < 0) throw PreconditionError("verify_maximizer: u is not nonnegative");
    if (v.A().transpose() * e.u != v.P().transpose() * e.w) throw PreconditionError("verify_maximizer: A^T u != P^T w");
    if (dot(v.pc(), e.w) != (direction ? 0 : 1)) throw PreconditionError("verify_maximizer: p(c)^T w is wrong");
    if (!feasible_point(v.Z(), e.w, std::vector<RowKind>(q, RowKind::eq), std::vector<VarBound>(r, VarBound::nonneg)))
        throw PreconditionError("verify_maximizer: w is not in the dual cone of C");
    if (direction && is_zero(e.u) && is_zero(e.w)) throw PreconditionError("verify_maximizer: zero direction");

    HRep t = v.dual_feasible_set();
    if (direction) t = recession_cone(t);
    LpBuilder b(t.dim);
    add_constraints(b, t);
    for (std::size_t i = 0; i + 1 < q; ++i) {
        QVector row(t.dim);
        for (std::size_t k = 0; k < r; ++k) row[m + k] = v.Z()(i, k);
        b.add_eq(row, e.w[i]);
    }
    QVector obj(t.dim);
    for (std::size_t i = 0; i < m; ++i) obj[i] = v.b()[i];
    b.maximize(obj);
    LpOutcome out = lp_solve(b.build());
    if (out.status != LpStatus::optimal) return false;
    return *out.value == dot(v.b(), e.u);
}

/// conv P[S_poi] + cone P[S_dir] + Span P[S_lin] + C equals the upper image.
inline bool verify_infimizer(const VlpInstance& v, const VlpSolution& sol) {
    if (sol.S_poi.empty()) return false;
    auto in_s = [&](const QVector& x, bool dir) {
        if (x.size() != v.n()) return false;
        QVector ax = v.A() * x;
        for (std::size_t i = 0; i < v.m(); ++i)
            if (ax[i] < (dir ? Rational(0) : v.b()[i])) return false;
        return true;
    };
    GeneratorRep g;
    for (const auto& x : sol.S_poi) {
        if (!in_s(x, false)) return false;
        g.points.push_back(v.P() * x);
    }
    for (const auto& x : sol.S_dir) {
        if (is_zero(x) || !in_s(x, true)) return false;
        g.rays.push_back(v.P() * x);
    }
    for (const auto& x : sol.S_lin) {
        if (is_zero(x) || !is_zero(v.A() * x)) return false;
        g.lin.push_back(v.P() * x);
    }
    for (const auto& r : ordering_cone_rays(v)) g.rays.push_back(r);
    return hrep_of(g, v.q()) == v.upper_image_hrep();
}

/// conv D[T_poi] + cone D[T_dir] + Span D[T_lin] - R* equals the lower image.
inline bool verify_supremizer(const VlpInstance& v, const DualVlpSolution& sol) {
    if (sol.T_poi.empty()) return false;
    const std::size_t q = v.q();
    auto feasible = [&](const DualObjectivePoint& e, int level, bool lin) {
        if (e.u.size() != v.m() || e.w.size() != q) return false;
        for (const auto& x : e.u)
            if (sgn(x) < 0 && !lin) return false;
        if (lin && !is_zero(e.u)) return false;
        if (v.A().transpose() * e.u != v.P().transpose() * e.w) return false;
        if (dot(v.pc(), e.w) != level) return false;
        std::vector<QVector> zcols = v.Z().transpose().row_list();
        if (lin) return in_cone(zcols, {}, e.w) && in_cone(zcols, {}, -e.w);
        return in_cone(zcols, {}, e.w) && e.value == v.dual_objective(e.u, e.w);
    };
    GeneratorRep g;
    for (const auto& e : sol.T_poi) {
        if (!feasible(e, 1, false)) return false;
        g.points.push_back(e.value);
    }
    for (const auto& e : sol.T_dir) {
        if (!feasible(e, 0, false) || (is_zero(e.u) && is_zero(e.w))) return false;
        g.rays.push_back(e.value);
    }
    for (const auto& e : sol.T_lin) {
        if (!feasible(e, 0, true) || is_zero(e.w)) return false;
        g.lin.push_back(v.dual_objective(e.u, e.w));
    }
    g.rays.push_back(-unit_vector(q, q - 1));
    return hrep_of(g, q) == v.lower_image_hrep();
}

/// The certificate's witness lies in the cone and in the image's lineality
/// space, both checked exactly.
inline bool verify_certificate(const VlpInstance& v, const NoSolutionCertificate& cert) {
    const QVector& z = cert.witness;
    if (z.size() != v.q() || is_zero(z)) return false;
    HRep image;
    if (cert.dual) {
        if (z != Rational(z[v.q() - 1]) * unit_vector(v.q(), v.q() - 1) || sgn(z[v.q() - 1]) <= 0) return false;
        image = v.lower_image_hrep();
    } else {
        if (!satisfies(v.ordering_cone(), z)) return false;
        image = v.upper_image_hrep();
    }
    for (const auto& hs : image.ineqs)
        if (sgn(dot(hs.normal, z)) != 0) return false;
    for (const auto& hs : image.eqs)
        if (sgn(dot(hs.normal, z)) != 0) return false;
    return true;
}

/// (S_bar, S_bar_h): points, and directions with each lineality direction
/// replaced by the pair x, -x.
inline std::pair<std::vector<QVector>, std::vector<QVector>> pair_form(const VlpSolution& sol) {
    std::vector<QVector> dirs = sol.S_dir;
    for (const auto& x : sol.S_lin) {
        dirs.push_back(x);
        dirs.push_back(-x);
    }
    return {sol.S_poi, dirs};
}

}  // namespace polyvlp
