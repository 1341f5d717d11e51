#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polyvlp/double_description.hpp"
#include "polyvlp/hrep.hpp"
#include "polyvlp/lp.hpp"

namespace polyvlp {

/// K = {y in R^p : exists x in R^n with G x + H y >= 0}.
struct ConeHRep {
    QMatrix G;  // k x n
    QMatrix H;  // k x p

    std::size_t k() const { return H.rows(); }
    std::size_t n() const { return G.cols(); }
    std::size_t p() const { return H.cols(); }

    void validate() const {
        if (G.rows() != H.rows()) throw ValidationError("cone: G and H must have the same number of rows");
    }
};

/// A vector together with the auxiliary point proving its feasibility:
/// (x, y) for K, (u, w) for K*.
struct Witnessed {
    QVector witness;
    QVector vector;

    bool operator==(const Witnessed&) const = default;
};

/// `directions` are the extreme directions of the cone intersected with the
/// orthogonal complement of its lineality space; `lineality` is a basis of
/// that space.
struct ConeSolution {
    std::vector<Witnessed> directions;
    std::vector<Witnessed> lineality;

    bool operator==(const ConeSolution&) const = default;

    ConeGenerators generators() const {
        ConeGenerators g;
        for (const auto& d : directions) g.rays.push_back(d.vector);
        for (const auto& l : lineality) g.lin.push_back(l.vector);
        return g;
    }
};

/// Canonical H-representation of K in R^p (Fourier-Motzkin on (y, x)).
inline HRep projected_hrep(const ConeHRep& c) {
    c.validate();
    HRep lifted{c.p() + c.n(), {}, {}};
    for (std::size_t i = 0; i < c.k(); ++i) {
        QVector row(c.p() + c.n());
        for (std::size_t j = 0; j < c.p(); ++j) row[j] = c.H(i, j);
        for (std::size_t j = 0; j < c.n(); ++j) row[c.p() + j] = c.G(i, j);
        lifted.ineqs.push_back({std::move(row), Rational(0)});
    }
    return eliminate_trailing(lifted, c.n());
}

inline ConeGenerators cone_generators(const HRep& cone) {
    std::vector<QVector> ineqs, eqs;
    for (const auto& hs : cone.ineqs) ineqs.push_back(hs.normal);
    for (const auto& hs : cone.eqs) eqs.push_back(hs.normal);
    return cone_generators(cone.dim, ineqs, eqs);
}

/// Some x with G x + H y >= 0, preferring G x + H y = 0 when solvable.
/// The inequality case searches the canonical form of the witness set, so
/// the result depends only on the set and not on the order of the rows.
inline std::optional<QVector> witness_for_P(const ConeHRep& c, const QVector& y, bool prefer_equality) {
    QVector rhs = -(c.H * y);
    if (c.n() == 0) {
        for (const auto& r : rhs)
            if (sgn(r) > 0) return std::nullopt;
        return QVector{};
    }
    if (prefer_equality) {
        if (auto sol = solve_linear(c.G, rhs)) return sol->particular;
    }
    HRep set{c.n(), {}, {}};
    for (std::size_t i = 0; i < c.k(); ++i) set.ineqs.push_back({c.G.row(i), rhs[i]});
    HRep canon = canonicalize(set);
    if (canon.is_empty_marker()) return std::nullopt;
    return some_point(canon);
}

/// Some u >= 0 with G^T u = 0 and -H^T u = w.
inline std::optional<QVector> witness_for_Pstar(const ConeHRep& c, const QVector& w) {
    QMatrix sys = vstack(c.G.transpose(), QMatrix(c.H.transpose()));
    for (std::size_t i = c.n(); i < sys.rows(); ++i)
        for (std::size_t j = 0; j < sys.cols(); ++j) sys(i, j) = -sys(i, j);
    QVector rhs(c.n());
    rhs.insert(rhs.end(), w.begin(), w.end());
    return feasible_point(sys, rhs, std::vector<RowKind>(sys.rows(), RowKind::eq),
                          std::vector<VarBound>(c.k(), VarBound::nonneg));
}

/// Solution of (P): lineality from K's canonical equations and
/// inequalities, extreme directions by double description, witnesses by LP.
inline ConeSolution solve_P(const ConeHRep& c) {
    HRep k = projected_hrep(c);
    ConeGenerators g = cone_generators(k);
    ConeSolution sol;
    auto attach = [&](const QVector& y, bool lin) {
        auto x = witness_for_P(c, y, lin);
        if (!x) throw InternalError("solve_P: no witness for a generator of K");
        return Witnessed{std::move(*x), y};
    };
    for (const auto& l : g.lin) sol.lineality.push_back(attach(l, true));
    for (const auto& r : g.rays) sol.directions.push_back(attach(r, false));
    return sol;
}

/// v in cone(rays) + Span(lin), decided by one feasibility LP.
inline bool in_cone(std::span<const QVector> rays, std::span<const QVector> lin, const QVector& v) {
    const std::size_t d = v.size();
    const std::size_t vars = rays.size() + lin.size();
    if (vars == 0) return is_zero(v);
    QMatrix m(d, vars);
    for (std::size_t j = 0; j < rays.size(); ++j)
        for (std::size_t i = 0; i < d; ++i) m(i, j) = rays[j][i];
    for (std::size_t j = 0; j < lin.size(); ++j)
        for (std::size_t i = 0; i < d; ++i) m(i, rays.size() + j) = lin[j][i];
    std::vector<VarBound> bounds(rays.size(), VarBound::nonneg);
    bounds.resize(vars, VarBound::free);
    return feasible_point(m, v, std::vector<RowKind>(d, RowKind::eq), bounds).has_value();
}

/// Canonical generators of cone(gens) + Span(lin): the lineality space
/// (generators whose negatives lie in the cone, plus lin) in RREF, and the
/// projected, normalized, irredundant remaining rays.
inline ConeGenerators reduce_cone_generators(std::size_t dim, std::vector<QVector> gens,
                                             std::vector<QVector> lin = {}) {
    std::erase_if(gens, [](const QVector& v) { return is_zero(v); });
    std::vector<QVector> l = lin;
    std::vector<QVector> rest;
    for (const auto& g : gens) {
        if (in_cone(gens, lin, -g))
            l.push_back(g);
        else
            rest.push_back(g);
    }
    ConeGenerators out;
    out.lin = row_basis(l, dim);
    std::vector<QVector> rays;
    for (const auto& g : rest) {
        QVector r = project_out(g, out.lin);
        if (!is_zero(r)) rays.push_back(normalize_direction(std::move(r)));
    }
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    for (std::size_t i = 0; i < rays.size();) {
        std::vector<QVector> others;
        for (std::size_t j = 0; j < rays.size(); ++j)
            if (j != i) others.push_back(rays[j]);
        if (in_cone(others, out.lin, rays[i])) {
            rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
            continue;
        }
        ++i;
    }
    out.rays = std::move(rays);
    return out;
}

/// Extreme rays u of {u >= 0 : G^T u = 0}.
inline std::vector<QVector> dual_multiplier_rays(const ConeHRep& c) {
    std::vector<QVector> ineqs, eqs;
    for (std::size_t i = 0; i < c.k(); ++i) ineqs.push_back(unit_vector(c.k(), i));
    for (std::size_t j = 0; j < c.n(); ++j) eqs.push_back(c.G.col(j));
    ConeGenerators g = cone_generators(c.k(), ineqs, eqs);
    if (!g.lin.empty()) throw InternalError("dual_multiplier_rays: cone not pointed");
    return g.rays;
}

/// Solution of (P*): enumerate the multiplier rays, map them through -H^T,
/// then reduce to the canonical generators of K*.
inline ConeSolution solve_Pstar(const ConeHRep& c) {
    c.validate();
    std::vector<QVector> images;
    QMatrix negHt = QMatrix(c.H.transpose());
    for (std::size_t i = 0; i < negHt.rows(); ++i)
        for (std::size_t j = 0; j < negHt.cols(); ++j) negHt(i, j) = -negHt(i, j);
    for (const auto& u : dual_multiplier_rays(c)) images.push_back(negHt * u);
    ConeGenerators g = reduce_cone_generators(c.p(), std::move(images));
    ConeSolution sol;
    auto attach = [&](const QVector& w) {
        auto u = witness_for_Pstar(c, w);
        if (!u) throw InternalError("solve_Pstar: no witness for a generator of K*");
        return Witnessed{std::move(*u), w};
    };
    for (const auto& l : g.lin) sol.lineality.push_back(attach(l));
    for (const auto& r : g.rays) sol.directions.push_back(attach(r));
    return sol;
}

/// True iff cone(cand) equals the polar {w : w^T y <= 0 for all y in K},
/// by mutual containment: every candidate is valid for K, and every
/// (negated) inequality normal and +-equation normal of K lies in cone(cand).
inline bool polar_check(const HRep& k, const ConeGenerators& cand) {
    auto valid = [&](const QVector& w) {
        LpBuilder b(k.dim);
        add_constraints(b, k);
        b.add_le(w, 1);
        b.maximize(w);
        LpOutcome out = lp_solve(b.build());
        return out.status == LpStatus::optimal && sgn(*out.value) <= 0;
    };
    for (const auto& r : cand.rays)
        if (r.size() != k.dim || !valid(r)) return false;
    for (const auto& l : cand.lin)
        if (l.size() != k.dim || !valid(l) || !valid(-l)) return false;
    for (const auto& hs : k.ineqs) {
        if (sgn(hs.offset) != 0) throw PreconditionError("polar_check: K must be a cone");
        if (!in_cone(cand.rays, cand.lin, -hs.normal)) return false;
    }
    for (const auto& hs : k.eqs) {
        if (sgn(hs.offset) != 0) throw PreconditionError("polar_check: K must be a cone");
        if (!in_cone(cand.rays, cand.lin, hs.normal) || !in_cone(cand.rays, cand.lin, -hs.normal)) return false;
    }
    return true;
}

}  // namespace polyvlp
