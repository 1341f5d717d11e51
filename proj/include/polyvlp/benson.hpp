#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyvlp/cone_projection.hpp"
#include "polyvlp/double_description.hpp"
#include "polyvlp/hrep.hpp"

namespace polyvlp {

enum class Side { primal, dual };

inline const char* to_string(Side s) { return s == Side::primal ? "primal" : "dual"; }

/// Affine chart z = origin + sum_i s_i basis_i of a hyperplane section.
struct Chart {
    QVector origin;
    std::vector<QVector> basis;

    std::size_t dim() const { return basis.size(); }

    QVector lift(const QVector& s) const {
        QVector z = origin;
        for (std::size_t i = 0; i < basis.size(); ++i) z = z + s[i] * basis[i];
        return z;
    }

    QVector coords(const QVector& z) const {
        if (basis.empty()) return {};
        QMatrix m(origin.size(), basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            for (std::size_t i = 0; i < origin.size(); ++i) m(i, j) = basis[j][i];
        auto sol = solve_linear(m, z - origin);
        if (!sol || !sol->kernel.empty()) throw PreconditionError("Chart::coords: point off the chart");
        return sol->particular;
    }

    /// a^T z >= b restricted to the chart.
    Halfspace pull_back(const QVector& a, const Rational& b) const {
        QVector n(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) n[i] = dot(a, basis[i]);
        return {std::move(n), b - dot(a, origin)};
    }
};

/// The pointed parts of K and K*, interior points xi, eta with
/// xi^T eta = -1, and the bases B = {y in K^ : eta^T y = -1},
/// B* = {w in K^* : xi^T w = -1} with one chart each.
struct DualPairSetup {
    ConeHRep cone;
    HRep K;
    std::vector<QVector> L_K;
    std::vector<QVector> L_Kstar;
    std::vector<QVector> V_basis;
    QVector xi;
    QVector eta;
    /// B in the coordinates of R^p.
    HRep B_hrep;
    Chart primal_chart;  // chart of B, origin xi
    Chart dual_chart;    // chart of B*, origin eta
    std::size_t seed_rays = 0;
    std::size_t seed_dual_rays = 0;

    const Chart& chart(Side s) const { return s == Side::primal ? primal_chart : dual_chart; }
};

inline DualPairSetup build_setup(const ConeHRep& c) {
    DualPairSetup s;
    s.cone = c;
    const std::size_t p = c.p();
    s.K = projected_hrep(c);
    std::vector<QVector> rows;
    for (const auto& hs : s.K.ineqs) rows.push_back(hs.normal);
    for (const auto& hs : s.K.eqs) rows.push_back(hs.normal);
    s.L_K = row_basis(null_space_basis(QMatrix::from_rows(rows, p)), p);
    std::vector<QVector> eq_rows;
    for (const auto& hs : s.K.eqs) eq_rows.push_back(hs.normal);
    s.L_Kstar = row_basis(eq_rows, p);
    if (s.L_K.size() + s.L_Kstar.size() == p)
        throw DegenerateConeError("K is a linear subspace, so the bases B and B* are empty");

    std::vector<QVector> lins = s.L_K;
    lins.insert(lins.end(), s.L_Kstar.begin(), s.L_Kstar.end());
    s.V_basis = null_space_basis(QMatrix::from_rows(lins, p));

    // xi and eta: sums of the extreme rays of the pointed parts
    std::vector<QVector> rays = cone_generators(s.K).rays;
    std::vector<QVector> images;
    QMatrix negHt(p, c.k());
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < c.k(); ++j) negHt(i, j) = -c.H(j, i);
    for (const auto& u : dual_multiplier_rays(c)) images.push_back(negHt * u);
    std::vector<QVector> dual_rays = reduce_cone_generators(p, std::move(images)).rays;
    s.seed_rays = rays.size();
    s.seed_dual_rays = dual_rays.size();
    s.xi = QVector(p);
    for (const auto& r : rays) s.xi = s.xi + r;
    s.eta = QVector(p);
    for (const auto& r : dual_rays) s.eta = s.eta + r;
    Rational prod = dot(s.xi, s.eta);
    if (sgn(prod) >= 0) throw InternalError("build_setup: xi^T eta >= 0");
    s.eta = (Rational(1) / abs(prod)) * s.eta;

    for (const auto& hs : s.K.ineqs)
        if (sgn(dot(hs.normal, s.xi)) <= 0) throw InternalError("build_setup: xi not in the relative interior of K^");
    for (const auto& r : rays)
        if (sgn(dot(r, s.eta)) >= 0) throw InternalError("build_setup: eta not in the relative interior of K^*");
    for (const auto& l : lins)
        if (sgn(dot(l, s.xi)) != 0 || sgn(dot(l, s.eta)) != 0) throw InternalError("build_setup: xi or eta not in V");

    std::vector<QVector> with_eta = lins, with_xi = lins;
    with_eta.push_back(s.eta);
    with_xi.push_back(s.xi);
    s.primal_chart = Chart{s.xi, null_space_basis(QMatrix::from_rows(with_eta, p))};
    s.dual_chart = Chart{s.eta, null_space_basis(QMatrix::from_rows(with_xi, p))};

    s.B_hrep = HRep{p, s.K.ineqs, s.K.eqs};
    for (const auto& l : s.L_K) s.B_hrep.eqs.push_back({l, Rational(0)});
    s.B_hrep.eqs.push_back({s.eta, Rational(-1)});
    return s;
}

/// State of the outer approximation, in chart coordinates.
struct OuterApprox {
    HRep Q_hrep;
    std::vector<QVector> Q_vertices;
    std::size_t cuts_applied = 0;
};

struct CutRecord {
    Side side = Side::primal;
    std::size_t iteration = 0;
    QVector vertex;  // chart coordinates of the removed vertex
    std::size_t cut = 0;
    std::size_t vertices = 0;  // vertex count of Q after the cut

    std::string line() const {
        return std::string(to_string(side)) + " iteration " + std::to_string(iteration) + ": vertex " +
               polyvlp::to_string(vertex) + " cut " + std::to_string(cut) + " |vertices(Q)| = " +
               std::to_string(vertices);
    }
};

using CutObserver = std::function<void(const OuterApprox&, const CutRecord&)>;

namespace detail {

inline std::vector<QVector> chart_vertices(const DoubleDescription& dd) {
    ConeGenerators g = dd.result();
    if (!g.lin.empty()) throw InternalError("outer_approximate: unbounded outer polytope");
    std::vector<QVector> out;
    for (const auto& r : g.rays) {
        if (sgn(r.back()) <= 0) throw InternalError("outer_approximate: unbounded outer polytope");
        QVector s(r.begin(), r.end() - 1);
        out.push_back((Rational(1) / r.back()) * s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Lexicographically smallest maximizer of w^T y over B, if the maximum is
/// positive.
inline std::optional<QVector> separating_vertex(const DualPairSetup& s, const QVector& w) {
    HRep h = s.B_hrep;
    LpOutcome out = minimize_over(h, -w);
    if (out.status != LpStatus::optimal) throw InternalError("outer_approximate: B is empty or unbounded");
    Rational best = -*out.value;
    if (sgn(best) <= 0) return std::nullopt;
    h.eqs.push_back({w, best});
    for (std::size_t j = 0; j < h.dim; ++j) {
        QVector e = unit_vector(h.dim, j);
        LpOutcome lex = minimize_over(h, e);
        if (lex.status != LpStatus::optimal) throw InternalError("outer_approximate: lexicographic step failed");
        h.eqs.push_back({e, *lex.value});
    }
    return some_point(h);
}

}  // namespace detail

/// Vertices of B (primal side) or B* (dual side) in the coordinates of R^p,
/// sorted, computed by cutting an initial outer polytope until every vertex
/// is feasible.
inline std::vector<QVector> outer_approximate(const DualPairSetup& s, Side side, const CutObserver& observer = {}) {
    const Chart& ch = s.chart(side);
    const Chart& other = s.chart(side == Side::primal ? Side::dual : Side::primal);
    const std::size_t d = ch.dim();

    // Initial Q from the polar of cone{o +- eps v_i}, o the other side's origin.
    std::vector<QVector> seeds;
    auto member_other = [&](const QVector& e) {
        if (side == Side::primal) return witness_for_Pstar(s.cone, e).has_value();
        return satisfies(s.K, e);
    };
    for (Rational eps(1);; eps /= 2) {
        seeds.clear();
        bool ok = true;
        for (const auto& v : other.basis) {
            for (int sign : {1, -1}) {
                QVector e = other.origin + (Rational(sign) * eps) * v;
                if (!member_other(e)) ok = false;
                seeds.push_back(std::move(e));
            }
        }
        if (ok) break;
        if (eps < Rational(1, 1 << 30)) throw InternalError("outer_approximate: no interior seed found");
    }

    OuterApprox q;
    q.Q_hrep = HRep{d, {}, {}};
    DoubleDescription dd(d + 1);
    dd.add_inequality(unit_vector(d + 1, d));
    auto add_cut = [&](const Halfspace& hs) {
        q.Q_hrep.ineqs.push_back(hs);
        QVector row = hs.normal;
        row.push_back(-hs.offset);
        dd.add_inequality(row);
    };
    // e^T z <= 0, i.e. (-e)^T z >= 0
    for (const auto& e : seeds) add_cut(ch.pull_back(-e, Rational(0)));
    q.Q_vertices = detail::chart_vertices(dd);

    const std::size_t cap = 4 * std::max<std::size_t>(1, side == Side::primal ? s.K.ineqs.size() : s.seed_rays) + 4;
    std::vector<QVector> dual_cuts;
    for (std::size_t iter = 1;; ++iter) {
        std::optional<std::pair<QVector, Halfspace>> cut;
        std::size_t cut_index = 0;
        for (const auto& v : q.Q_vertices) {
            QVector z = ch.lift(v);
            if (side == Side::primal) {
                std::optional<std::size_t> worst;
                Rational worst_val;
                for (std::size_t i = 0; i < s.K.ineqs.size(); ++i) {
                    Rational val = dot(s.K.ineqs[i].normal, z);
                    if (sgn(val) < 0 && (!worst || val < worst_val)) {
                        worst = i;
                        worst_val = val;
                    }
                }
                if (worst) {
                    cut_index = *worst;
                    cut = {v, ch.pull_back(s.K.ineqs[*worst].normal, Rational(0))};
                }
            } else if (auto y = detail::separating_vertex(s, z)) {
                cut_index = dual_cuts.size();
                dual_cuts.push_back(*y);
                cut = {v, ch.pull_back(-*y, Rational(0))};
            }
            if (cut) break;
        }
        if (!cut) break;
        if (q.cuts_applied == cap) throw InternalError("outer_approximate: iteration cap reached");
        add_cut(cut->second);
        q.Q_vertices = detail::chart_vertices(dd);
        ++q.cuts_applied;
        if (observer) observer(q, CutRecord{side, iter, cut->first, cut_index, q.Q_vertices.size()});
    }

    std::vector<QVector> out;
    for (const auto& v : q.Q_vertices) out.push_back(ch.lift(v));
    std::sort(out.begin(), out.end());
    return out;
}

struct BensonResult {
    ConeSolution primal;
    ConeSolution dual;
    bool degenerate = false;
    std::size_t primal_cuts = 0;
    std::size_t dual_cuts = 0;
};

/// Solutions of (P) and (P*) through the bases B and B*; cones that are
/// linear subspaces take the direct path.
inline BensonResult solve_via_benson(const ConeHRep& c, const CutObserver& observer = {}) {
    c.validate();
    BensonResult res;
    DualPairSetup s;
    try {
        s = build_setup(c);
    } catch (const DegenerateConeError&) {
        res.primal = solve_P(c);
        res.dual = solve_Pstar(c);
        res.degenerate = true;
        return res;
    }
    auto counting = [&](std::size_t& counter) {
        return CutObserver([&, observer](const OuterApprox& q, const CutRecord& r) {
            ++counter;
            if (observer) observer(q, r);
        });
    };
    auto directions = [](std::vector<QVector> vs) {
        for (auto& v : vs) v = normalize_direction(std::move(v));
        std::sort(vs.begin(), vs.end());
        return vs;
    };
    std::vector<QVector> rays = directions(outer_approximate(s, Side::primal, counting(res.primal_cuts)));
    std::vector<QVector> dual_rays = directions(outer_approximate(s, Side::dual, counting(res.dual_cuts)));

    auto witness_p = [&](const QVector& y, bool lin) {
        auto x = witness_for_P(c, y, lin);
        if (!x) throw InternalError("solve_via_benson: no witness for a generator of K");
        return Witnessed{std::move(*x), y};
    };
    auto witness_d = [&](const QVector& w) {
        auto u = witness_for_Pstar(c, w);
        if (!u) throw InternalError("solve_via_benson: no witness for a generator of K*");
        return Witnessed{std::move(*u), w};
    };
    for (const auto& l : s.L_K) res.primal.lineality.push_back(witness_p(l, true));
    for (const auto& r : rays) res.primal.directions.push_back(witness_p(r, false));
    for (const auto& l : s.L_Kstar) res.dual.lineality.push_back(witness_d(l));
    for (const auto& r : dual_rays) res.dual.directions.push_back(witness_d(r));
    return res;
}

}  // namespace polyvlp
