#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "polyvlp/double_description.hpp"
#include "polyvlp/hrep.hpp"

namespace polyvlp {

/// conv(points) + cone(rays) + Span(lin).
struct GeneratorRep {
    std::vector<QVector> points;
    std::vector<QVector> rays;
    std::vector<QVector> lin;

    bool operator==(const GeneratorRep&) const = default;
};

/// Canonical generators of a polyhedron via the double description method on
/// its homogenization: rays with last coordinate t > 0 give points (scaled to
/// t = 1), rays with t = 0 give recession rays. An empty set yields no points.
inline GeneratorRep generators_of(const HRep& h) {
    HRep hom = homogenize(h);
    std::vector<QVector> ineqs, eqs;
    for (const auto& hs : hom.ineqs) ineqs.push_back(hs.normal);
    for (const auto& hs : hom.eqs) eqs.push_back(hs.normal);
    ConeGenerators cg = cone_generators(hom.dim, ineqs, eqs);
    GeneratorRep g;
    for (const auto& l : cg.lin) {
        QVector z(l.begin(), l.end() - 1);
        g.lin.push_back(std::move(z));
    }
    g.lin = row_basis(g.lin, h.dim);
    for (const auto& r : cg.rays) {
        const Rational& t = r.back();
        QVector z(r.begin(), r.end() - 1);
        if (sgn(t) > 0) {
            Rational inv = 1 / t;
            for (auto& x : z) x *= inv;
            g.points.push_back(std::move(z));
        } else {
            g.rays.push_back(normalize_direction(std::move(z)));
        }
    }
    std::sort(g.points.begin(), g.points.end());
    std::sort(g.rays.begin(), g.rays.end());
    return g;
}

/// Canonical H-representation of conv(points) + cone(rays) + Span(lin),
/// computed from the polar of the homogenized generator cone.
inline HRep hrep_of(const GeneratorRep& g, std::size_t dim) {
    if (g.points.empty()) return HRep::empty_set(dim);
    // Polar of cone{(p,1), (r,0)} + Span{(l,0)}: {a : a^T v <= 0, a^T l = 0}.
    std::vector<QVector> ineqs, eqs;
    auto lift = [&](const QVector& v, int t) {
        QVector out = v;
        out.push_back(t);
        return out;
    };
    for (const auto& p : g.points) ineqs.push_back(-lift(p, 1));
    for (const auto& r : g.rays) ineqs.push_back(-lift(r, 0));
    for (const auto& l : g.lin) eqs.push_back(lift(l, 0));
    ConeGenerators polar = cone_generators(dim + 1, ineqs, eqs);
    // (a, a_t) in the polar means a^T z + a_t <= 0, i.e. -a^T z >= a_t.
    HRep h{dim, {}, {}};
    auto to_halfspace = [&](const QVector& a) {
        QVector n(a.begin(), a.end() - 1);
        return Halfspace{-n, a.back()};
    };
    for (const auto& a : polar.rays) h.ineqs.push_back(to_halfspace(a));
    for (const auto& a : polar.lin) h.eqs.push_back(to_halfspace(a));
    return canonicalize(h);
}

/// A face given by the canonical inequalities active on it. `dim` is -1 for
/// the empty face.
struct Face {
    std::vector<std::size_t> active;
    int dim = -1;
    GeneratorRep gens;

    bool empty() const { return gens.points.empty(); }
    bool operator==(const Face& o) const { return active == o.active && dim == o.dim && gens == o.gens; }
};

/// Affine dimension of conv(points) + cone(rays) + Span(lin); -1 if no points.
inline int dimension_of(const GeneratorRep& g, std::size_t dim) {
    if (g.points.empty()) return -1;
    std::vector<QVector> dirs;
    for (std::size_t i = 1; i < g.points.size(); ++i) dirs.push_back(g.points[i] - g.points[0]);
    for (const auto& r : g.rays) dirs.push_back(r);
    for (const auto& l : g.lin) dirs.push_back(l);
    return static_cast<int>(rank(dirs, dim));
}

/// Desk-scale limits for face lattice enumeration.
inline constexpr std::size_t max_lattice_inequalities = 12;
inline constexpr std::size_t max_lattice_dimension = 5;

/// A polyhedron held in both canonical representations with the incidence
/// between canonical inequalities and generators.
class Polyhedron {
public:
    static Polyhedron from_hrep(const HRep& h) {
        Polyhedron p;
        p.hrep_ = canonicalize(h);
        if (!p.hrep_.is_empty_marker()) p.gens_ = generators_of(p.hrep_);
        p.build_incidence();
        return p;
    }

    static Polyhedron from_generators(const GeneratorRep& g, std::size_t dim) {
        return from_hrep(hrep_of(g, dim));
    }

    /// Cone {z : rows z >= 0, eq_rows z = 0}.
    static Polyhedron cone(std::size_t dim, std::span<const QVector> rows, std::span<const QVector> eq_rows = {}) {
        return from_hrep(HRep::cone(dim, rows, eq_rows));
    }

    std::size_t dim() const { return hrep_.dim; }
    const HRep& hrep() const { return hrep_; }
    const GeneratorRep& generators() const { return gens_; }
    bool empty() const { return gens_.points.empty(); }

    /// Affine dimension of the whole set.
    int affine_dim() const { return dimension_of(gens_, dim()); }

    bool contains(const QVector& z) const { return satisfies(hrep_, z); }

    /// Face whose active set is everything tight on all generators tight at `active`.
    Face closure(const std::vector<std::size_t>& active) const {
        Face f;
        std::vector<bool> pt(gens_.points.size(), true), ry(gens_.rays.size(), true);
        for (auto i : active) {
            for (std::size_t k = 0; k < pt.size(); ++k) pt[k] = pt[k] && point_tight_[i][k];
            for (std::size_t k = 0; k < ry.size(); ++k) ry[k] = ry[k] && ray_tight_[i][k];
        }
        for (std::size_t k = 0; k < pt.size(); ++k)
            if (pt[k]) f.gens.points.push_back(gens_.points[k]);
        if (f.gens.points.empty()) {
            f.active = all_indices();
            f.dim = -1;
            return f;
        }
        for (std::size_t k = 0; k < ry.size(); ++k)
            if (ry[k]) f.gens.rays.push_back(gens_.rays[k]);
        f.gens.lin = gens_.lin;
        for (std::size_t i = 0; i < hrep_.ineqs.size(); ++i) {
            bool tight = true;
            for (std::size_t k = 0; k < pt.size() && tight; ++k)
                if (pt[k] && !point_tight_[i][k]) tight = false;
            for (std::size_t k = 0; k < ry.size() && tight; ++k)
                if (ry[k] && !ray_tight_[i][k]) tight = false;
            if (tight) f.active.push_back(i);
        }
        f.dim = dimension_of(f.gens, dim());
        return f;
    }

    /// Smallest face containing the given points and directions (directions
    /// must lie in the recession cone; points in the set).
    Face smallest_face_containing(std::span<const QVector> points, std::span<const QVector> dirs) const {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < hrep_.ineqs.size(); ++i) {
            const auto& hs = hrep_.ineqs[i];
            bool tight = true;
            for (const auto& p : points)
                if (dot(hs.normal, p) != hs.offset) tight = false;
            for (const auto& d : dirs)
                if (sgn(dot(hs.normal, d)) != 0) tight = false;
            if (tight) active.push_back(i);
        }
        return closure(active);
    }

    Face smallest_face_containing(const GeneratorRep& g) const {
        std::vector<QVector> dirs = g.rays;
        for (const auto& l : g.lin) dirs.push_back(l);
        return smallest_face_containing(g.points, dirs);
    }

    /// The face cut out by the hyperplanes normal^T z = offset (each must be
    /// valid, i.e. normal^T z >= offset on the whole set).
    Face face_of_valid(std::span<const Halfspace> valid) const {
        std::vector<QVector> pts, dirs;
        std::vector<bool> pt(gens_.points.size(), true), ry(gens_.rays.size(), true);
        for (const auto& hs : valid) {
            for (std::size_t k = 0; k < pt.size(); ++k)
                if (dot(hs.normal, gens_.points[k]) != hs.offset) pt[k] = false;
            for (std::size_t k = 0; k < ry.size(); ++k)
                if (sgn(dot(hs.normal, gens_.rays[k])) != 0) ry[k] = false;
        }
        for (std::size_t k = 0; k < pt.size(); ++k)
            if (pt[k]) pts.push_back(gens_.points[k]);
        if (pts.empty()) return closure(all_indices());
        for (std::size_t k = 0; k < ry.size(); ++k)
            if (ry[k]) dirs.push_back(gens_.rays[k]);
        return smallest_face_containing(pts, dirs);
    }

    /// All nonempty faces, sorted by (dim, active). Throws ScaleError beyond
    /// desk scale.
    std::vector<Face> face_lattice() const {
        if (hrep_.ineqs.size() > max_lattice_inequalities || dim() > max_lattice_dimension)
            throw ScaleError("face lattice limited to " + std::to_string(max_lattice_inequalities) +
                             " inequalities in dimension <= " + std::to_string(max_lattice_dimension));
        std::vector<Face> out;
        if (empty()) return out;
        std::set<std::vector<std::size_t>> seen;
        std::queue<Face> todo;
        Face top = closure({});
        seen.insert(top.active);
        todo.push(top);
        while (!todo.empty()) {
            Face f = std::move(todo.front());
            todo.pop();
            for (std::size_t i = 0; i < hrep_.ineqs.size(); ++i) {
                if (std::binary_search(f.active.begin(), f.active.end(), i)) continue;
                std::vector<std::size_t> act = f.active;
                act.insert(std::upper_bound(act.begin(), act.end(), i), i);
                Face g = closure(act);
                if (g.empty() || !seen.insert(g.active).second) continue;
                todo.push(g);
            }
            out.push_back(std::move(f));
        }
        std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
            return std::tie(a.dim, a.active) < std::tie(b.dim, b.active);
        });
        return out;
    }

private:
    std::vector<std::size_t> all_indices() const {
        std::vector<std::size_t> v(hrep_.ineqs.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
    }

    void build_incidence() {
        point_tight_.assign(hrep_.ineqs.size(), {});
        ray_tight_.assign(hrep_.ineqs.size(), {});
        for (std::size_t i = 0; i < hrep_.ineqs.size(); ++i) {
            const auto& hs = hrep_.ineqs[i];
            for (const auto& p : gens_.points) point_tight_[i].push_back(dot(hs.normal, p) == hs.offset);
            for (const auto& r : gens_.rays) ray_tight_[i].push_back(sgn(dot(hs.normal, r)) == 0);
        }
    }

    HRep hrep_;
    GeneratorRep gens_;
    std::vector<std::vector<bool>> point_tight_;
    std::vector<std::vector<bool>> ray_tight_;
};

}  // namespace polyvlp
