#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "polyvlp/linalg.hpp"

namespace polyvlp {

/// cone(rays) + Span(lin). In canonical form `lin` is an RREF basis and the
/// rays are the extreme rays of the cone intersected with lin's orthogonal
/// complement, scaled to a leading +-1 and sorted.
struct ConeGenerators {
    std::vector<QVector> rays;
    std::vector<QVector> lin;

    bool operator==(const ConeGenerators&) const = default;
};

/// Incremental double description method. Starts from the whole space and
/// intersects with one homogeneous constraint at a time.
class DoubleDescription {
public:
    explicit DoubleDescription(std::size_t dim) : dim_(dim) {
        for (std::size_t i = 0; i < dim; ++i) lin_.push_back(unit_vector(dim, i));
    }

    std::size_t dim() const { return dim_; }

    void add_inequality(const QVector& a) { add(a, false); }
    void add_equality(const QVector& a) { add(a, true); }

    /// Current generators in canonical form.
    ConeGenerators result() const {
        ConeGenerators g;
        g.lin = row_basis(lin_, dim_);
        for (const auto& r : rays_) g.rays.push_back(normalize_direction(project_out(r.v, g.lin)));
        std::sort(g.rays.begin(), g.rays.end());
        g.rays.erase(std::unique(g.rays.begin(), g.rays.end()), g.rays.end());
        return g;
    }

    /// Raw current rays (not projected), for incremental consumers.
    std::vector<QVector> raw_rays() const {
        std::vector<QVector> out;
        for (const auto& r : rays_) out.push_back(r.v);
        return out;
    }

    std::size_t lineality_dim() const { return lin_.size(); }

private:
    struct Ray {
        QVector v;
        std::vector<bool> tight;  // per processed constraint
    };

    void add(const QVector& a, bool equality) {
        if (a.size() != dim_) throw PreconditionError("DoubleDescription: constraint dimension");
        const std::size_t idx = constraints_++;

        // A lineality direction not orthogonal to a gets pivoted out.
        for (std::size_t k = 0; k < lin_.size(); ++k) {
            Rational al = dot(a, lin_[k]);
            if (sgn(al) == 0) continue;
            QVector l = std::move(lin_[k]);
            lin_.erase(lin_.begin() + static_cast<std::ptrdiff_t>(k));
            if (sgn(al) < 0) {
                l = -l;
                al = -al;
            }
            for (auto& other : lin_) {
                Rational f = dot(a, other) / al;
                if (sgn(f) != 0) other = other - f * l;
            }
            for (auto& r : rays_) {
                Rational f = dot(a, r.v) / al;
                if (sgn(f) != 0) r.v = normalize_direction(r.v - f * l);
                r.tight.push_back(true);
            }
            if (!equality) {
                std::vector<bool> tight(idx, true);
                tight.push_back(false);
                rays_.push_back({normalize_direction(std::move(l)), std::move(tight)});
            }
            return;
        }

        std::vector<std::size_t> pos, neg, zero;
        std::vector<Rational> val(rays_.size());
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            val[i] = dot(a, rays_[i].v);
            int s = sgn(val[i]);
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(i);
        }
        std::vector<Ray> next;
        if (!equality)
            for (auto i : pos) next.push_back(rays_[i]);
        for (auto i : zero) next.push_back(rays_[i]);
        for (auto i : pos)
            for (auto j : neg) {
                if (!adjacent(i, j)) continue;
                Ray r;
                r.v = normalize_direction(val[i] * rays_[j].v - val[j] * rays_[i].v);
                r.tight.resize(idx);
                for (std::size_t c = 0; c < idx; ++c) r.tight[c] = rays_[i].tight[c] && rays_[j].tight[c];
                next.push_back(std::move(r));
            }
        for (auto& r : next) {
            // The combination is tight at the new constraint by construction.
            if (r.tight.size() == idx) r.tight.push_back(sgn(dot(a, r.v)) == 0);
        }
        rays_ = std::move(next);
    }

    // Combinatorial adjacency: no third ray is tight wherever both are.
    bool adjacent(std::size_t i, std::size_t j) const {
        const auto& ti = rays_[i].tight;
        const auto& tj = rays_[j].tight;
        std::vector<std::size_t> common;
        for (std::size_t c = 0; c < ti.size(); ++c)
            if (ti[c] && tj[c]) common.push_back(c);
        // A 2-face of the pointed part needs at least dim - lin - 2 tight constraints.
        if (common.size() + 2 + lin_.size() < dim_) return false;
        for (std::size_t k = 0; k < rays_.size(); ++k) {
            if (k == i || k == j) continue;
            bool contains = true;
            for (auto c : common)
                if (!rays_[k].tight[c]) {
                    contains = false;
                    break;
                }
            if (contains) return false;
        }
        return true;
    }

    std::size_t dim_;
    std::size_t constraints_ = 0;
    std::vector<QVector> lin_;
    std::vector<Ray> rays_;
};

/// Generators of {z : ineqs z >= 0, eqs z = 0}; equations are processed first.
inline ConeGenerators cone_generators(std::size_t dim, std::span<const QVector> ineqs,
                                      std::span<const QVector> eqs = {}) {
    DoubleDescription dd(dim);
    for (const auto& e : eqs) dd.add_equality(e);
    for (const auto& a : ineqs) dd.add_inequality(a);
    return dd.result();
}

}  // namespace polyvlp
