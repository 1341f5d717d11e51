#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyvlp/cone_projection.hpp"
#include "polyvlp/hrep.hpp"
#include "polyvlp/lp.hpp"
#include "polyvlp/polyhedron.hpp"

namespace polyvlp {

/// min_C P x  s.t.  A x >= b, with C = {y : Z^T y >= 0}, as read from input.
/// `c` is the raw p(c) in R^q; when absent a default is chosen.
struct RawVlp {
    QMatrix A;  // m x n
    QVector b;  // m
    QMatrix P;  // q x n
    QMatrix Z;  // q x r
    std::optional<QVector> c;
};

/// Z with C = cone(generators), via the polar of the generated cone.
inline QMatrix ordering_matrix_from_generators(std::size_t q, const std::vector<QVector>& generators) {
    GeneratorRep g{{QVector(q)}, generators, {}};
    HRep h = hrep_of(g, q);
    std::vector<QVector> cols;
    for (const auto& hs : h.ineqs) cols.push_back(hs.normal);
    for (const auto& hs : h.eqs) {
        cols.push_back(hs.normal);
        cols.push_back(-hs.normal);
    }
    return QMatrix::from_rows(cols, q).transpose();
}

/// Signed permutation y_new = T y_old of the image coordinates, with
/// T(i, perm[i]) = sign[i].
struct CoordinateMap {
    std::vector<std::size_t> perm;
    std::vector<int> sign;

    static CoordinateMap identity(std::size_t q) {
        CoordinateMap m;
        for (std::size_t i = 0; i < q; ++i) {
            m.perm.push_back(i);
            m.sign.push_back(1);
        }
        return m;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < perm.size(); ++i)
            if (perm[i] != i || sign[i] != 1) return false;
        return true;
    }

    QVector forward(const QVector& y) const {
        QVector out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = sign[i] * y[perm[i]];
        return out;
    }

    QVector backward(const QVector& y) const {
        QVector out(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out[perm[i]] = sign[i] * y[i];
        return out;
    }

    QMatrix forward_rows(const QMatrix& m) const {
        QMatrix out(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = sign[i] * m(perm[i], j);
        return out;
    }

    /// Pulls a halfspace a^T y_new >= e back to a'^T y_old >= e.
    Halfspace backward_halfspace(const Halfspace& hs) const { return {backward(hs.normal), hs.offset}; }
};

struct NormalizedC {
    CoordinateMap map;
    Rational scale;  // c_vlp = scale * map.forward(c_raw)
    QVector c;       // in R^q, last coordinate 1
};

/// Chooses coordinates so that the q-th entry of c becomes 1. The identity
/// is kept when c_q != 0; otherwise the last nonzero coordinate is swapped
/// into position q. A negative entry there is fixed by a sign flip, then c
/// is scaled by a positive factor.
inline NormalizedC normalize_c(const QVector& c_raw) {
    const std::size_t q = c_raw.size();
    if (q == 0 || is_zero(c_raw)) throw ValidationError("c must be nonzero (c in ri C with C pointed)");
    NormalizedC out{CoordinateMap::identity(q), Rational(1), {}};
    std::size_t j = q - 1;
    while (sgn(c_raw[j]) == 0) --j;
    std::swap(out.map.perm[j], out.map.perm[q - 1]);
    if (sgn(c_raw[j]) < 0) out.map.sign[q - 1] = -1;
    out.c = out.map.forward(c_raw);
    out.scale = 1 / out.c[q - 1];
    for (auto& x : out.c) x *= out.scale;
    return out;
}

/// The matrix M together with its inverse.
struct TransformM {
    QMatrix M;
    QMatrix Minv;
};

inline TransformM transform_M(const QVector& c) {
    const std::size_t q = c.size() - 1;
    if (q < 2 || c[q - 1] != 1 || sgn(c[q]) != 0) throw PreconditionError("transform_M: need c = (p(c), 0) with c_q = 1");
    TransformM t{QMatrix(q + 1, q + 1), {}};
    for (std::size_t i = 0; i + 1 < q; ++i) {
        t.M(i, i) = -1;
        t.M(q - 1, i) = c[i];
    }
    t.M(q - 1, q) = -1;
    t.M(q, q - 1) = 1;
    t.Minv = inverse(t.M);
    if (!(t.M * t.Minv == QMatrix::identity(q + 1))) throw InternalError("transform_M: inverse check failed");
    // Minv w = (-w_1, ..., -w_{q-1}, w_{q+1}, -c^T w) on every basis vector.
    for (std::size_t k = 0; k <= q; ++k) {
        QVector w = unit_vector(q + 1, k);
        QVector expect(q + 1);
        for (std::size_t i = 0; i + 1 < q; ++i) expect[i] = -w[i];
        expect[q - 1] = w[q];
        expect[q] = -dot(c, w);
        if (t.Minv * w != expect) throw InternalError("transform_M: inverse formula check failed");
    }
    return t;
}

/// p(y) = (y_1, ..., y_q).
inline QVector p_of(const QVector& y) { return QVector(y.begin(), y.end() - 1); }

/// p*(w) = (w_1, ..., w_{q-1}, w_{q+1}).
inline QVector p_star_of(const QVector& w) {
    QVector out(w.begin(), w.end() - 2);
    out.push_back(w.back());
    return out;
}

/// G = [A; -Z^T P; 0], H = [[0, -b]; [Z^T, 0]; [0^T, 1]].
inline ConeHRep build_GH(const QMatrix& A, const QVector& b, const QMatrix& P, const QMatrix& Z) {
    const std::size_t m = A.rows(), n = P.cols(), q = P.rows(), r = Z.cols();
    const std::size_t rows = m + r + 1;
    ConeHRep c{QMatrix(rows, n), QMatrix(rows, q + 1)};
    QMatrix ztp = Z.transpose() * P;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) c.G(i, j) = A(i, j);
        c.H(i, q) = -b[i];
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < n; ++j) c.G(m + i, j) = -ztp(i, j);
        for (std::size_t j = 0; j < q; ++j) c.H(m + i, j) = Z(j, i);
    }
    c.H(rows - 1, q) = 1;
    return c;
}

/// A validated instance in normalized coordinates (c_q = 1). The original
/// data and the coordinate change are kept for reporting.
class VlpInstance {
public:
    static VlpInstance create(const RawVlp& raw) {
        VlpInstance v;
        v.raw_ = raw;
        const std::size_t m = raw.A.rows(), n = raw.A.cols(), q = raw.P.rows(), r = raw.Z.cols();
        if (q < 2) throw ValidationError("q >= 2 required: the dual objective needs a vector-valued objective");
        if (n == 0) throw ValidationError("n >= 1 required");
        if (raw.b.size() != m) throw ValidationError("b must have m entries");
        if (raw.P.cols() != n) throw ValidationError("P must be q x n with n = cols(A)");
        if (raw.Z.rows() != q) throw ValidationError("Z must be q x r");
        if (raw.c && raw.c->size() != q) throw ValidationError("c must have q entries");

        std::vector<QVector> zt = raw.Z.transpose().row_list();
        if (r == 0 || rank(zt, q) != q)
            throw ValidationError("ordering cone C = {y : Z^T y >= 0} is not pointed");
        HRep cone_c = HRep::cone(q, zt);
        ConeGenerators cg = cone_generators(cone_c);
        if (cg.rays.empty()) throw ValidationError("ordering cone C is trivial (C = {0})");

        QVector c_raw;
        if (raw.c) {
            c_raw = *raw.c;
        } else {
            c_raw = QVector(q);
            for (const auto& ray : cg.rays) c_raw = c_raw + ray;
            v.default_c_ = true;
        }
        if (is_zero(c_raw)) throw ValidationError("c must be nonzero");
        if (!satisfies(cone_c, c_raw)) throw ValidationError("c is not in the ordering cone C");
        auto implicit = implicit_equalities(cone_c);
        std::vector<bool> is_imp(zt.size(), false);
        for (auto i : implicit) is_imp[i] = true;
        for (std::size_t i = 0; i < zt.size(); ++i)
            if (!is_imp[i] && sgn(dot(zt[i], c_raw)) == 0)
                throw ValidationError("c is not in the relative interior of C");
        v.c_raw_ = c_raw;

        NormalizedC nc = normalize_c(c_raw);
        v.map_ = nc.map;
        v.scale_ = nc.scale;
        v.A_ = raw.A;
        v.b_ = raw.b;
        v.P_ = nc.map.forward_rows(raw.P);
        v.Z_ = nc.map.forward_rows(raw.Z);
        v.c_ = nc.c;
        v.c_.push_back(0);

        v.primal_feasible_ = feasible_point(raw.A, raw.b, std::vector<RowKind>(m, RowKind::ge),
                                            std::vector<VarBound>(n, VarBound::free))
                                 .has_value();
        v.dual_feasible_ = some_point(v.dual_feasible_set()).has_value();
        return v;
    }

    std::size_t m() const { return A_.rows(); }
    std::size_t n() const { return A_.cols(); }
    std::size_t q() const { return P_.rows(); }
    std::size_t r() const { return Z_.cols(); }

    const QMatrix& A() const { return A_; }
    const QVector& b() const { return b_; }
    const QMatrix& P() const { return P_; }
    const QMatrix& Z() const { return Z_; }
    /// c in R^{q+1}, last entry 0, c_q = 1.
    const QVector& c() const { return c_; }
    QVector pc() const { return p_of(c_); }
    /// c* = (0, ..., 0, -1).
    QVector c_star() const {
        QVector v(q() + 1);
        v[q()] = -1;
        return v;
    }
    const RawVlp& raw() const { return raw_; }
    const QVector& c_raw() const { return c_raw_; }
    const CoordinateMap& coordinates() const { return map_; }
    const Rational& scale() const { return scale_; }
    bool default_c() const { return default_c_; }
    bool primal_feasible() const { return primal_feasible_; }
    bool dual_feasible() const { return dual_feasible_; }

    /// C in normalized coordinates.
    HRep ordering_cone() const { return HRep::cone(q(), Z_.transpose().row_list()); }

    ConeHRep build_GH() const { return polyvlp::build_GH(A_, b_, P_, Z_); }

    /// S = {x : A x >= b}.
    HRep feasible_set() const {
        HRep h{n(), {}, {}};
        for (std::size_t i = 0; i < m(); ++i) h.ineqs.push_back({A_.row(i), b_[i]});
        return h;
    }

    /// T in variables (u, v): A^T u = P^T Z v, p(c)^T Z v = 1, u >= 0, v >= 0.
    /// The dual point is (u, w) with w = Z v.
    HRep dual_feasible_set() const {
        const std::size_t d = m() + r();
        HRep h{d, {}, {}};
        QMatrix ptz = P_.transpose() * Z_;
        for (std::size_t j = 0; j < n(); ++j) {
            QVector row(d);
            for (std::size_t i = 0; i < m(); ++i) row[i] = A_(i, j);
            for (std::size_t i = 0; i < r(); ++i) row[m() + i] = -ptz(j, i);
            h.eqs.push_back({std::move(row), Rational(0)});
        }
        QVector norm(d);
        QVector zc = Z_.transpose() * pc();
        for (std::size_t i = 0; i < r(); ++i) norm[m() + i] = zc[i];
        h.eqs.push_back({std::move(norm), Rational(1)});
        for (std::size_t i = 0; i < d; ++i) h.ineqs.push_back({unit_vector(d, i), Rational(0)});
        return h;
    }

    /// Upper image P[S] + C: eliminate x from A x >= b, Z^T (y - P x) >= 0.
    HRep upper_image_hrep() const {
        if (!primal_feasible_) throw InfeasibleError("feasible set S is empty");
        const std::size_t d = q() + n();
        HRep h{d, {}, {}};
        for (std::size_t i = 0; i < m(); ++i) {
            QVector row(d);
            for (std::size_t j = 0; j < n(); ++j) row[q() + j] = A_(i, j);
            h.ineqs.push_back({std::move(row), b_[i]});
        }
        QMatrix ztp = Z_.transpose() * P_;
        for (std::size_t i = 0; i < r(); ++i) {
            QVector row(d);
            for (std::size_t j = 0; j < q(); ++j) row[j] = Z_(j, i);
            for (std::size_t j = 0; j < n(); ++j) row[q() + j] = -ztp(i, j);
            h.ineqs.push_back({std::move(row), Rational(0)});
        }
        return eliminate_trailing(h, n());
    }

    /// Lower image D[T] - R*: eliminate (u, v) from
    /// d_i = (Z v)_i (i < q), d_q <= b^T u, (u, v) in T.
    HRep lower_image_hrep() const {
        if (!dual_feasible_) throw InfeasibleError("dual feasible set T is empty");
        HRep t = dual_feasible_set();
        const std::size_t d = q() + t.dim;
        auto lift = [&](const Halfspace& hs) {
            QVector row(q());
            row.insert(row.end(), hs.normal.begin(), hs.normal.end());
            return Halfspace{std::move(row), hs.offset};
        };
        HRep h{d, {}, {}};
        for (const auto& hs : t.ineqs) h.ineqs.push_back(lift(hs));
        for (const auto& hs : t.eqs) h.eqs.push_back(lift(hs));
        for (std::size_t i = 0; i + 1 < q(); ++i) {
            QVector row(d);
            row[i] = 1;
            for (std::size_t k = 0; k < r(); ++k) row[q() + m() + k] = -Z_(i, k);
            h.eqs.push_back({std::move(row), Rational(0)});
        }
        QVector top(d);
        top[q() - 1] = -1;
        for (std::size_t i = 0; i < m(); ++i) top[q() + i] = b_[i];
        h.ineqs.push_back({std::move(top), Rational(0)});
        return eliminate_trailing(h, t.dim);
    }

    /// D(u, w) = (w_1, ..., w_{q-1}, b^T u).
    QVector dual_objective(const QVector& u, const QVector& w) const {
        QVector out(w.begin(), w.end() - 1);
        out.push_back(dot(b_, u));
        return out;
    }

    TransformM transform() const { return transform_M(c_); }

    /// Image point in the caller's original coordinates.
    QVector to_original(const QVector& y) const { return map_.backward(y); }

private:
    RawVlp raw_;
    QMatrix A_, P_, Z_;
    QVector b_, c_, c_raw_;
    CoordinateMap map_;
    Rational scale_ = 1;
    bool default_c_ = false;
    bool primal_feasible_ = false;
    bool dual_feasible_ = false;
};

}  // namespace polyvlp
