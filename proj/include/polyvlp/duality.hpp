#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "polyvlp/cone_projection.hpp"
#include "polyvlp/polyhedron.hpp"
#include "polyvlp/vlp.hpp"

namespace polyvlp {

/// phi(y, w) = sum_{i<q} y_i w_i + y_q (1 - sum_{i<q} c_i w_i) - w_q.
/// Only the first q-1 entries of c are read.
inline Rational phi(const QVector& y, const QVector& w, const QVector& c) {
    const std::size_t q = y.size();
    if (w.size() != q || q == 0 || c.size() + 1 < q) throw PreconditionError("phi: dimension mismatch");
    Rational s, cw;
    for (std::size_t i = 0; i + 1 < q; ++i) {
        s += y[i] * w[i];
        cw += c[i] * w[i];
    }
    return s + y[q - 1] * (1 - cw) - w[q - 1];
}

inline std::string to_string(const GeneratorRep& g) {
    std::ostringstream os;
    auto list = [&](const char* name, const std::vector<QVector>& vs) {
        os << name << '{';
        for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << to_string(vs[i]);
        os << '}';
    };
    if (g.points.empty()) return "empty";
    list("conv", g.points);
    if (!g.rays.empty()) list(" + cone", g.rays);
    if (!g.lin.empty()) list(" + span", g.lin);
    return os.str();
}

/// a is contained in b (both faces of the same polyhedron).
inline bool face_subset(const Face& a, const Face& b) {
    if (a.empty()) return true;
    if (b.empty()) return false;
    return std::includes(a.active.begin(), a.active.end(), b.active.begin(), b.active.end());
}

/// Faces other than the empty face and the whole set, in lattice order.
inline std::vector<Face> proper_faces(const Polyhedron& b) {
    std::vector<Face> out;
    const int top = b.affine_dim();
    for (auto& f : b.face_lattice())
        if (f.dim < top) out.push_back(std::move(f));
    return out;
}

/// Point in the relative interior of a nonempty face: barycenter of its
/// vertices plus the sum of its rays.
inline QVector relative_interior_point(const Face& f) {
    if (f.empty()) throw PreconditionError("relative_interior_point: empty face");
    QVector z(f.gens.points[0].size());
    for (const auto& p : f.gens.points) z = z + p;
    z = (Rational(1) / Rational(static_cast<unsigned long>(f.gens.points.size()))) * z;
    for (const auto& r : f.gens.rays) z = z + r;
    return z;
}

// ---------------------------------------------------------------------------
// Homogenization Phi

/// Phi(B) = cl cone(B x {1}).
inline Polyhedron homogenization(const Polyhedron& b) {
    if (b.empty()) throw PreconditionError("homogenization: empty polyhedron");
    return Polyhedron::from_hrep(homogenize(b.hrep()));
}

/// Phi(F) as a face of the homogenization `hom` of F's polyhedron.
inline Face phi_map(const Face& f, const Polyhedron& hom) {
    if (f.empty()) throw PreconditionError("phi_map: empty face");
    std::vector<QVector> dirs;
    auto lift = [](QVector v, int t) {
        v.push_back(t);
        return v;
    };
    for (const auto& p : f.gens.points) dirs.push_back(lift(p, 1));
    for (const auto& r : f.gens.rays) dirs.push_back(lift(r, 0));
    for (const auto& l : f.gens.lin) dirs.push_back(lift(l, 0));
    std::vector<QVector> origin{QVector(hom.dim())};
    return hom.smallest_face_containing(origin, dirs);
}

/// Phi^{-1}(E) = p[E cap (B x {1})] as a face of B.
inline Face phi_inverse(const Face& e, const Polyhedron& b) {
    std::vector<QVector> points, dirs;
    for (const auto& r : e.gens.rays) {
        QVector z(r.begin(), r.end() - 1);
        if (sgn(r.back()) > 0) {
            points.push_back(Rational(1 / r.back()) * z);
        } else {
            dirs.push_back(std::move(z));
        }
    }
    if (points.empty()) throw PreconditionError("phi_inverse: face lies in the recession cone times {0}");
    for (const auto& l : e.gens.lin) dirs.emplace_back(l.begin(), l.end() - 1);
    return b.smallest_face_containing(points, dirs);
}

// ---------------------------------------------------------------------------
// Face correspondence Gamma between K and its polar

namespace detail {

inline std::vector<Halfspace> orthogonality_conditions(const Face& f) {
    std::vector<Halfspace> out;
    for (const auto& g : f.gens.rays) out.push_back({-g, Rational(0)});
    for (const auto& g : f.gens.lin) out.push_back({-g, Rational(0)});
    return out;
}

}  // namespace detail

/// Gamma(F) = {w in K* : w^T y = 0 for all y in F}.
inline Face gamma_map(const Face& f, const Polyhedron& kstar) {
    return kstar.face_of_valid(detail::orthogonality_conditions(f));
}

/// Gamma^{-1}(E) = {y in K : y^T w = 0 for all w in E}.
inline Face gamma_inverse(const Face& e, const Polyhedron& k) {
    return k.face_of_valid(detail::orthogonality_conditions(e));
}

// ---------------------------------------------------------------------------
// Duality map Psi

/// The objects of one instance between which the maps act: the upper image,
/// the lower image, K = Phi(upper image), K* and Phi(lower image).
class DualityContext {
public:
    explicit DualityContext(const VlpInstance& v) : c_(v.c()), q_(v.q()), m_(v.transform()) {
        upper_ = Polyhedron::from_hrep(v.upper_image_hrep());
        lower_ = Polyhedron::from_hrep(v.lower_image_hrep());
        ConeHRep gh = v.build_GH();
        k_ = Polyhedron::from_hrep(projected_hrep(gh));
        ConeGenerators dual = solve_Pstar(gh).generators();
        kstar_ = Polyhedron::from_generators(GeneratorRep{{QVector(q_ + 1)}, dual.rays, dual.lin}, q_ + 1);
        phi_lower_ = homogenization(lower_);
    }

    std::size_t q() const { return q_; }
    const QVector& c() const { return c_; }
    const TransformM& transform() const { return m_; }
    const Polyhedron& upper() const { return upper_; }
    const Polyhedron& lower() const { return lower_; }
    const Polyhedron& K() const { return k_; }
    const Polyhedron& Kstar() const { return kstar_; }
    const Polyhedron& phi_lower() const { return phi_lower_; }

    /// Psi(F*) = {y in upper : phi(y, w) = 0 for all w in F*}; each generator
    /// of F* contributes one valid inequality of the upper image.
    Face psi(const Face& fstar) const {
        std::vector<Halfspace> eqs;
        for (const auto& w : fstar.gens.points) {
            QVector a(q_);
            Rational cw;
            for (std::size_t i = 0; i + 1 < q_; ++i) {
                a[i] = w[i];
                cw += c_[i] * w[i];
            }
            a[q_ - 1] = 1 - cw;
            eqs.push_back({std::move(a), w[q_ - 1]});
        }
        auto direction = [&](const QVector& d) {
            QVector a(q_);
            Rational cd;
            for (std::size_t i = 0; i + 1 < q_; ++i) {
                a[i] = d[i];
                cd += c_[i] * d[i];
            }
            a[q_ - 1] = -cd;
            eqs.push_back({std::move(a), d[q_ - 1]});
        };
        for (const auto& d : fstar.gens.rays) direction(d);
        for (const auto& d : fstar.gens.lin) direction(d);
        return upper_.face_of_valid(eqs);
    }

    /// Psi^{-1}(F) = {w in lower : phi(y, w) = 0 for all y in F}.
    Face psi_inverse(const Face& f) const {
        std::vector<Halfspace> eqs;
        for (const auto& y : f.gens.points) {
            QVector a(q_);
            for (std::size_t i = 0; i + 1 < q_; ++i) a[i] = y[i] - y[q_ - 1] * c_[i];
            a[q_ - 1] = -1;
            eqs.push_back({std::move(a), -y[q_ - 1]});
        }
        auto direction = [&](const QVector& d) {
            QVector a(q_);
            for (std::size_t i = 0; i + 1 < q_; ++i) a[i] = d[i] - d[q_ - 1] * c_[i];
            eqs.push_back({std::move(a), -d[q_ - 1]});
        };
        for (const auto& d : f.gens.rays) direction(d);
        for (const auto& d : f.gens.lin) direction(d);
        return lower_.face_of_valid(eqs);
    }

    /// M(Phi(F*)) as a face of K*.
    Face m_phi(const Face& fstar) const {
        Face e = phi_map(fstar, phi_lower_);
        std::vector<QVector> dirs;
        for (const auto& r : e.gens.rays) dirs.push_back(m_.M * r);
        for (const auto& l : e.gens.lin) dirs.push_back(m_.M * l);
        std::vector<QVector> origin{QVector(q_ + 1)};
        return kstar_.smallest_face_containing(origin, dirs);
    }

    /// (Phi^{-1} o Gamma^{-1} o M o Phi)(F*).
    Face psi_factored(const Face& fstar) const {
        return phi_inverse(gamma_inverse(m_phi(fstar), k_), upper_);
    }

private:
    QVector c_;
    std::size_t q_;
    TransformM m_;
    Polyhedron upper_, lower_, k_, kstar_, phi_lower_;
};

// ---------------------------------------------------------------------------
// R-minimal and R*-maximal faces

enum class FaceTest { definitional, polar };

namespace detail {

/// max{t : z + t d in B} == 0.
inline bool zero_step(const Polyhedron& b, const QVector& z, const QVector& d) {
    HRep line{1, {}, {}};
    for (const auto& hs : b.hrep().ineqs) line.ineqs.push_back({QVector{dot(hs.normal, d)}, hs.offset - dot(hs.normal, z)});
    for (const auto& hs : b.hrep().eqs) line.eqs.push_back({QVector{dot(hs.normal, d)}, hs.offset - dot(hs.normal, z)});
    LpOutcome out = minimize_over(line, QVector{Rational(-1)});
    return out.status == LpStatus::optimal && sgn(*out.value) == 0;
}

}  // namespace detail

/// Proper faces of the upper image all of whose points are R-minimal,
/// R = cone{p(c)}.
inline std::vector<Face> r_minimal_faces(const DualityContext& ctx, FaceTest how = FaceTest::definitional) {
    std::vector<Face> out;
    const QVector pc = p_of(ctx.c());
    for (auto& f : proper_faces(ctx.upper())) {
        bool minimal = false;
        if (how == FaceTest::definitional) {
            minimal = detail::zero_step(ctx.upper(), relative_interior_point(f), -pc);
        } else {
            Face g = gamma_map(phi_map(f, ctx.K()), ctx.Kstar());
            for (const auto& w : g.gens.rays) minimal = minimal || sgn(dot(ctx.c(), w)) < 0;
        }
        if (minimal) out.push_back(std::move(f));
    }
    return out;
}

/// Proper faces of the lower image all of whose points are R*-maximal,
/// R* = cone{e_q}.
inline std::vector<Face> r_star_maximal_faces(const DualityContext& ctx, FaceTest how = FaceTest::definitional) {
    std::vector<Face> out;
    const std::size_t q = ctx.q();
    for (auto& f : proper_faces(ctx.lower())) {
        bool maximal = false;
        if (how == FaceTest::definitional) {
            maximal = detail::zero_step(ctx.lower(), relative_interior_point(f), unit_vector(q, q - 1));
        } else {
            // c*^T y < 0 with c* = (0, ..., 0, -1)
            Face g = gamma_inverse(ctx.m_phi(f), ctx.K());
            for (const auto& y : g.gens.rays) maximal = maximal || sgn(y.back()) > 0;
        }
        if (maximal) out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification report

struct FacePair {
    Face primal;
    Face dual;
};

struct DualityReport {
    std::size_t q = 0;
    std::vector<FacePair> pairs;  // in lattice order of the dual faces
    std::size_t comparable_pairs = 0;

    std::vector<std::string> lines() const {
        std::vector<std::string> out;
        for (const auto& p : pairs)
            out.push_back("dim(F*)=" + std::to_string(p.dual.dim) + " dim(F)=" + std::to_string(p.primal.dim) + " ok");
        out.push_back("inclusion reversed on " + std::to_string(comparable_pairs) + " comparable pairs");
        out.push_back(std::to_string(pairs.size()) + " face pairs verified");
        return out;
    }
};

namespace detail {

[[noreturn]] inline void duality_violation(const std::string& what, const Face& dual, const Face& primal) {
    throw VerificationError(what + ": F* = " + to_string(dual.gens) + ", F = " + to_string(primal.gens));
}

}  // namespace detail

/// Checks on one instance that Psi is an inclusion-reversing bijection between
/// the R*-maximal proper faces of the lower image and the R-minimal proper
/// faces of the upper image with dim F* + dim Psi(F*) = q - 1, that it agrees
/// with Phi^{-1} o Gamma^{-1} o M o Phi, and that both face characterizations
/// agree. Throws VerificationError naming the offending faces.
inline DualityReport verify_geometric_duality(const VlpInstance& v) {
    if (!v.primal_feasible()) throw InfeasibleError("feasible set S is empty");
    if (!v.dual_feasible()) throw InfeasibleError("dual feasible set T is empty");
    DualityContext ctx(v);
    const std::size_t q = v.q();
    const Face none;

    QVector image = ctx.transform().M * unit_vector(q + 1, q - 1);
    if (normalize_direction(image) != normalize_direction(-v.c_star()) || sgn(dot(image, -v.c_star())) <= 0)
        throw VerificationError("M(R* x {0}) differs from cone{-c*}");

    std::vector<Face> pmin = r_minimal_faces(ctx, FaceTest::definitional);
    std::vector<Face> dmax = r_star_maximal_faces(ctx, FaceTest::definitional);
    std::vector<Face> pmin_polar = r_minimal_faces(ctx, FaceTest::polar);
    std::vector<Face> dmax_polar = r_star_maximal_faces(ctx, FaceTest::polar);
    if (pmin != pmin_polar) throw VerificationError("R-minimal faces differ between the definitional and polar tests");
    if (dmax != dmax_polar) throw VerificationError("R*-maximal faces differ between the definitional and polar tests");

    DualityReport report;
    report.q = q;
    std::vector<bool> hit(pmin.size(), false);
    for (const auto& fstar : dmax) {
        Face f = ctx.psi(fstar);
        auto it = std::find(pmin.begin(), pmin.end(), f);
        if (it == pmin.end()) detail::duality_violation("image is not an R-minimal proper face", fstar, f);
        std::size_t idx = static_cast<std::size_t>(it - pmin.begin());
        if (hit[idx]) detail::duality_violation("two dual faces share an image", fstar, f);
        hit[idx] = true;
        if (!(ctx.psi_inverse(f) == fstar)) detail::duality_violation("inverse does not return the dual face", fstar, f);
        if (fstar.dim + f.dim != static_cast<int>(q) - 1) detail::duality_violation("dimensions do not sum to q-1", fstar, f);
        if (!(ctx.psi_factored(fstar) == f)) detail::duality_violation("factorization through K and K* differs", fstar, f);
        report.pairs.push_back({std::move(f), fstar});
    }
    for (std::size_t i = 0; i < pmin.size(); ++i) {
        if (!hit[i]) detail::duality_violation("R-minimal face without a dual face", none, pmin[i]);
        if (!(ctx.psi(ctx.psi_inverse(pmin[i])) == pmin[i]))
            detail::duality_violation("Psi o Psi^{-1} is not the identity", ctx.psi_inverse(pmin[i]), pmin[i]);
    }
    for (const auto& a : report.pairs) {
        for (const auto& b : report.pairs) {
            bool dual_sub = face_subset(a.dual, b.dual);
            bool primal_sup = face_subset(b.primal, a.primal);
            if (dual_sub != primal_sup) detail::duality_violation("inclusion is not reversed", a.dual, b.primal);
            if (dual_sub && !(a.dual == b.dual)) ++report.comparable_pairs;
        }
    }
    return report;
}

}  // namespace polyvlp
