#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace polyvlp;
using oracle::qv;

namespace {

HRep ex1_upper() { return HRep{2, {{qv({0, 1}), 0}, {qv({1, 0}), 0}, {qv({1, 2}), 1}, {qv({2, 1}), 1}}, {}}; }

// The three top edges alone leave w1 unbounded; the vertices (0,0), (1,0)
// and the single recession direction (0,-1) also force 0 <= w1 <= 1.
HRep ex1_lower() {
    return HRep{2,
                {{qv({1, -1}), 0}, {qv({-1, -1}), -1}, {qv({0, -1}), Rational(-1, 3)}, {qv({1, 0}), 0},
                 {qv({-1, 0}), -1}},
                {}};
}

/// max t with y - t p(c) in the upper image is 0.
bool r_minimal_oracle(const VlpInstance& v, const HRep& upper, const QVector& y) {
    LpBuilder b(1);
    for (const auto& hs : upper.ineqs) b.add_ge(QVector{-dot(hs.normal, v.pc())}, hs.offset - dot(hs.normal, y));
    for (const auto& hs : upper.eqs) b.add_eq(QVector{-dot(hs.normal, v.pc())}, hs.offset - dot(hs.normal, y));
    b.maximize(qv({1}));
    LpOutcome out = lp_solve(b.build());
    return out.status == LpStatus::optimal && sgn(*out.value) == 0;
}

/// No z in the upper image and d in ri C with y = z + d: maximize a common
/// slack s <= 1 on the rows of C that are not implicit equalities.
bool relatively_c_minimal_oracle(const VlpInstance& v, const HRep& upper, const QVector& y) {
    const std::size_t q = v.q();
    HRep c = v.ordering_cone();
    auto implicit = implicit_equalities(c);
    std::set<std::size_t> imp(implicit.begin(), implicit.end());
    LpBuilder b(q + 1);
    auto with_s = [&](QVector a, Rational s) {
        a.push_back(s);
        return a;
    };
    for (std::size_t i = 0; i < c.ineqs.size(); ++i) {
        if (imp.count(i))
            b.add_eq(with_s(c.ineqs[i].normal, 0), 0);
        else
            b.add_ge(with_s(c.ineqs[i].normal, -1), 0);
    }
    // y - d in the upper image
    for (const auto& hs : upper.ineqs) b.add_ge(with_s(-hs.normal, 0), hs.offset - dot(hs.normal, y));
    for (const auto& hs : upper.eqs) b.add_eq(with_s(-hs.normal, 0), hs.offset - dot(hs.normal, y));
    b.add_le(unit_vector(q + 1, q), 1);
    b.maximize(unit_vector(q + 1, q));
    LpOutcome out = lp_solve(b.build());
    return out.status != LpStatus::optimal || sgn(*out.value) <= 0;
}

/// Points on the relative boundary: vertices, barycenters, and points pushed
/// along recession and lineality directions of proper faces. When the
/// polyhedron is not full-dimensional every point is a boundary point, so
/// the whole set is sampled as well.
std::vector<QVector> boundary_samples(const Polyhedron& p, std::size_t want) {
    std::set<QVector> out;
    auto faces = p.face_lattice();
    const bool flat = p.affine_dim() < static_cast<int>(p.dim());
    for (int round = 1; out.size() < want && round <= 40; ++round) {
        Rational t(round, 3);
        for (const auto& f : faces) {
            if (f.empty() || (f.active.empty() && !flat)) continue;
            const auto& g = f.gens;
            if (g.points.empty()) continue;
            QVector bary(p.dim());
            for (const auto& x : g.points) bary = bary + x;
            bary = Rational(1, static_cast<long>(g.points.size())) * bary;
            out.insert(bary);
            for (const auto& x : g.points) {
                out.insert(x);
                out.insert(Rational(round, round + 1) * x + Rational(1, round + 1) * bary);
            }
            for (const auto& r : g.rays) out.insert(bary + t * r);
            for (const auto& l : g.lin) {
                out.insert(bary + t * l);
                out.insert(bary - t * l);
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

TEST(BuildGH, WorkedInstance) {
    ConeHRep c = VlpInstance::create(oracle::ex1_raw()).build_GH();
    EXPECT_EQ(c.G, QMatrix::from_rows({{2, 1}, {1, 2}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}}));
    EXPECT_EQ(c.H, QMatrix::from_rows({{0, 0, -1},
                                       {0, 0, -1},
                                       {0, 0, 0},
                                       {0, 0, 0},
                                       {1, 0, 0},
                                       {0, 1, 0},
                                       {0, 0, 1}}));
}

TEST(BuildGH, NoConstraintsAndScalarObjective) {
    ConeHRep none = build_GH(QMatrix(0, 2), QVector{}, QMatrix::identity(2), QMatrix::identity(2));
    EXPECT_EQ(none.G, QMatrix::from_rows({{-1, 0}, {0, -1}, {0, 0}}));
    EXPECT_EQ(none.H, QMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));

    ConeHRep scalar = build_GH(QMatrix::from_rows({{1}}), qv({0}), QMatrix::from_rows({{1}}), QMatrix::from_rows({{1}}));
    EXPECT_EQ(scalar.G, QMatrix::from_rows({{1}, {-1}, {0}}));
    EXPECT_EQ(scalar.H, QMatrix::from_rows({{0, 0}, {1, 0}, {0, 1}}));
}

TEST(BuildGH, LastRowIsMinusCStar) {
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        ConeHRep c = v.build_GH();
        EXPECT_EQ(c.H.row(c.k() - 1), -v.c_star()) << name;
        EXPECT_TRUE(satisfies(v.ordering_cone(), v.pc())) << name;
        EXPECT_EQ(v.c()[v.q() - 1], 1) << name;
        EXPECT_EQ(v.c()[v.q()], 0) << name;
    }
}

TEST(NormalizeC, Examples) {
    NormalizedC a = normalize_c(qv({1, 1}));
    EXPECT_TRUE(a.map.is_identity());
    EXPECT_EQ(a.scale, 1);
    EXPECT_EQ(a.c, qv({1, 1}));

    NormalizedC b = normalize_c(qv({1, 0}));
    EXPECT_EQ(b.map.perm, (std::vector<std::size_t>{1, 0}));
    EXPECT_EQ(b.scale, 1);
    EXPECT_EQ(b.c, qv({0, 1}));

    NormalizedC c = normalize_c(qv({0, 3}));
    EXPECT_TRUE(c.map.is_identity());
    EXPECT_EQ(c.scale, Rational(1, 3));
    EXPECT_EQ(c.c, qv({0, 1}));

    EXPECT_THROW(normalize_c(qv({0, 0})), ValidationError);
}

TEST(NormalizeC, RoundTripAndSignFlip) {
    NormalizedC n = normalize_c(qv({2, -1}));
    EXPECT_TRUE(n.map.perm == (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(n.map.sign, (std::vector<int>{1, -1}));
    EXPECT_EQ(n.c, qv({2, 1}));
    EXPECT_GT(n.scale, 0);
    QVector y = qv({3, -7});
    EXPECT_EQ(n.map.backward(n.map.forward(y)), y);
}

TEST(VlpInstance, RejectsInvalidInput) {
    RawVlp r = oracle::ex1_raw();
    RawVlp scalar = r;
    scalar.P = QMatrix::from_rows({{1, 0}});
    scalar.Z = QMatrix::from_rows({{1}});
    scalar.c = qv({1});
    EXPECT_THROW(VlpInstance::create(scalar), ValidationError);

    RawVlp not_pointed = r;
    not_pointed.Z = QMatrix::from_rows({{1}, {1}});
    EXPECT_THROW(VlpInstance::create(not_pointed), ValidationError);

    RawVlp trivial = r;
    trivial.Z = QMatrix::from_rows({{1, -1, 0, 0}, {0, 0, 1, -1}});
    EXPECT_THROW(VlpInstance::create(trivial), ValidationError);

    RawVlp boundary = r;
    boundary.c = qv({1, 0});
    EXPECT_THROW(VlpInstance::create(boundary), ValidationError);

    RawVlp outside = r;
    outside.c = qv({1, -1});
    EXPECT_THROW(VlpInstance::create(outside), ValidationError);

    RawVlp shape = r;
    shape.b = qv({1, 1});
    EXPECT_THROW(VlpInstance::create(shape), ValidationError);
}

TEST(VlpInstance, DefaultDirectionIsFlagged) {
    RawVlp r = oracle::ex1_raw();
    r.c.reset();
    VlpInstance v = VlpInstance::create(r);
    EXPECT_TRUE(v.default_c());
    EXPECT_EQ(v.c_raw(), qv({1, 1}));
}

TEST(TransformM, BiObjective) {
    TransformM t = transform_M(qv({1, 1, 0}));
    EXPECT_EQ(t.M, QMatrix::from_rows({{-1, 0, 0}, {1, 0, -1}, {0, 1, 0}}));
    EXPECT_EQ(t.M * t.Minv, QMatrix::identity(3));
    QVector w = qv({2, 5, 7});
    EXPECT_EQ(t.Minv * w, qv({-2, 7, -7}));
    EXPECT_THROW(transform_M(qv({1, 2, 0})), PreconditionError);
}

TEST(TransformM, ThreeObjectives) {
    TransformM t = transform_M(qv({2, -1, 1, 0}));
    EXPECT_EQ(t.M, QMatrix::from_rows({{-1, 0, 0, 0}, {0, -1, 0, 0}, {2, -1, 0, -1}, {0, 0, 1, 0}}));
    EXPECT_EQ(t.M * t.Minv, QMatrix::identity(4));
}

TEST(Projections, Examples) {
    EXPECT_EQ(p_of(qv({1, 2, 3})), qv({1, 2}));
    EXPECT_EQ(p_star_of(qv({1, 2, 3})), qv({1, 3}));
    EXPECT_EQ(p_of(qv({1, 1, 0})), qv({1, 1}));
    EXPECT_EQ(p_star_of(qv({1, 2, 3, 4})), qv({1, 2, 4}));
}

TEST(UpperImage, Examples) {
    VlpInstance ex1 = VlpInstance::create(oracle::ex1_raw());
    HRep u = ex1.upper_image_hrep();
    EXPECT_EQ(u.ineqs.size(), 4u);
    EXPECT_EQ(u, canonicalize(ex1_upper()));

    VlpInstance zero = VlpInstance::create(oracle::load_vlp("zero_objective.vlp"));
    EXPECT_TRUE(same_set(zero.upper_image_hrep(), zero.ordering_cone()));

    VlpInstance ex3 = VlpInstance::create(oracle::load_vlp("ex3_lineality.vlp"));
    EXPECT_TRUE(same_set(ex3.upper_image_hrep(), HRep{2, {{qv({1, 1}), 0}}, {}}));

    VlpInstance empty = VlpInstance::create(oracle::load_vlp("ex6_dual_nosolution.vlp"));
    EXPECT_FALSE(empty.primal_feasible());
    EXPECT_THROW(empty.upper_image_hrep(), InfeasibleError);
}

TEST(LowerImage, Examples) {
    VlpInstance ex1 = VlpInstance::create(oracle::ex1_raw());
    HRep d = ex1.lower_image_hrep();
    EXPECT_TRUE(same_set(d, ex1_lower()));
    EXPECT_EQ(d.ineqs.size(), 5u);
    GeneratorRep g = generators_of(d);
    EXPECT_EQ(g.points, (std::vector<QVector>{qv({0, 0}), qv({Rational(1, 3), Rational(1, 3)}),
                                              qv({Rational(2, 3), Rational(1, 3)}), qv({1, 0})}));
    EXPECT_EQ(g.rays, std::vector<QVector>{qv({0, -1})});

    VlpInstance zero = VlpInstance::create(oracle::load_vlp("zero_rhs.vlp"));
    GeneratorRep z = generators_of(zero.lower_image_hrep());
    ASSERT_FALSE(z.points.empty());
    for (const auto& p : z.points) EXPECT_EQ(p.back(), 0);
    EXPECT_FALSE(minimize_over(zero.lower_image_hrep(), qv({0, -1})).value > 0);
}

TEST(LowerImage, MatchesParametricScan) {
    // g(w1) = max{b^T u : A^T u = (w1, 1 - w1), u >= 0} traces the top of the lower image
    VlpInstance v = VlpInstance::create(oracle::ex1_raw());
    HRep d = v.lower_image_hrep();
    for (int k = 0; k <= 12; ++k) {
        Rational w1(k, 12);
        LpBuilder b(4, VarBound::nonneg);
        b.add_eq(qv({2, 1, 1, 0}), w1);
        b.add_eq(qv({1, 2, 0, 1}), 1 - w1);
        b.maximize(qv({1, 1, 0, 0}));
        LpOutcome out = lp_solve(b.build());
        ASSERT_EQ(out.status, LpStatus::optimal);
        EXPECT_TRUE(satisfies(d, qv({w1, *out.value})));
        EXPECT_FALSE(satisfies(d, qv({w1, *out.value + Rational(1, 100)})));
    }
}

TEST(Homogenization, UpperImageGivesK) {
    int checked = 0;
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        if (!v.primal_feasible()) continue;
        HRep k = projected_hrep(v.build_GH());
        EXPECT_EQ(canonicalize(homogenize(v.upper_image_hrep())), k) << name;
        ++checked;
    }
    EXPECT_GE(checked, 20);
}

TEST(Homogenization, LowerImageGivesKStar) {
    int checked = 0;
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        if (!v.primal_feasible() || !v.dual_feasible()) continue;
        QMatrix M = v.transform().M;
        GeneratorRep d = generators_of(v.lower_image_hrep());
        std::vector<QVector> gens, lin;
        auto lift = [](QVector x, int h) {
            x.push_back(h);
            return x;
        };
        for (const auto& p : d.points) gens.push_back(M * lift(p, 1));
        for (const auto& r : d.rays) gens.push_back(M * lift(r, 0));
        for (const auto& l : d.lin) lin.push_back(M * lift(l, 0));
        EXPECT_EQ(reduce_cone_generators(v.q() + 1, gens, lin), solve_Pstar(v.build_GH()).generators()) << name;
        ++checked;
    }
    EXPECT_GE(checked, 15);
}

TEST(Minimality, RMinimalEqualsRelativelyCMinimalAtPoints) {
    int instances = 0;
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        if (!v.primal_feasible()) continue;
        HRep upper = v.upper_image_hrep();
        Polyhedron image = Polyhedron::from_hrep(upper);
        if (image.hrep().ineqs.empty() && image.hrep().eqs.empty()) continue;  // whole space: no boundary
        auto samples = boundary_samples(image, 20);
        EXPECT_GE(samples.size(), 20u) << name;
        for (const auto& y : samples) {
            bool r = r_minimal_oracle(v, upper, y);
            EXPECT_EQ(r, relatively_c_minimal_oracle(v, upper, y)) << name << " at " << to_string(y);
        }
        ++instances;
    }
    EXPECT_GE(instances, 18);
}

TEST(InstanceFormat, RoundTrip) {
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        std::string text = format_instance(raw);
        RawVlp back = std::get<RawVlp>(parse_instance_text(text));
        EXPECT_EQ(format_instance(back), text) << name;
        EXPECT_EQ(back.A, raw.A);
        EXPECT_EQ(back.c, raw.c);
    }
    ConeHRep c = std::get<ConeHRep>(load_instance(oracle::instance_path("ex2_halfplane.cone")));
    EXPECT_EQ(c.H, QMatrix::from_rows({{1, -1}}));
    EXPECT_EQ(c.G, QMatrix::from_rows({{0}}));
}

TEST(InstanceFormat, Errors) {
    EXPECT_THROW(parse_instance_text("polytope\n"), ParseError);
    EXPECT_THROW(parse_instance_text("cone\nk 1 n 1 p 2\nG\n0\nH\n1\n"), ParseError);
    EXPECT_THROW(parse_instance_text("cone\nk 1 n 1 p 1\nG\n0\nH\n1 2\n"), ParseError);
    EXPECT_THROW(parse_instance_text("cone\nk 1 n 1 p 1\nG\nx\nH\n1\n"), ParseError);
    EXPECT_THROW(parse_instance_text("cone\nk -1 n 1 p 1\n"), ParseError);
    EXPECT_THROW(load_instance("/nonexistent/file.vlp"), ParseError);
    EXPECT_NO_THROW(parse_instance_text("# comment\ncone k 1 n 0 p 1 G H 1/2 # trailing\n"));
}
