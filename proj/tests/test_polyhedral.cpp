#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"

using namespace polyvlp;
using oracle::qv;

namespace {

HRep box(std::size_t d, int lo, int hi) {
    HRep h{d, {}, {}};
    for (std::size_t i = 0; i < d; ++i) {
        h.ineqs.push_back({unit_vector(d, i), Rational(lo)});
        h.ineqs.push_back({-unit_vector(d, i), Rational(-hi)});
    }
    return h;
}

HRep upper_image_ex1() {
    return HRep{2,
                {{qv({0, 1}), 0}, {qv({1, 0}), 0}, {qv({1, 2}), 1}, {qv({2, 1}), 1}},
                {}};
}

HRep random_polytope(std::mt19937& rng, std::size_t d, std::size_t cuts) {
    HRep h = box(d, -2, 2);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (std::size_t i = 0; i < cuts; ++i) {
        QVector a(d);
        for (auto& x : a) x = coef(rng);
        h.ineqs.push_back({a, Rational(coef(rng) - 1)});
    }
    return h;
}

// f-vector alternating sum over nonempty faces; equals 1 for a nonempty polytope.
int euler_sum(const std::vector<Face>& faces) {
    int s = 0;
    for (const auto& f : faces) s += (f.dim % 2 == 0) ? 1 : -1;
    return s;
}

}  // namespace

TEST(Canonicalize, ScalesAndDeduplicates) {
    HRep h{1, {{qv({2}), 2}, {qv({1}), 1}, {qv({1}), 0}}, {}};
    HRep c = canonicalize(h);
    ASSERT_EQ(c.ineqs.size(), 1u);
    EXPECT_EQ(c.ineqs[0], (Halfspace{qv({1}), 1}));
    EXPECT_TRUE(c.eqs.empty());
}

TEST(Canonicalize, DetectsImplicitEqualities) {
    HRep h{2, {{qv({1, 0}), 0}, {qv({-1, 0}), 0}, {qv({0, 1}), 0}}, {}};
    auto imp = implicit_equalities(h);
    EXPECT_EQ(imp, (std::vector<std::size_t>{0, 1}));
    HRep c = canonicalize(h);
    ASSERT_EQ(c.eqs.size(), 1u);
    EXPECT_EQ(c.eqs[0], (Halfspace{qv({1, 0}), 0}));
    ASSERT_EQ(c.ineqs.size(), 1u);
    EXPECT_EQ(c.ineqs[0], (Halfspace{qv({0, 1}), 0}));
}

TEST(Canonicalize, EmptySetMarker) {
    HRep h{2, {{qv({1, 0}), 1}, {qv({-1, 0}), 0}}, {}};
    EXPECT_TRUE(canonicalize(h).is_empty_marker());
}

TEST(Canonicalize, DifferentDescriptionsSameSet) {
    HRep a = box(2, 0, 1);
    HRep b = a;
    b.ineqs.push_back({qv({1, 1}), -5});
    b.ineqs.push_back({qv({3, 0}), -1});
    std::reverse(b.ineqs.begin(), b.ineqs.end());
    EXPECT_TRUE(same_set(a, b));
    EXPECT_EQ(canonicalize(a).ineqs.size(), 4u);
}

TEST(Canonicalize, UpperImageOfWorkedInstance) {
    HRep c = canonicalize(upper_image_ex1());
    ASSERT_EQ(c.ineqs.size(), 4u);
    EXPECT_EQ(c.ineqs[0], (Halfspace{qv({0, 1}), 0}));
    EXPECT_EQ(c.ineqs[1], (Halfspace{qv({1, 0}), 0}));
    EXPECT_EQ(c.ineqs[2], (Halfspace{qv({1, Rational(1, 2)}), Rational(1, 2)}));
    EXPECT_EQ(c.ineqs[3], (Halfspace{qv({1, 2}), 1}));
}

TEST(Eliminate, SimpleProjection) {
    HRep h{2, {{qv({1, -1}), 0}, {qv({0, 1}), 0}}, {}};
    HRep p = eliminate_trailing(h, 1);
    EXPECT_EQ(p.dim, 1u);
    ASSERT_EQ(p.ineqs.size(), 1u);
    EXPECT_EQ(p.ineqs[0], (Halfspace{qv({1}), 0}));
}

TEST(Eliminate, UsesEquations) {
    // y = 2x, 0 <= x <= 1  ->  0 <= y <= 2
    HRep h{2, {{qv({0, 1}), 0}, {qv({0, -1}), -1}}, {{qv({1, -2}), 0}}};
    HRep p = eliminate_trailing(h, 1);
    EXPECT_TRUE(same_set(p, HRep{1, {{qv({1}), 0}, {qv({-1}), -2}}, {}}));
}

TEST(Eliminate, AgreesWithVertexProjection) {
    std::mt19937 rng(5);
    for (int t = 0; t < 25; ++t) {
        HRep h = random_polytope(rng, 3, 3);
        if (is_empty_set(h)) continue;
        HRep proj = eliminate_trailing(h, 1);
        GeneratorRep g = generators_of(h);
        GeneratorRep shadow;
        for (const auto& p : g.points) shadow.points.push_back(QVector(p.begin(), p.end() - 1));
        EXPECT_EQ(proj, hrep_of(shadow, 2));
    }
}

TEST(DoubleDescription, MatchesBruteForceOnRandomCones) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coef(-2, 2);
    int with_lineality = 0, nontrivial = 0;
    for (int t = 0; t < 150; ++t) {
        std::size_t d = 2 + rng() % 3;
        std::size_t k = 1 + rng() % 10;
        std::size_t e = rng() % 3 == 0 ? 1 : 0;
        std::vector<QVector> a, eq;
        for (std::size_t i = 0; i < k; ++i) {
            QVector row(d);
            for (auto& x : row) x = coef(rng);
            a.push_back(row);
        }
        for (std::size_t i = 0; i < e; ++i) {
            QVector row(d);
            for (auto& x : row) x = coef(rng);
            eq.push_back(row);
        }
        ConeGenerators dd = cone_generators(d, a, eq);
        ConeGenerators bf = oracle::brute_force_cone(d, a, eq);
        EXPECT_EQ(dd, bf);
        with_lineality += !dd.lin.empty();
        nontrivial += !dd.rays.empty();
    }
    EXPECT_GT(with_lineality, 10);
    EXPECT_GT(nontrivial, 50);
}

TEST(Generators, SquareAndRoundTrip) {
    GeneratorRep g = generators_of(box(2, 0, 1));
    EXPECT_EQ(g.points, (std::vector<QVector>{qv({0, 0}), qv({0, 1}), qv({1, 0}), qv({1, 1})}));
    EXPECT_TRUE(g.rays.empty());
    EXPECT_TRUE(g.lin.empty());

    std::mt19937 rng(6);
    for (int t = 0; t < 30; ++t) {
        HRep h = random_polytope(rng, 3, 2);
        GeneratorRep gen = generators_of(canonicalize(h));
        EXPECT_EQ(hrep_of(gen, 3), canonicalize(h));
        if (!gen.points.empty()) {
            HRep c = canonicalize(h);
            EXPECT_EQ(gen.points, oracle::brute_force_vertices(3, c.ineqs));
        }
    }
}

TEST(Generators, UnboundedWithLineality) {
    // y1 + y2 >= 0: one point on the normal line, lineality (1,-1), ray (1,1)/... normalized
    GeneratorRep g = generators_of(HRep{2, {{qv({1, 1}), 0}}, {}});
    EXPECT_EQ(g.points, std::vector<QVector>{qv({0, 0})});
    EXPECT_EQ(g.lin, std::vector<QVector>{qv({1, -1})});
    EXPECT_EQ(g.rays, std::vector<QVector>{qv({1, 1})});
}

TEST(FaceLattice, Square) {
    auto faces = Polyhedron::from_hrep(box(2, 0, 1)).face_lattice();
    ASSERT_EQ(faces.size(), 9u);
    std::map<int, int> count;
    for (const auto& f : faces) ++count[f.dim];
    EXPECT_EQ(count[0], 4);
    EXPECT_EQ(count[1], 4);
    EXPECT_EQ(count[2], 1);
    EXPECT_TRUE(faces.back().active.empty());
}

TEST(FaceLattice, Orthant) {
    Polyhedron k = Polyhedron::cone(2, std::vector<QVector>{qv({1, 0}), qv({0, 1})});
    auto faces = k.face_lattice();
    ASSERT_EQ(faces.size(), 4u);
    EXPECT_EQ(faces[0].dim, 0);
    EXPECT_EQ(faces[0].gens.points, std::vector<QVector>{qv({0, 0})});
    EXPECT_EQ(faces[1].dim, 1);
    EXPECT_EQ(faces[2].dim, 1);
    EXPECT_EQ(faces[3].dim, 2);
}

TEST(FaceLattice, UpperImageOfWorkedInstance) {
    auto faces = Polyhedron::from_hrep(upper_image_ex1()).face_lattice();
    ASSERT_EQ(faces.size(), 8u);
    int vertices = 0, edges = 0, unbounded_edges = 0;
    for (const auto& f : faces) {
        if (f.dim == 0) ++vertices;
        if (f.dim == 1) {
            ++edges;
            if (!f.gens.rays.empty()) ++unbounded_edges;
        }
    }
    EXPECT_EQ(vertices, 3);
    EXPECT_EQ(edges, 4);
    EXPECT_EQ(unbounded_edges, 2);
    EXPECT_EQ(faces.back().dim, 2);
}

TEST(FaceLattice, ScaleLimit) {
    HRep h{2, {}, {}};
    for (int i = 0; i < 13; ++i) {
        // 13 tangents of a parabola: all irredundant
        h.ineqs.push_back({qv({Rational(-2 * i), 1}), Rational(-i * i)});
    }
    EXPECT_THROW(Polyhedron::from_hrep(h).face_lattice(), ScaleError);
}

TEST(FaceLattice, GradedAndClosedUnderIntersection) {
    std::mt19937 rng(8);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        Polyhedron p = Polyhedron::from_hrep(random_polytope(rng, 3, 1 + rng() % 4));
        if (p.empty()) continue;
        auto faces = p.face_lattice();
        ++checked;
        EXPECT_EQ(euler_sum(faces), 1);
        for (const auto& f : faces) {
            EXPECT_EQ(f.dim, dimension_of(f.gens, 3));
            // every face of dimension >= 1 has at least two facets of its own
            if (f.dim >= 1) {
                int sub = 0;
                for (const auto& g : faces)
                    if (g.dim == f.dim - 1 && face_subset(g, f)) ++sub;
                EXPECT_GE(sub, 2);
            }
            for (const auto& g : faces) {
                std::vector<std::size_t> both;
                std::set_union(f.active.begin(), f.active.end(), g.active.begin(), g.active.end(),
                               std::back_inserter(both));
                Face meet = p.closure(both);
                if (meet.empty()) continue;
                bool listed = std::any_of(faces.begin(), faces.end(), [&](const Face& x) { return x.active == meet.active; });
                EXPECT_TRUE(listed);
            }
        }
        // diamond property: intervals of length two contain exactly two faces
        for (const auto& lo : faces)
            for (const auto& hi : faces) {
                if (hi.dim != lo.dim + 2 || !face_subset(lo, hi)) continue;
                int mid = 0;
                for (const auto& m : faces)
                    if (m.dim == lo.dim + 1 && face_subset(lo, m) && face_subset(m, hi)) ++mid;
                EXPECT_EQ(mid, 2);
            }
    }
    EXPECT_GT(checked, 20);
}
