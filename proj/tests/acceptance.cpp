// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "polyvlp/cli.hpp"

using namespace polyvlp;
using oracle::qv;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::vector<QVector> sorted(std::vector<QVector> v) {
    std::sort(v.begin(), v.end());
    return v;
}

int face_count_sum(const std::vector<Face>& faces, int lin_dim) {
    int s = 0;
    for (const auto& f : faces) s += ((f.dim - lin_dim) % 2 == 0) ? 1 : -1;
    return s;
}

Check worked_instance() {
    Check c;
    VlpInstance v = VlpInstance::create(oracle::ex1_raw());
    auto primal = std::get<VlpSolution>(extract_primal(v, solve_P(v.build_GH())));
    c.expect(sorted(primal.S_poi) == std::vector<QVector>{qv({0, 1}), qv({Rational(1, 3), Rational(1, 3)}), qv({1, 0})},
             "primal vertices differ");
    GeneratorRep upper = generators_of(v.upper_image_hrep());
    c.expect(upper.points.size() == 3, "upper image does not have 3 vertices");

    auto dual = std::get<DualVlpSolution>(extract_dual(v, solve_Pstar(v.build_GH())));
    std::vector<QVector> values;
    for (const auto& e : dual.T_poi) values.push_back(e.value);
    c.expect(sorted(values) == std::vector<QVector>{qv({0, 0}), qv({Rational(1, 3), Rational(1, 3)}),
                                                    qv({Rational(2, 3), Rational(1, 3)}), qv({1, 0})},
             "dual vertices differ");
    GeneratorRep lower = generators_of(v.lower_image_hrep());
    c.expect(lower.points.size() == 4, "lower image does not have 4 vertices");
    return c;
}

Check duality_on_worked_instance() {
    Check c;
    VlpInstance v = VlpInstance::create(oracle::ex1_raw());
    DualityReport r = verify_geometric_duality(v);
    c.expect(r.pairs.size() == 7, "expected 7 face pairs, got " + std::to_string(r.pairs.size()));
    for (const auto& pair : r.pairs)
        c.expect(pair.primal.dim + pair.dual.dim == static_cast<int>(v.q()) - 1, "dimension sum is not q-1");
    for (const auto& a : r.pairs)
        for (const auto& b : r.pairs)
            if (face_subset(a.dual, b.dual))
                c.expect(face_subset(b.primal, a.primal), "inclusion not reversed");
    DualityContext ctx(v);
    for (const auto& pair : r.pairs)
        c.expect(ctx.psi_factored(pair.dual) == pair.primal, "factorization differs from direct map");
    return c;
}

Check farkas_polarity() {
    Check c;
    std::mt19937 rng(2024);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        ConeHRep cone = oracle::random_cone(rng);
        bool ok = polar_check(projected_hrep(cone), solve_Pstar(cone).generators());
        c.expect(ok, "polar_check failed on random cone " + std::to_string(t));
        ++checked;
    }
    c.expect(checked >= 50, "fewer than 50 cones");
    return c;
}

Check homogenization_identities() {
    Check c;
    int checked = 0;
    bool ex1 = false, ex3 = false, ex5 = false;
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        if (!v.primal_feasible()) continue;
        ConeHRep gh = v.build_GH();
        c.expect(canonicalize(homogenize(v.upper_image_hrep())) == projected_hrep(gh), name + ": K differs");
        if (v.dual_feasible()) {
            QMatrix M = v.transform().M;
            GeneratorRep d = generators_of(v.lower_image_hrep());
            auto lift = [](QVector x, int h) {
                x.push_back(h);
                return x;
            };
            std::vector<QVector> gens, lin;
            for (const auto& p : d.points) gens.push_back(M * lift(p, 1));
            for (const auto& r : d.rays) gens.push_back(M * lift(r, 0));
            for (const auto& l : d.lin) lin.push_back(M * lift(l, 0));
            c.expect(reduce_cone_generators(v.q() + 1, gens, lin) == solve_Pstar(gh).generators(),
                     name + ": K* differs");
        }
        ex1 |= name == "ex1_worked.vlp";
        ex3 |= name == "ex3_lineality.vlp";
        ex5 |= name == "ex5_flat_cone.vlp";
        ++checked;
    }
    c.expect(checked >= 20, "fewer than 20 instances");
    c.expect(ex1 && ex3 && ex5, "worked examples missing from corpus");
    return c;
}

Check solution_soundness() {
    Check c;
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        if (v.primal_feasible()) {
            PrimalOutcome out = extract_primal(v, solve_P(v.build_GH()));
            if (auto* s = std::get_if<VlpSolution>(&out)) {
                for (const auto& x : s->S_poi) c.expect(verify_minimizer(v, x, false), name + ": minimizer");
                for (const auto& x : s->S_dir) c.expect(verify_minimizer(v, x, true), name + ": direction");
                for (const auto& x : s->S_lin) {
                    c.expect(verify_minimizer(v, x, true) && verify_minimizer(v, -x, true), name + ": lineality");
                }
                c.expect(verify_infimizer(v, *s), name + ": infimizer");
            } else {
                c.expect(verify_certificate(v, std::get<NoSolutionCertificate>(out)), name + ": certificate");
            }
        }
        if (v.dual_feasible()) {
            DualOutcome out = extract_dual(v, solve_Pstar(v.build_GH()));
            if (auto* s = std::get_if<DualVlpSolution>(&out)) {
                for (const auto& e : s->T_poi) c.expect(verify_maximizer(v, e, false), name + ": maximizer");
                for (const auto& e : s->T_dir) c.expect(verify_maximizer(v, e, true), name + ": dual direction");
                for (const auto& e : s->T_lin) c.expect(verify_maximizer(v, e, true), name + ": dual lineality");
                c.expect(verify_supremizer(v, *s), name + ": supremizer");
            } else {
                c.expect(verify_certificate(v, std::get<NoSolutionCertificate>(out)), name + ": dual certificate");
            }
        }
    }

    VlpInstance ex4 = VlpInstance::create(oracle::load_vlp("ex4_nosolution.vlp"));
    PrimalOutcome out = extract_primal(ex4, solve_P(ex4.build_GH()));
    const auto* cert = std::get_if<NoSolutionCertificate>(&out);
    c.expect(cert != nullptr, "ex4: no certificate produced");
    if (cert) {
        c.expect(verify_certificate(ex4, *cert), "ex4: certificate rejected");
        // independent check: the image contains the whole line through each
        // generating point along the witness
        GeneratorRep g = generators_of(ex4.upper_image_hrep());
        c.expect(!g.lin.empty(), "ex4: upper image has no lineality");
        HRep upper = ex4.upper_image_hrep();
        for (const auto& y : g.points)
            for (int t : {-50, 50})
                c.expect(satisfies(upper, y + Rational(t) * cert->witness), "ex4: witness leaves the image");
    }
    return c;
}

Check algorithm_equivalence() {
    Check c;
    std::vector<std::string> files = oracle::instance_files(".vlp");
    for (const auto& f : oracle::instance_files(".cone")) files.push_back(f);
    int compared = 0;
    for (const auto& f : files) {
        std::vector<std::string> commands{"project", "polar"};
        if (f.ends_with(".vlp")) commands.insert(commands.end(), {"solve", "solve-dual"});
        for (const auto& cmd : commands)
            for (const char* output : {"text", "json"}) {
                std::ostringstream dd_out, dd_err, bn_out, bn_err;
                std::string path = oracle::instance_path(f);
                int a = cli::run({cmd, path, "--algorithm", "dd", "--output", output}, dd_out, dd_err);
                int b = cli::run({cmd, path, "--algorithm", "benson", "--output", output}, bn_out, bn_err);
                c.expect(a == b && dd_out.str() == bn_out.str(), cmd + " " + f + " " + output + ": outputs differ");
                ++compared;
            }
    }
    for (const char* name : {"ex2_halfplane.cone", "ex3_lineality.vlp", "ex5_flat_cone.vlp"})
        c.expect(std::find(files.begin(), files.end(), name) != files.end(), std::string(name) + " missing");
    c.expect(compared > 0, "no comparisons");
    return c;
}

void lattice_checks(Check& c, const Polyhedron& b, const std::string& name) {
    std::vector<Face> faces;
    try {
        faces = b.face_lattice();
    } catch (const ScaleError&) {
        return;
    }
    if (faces.empty()) return;
    const Face& whole = *std::max_element(faces.begin(), faces.end(),
                                          [](const Face& x, const Face& y) { return x.dim < y.dim; });
    const int lin_dim = static_cast<int>(whole.gens.lin.size());
    const int expected = whole.gens.rays.empty() ? 1 : 0;
    c.expect(face_count_sum(faces, lin_dim) == expected, name + ": alternating face count");
    for (const auto& lo : faces)
        for (const auto& hi : faces) {
            if (hi.dim != lo.dim + 2 || !face_subset(lo, hi)) continue;
            int mid = 0;
            for (const auto& m : faces)
                if (m.dim == lo.dim + 1 && face_subset(lo, m) && face_subset(m, hi)) ++mid;
            c.expect(mid == 2, name + ": interval of length two does not hold two faces");
        }
}

Check brute_force_equivalence() {
    Check c;
    int micro = 0;
    for (const auto& [name, cone] : oracle::cone_corpus()) {
        if (cone.p() + cone.n() > 5) continue;
        const std::size_t d = cone.p() + cone.n();
        std::vector<QVector> rows;
        for (std::size_t i = 0; i < cone.H.rows(); ++i) {
            QVector r(d);
            for (std::size_t j = 0; j < cone.p(); ++j) r[j] = cone.H(i, j);
            for (std::size_t j = 0; j < cone.n(); ++j) r[cone.p() + j] = cone.G(i, j);
            rows.push_back(r);
        }
        c.expect(cone_generators(d, rows, {}) == oracle::brute_force_cone(d, rows, {}), name + ": lifted cone");
        HRep k = projected_hrep(cone);
        std::vector<QVector> a, e;
        for (const auto& hs : k.ineqs) a.push_back(hs.normal);
        for (const auto& hs : k.eqs) e.push_back(hs.normal);
        c.expect(solve_P(cone).generators() == oracle::brute_force_cone(cone.p(), a, e), name + ": projected cone");
        lattice_checks(c, Polyhedron::from_hrep(k), name + " K");
        ++micro;
    }
    for (const auto& [name, raw] : oracle::vlp_corpus()) {
        VlpInstance v = VlpInstance::create(raw);
        if (v.primal_feasible()) lattice_checks(c, Polyhedron::from_hrep(v.upper_image_hrep()), name + " upper");
        if (v.dual_feasible()) lattice_checks(c, Polyhedron::from_hrep(v.lower_image_hrep()), name + " lower");
    }
    c.expect(micro > 0, "no micro-scale cones in corpus");
    return c;
}

}  // namespace

int main() {
    struct Criterion {
        const char* label;
        double limit_seconds;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {"worked instance: 3 primal and 4 dual vertices, exact", 1, worked_instance},
        {"geometric duality on the worked instance: 7 pairs, exact", 1, duality_on_worked_instance},
        {"polar_check on 60 random cones, exact", 30, farkas_polarity},
        {"homogenization identities on the corpus, exact", 0, homogenization_identities},
        {"solution soundness and no-solution certificate, exact", 0, solution_soundness},
        {"benson output equals dd output byte for byte", 60, algorithm_equivalence},
        {"brute-force extreme rays and face lattice gradedness, exact", 0, brute_force_equivalence},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& cr = criteria[i];
        auto start = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.run();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.ok && cr.limit_seconds > 0 && secs >= cr.limit_seconds) {
            c.ok = false;
            c.detail = "time limit exceeded";
        }
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(3);
        line << "criterion " << i + 1 << ": " << (c.ok ? "PASS" : "FAIL") << " (" << secs << " s";
        if (cr.limit_seconds > 0) line << ", limit " << cr.limit_seconds << " s";
        line << ") " << cr.label;
        if (!c.ok) line << " -- " << c.detail;
        std::cout << line.str() << '\n';
        failures += !c.ok;
    }
    return failures == 0 ? 0 : 1;
}
