#pragma once

// Command-line front end. Depends on the vendored CLI11 and nlohmann/json
// single headers, so it is not part of the umbrella header.

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polyvlp/polyvlp.hpp"

namespace polyvlp::cli {

enum class Command { solve, solve_dual, project, polar, faces, verify_duality };
enum class Algorithm { dd, benson };
enum class Output { text, json };

struct RunConfig {
    Command command = Command::solve;
    std::string input;
    Algorithm algorithm = Algorithm::dd;
    Output output = Output::text;
    bool trace = false;
    std::optional<int> decimals;
};

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_no_solution = 2,
    exit_infeasible = 3,
    exit_invalid = 4,
    exit_scale = 5,
};

using nlohmann::json;

namespace detail {

inline json to_json(const QVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

class Report {
public:
    Report(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

    bool text() const { return cfg_.output == Output::text; }

    std::string vec(const QVector& v) const {
        std::string s = to_string(v);
        if (cfg_.decimals) s += " ~ " + to_decimal(v, *cfg_.decimals);
        return s;
    }

    void line(const std::string& s) {
        if (text()) out_ << s << '\n';
    }

    json& doc() { return doc_; }

    void finish() {
        if (!text()) out_ << doc_.dump(2) << '\n';
    }

private:
    const RunConfig& cfg_;
    std::ostream& out_;
    json doc_ = json::object();
};

inline ConeSolution primal_cone_solution(const ConeHRep& c, const RunConfig& cfg, std::ostream& err) {
    if (cfg.algorithm == Algorithm::dd) return solve_P(c);
    return solve_via_benson(c, cfg.trace ? CutObserver([&](const OuterApprox&, const CutRecord& r) {
        err << r.line() << '\n';
    })
                                         : CutObserver{})
        .primal;
}

inline ConeSolution dual_cone_solution(const ConeHRep& c, const RunConfig& cfg, std::ostream& err) {
    if (cfg.algorithm == Algorithm::dd) return solve_Pstar(c);
    return solve_via_benson(c, cfg.trace ? CutObserver([&](const OuterApprox&, const CutRecord& r) {
        err << r.line() << '\n';
    })
                                         : CutObserver{})
        .dual;
}

inline ConeHRep cone_of(const Instance& inst) {
    if (const auto* c = std::get_if<ConeHRep>(&inst)) {
        c->validate();
        return *c;
    }
    return VlpInstance::create(std::get<RawVlp>(inst)).build_GH();
}

inline VlpInstance vlp_of(const Instance& inst, const std::string& command) {
    if (!std::holds_alternative<RawVlp>(inst)) throw ValidationError(command + " needs a vlp instance");
    return VlpInstance::create(std::get<RawVlp>(inst));
}

inline void describe_c(Report& r, const VlpInstance& v, bool dual) {
    std::string note = v.default_c() ? " (default: sum of the extreme rays of C)" : "";
    r.line("c = " + r.vec(v.c_raw()) + note);
    r.doc()["c"] = to_json(v.c_raw());
    r.doc()["default_c"] = v.default_c();
    if (dual && !v.coordinates().is_identity()) {
        r.line("dual values are reported in normalized coordinates (c_q = 1)");
        r.doc()["normalized_coordinates"] = true;
    }
}

inline int certificate(Report& r, const NoSolutionCertificate& cert) {
    r.line("no solution exists: " + cert.condition());
    r.line("witness = " + r.vec(cert.witness));
    r.doc()["status"] = "no_solution";
    r.doc()["condition"] = cert.condition();
    r.doc()["witness"] = to_json(cert.witness);
    return exit_no_solution;
}

inline int run_solve(const Instance& inst, const RunConfig& cfg, Report& r, std::ostream& err) {
    VlpInstance v = vlp_of(inst, "solve");
    describe_c(r, v, false);
    PrimalOutcome out = extract_primal(v, primal_cone_solution(v.build_GH(), cfg, err));
    if (const auto* cert = std::get_if<NoSolutionCertificate>(&out)) return certificate(r, *cert);
    const auto& s = std::get<VlpSolution>(out);
    r.doc()["status"] = "solution";
    auto section = [&](const char* name, const std::vector<QVector>& xs) {
        r.line(std::string(name) + " (" + std::to_string(xs.size()) + "):");
        json arr = json::array();
        for (const auto& x : xs) {
            QVector px = v.raw().P * x;
            r.line("  x = " + r.vec(x) + " | Px = " + r.vec(px));
            arr.push_back({{"x", to_json(x)}, {"Px", to_json(px)}});
        }
        r.doc()[name] = arr;
    };
    section("S_poi", s.S_poi);
    section("S_dir", s.S_dir);
    section("S_lin", s.S_lin);
    return exit_ok;
}

inline int run_solve_dual(const Instance& inst, const RunConfig& cfg, Report& r, std::ostream& err) {
    VlpInstance v = vlp_of(inst, "solve-dual");
    describe_c(r, v, true);
    DualOutcome out = extract_dual(v, dual_cone_solution(v.build_GH(), cfg, err));
    if (const auto* cert = std::get_if<NoSolutionCertificate>(&out)) return certificate(r, *cert);
    const auto& s = std::get<DualVlpSolution>(out);
    r.doc()["status"] = "solution";
    auto section = [&](const char* name, const std::vector<DualObjectivePoint>& es) {
        r.line(std::string(name) + " (" + std::to_string(es.size()) + "):");
        json arr = json::array();
        for (const auto& e : es) {
            r.line("  u = " + r.vec(e.u) + " | w = " + r.vec(e.w) + " | D(u,w) = " + r.vec(e.value));
            arr.push_back({{"u", to_json(e.u)}, {"w", to_json(e.w)}, {"D", to_json(e.value)}});
        }
        r.doc()[name] = arr;
    };
    section("T_poi", s.T_poi);
    section("T_dir", s.T_dir);
    section("T_lin", s.T_lin);
    return exit_ok;
}

inline int run_cone(const Instance& inst, const RunConfig& cfg, Report& r, std::ostream& err, bool polar) {
    ConeHRep c = cone_of(inst);
    ConeSolution s = polar ? dual_cone_solution(c, cfg, err) : primal_cone_solution(c, cfg, err);
    const char* vname = polar ? "w" : "y";
    const char* wname = polar ? "u" : "x";
    r.doc()["status"] = "solution";
    auto section = [&](const char* name, const std::vector<Witnessed>& ws) {
        r.line(std::string(name) + " (" + std::to_string(ws.size()) + "):");
        json arr = json::array();
        for (const auto& w : ws) {
            r.line(std::string("  ") + vname + " = " + r.vec(w.vector) + " | " + wname + " = " + r.vec(w.witness));
            arr.push_back({{vname, to_json(w.vector)}, {wname, to_json(w.witness)}});
        }
        r.doc()[name] = arr;
    };
    section("directions", s.directions);
    section("lineality", s.lineality);
    return exit_ok;
}

inline void list_faces(Report& r, const std::string& name, const Polyhedron& b) {
    auto faces = b.face_lattice();
    r.line(name + ": " + std::to_string(faces.size()) + " nonempty faces");
    json arr = json::array();
    for (const auto& f : faces) {
        r.line("  dim " + std::to_string(f.dim) + ": " + to_string(f.gens));
        json gens = {{"points", json::array()}, {"rays", json::array()}, {"lin", json::array()}};
        for (const auto& p : f.gens.points) gens["points"].push_back(to_json(p));
        for (const auto& p : f.gens.rays) gens["rays"].push_back(to_json(p));
        for (const auto& p : f.gens.lin) gens["lin"].push_back(to_json(p));
        arr.push_back({{"dim", f.dim}, {"active", f.active}, {"generators", gens}});
    }
    r.doc()[name] = arr;
}

inline int run_faces(const Instance& inst, Report& r) {
    r.doc()["status"] = "ok";
    if (const auto* c = std::get_if<ConeHRep>(&inst)) {
        c->validate();
        ConeGenerators dual = solve_Pstar(*c).generators();
        list_faces(r, "K", Polyhedron::from_hrep(projected_hrep(*c)));
        list_faces(r, "K*", Polyhedron::from_generators(GeneratorRep{{QVector(c->p())}, dual.rays, dual.lin}, c->p()));
        return exit_ok;
    }
    VlpInstance v = vlp_of(inst, "faces");
    if (!v.primal_feasible()) throw InfeasibleError("feasible set S is empty");
    if (!v.dual_feasible()) throw InfeasibleError("dual feasible set T is empty");
    list_faces(r, "upper image", Polyhedron::from_hrep(v.upper_image_hrep()));
    list_faces(r, "lower image", Polyhedron::from_hrep(v.lower_image_hrep()));
    return exit_ok;
}

inline int run_verify(const Instance& inst, Report& r) {
    VlpInstance v = vlp_of(inst, "verify-duality");
    DualityReport rep = verify_geometric_duality(v);
    for (const auto& l : rep.lines()) r.line(l);
    json arr = json::array();
    for (const auto& p : rep.pairs)
        arr.push_back({{"dual_dim", p.dual.dim},
                       {"primal_dim", p.primal.dim},
                       {"dual_face", to_string(p.dual.gens)},
                       {"primal_face", to_string(p.primal.gens)}});
    r.doc()["status"] = "verified";
    r.doc()["pairs"] = arr;
    r.doc()["comparable_pairs"] = rep.comparable_pairs;
    return exit_ok;
}

inline int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Report r(cfg, out);
    auto fail = [&](int code, const std::string& kind, const std::string& msg) {
        if (r.text()) {
            err << kind << ": " << msg << '\n';
        } else {
            r.doc()["status"] = kind;
            r.doc()["message"] = msg;
            r.finish();
        }
        return code;
    };
    try {
        Instance inst = load_instance(cfg.input);
        int code = exit_ok;
        switch (cfg.command) {
            case Command::solve: code = run_solve(inst, cfg, r, err); break;
            case Command::solve_dual: code = run_solve_dual(inst, cfg, r, err); break;
            case Command::project: code = run_cone(inst, cfg, r, err, false); break;
            case Command::polar: code = run_cone(inst, cfg, r, err, true); break;
            case Command::faces: code = run_faces(inst, r); break;
            case Command::verify_duality: code = run_verify(inst, r); break;
        }
        r.finish();
        return code;
    } catch (const InfeasibleError& e) {
        return fail(exit_infeasible, "infeasible", e.what());
    } catch (const ParseError& e) {
        return fail(exit_invalid, "parse error", e.what());
    } catch (const ValidationError& e) {
        return fail(exit_invalid, "invalid instance", e.what());
    } catch (const ScaleError& e) {
        return fail(exit_scale, "scale limit", e.what());
    } catch (const Error& e) {
        return fail(exit_failure, "error", e.what());
    }
}

}  // namespace detail

/// Parses the command line (without the program name) and runs it.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact solver for linear vector optimization problems and polyhedral projection cones", "polyvlp"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string algorithm = "dd", output = "text";
    int decimals = -1;

    struct Subcommand {
        const char* name;
        Command cmd;
        const char* help;
    };
    const Subcommand subcommands[] = {
        {"solve", Command::solve, "solve a vlp instance"},
        {"solve-dual", Command::solve_dual, "solve the geometric dual of a vlp instance"},
        {"project", Command::project, "extreme directions and lineality of the projected cone K"},
        {"polar", Command::polar, "extreme directions and lineality of the polar cone K*"},
        {"faces", Command::faces, "face lattices of the upper and lower images (K and K* for cone input)"},
        {"verify-duality", Command::verify_duality, "check the geometric duality correspondence"},
    };
    std::vector<std::pair<CLI::App*, Command>> subs;
    for (const auto& s : subcommands) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("input", cfg.input, "instance file (vlp or cone format)")->required();
        sub->add_option("--algorithm", algorithm, "dd or benson")->check(CLI::IsMember({"dd", "benson"}));
        sub->add_option("--output", output, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--trace", cfg.trace, "print one line per cut of the outer approximation to stderr");
        sub->add_option("--decimals", decimals, "annotate rationals with rounded decimals")
            ->check(CLI::Range(0, 30));
        subs.emplace_back(sub, s.cmd);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_invalid;
    }
    for (const auto& [sub, cmd] : subs)
        if (sub->parsed()) cfg.command = cmd;
    cfg.algorithm = algorithm == "benson" ? Algorithm::benson : Algorithm::dd;
    cfg.output = output == "json" ? Output::json : Output::text;
    if (decimals >= 0) cfg.decimals = decimals;
    return detail::execute(cfg, out, err);
}

}  // namespace polyvlp::cli
