#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "morselat/dynlift.hpp"
#include "morselat/error.hpp"
#include "morselat/io.hpp"
#include "morselat/props.hpp"

using namespace morselat;

namespace {

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::ParseError:
        case ErrorKind::Unsupported:
        case ErrorKind::UnknownElement:
        case ErrorKind::NotReflexive:
        case ErrorKind::NotAntisymmetric:
        case ErrorKind::NotTransitive:
        case ErrorKind::ImageOutOfDomain:
        case ErrorKind::Io:
            return 2;
        case ErrorKind::TooLarge:
        case ErrorKind::BoundExceeded:
            return 3;
        case ErrorKind::ObstructionFound:
            return 4;
        case ErrorKind::NotASublattice:
            return 5;
        default:
            return 1;
    }
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + cfg.output);
    out << text;
}

void emit_json(const RunConfig& cfg, Json j) {
    j["config"] = cfg.to_json();
    emit(cfg, j.dump(2) + "\n");
}

bool is_grid(const Json& j) { return j.is_object() && (j.value("type", "") == "interval_map" || j.value("type", "") == "cell_map"); }

Json dual_pairs_exact(const FiniteDynSys& f, const SetLattice& att) {
    Json pairs = Json::array();
    for (Mask A : att.elements())
        pairs.push_back({{"attractor", labels_json(A, f.states)},
                         {"repeller", labels_json(dual_repeller(f, A), f.states)}});
    return pairs;
}

int cmd_analyze(const RunConfig& cfg) {
    Json in = load_json(cfg.inputs.at(0));
    if (is_grid(in)) {
        GridInput g = parse_gridmap(in, cfg.samples_per_cell, cfg.padding);
        const CellMap& F = g.F;
        auto blocks = block_lattices(F, g.seeds);
        SetLattice att = comb_att_lattice(F, g.seeds), rep = comb_rep_lattice(F, g.seeds);
        if (cfg.format == "dot") {
            emit(cfg, dot_hasse(att, "attractors"));
            return 0;
        }
        Json arrows = Json::array();
        for (Mask a : F.arrows) arrows.push_back(indices_json(a));
        auto sets = [&](const SetLattice& L) {
            Json a = Json::array();
            for (Mask m : L.elements()) a.push_back(cellset_json(F.grid, m));
            return a;
        };
        Json pairs = Json::array();
        for (Mask A : att.elements()) {
            Mask N = forward_closure(F, A);
            pairs.push_back({{"attractor", cellset_json(F.grid, A)},
                             {"repeller", cellset_json(F.grid, comb_inv_plus(F, F.all() & ~N))}});
        }
        Json j{{"kind", F.expr.empty() ? "cell_map" : "interval_map"},
               {"grid",
                {{"domain", {F.grid.lo, F.grid.hi}},
                 {"cells", F.grid.n},
                 {"expr", F.expr},
                 {"samples_per_cell", F.samples_per_cell},
                 {"padding", F.padding},
                 {"seeds", g.seed_points}}},
               {"arrows", arrows},
               {"attracting_blocks", blocks.attracting.size()},
               {"repelling_blocks", blocks.repelling.size()},
               {"att", lattice_json(att, true)},
               {"att_supports", sets(att)},
               {"rep", lattice_json(rep, true)},
               {"rep_supports", sets(rep)},
               {"dual_pairs", pairs}};
        emit_json(cfg, j);
        return 0;
    }
    FiniteDynSys f = parse_system(in);
    SetLattice att = att_lattice(f), rep = rep_lattice(f);
    if (cfg.format == "dot") {
        emit(cfg, dot_hasse(att, "attractors") + dot_hasse(rep, "repellers"));
        return 0;
    }
    Check sq = commuting_square_check(f);
    Json j{{"kind", "finite"},
           {"system", system_json(f)},
           {"att", lattice_json(att)},
           {"rep", lattice_json(rep)},
           {"anbhd_count", attracting_nbhds(f).size()},
           {"rnbhd_count", repelling_nbhds(f).size()},
           {"dual_pairs", dual_pairs_exact(f, att)},
           {"commuting_square", {{"ok", sq.ok}, {"detail", sq.what}}}};
    emit_json(cfg, j);
    return 0;
}

std::vector<Mask> sorted_family(std::vector<Mask> v) {
    std::sort(v.begin(), v.end(), canon_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

int cmd_lift(const RunConfig& cfg, bool direct) {
    Json in = load_json(cfg.inputs.at(0));
    Json sub = load_json(cfg.inputs.at(1));
    std::string side = sub.value("side", "repeller");
    if (side != "repeller" && side != "attractor")
        throw Error(ErrorKind::ParseError, "side must be 'repeller' or 'attractor'");
    if (!sub.contains("elements")) throw Error(ErrorKind::ParseError, "missing field 'elements'");
    Json out;
    if (is_grid(in)) {
        GridInput g = parse_gridmap(in, cfg.samples_per_cell, cfg.padding);
        const CellMap& F = g.F;
        auto labels = F.grid.labels();
        std::vector<Mask> fam;
        for (auto& e : sub.at("elements")) fam.push_back(parse_labels(e, labels));
        fam = sorted_family(fam);
        SetLattice whole = side == "attractor" ? comb_att_lattice(F, g.seeds) : comb_rep_lattice(F, g.seeds);
        for (Mask m : fam)
            if (!whole.contains(m))
                throw Error(ErrorKind::NotASublattice, mask_str(m, labels) + " is not in the computed lattice");
        GridLift gl = side == "attractor" ? grid_attractor_lift(F, fam, g.seeds, direct)
                                          : grid_repeller_lift(F, fam, g.seeds);
        out = certificate_json(gl.emb.P, gl.emb.downsets, gl.emb.s, gl.cert, labels, true);
        out["route"] = side == "repeller" ? "repeller" : (direct ? "attractor-direct" : "attractor-duality");
    } else {
        FiniteDynSys f = parse_system(in);
        std::vector<Mask> fam;
        for (auto& e : sub.at("elements")) fam.push_back(parse_labels(e, f.states));
        fam = sorted_family(fam);
        SetLattice whole = side == "attractor" ? att_lattice(f) : rep_lattice(f);
        for (Mask m : fam)
            if (!whole.contains(m))
                throw Error(ErrorKind::NotASublattice, mask_str(m, f.states) + " is not in the computed lattice");
        SetLattice L;
        try {
            L = SetLattice(f.states, fam, true);
        } catch (const Error& e) {
            throw Error(ErrorKind::NotASublattice, e.detail());
        }
        for (Mask a : fam)
            for (Mask b : fam)
                if (!L.contains(whole.meet(a, b)))
                    throw Error(ErrorKind::NotASublattice, "meet of " + mask_str(a, f.states) + " and " +
                                                               mask_str(b, f.states) + " missing");
        Embedding E = embedding_of(L);
        LiftCertificate cert;
        std::string route;
        if (side == "repeller") {
            LiftProblem pb = rep_lift_problem(f, E.P, E.downsets, E.s);
            cert = lift(pb);
            Violation v = verify_certificate(cert, pb);
            if (!v.ok) throw Error(ErrorKind::LiftCheckFailed, v.what);
            route = "repeller";
        } else if (direct) {
            LiftProblem pb = att_lift_problem_direct(f, E.P, E.downsets, E.s);
            cert = lift(pb);
            Violation v = verify_certificate(cert, pb);
            if (!v.ok) throw Error(ErrorKind::LiftCheckFailed, v.what);
            route = "attractor-direct";
        } else {
            cert = transport_by_duality(E.P, E.downsets, E.s, exact_duality(f)).att;
            route = "attractor-duality";
        }
        out = certificate_json(E.P, E.downsets, E.s, cert, f.states);
        out["route"] = route;
    }
    emit_json(cfg, out);
    return 0;
}

int cmd_verify(const RunConfig& cfg, const VerifyOptions& o) {
    PropReport r = run_verify(o);
    Json tags = Json::object();
    for (auto& [tag, t] : r.tags()) {
        Json e{{"checked", t.checked}, {"failed", t.failed}, {"pass", t.failed == 0}};
        if (t.failed) e["counterexample"] = t.counterexample;
        tags[tag] = e;
    }
    Json corpus{{"exhaustive", o.exhaustive},
                {"random", o.random},
                {"max_states", o.max_states},
                {"surjective_only", o.surjective_only},
                {"lifts", o.lifts}};
    emit_json(cfg, Json{{"corpus", corpus}, {"tags", tags}, {"ok", r.ok()}});
    return r.ok() ? 0 : 1;
}

int cmd_birkhoff(const RunConfig& cfg) {
    Json in = load_json(cfg.inputs.at(0));
    SetLattice L;
    Json head;
    if (in.contains("universe")) {
        L = parse_lattice(in);
        head["lattice"] = lattice_json(L);
    } else {
        Poset P = parse_poset(in);
        L = down_set_lattice(P);
        head["poset"] = poset_json(P);
        head["downsets"] = lattice_json(L);
    }
    JoinIrreducibles J = join_irreducibles(L);
    if (cfg.format == "dot") {
        emit(cfg, dot_hasse(L, "lattice") + dot_poset(J.poset, "join_irreducibles"));
        return 0;
    }
    bool round = true;
    auto OJ = all_down_sets(J.poset);
    for (Mask a : L.elements()) round = round && birkhoff_join(L, J, birkhoff_down(L, J, a)) == a;
    for (Mask d : OJ) round = round && birkhoff_down(L, J, birkhoff_join(L, J, d)) == d;
    round = round && static_cast<int>(OJ.size()) == L.size();
    BooleanRep B = booleanize(L);
    Json jd = Json::array();
    for (Mask d : OJ) jd.push_back(labels_json(d, J.poset.labels));
    head["join_irreducibles"] = poset_json(J.poset);
    head["downsets_of_join_irreducibles"] = jd;
    head["boolean_ground"] = B.ground;
    head["boolean_size"] = std::to_string(B.ground.size() < 64 ? (std::uint64_t{1} << B.ground.size()) : 0);
    head["round_trip"] = round;
    emit_json(cfg, head);
    return round ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attractor and repeller lattices, Birkhoff duality and lattice lifts"};
    app.require_subcommand(1);
    RunConfig cfg;
    int max_enum = 0;
    app.add_option("-o,--output", cfg.output, "output file (default stdout)");
    app.add_option("--format", cfg.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    app.add_option("--max-enum", max_enum, "enumeration bound (overrides MORSELAT_MAX_ENUM)")
        ->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples_per_cell, "default samples per cell for interval maps");
    app.add_option("--padding", cfg.padding, "default padding for interval maps");

    auto* analyze = app.add_subcommand("analyze", "attractor and repeller lattices of a system");
    std::string sys_file, sub_file;
    analyze->add_option("system", sys_file, "system.json or gridmap.json")->required();

    auto* lift_cmd = app.add_subcommand("lift", "lift a sublattice to neighbourhoods");
    bool direct = false;
    lift_cmd->add_option("system", sys_file, "system.json or gridmap.json")->required();
    lift_cmd->add_option("sublattice", sub_file, "sublattice.json")->required();
    lift_cmd->add_flag("--direct", direct, "attractor side without duality");

    auto* verify = app.add_subcommand("verify", "run the property suites");
    VerifyOptions vo;
    verify->add_option("--exhaustive", vo.exhaustive, "all maps on N states (0 = none)");
    verify->add_option("--random", vo.random, "random systems");
    verify->add_option("--max-states", vo.max_states, "largest random system")->check(CLI::Range(1, 12));
    verify->add_option("--seed", vo.seed, "random seed");
    verify->add_option("--workers", vo.workers, "worker threads (0 = all cores)");
    verify->add_flag("--surjective-only", vo.surjective_only, "random systems are permutations");
    bool no_lifts = false;
    verify->add_flag("--no-lifts", no_lifts, "skip the lifting suite");

    auto* birkhoff = app.add_subcommand("birkhoff", "Birkhoff representation of a poset or lattice");
    std::string bk_file;
    birkhoff->add_option("file", bk_file, "poset.json or lattice.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (max_enum > 0) setenv("MORSELAT_MAX_ENUM", std::to_string(max_enum).c_str(), 1);
    cfg.max_enum = enum_bound();
    try {
        if (*analyze) {
            cfg.command = "analyze";
            cfg.inputs = {sys_file};
            return cmd_analyze(cfg);
        }
        if (*lift_cmd) {
            cfg.command = direct ? "lift --direct" : "lift";
            cfg.inputs = {sys_file, sub_file};
            return cmd_lift(cfg, direct);
        }
        if (*verify) {
            cfg.command = "verify";
            cfg.seed = vo.seed;
            vo.lifts = !no_lifts;
            return cmd_verify(cfg, vo);
        }
        cfg.command = "birkhoff";
        cfg.inputs = {bk_file};
        return cmd_birkhoff(cfg);
    } catch (const Error& e) {
        int code = exit_code(e.kind());
        std::cerr << Json{{"error", kind_name(e.kind())}, {"detail", e.detail()}, {"exit", code}}.dump() << "\n";
        return code;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << Json{{"error", "ParseError"}, {"detail", e.what()}, {"exit", 2}}.dump() << "\n";
        return 2;
    }
}
