// lfdgf: command-line front end. JSON on stdout; exit 0 success, 1 semantic
// negative, 2 usage error, 3 resource cap.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "lfdgf/closure.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/parse.hpp"
#include "lfdgf/suites.hpp"
#include "lfdgf/translate.hpp"
#include "lfdgf/typemodel.hpp"

using namespace lfdgf;
using namespace lfdgf::cli;

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kCap = 3;

Global g;

void emit(const json& j) {
    std::cout << (g.pretty ? j.dump(2) : j.dump()) << "\n";
}

struct FormulaArg {
    std::string file, text;

    void add(CLI::App* cmd) {
        cmd->add_option("-f,--formula", file, "formula file ('-' for stdin)");
        cmd->add_option("-e,--expr", text, "formula text");
    }
    std::string get() const {
        if (!text.empty())
            return text;
        if (file.empty())
            throw InputError("no formula: pass -f FILE or -e TEXT");
        return read_text(file);
    }
};

bool mentions_expanded(const std::string& text) {
    return text.find("R_{") != std::string::npos ||
           std::regex_search(text, std::regex(R"((^|[^A-Za-z0-9_'])A\s*\()"));
}

json vars_json(const Signature& sig, VarSet s) {
    json out = json::array();
    for (Var v : sig.members(s))
        out.push_back(sig.vars()[v]);
    return out;
}

json rho_json(const Signature& sig, const VarMap& rho) {
    json out = json::object();
    for (const auto& [x, v] : rho)
        out[x] = sig.vars()[v];
    return out;
}

TypeBits type_with_root(const TypeSpace& space, const std::vector<TypeBits>& model) {
    for (TypeBits t : model)
        if (has_bit(t, space.root()))
            return t;
    return 0;
}

// ---- parse ----

struct ParseCmd {
    FormulaArg formula;
    std::string logic = "lfd";

    int run() const {
        const std::string text = formula.get();
        if (logic == "fo") {
            const Fo f = parse_fo(text, nullptr, g.eq);
            const Guardedness gd = is_guarded(f);
            emit({{"logic", "fo"},
                  {"formula", print(f)},
                  {"free", free_vars(f)},
                  {"size", f->size},
                  {"guarded", gd == Guardedness::GF            ? "gf"
                              : gd == Guardedness::SelfGuarded ? "self-guarded"
                                                               : "no"},
                  {"equality", uses_equality(f)}});
            return kOk;
        }
        const Signature sig = resolve_signature(g, {text}, {});
        const Lfd f = parse_lfd(text, sig);
        emit({{"logic", "lfd"},
              {"formula", print(f, sig)},
              {"free", vars_json(sig, free_vars(f))},
              {"size", f->size},
              {"edepth", f->edepth},
              {"dependence", has_dep(f)}});
        return kOk;
    }
};

// ---- check ----

struct CheckCmd {
    FormulaArg formula;
    std::string model, assignment, logic = "lfd";

    int run() const {
        const std::string text = formula.get();
        const json mj = read_json(model);
        if (logic == "fo") {
            const StandardModel m = standard_model_from_json(mj);
            const Fo f = parse_fo(text, nullptr, g.eq);
            const FoAssignment s = assignment.empty() ? FoAssignment{}
                                                      : fo_assignment_from_json(json_arg(assignment), m);
            const bool truth = eval_fo(m, s, f);
            emit({{"truth", truth}});
            return truth ? kOk : kNegative;
        }
        const Signature sig = resolve_signature(g, {text}, {mj});
        const DependenceModel m = dependence_model_from_json(mj, sig);
        const Lfd f = parse_lfd(text, sig);
        if (!assignment.empty()) {
            const bool truth = eval_lfd(m, assignment_from_json(json_arg(assignment), m), f);
            emit({{"truth", truth}});
            return truth ? kOk : kNegative;
        }
        // No assignment: every team member.
        if (m.team.empty())
            throw InputError("empty team");
        LfdEvaluator ev(m);
        json members = json::array();
        bool all = true;
        for (std::size_t i = 0; i < m.team.size(); ++i) {
            const bool t = ev.eval(static_cast<int>(i), f);
            all = all && t;
            members.push_back({{"assignment", assignment_json(m, m.team[i])}, {"truth", t}});
        }
        emit({{"truth", all}, {"members", members}});
        return all ? kOk : kNegative;
    }
};

// ---- translate ----

struct TranslateCmd {
    FormulaArg formula;
    std::string dir, rho, out_dir, part = "sigma";
    bool all_rho = false;

    int run() const {
        const std::string text = formula.get();
        const Caps caps = resolve_caps(g);
        if (dir == "gf2lfd")
            return from_gf(text, caps);
        const Signature sig = resolve_signature(g, {text}, {});
        const Lfd psi = parse_lfd(text, sig);
        if (dir == "lfd2fo") {
            const Fo f = tr(psi, sig);
            emit({{"dir", dir}, {"formula", print(f)}, {"size", f->size}});
            return kOk;
        }
        Fo f;
        json extra = json::object();
        if (part == "tr-bullet") {
            f = tr_bullet(psi, sig);
        } else if (part == "setup") {
            const SetupParts p = setup_conjuncts(psi, sig, caps.closure);
            extra = {{"projection", p.projection.size()},
                     {"transitivity", p.transitivity.size()},
                     {"transfer", p.transfer.size()}};
            f = setup(psi, sig, caps.closure);
        } else if (part == "sigma") {
            f = sigma(psi, sig, caps.closure);
        } else {
            throw InputError("--part must be sigma, tr-bullet or setup");
        }
        json out = {{"dir", dir}, {"part", part}, {"formula", print(f)}, {"size", f->size},
                    {"gf", is_gf(f)}};
        if (!extra.empty())
            out["conjuncts"] = extra;
        emit(out);
        return kOk;
    }

    // x=v1,y=v2 or a JSON object.
    std::vector<std::pair<std::string, std::string>> rho_pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        if (!rho.empty() && rho.front() == '{') {
            const json j = json_arg(rho);
            for (const auto& [x, v] : j.items())
                out.emplace_back(x, v.get<std::string>());
            return out;
        }
        for (const auto& item : split_list(rho)) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw InputError("--rho: expected x=v, got '" + item + "'");
            out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        return out;
    }

    int from_gf(const std::string& text, const Caps& caps) const {
        Signature sig = resolve_signature(g, {text}, {});
        if (mentions_expanded(text))
            sig = sig.expanded();
        const Fo f = parse_fo(text, &sig, g.eq);
        if (!is_gf(f))
            throw InputError("gf2lfd needs a guarded formula");
        std::vector<std::pair<VarMap, Lfd>> results;
        if (all_rho) {
            results = tau_all(f, sig, caps.tau_nodes);
        } else {
            VarMap r;
            for (const auto& [x, v] : rho_pairs()) {
                auto idx = sig.var_index(v);
                if (!idx)
                    throw InputError("--rho: unknown LFD variable '" + v + "'");
                r[x] = *idx;
            }
            results.emplace_back(r, tau(f, r, sig, caps.tau_nodes));
        }
        json items = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& [r, phi] = results[i];
            json item = {{"rho", rho_json(sig, r)}, {"formula", print(phi, sig)}, {"size", phi->size}};
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::string name = "rho";
                for (const auto& [x, v] : r)
                    name += "_" + x + "-" + sig.vars()[v];
                const auto path = std::filesystem::path(out_dir) / (name + ".lfd");
                std::ofstream(path) << print(phi, sig) << "\n";
                item["file"] = path.string();
            }
            items.push_back(item);
        }
        emit({{"dir", dir}, {"translations", items}});
        return kOk;
    }
};

// ---- sat ----

struct SatCmd {
    FormulaArg formula;
    std::string engine = "typemodel", logic = "lfd";
    std::string cert; // "-" puts the certificate in the output
    int max_dom = 3, max_team = 4;
    int depth = 0;    // unraveling depth; 0 picks one adaptively

    void attach(json& out, const json& c) const {
        if (cert == "-") {
            out["certificate"] = c;
            return;
        }
        std::ofstream f(cert);
        if (!f)
            throw InputError("cannot write '" + cert + "'");
        f << c.dump(2) << "\n";
        out["certificate_file"] = cert;
    }

    int run() const {
        const std::string text = formula.get();
        const Caps caps = resolve_caps(g);
        if (logic == "gf")
            return run_gf(text, caps);
        const Signature sig = resolve_signature(g, {text}, {});
        const Lfd psi = parse_lfd(text, sig);
        if (engine == "typemodel")
            return typemodel(psi, sig, caps);
        if (engine == "bruteforce") {
            const LfdSearch r = brute_sat_lfd(psi, sig, {.max_dom = max_dom, .max_team = max_team});
            json out = {{"engine", engine}, {"teams", r.teams}, {"skipped", r.skipped}};
            if (!r.found) {
                out["verdict"] = "NOT_FOUND";
                out["bound"] = {{"max_dom", max_dom}, {"max_team", max_team}};
                emit(out);
                return kNegative;
            }
            out["verdict"] = "SAT";
            out["model"] = to_json(r.found->model);
            out["assignment"] = assignment_json(r.found->model, r.found->s);
            if (!cert.empty())
                attach(out, {{"model", out["model"]}, {"assignment", out["assignment"]}});
            emit(out);
            return kOk;
        }
        if (engine == "via-gf") {
            const Fo sg = sigma(psi, sig, caps.closure);
            const auto r = brute_sat_gf(sg, {.max_dom = max_dom});
            json out = {{"engine", engine}, {"sigma_size", sg->size}};
            if (!r) {
                out["verdict"] = "NOT_FOUND";
                out["bound"] = {{"max_dom", max_dom}};
                emit(out);
                return kNegative;
            }
            out["verdict"] = "SAT";
            out["gf_model"] = to_json(r->model);
            out["assignment"] = assignment_json(r->model, r->assignment);
            if (!cert.empty()) {
                const TypeSpace space(psi, sig, caps);
                Assignment s;
                for (const auto& v : sig.vars())
                    s.push_back(r->assignment.at(v));
                const HResult h =
                    H(space, r->model, s, depth > 0 ? depth : psi->edepth + 1, caps.unravel_nodes);
                attach(out, unravel_json(space, h.unraveled, psi));
            }
            emit(out);
            return kOk;
        }
        throw InputError("--engine must be typemodel, bruteforce or via-gf");
    }

    int typemodel(const Lfd& psi, const Signature& sig, const Caps& caps) const {
        const TypeSpace space(psi, sig, caps);
        const SatResult r = sat_lfd(space);
        json out = {{"engine", "typemodel"},
                    {"verdict", r.sat ? "SAT" : "UNSAT"},
                    {"closure_size", space.size()},
                    {"types_enumerated", r.types_enumerated},
                    {"profiles", r.profiles}};
        if (r.sat && !cert.empty()) {
            const TypeBits target = type_with_root(space, r.model);
            const Unraveled u =
                depth > 0 ? unravel(space, r.model, target, depth, caps.unravel_nodes)
                          : unravel_adaptive(space, r.model, target, caps.unravel_nodes);
            attach(out, {{"type_model", type_model_json(space, r.model)},
                         {"unraveling", unravel_json(space, u, psi)}});
        }
        emit(out);
        return r.sat ? kOk : kNegative;
    }

    static json unravel_json(const TypeSpace& space, const Unraveled& u, const Lfd& psi) {
        json out = {{"model", to_json(u.model)},
                    {"nodes", u.node_type.size()},
                    {"depth", u.max_depth},
                    {"truncated", u.truncated}};
        if (u.target >= 0) {
            const Assignment& s = u.values[u.target];
            out["assignment"] = assignment_json(u.model, s);
            out["certified"] = static_cast<bool>(u.pos[space.root()][u.target]);
            out["checked"] = eval_lfd(u.model, s, psi);
        }
        return out;
    }

    int run_gf(const std::string& text, const Caps& caps) const {
        Signature sig = resolve_signature(g, {text}, {});
        const Fo f = parse_fo(text, &sig, g.eq);
        if (engine == "bruteforce") {
            const auto r = brute_sat_gf(f, {.max_dom = max_dom});
            json out = {{"engine", engine}, {"verdict", r ? "SAT" : "NOT_FOUND"}};
            if (r) {
                out["model"] = to_json(r->model);
                out["assignment"] = assignment_json(r->model, r->assignment);
            } else {
                out["bound"] = {{"max_dom", max_dom}};
            }
            emit(out);
            return r ? kOk : kNegative;
        }
        if (engine != "typemodel")
            throw InputError("GF input supports --engine typemodel or bruteforce");
        // Satisfiable iff some translation is.
        json tried = json::array();
        for (const auto& [r, phi] : tau_all(f, sig, caps.tau_nodes)) {
            const TypeSpace space(phi, sig, caps);
            const SatResult res = sat_lfd(space);
            tried.push_back({{"rho", rho_json(sig, r)}, {"sat", res.sat}});
            if (res.sat) {
                emit({{"engine", engine}, {"verdict", "SAT"}, {"rho", rho_json(sig, r)},
                      {"translation", print(phi, sig)}, {"tried", tried}});
                return kOk;
            }
        }
        emit({{"engine", engine}, {"verdict", "UNSAT"}, {"tried", tried}});
        return kNegative;
    }
};

// ---- transform ----

struct TransformCmd {
    std::string op, model, assignment;

    int run() const {
        const json mj = read_json(model);
        if (op == "Tinv" || op == "G" || op == "distinguish" || op == "expand-hat") {
            const Signature sig = resolve_signature(g, {}, {mj});
            const DependenceModel m = dependence_model_from_json(mj, sig);
            if (op == "Tinv")
                emit(to_json(to_standard_Tinv(m)));
            else if (op == "G")
                emit(to_json(drop_unnamed_G(m)));
            else if (op == "expand-hat")
                emit(to_json(expand_hat(m, sig)));
            else {
                const Distinguished d = distinguish(m);
                json rel = json::array();
                for (const auto& [a, b] : d.relation)
                    rel.push_back({assignment_json(m, m.team[a]),
                                   assignment_json(d.model, d.model.team[b])});
                emit({{"model", to_json(d.model)}, {"relation", rel}});
            }
            return kOk;
        }
        const StandardModel m = standard_model_from_json(mj);
        const Signature sig = resolve_signature(g, {}, {mj});
        if (op == "T") {
            emit(to_json(from_standard_T(m, sig)));
        } else if (op == "F") {
            emit(to_json(full_F(m, sig, resolve_caps(g))));
        } else if (op == "lift") {
            const FoAssignment s =
                assignment.empty() ? FoAssignment{} : fo_assignment_from_json(json_arg(assignment), m);
            const Lifted l = lift_distinguished(m, sig, s, resolve_caps(g));
            emit({{"model", to_json(l.model)},
                  {"rho", rho_json(sig, l.rho)},
                  {"t", assignment_json(l.model, l.t)}});
        } else {
            throw InputError("unknown transform '" + op + "'");
        }
        return kOk;
    }
};

// ---- bisim ----

struct BisimCmd {
    std::string left, right, relation;

    int run() const {
        const json aj = read_json(left), bj = read_json(right);
        const Signature sig = resolve_signature(g, {}, {aj, bj});
        const DependenceModel a = dependence_model_from_json(aj, sig);
        const DependenceModel b = dependence_model_from_json(bj, sig);
        auto pair_json = [&](int i, int j) {
            return json::array({assignment_json(a, a.team[i]), assignment_json(b, b.team[j])});
        };
        if (!relation.empty()) {
            BisimRelation z;
            for (const auto& p : json_arg(relation)) {
                const int i = a.member_index(assignment_from_json(p.at(0), a));
                const int j = b.member_index(assignment_from_json(p.at(1), b));
                if (i < 0 || j < 0)
                    throw InputError("relation pair outside the teams: " + p.dump());
                z.emplace_back(i, j);
            }
            const BisimVerdict v = check_dep_bisim(a, b, z, sig);
            json out = {{"bisimulation", v.ok}};
            if (!v.ok) {
                out["clause"] = v.clause;
                out["detail"] = v.detail;
                if (v.pair.first >= 0)
                    out["pair"] = pair_json(v.pair.first, v.pair.second);
            }
            emit(out);
            return v.ok ? kOk : kNegative;
        }
        const auto z = greatest_dep_bisim(a, b, sig);
        if (!z) {
            emit({{"bisimilar", false}});
            return kNegative;
        }
        json rel = json::array();
        for (const auto& [i, j] : *z)
            rel.push_back(pair_json(i, j));
        emit({{"bisimilar", true}, {"relation", rel}});
        return kOk;
    }
};

// ---- roundtrip ----

struct RoundtripCmd {
    std::string suite = "all";
    std::uint64_t seed = 7;
    std::size_t instances = 500;

    int run() const {
        std::vector<std::string> names;
        if (suite == "all")
            names = suite_names();
        else
            names.push_back(suite);
        json reports = json::array();
        bool ok = true;
        for (const auto& name : names) {
            const SuiteReport r = run_suite(name, seed, {.instances = instances});
            ok = ok && r.passed();
            reports.push_back(r.to_json());
        }
        emit(names.size() == 1 ? reports.front() : json{{"passed", ok}, {"suites", reports}});
        return ok ? kOk : kNegative;
    }
};

// ---- oracle ----

struct OracleCmd {
    FormulaArg formula;
    std::string which;
    int min_dom = 1, max_dom = 3, max_team = 4;
    std::size_t max_atoms = 16;
    bool no_symmetry = false;
    std::uint64_t seed = 1;
    std::size_t count = 20;
    std::string out_dir = "corpus";

    // Formulas and models for offline use, with a manifest recording the seed.
    int corpus() const {
        Signature sig = g.sig.empty() && g.vars.empty()
                            ? Signature({{"P", 1}, {"Q", 2}}, {"x", "y"})
                            : resolve_signature(g, {}, {});
        if (sig.relations().empty())
            sig = Signature({{"P", 1}, {"Q", 2}}, sig.vars());
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        Rng rng(seed);
        json files = json::array();
        auto put = [&](const std::string& name, const std::string& body) {
            std::ofstream(fs::path(out_dir) / name) << body << "\n";
            files.push_back(name);
        };
        char buf[32];
        for (std::size_t i = 0; i < count; ++i) {
            std::snprintf(buf, sizeof buf, "%03zu", i);
            put(std::string("lfd_") + buf + ".lfd", print(random_lfd(rng, sig), sig));
            put(std::string("gf_") + buf + ".gf", print(random_gf(rng, sig, {})));
            put(std::string("model_") + buf + ".json",
                to_json(random_dependence_model(rng, sig, max_dom, max_team)).dump(2));
            put(std::string("dmodel_") + buf + ".json",
                to_json(random_distinguished_model(rng, sig, max_dom, max_team)).dump(2));
        }
        const json manifest = {{"seed", seed},
                               {"count", count},
                               {"signature", print_signature(sig)},
                               {"max_dom", max_dom},
                               {"max_team", max_team},
                               {"files", files}};
        std::ofstream(fs::path(out_dir) / "manifest.json") << manifest.dump(2) << "\n";
        emit({{"out_dir", out_dir}, {"files", files.size()}, {"seed", seed}});
        return kOk;
    }

    int run() const {
        if (which == "corpus")
            return corpus();
        const std::string text = formula.get();
        if (which == "sat-gf") {
            const Fo f = parse_fo(text, nullptr, g.eq);
            const auto r = brute_sat_gf(f, {.min_dom = min_dom, .max_dom = max_dom});
            json out = {{"found", r.has_value()}, {"bound", {{"min_dom", min_dom}, {"max_dom", max_dom}}}};
            if (r) {
                out["model"] = to_json(r->model);
                out["assignment"] = assignment_json(r->model, r->assignment);
            }
            emit(out);
            return r ? kOk : kNegative;
        }
        if (which != "sat-lfd")
            throw InputError("oracle must be sat-lfd or sat-gf");
        const Signature sig = resolve_signature(g, {text}, {});
        const Lfd f = parse_lfd(text, sig);
        const LfdSearch r = brute_sat_lfd(f, sig,
                                          {.max_dom = max_dom,
                                           .max_team = max_team,
                                           .symmetry = !no_symmetry,
                                           .max_atoms = max_atoms});
        json out = {{"found", r.found.has_value()},
                    {"teams", r.teams},
                    {"skipped", r.skipped},
                    {"bound", {{"max_dom", max_dom}, {"max_team", max_team}}}};
        if (r.found) {
            out["model"] = to_json(r.found->model);
            out["assignment"] = assignment_json(r.found->model, r.found->s);
        }
        emit(out);
        return r.found ? kOk : kNegative;
    }
};

void error_json(const std::string& kind, const std::string& msg) {
    std::cout << json{{"error", kind}, {"message", msg}}.dump() << "\n";
    std::cerr << "lfdgf: " << msg << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dependence logic / guarded fragment toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key = value configuration file");
    app.add_option("--vars", g.vars, "LFD variables, comma separated");
    app.add_option("--sig", g.sig, "signature file or inline P/1,Q/2");
    app.add_option("--caps", g.caps, "size caps, e.g. closure=48,unravel_nodes=200");
    app.add_flag("--eq", g.eq, "equality mode");
    app.add_flag("--pretty", g.pretty, "indented JSON");

    std::function<int()> action;

    ParseCmd parse;
    auto* c = app.add_subcommand("parse", "parse and print a formula");
    parse.formula.add(c);
    c->add_option("--logic", parse.logic)->check(CLI::IsMember({"lfd", "fo"}));
    c->callback([&] { action = [&] { return parse.run(); }; });

    CheckCmd check;
    c = app.add_subcommand("check", "model-check a formula");
    check.formula.add(c);
    c->add_option("-m,--model", check.model, "model JSON")->required();
    c->add_option("-s,--assignment", check.assignment, "assignment JSON (file or inline)");
    c->add_option("--logic", check.logic)->check(CLI::IsMember({"lfd", "fo"}));
    c->callback([&] { action = [&] { return check.run(); }; });

    TranslateCmd translate;
    c = app.add_subcommand("translate", "translate between LFD, FO and GF");
    translate.formula.add(c);
    c->add_option("--dir", translate.dir)
        ->required()
        ->check(CLI::IsMember({"lfd2fo", "lfd2gf", "gf2lfd"}));
    c->add_option("--part", translate.part, "lfd2gf output: sigma, tr-bullet or setup");
    c->add_option("--rho", translate.rho, "gf2lfd variable map, a=x,b=y");
    c->add_flag("--all-rho", translate.all_rho, "gf2lfd under every variable map");
    c->add_option("--out-dir", translate.out_dir, "write one file per translation");
    c->callback([&] { action = [&] { return translate.run(); }; });

    SatCmd sat;
    c = app.add_subcommand("sat", "decide satisfiability");
    sat.formula.add(c);
    c->add_option("--engine", sat.engine)->check(CLI::IsMember({"typemodel", "bruteforce", "via-gf"}));
    c->add_option("--logic", sat.logic)->check(CLI::IsMember({"lfd", "gf"}));
    c->add_option("--cert", sat.cert, "write the certificate to FILE, or inline without FILE")
        ->expected(0, 1)
        ->default_str("-");
    c->add_option("--depth", sat.depth, "unraveling depth");
    c->add_option("--max-dom", sat.max_dom);
    c->add_option("--max-team", sat.max_team);
    c->callback([&] { action = [&] { return sat.run(); }; });

    TransformCmd transform;
    c = app.add_subcommand("transform", "model transformations");
    c->add_option("op", transform.op)
        ->required()
        ->check(CLI::IsMember({"T", "Tinv", "F", "G", "distinguish", "lift", "expand-hat"}));
    c->add_option("-m,--model", transform.model, "model JSON")->required();
    c->add_option("-s,--assignment", transform.assignment, "assignment for lift");
    c->callback([&] { action = [&] { return transform.run(); }; });

    BisimCmd bisim;
    c = app.add_subcommand("bisim", "check or compute a dependence bisimulation");
    c->add_option("left", bisim.left)->required();
    c->add_option("right", bisim.right)->required();
    c->add_option("-z,--relation", bisim.relation, "pairs of assignments to check");
    c->callback([&] { action = [&] { return bisim.run(); }; });

    RoundtripCmd roundtrip;
    c = app.add_subcommand("roundtrip", "run a property suite");
    c->add_option("--suite", roundtrip.suite, "suite name or 'all'");
    c->add_option("--seed", roundtrip.seed);
    c->add_option("--instances", roundtrip.instances);
    c->callback([&] { action = [&] { return roundtrip.run(); }; });

    OracleCmd oracle;
    c = app.add_subcommand("oracle", "bounded brute-force model search");
    c->add_option("which", oracle.which)
        ->required()
        ->check(CLI::IsMember({"sat-lfd", "sat-gf", "corpus"}));
    oracle.formula.add(c);
    c->add_option("--min-dom", oracle.min_dom);
    c->add_option("--max-dom", oracle.max_dom);
    c->add_option("--max-team", oracle.max_team);
    c->add_option("--max-atoms", oracle.max_atoms);
    c->add_flag("--no-symmetry", oracle.no_symmetry);
    c->add_option("--seed", oracle.seed, "corpus seed");
    c->add_option("--count", oracle.count, "corpus size per kind");
    c->add_option("--out-dir", oracle.out_dir, "corpus directory");
    c->callback([&] { action = [&] { return oracle.run(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_json("usage", e.what());
        return kUsage;
    }

    try {
        return action();
    } catch (const CapError& e) {
        error_json("cap", e.what());
        return kCap;
    } catch (const InputError& e) {
        error_json("input", e.what());
        return kUsage;
    } catch (const json::exception& e) {
        error_json("input", e.what());
        return kUsage;
    } catch (const std::out_of_range& e) {
        error_json("input", e.what());
        return kUsage;
    }
}
