#include <map>

#include "suite_util.hpp"

namespace lfdgf {

void SuiteReport::fail(std::string what) {
    ++failures;
    if (examples.size() < 5)
        examples.push_back(std::move(what));
}

nlohmann::json SuiteReport::to_json() const {
    return {{"suite", name},       {"passed", passed()},   {"instances", instances},
            {"required", required}, {"failures", failures}, {"skipped", skipped},
            {"examples", examples}, {"stats", stats},       {"seconds", seconds}};
}

std::vector<std::string> suite_names() {
    return {"tr-correctness", "tau-correctness",    "gf-equisat",      "sigma-direction",
            "setup-lemma",    "unraveling",         "distinguishing",  "roundtrip-trbullet",
            "size-accounting", "fmp-smoke"};
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, const SuiteOptions& opt) {
    using Fn = SuiteReport (*)(std::uint64_t, const SuiteOptions&);
    static const std::map<std::string, Fn> table{
        {"tr-correctness", suite::tr_correctness},
        {"tau-correctness", suite::tau_correctness},
        {"gf-equisat", suite::gf_equisat},
        {"sigma-direction", suite::sigma_direction},
        {"setup-lemma", suite::setup_lemma},
        {"unraveling", suite::unraveling},
        {"distinguishing", suite::distinguishing},
        {"roundtrip-trbullet", suite::roundtrip_trbullet},
        {"size-accounting", suite::size_accounting},
        {"fmp-smoke", suite::fmp_smoke},
    };
    auto it = table.find(name);
    if (it == table.end())
        throw InputError("unknown suite '" + name + "'");
    suite::Timer timer;
    SuiteReport rep = it->second(seed, opt);
    rep.name = name;
    rep.seconds = timer.seconds();
    return rep;
}

namespace suite {

namespace {

// Every formula of exactly `size` nodes over a one-variable signature with
// a unary P.
std::vector<Lfd> small_formulas(const Signature& sig, int size) {
    if (size == 1) {
        std::vector<Lfd> out{lfd::atom("P", {0})};
        for (VarSet v = 0; v <= sig.all(); ++v)
            for (Var u = 0; u < sig.k(); ++u)
                out.push_back(lfd::dep(v, u));
        return out;
    }
    std::vector<Lfd> out;
    for (const auto& f : small_formulas(sig, size - 1)) {
        out.push_back(lfd::neg(f));
        for (VarSet v = 0; v <= sig.all(); ++v)
            out.push_back(lfd::exists(v, f));
    }
    for (int left = 1; left + 1 < size; ++left)
        for (const auto& a : small_formulas(sig, left))
            for (const auto& b : small_formulas(sig, size - 1 - left))
                out.push_back(lfd::conj(a, b));
    return out;
}

// All dependence models over {P/1}, one variable, domain <= 2.
std::vector<DependenceModel> tiny_models(const Signature& sig) {
    std::vector<DependenceModel> out;
    for (int d = 1; d <= 2; ++d)
        for (int p = 0; p < (1 << d); ++p)
            for (int team = 1; team < (1 << d); ++team) {
                StandardModel m;
                for (int e = 0; e < d; ++e)
                    m.domain.push_back(element_name(e));
                m.relations["P"] = Relation{1, {}};
                for (int e = 0; e < d; ++e)
                    if ((p >> e) & 1)
                        m.add("P", {e});
                std::vector<Assignment> members;
                for (int e = 0; e < d; ++e)
                    if ((team >> e) & 1)
                        members.push_back({e});
                out.emplace_back(m, sig.vars(), members);
            }
    return out;
}

bool tr_agrees(SuiteReport& rep, const DependenceModel& m, const Lfd& psi, const Signature& sig) {
    const StandardModel hat = to_standard_Tinv(m);
    const Fo phi = fo::conj(tr(psi, sig), team_atom(sig));
    LfdEvaluator ev(m);
    for (std::size_t i = 0; i < m.team.size(); ++i) {
        const bool lhs = ev.eval(static_cast<int>(i), psi);
        const bool rhs = eval_fo(hat, fo_assignment(sig, m.team[i]), phi);
        if (lhs != rhs) {
            rep.fail(print(psi, sig) + " on " + to_json(m).dump());
            return false;
        }
    }
    return true;
}

} // namespace

SuiteReport tr_correctness(std::uint64_t seed, const SuiteOptions& opt) {
    SuiteReport rep;
    rep.required = opt.instances;
    Rng rng(seed);
    for (std::size_t n = 0; n < opt.instances; ++n) {
        const Signature sig = corpus_signature(pick_k(rng, 1, 3));
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const Lfd psi = random_lfd(rng, sig, {10, 3, true});
        tr_agrees(rep, m, psi, sig);
        ++rep.instances;
    }
    // Exhaustive: all formulas of size <= 3 on all tiny models.
    const Signature tiny({{"P", 1}}, {"x"});
    std::size_t exhaustive = 0;
    for (const auto& m : tiny_models(tiny))
        for (int size = 1; size <= 3; ++size)
            for (const auto& psi : small_formulas(tiny, size)) {
                tr_agrees(rep, m, psi, tiny);
                ++exhaustive;
            }
    rep.instances += exhaustive;
    rep.stats["exhaustive"] = exhaustive;
    return rep;
}

SuiteReport tau_correctness(std::uint64_t seed, const SuiteOptions& opt) {
    SuiteReport rep;
    rep.required = opt.instances;
    Rng rng(seed);
    std::size_t pointed = 0;
    for (std::size_t n = 0; n < opt.instances; ++n) {
        const Signature sig = corpus_signature(pick_k(rng, 2, 3));
        const DependenceModel m = random_distinguished_model(rng, sig, 3, 4);
        const StandardModel g = drop_unnamed_G(m);
        std::vector<std::string> free{"a", "b"};
        free.resize(std::uniform_int_distribution<int>(0, 2)(rng));
        const Fo phi = random_gf(rng, sig, free, {7, 2});
        LfdEvaluator ev(m);
        for (const auto& [rho, t] : tau_all(phi, sig)) {
            for (std::size_t i = 0; i < m.team.size(); ++i) {
                FoAssignment s_rho;
                for (const auto& [x, v] : rho)
                    s_rho[x] = m.team[i][v];
                const bool lhs = ev.eval(static_cast<int>(i), t);
                const bool rhs = eval_fo(g, s_rho, phi);
                ++pointed;
                if (lhs != rhs)
                    rep.fail(print(phi) + " on " + to_json(m).dump());
            }
        }
        ++rep.instances;
    }
    rep.stats["pointed_checks"] = pointed;
    return rep;
}

SuiteReport distinguishing(std::uint64_t seed, const SuiteOptions& opt) {
    SuiteReport rep;
    rep.required = opt.instances;
    Rng rng(seed);
    std::size_t formulas = 0;
    for (std::size_t n = 0; n < opt.instances; ++n) {
        const Signature sig = corpus_signature(pick_k(rng, 1, 3));
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const auto d = distinguish(m);
        ++rep.instances;
        if (!is_distinguished(d.model)) {
            rep.fail("not distinguished: " + to_json(m).dump());
            continue;
        }
        if (d.model.team.size() != m.team.size())
            rep.fail("team size changed: " + to_json(m).dump());
        const auto verdict = check_dep_bisim(m, d.model, d.relation, sig);
        if (!verdict.ok) {
            rep.fail("bisimulation fails (" + verdict.clause + "): " + to_json(m).dump());
            continue;
        }
        LfdEvaluator a(m), b(d.model);
        for (int j = 0; j < 5; ++j) {
            const Lfd psi = random_lfd(rng, sig, {10, 3, true});
            for (auto [s, t] : d.relation) {
                ++formulas;
                if (a.eval(s, psi) != b.eval(t, psi))
                    rep.fail(print(psi, sig) + " separates " + to_json(m).dump());
            }
        }
    }
    rep.stats["formula_checks"] = formulas;
    return rep;
}

SuiteReport roundtrip_trbullet(std::uint64_t seed, const SuiteOptions& opt) {
    SuiteReport rep;
    rep.required = opt.instances;
    Rng rng(seed);
    std::size_t pointed = 0;
    for (std::size_t n = 0; n < opt.instances; ++n) {
        const Signature sig = corpus_signature(pick_k(rng, 1, 3));
        const DependenceModel m = random_distinguished_model(rng, sig, 3, 4);
        const Lfd xi = random_lfd(rng, sig, {8, 2, true});
        VarMap id;
        for (Var v = 0; v < sig.k(); ++v)
            id[sig.vars()[v]] = v;
        Lfd back;
        try {
            back = tau(tr_bullet(xi, sig), id, sig.expanded());
        } catch (const CapError&) {
            ++rep.skipped;
            if (rep.skipped > 10 * opt.instances)
                break;
            --n;
            continue;
        }
        LfdEvaluator ev(m);
        for (std::size_t i = 0; i < m.team.size(); ++i) {
            ++pointed;
            if (ev.eval(static_cast<int>(i), xi) != ev.eval(static_cast<int>(i), back))
                rep.fail(print(xi, sig) + " on " + to_json(m).dump());
        }
        ++rep.instances;
    }
    rep.stats["pointed_checks"] = pointed;
    return rep;
}

} // namespace suite
} // namespace lfdgf
