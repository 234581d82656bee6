#include <functional>
#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lfdgf/oracle.hpp"

namespace lfdgf {

namespace {

using Team = std::vector<std::vector<int>>;
using Facts = std::set<std::pair<std::string, std::vector<int>>>;

// Team semantics, straight from the definition. Independent of mcheck.
bool holds(const Lfd& f, const Team& team, std::size_t s, const Facts& facts) {
    auto same_on = [&](std::size_t a, std::size_t b, VarSet v) {
        for (std::size_t x = 0; x < team[a].size(); ++x)
            if (contains(v, static_cast<Var>(x)) && team[a][x] != team[b][x])
                return false;
        return true;
    };
    switch (f->kind) {
    case LfdKind::Top:
        return true;
    case LfdKind::Atom: {
        std::vector<int> t;
        for (Var v : f->args)
            t.push_back(team[s][v]);
        return facts.contains({f->rel, t});
    }
    case LfdKind::Dep:
        for (std::size_t t = 0; t < team.size(); ++t)
            if (same_on(s, t, f->vars) && team[s][f->dep] != team[t][f->dep])
                return false;
        return true;
    case LfdKind::And:
        return holds(f->lhs, team, s, facts) && holds(f->rhs, team, s, facts);
    case LfdKind::Not:
        return !holds(f->lhs, team, s, facts);
    case LfdKind::Exists:
        for (std::size_t t = 0; t < team.size(); ++t)
            if (same_on(s, t, f->vars) && holds(f->lhs, team, t, facts))
                return true;
        return false;
    }
    return false;
}

void atoms_of(const Lfd& f, std::set<std::pair<std::string, std::vector<Var>>>& out) {
    if (!f)
        return;
    if (f->kind == LfdKind::Atom)
        out.insert({f->rel, f->args});
    atoms_of(f->lhs, out);
    atoms_of(f->rhs, out);
}

// Team as sorted list of assignment codes (base-d numbers).
bool canonical(const std::vector<int>& team, int d, int k) {
    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<int> image;
        for (int code : team) {
            int out = 0, c = code, mul = 1;
            for (int x = 0; x < k; ++x) {
                out += perm[c % d] * mul;
                c /= d;
                mul *= d;
            }
            image.push_back(out);
        }
        std::sort(image.begin(), image.end());
        if (image < team)
            return false;
    }
    return true;
}

} // namespace

LfdSearch brute_sat_lfd(const Lfd& f, const Signature& sig, const LfdSearchOptions& opt) {
    LfdSearch res;
    const int k = sig.k();
    std::set<std::pair<std::string, std::vector<Var>>> atoms;
    atoms_of(f, atoms);

    for (int d = 1; d <= opt.max_dom; ++d) {
        int total = 1;
        for (int x = 0; x < k; ++x)
            total *= d;
        auto decode = [&](int code) {
            std::vector<int> a(k);
            for (int x = 0; x < k; ++x) {
                a[x] = code % d;
                code /= d;
            }
            return a;
        };
        std::vector<int> pick;
        // Combinations of assignment codes of size 1..max_team.
        std::function<bool(int)> go = [&](int start) -> bool {
            if (!pick.empty()) {
                Team team;
                std::vector<bool> used(d, false);
                for (int code : pick) {
                    team.push_back(decode(code));
                    for (int v : team.back())
                        used[v] = true;
                }
                const bool fits = !opt.symmetry ||
                                  (std::all_of(used.begin(), used.end(), [](bool b) { return b; }) &&
                                   canonical(pick, d, k));
                if (fits) {
                    ++res.teams;
                    std::vector<std::pair<std::string, std::vector<int>>> ground;
                    {
                        std::set<std::pair<std::string, std::vector<int>>> g;
                        for (const auto& [rel, args] : atoms)
                            for (const auto& s : team) {
                                std::vector<int> t;
                                for (Var v : args)
                                    t.push_back(s[v]);
                                g.insert({rel, t});
                            }
                        ground.assign(g.begin(), g.end());
                    }
                    if (ground.size() > opt.max_atoms) {
                        ++res.skipped;
                    } else {
                        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground.size());
                             ++mask) {
                            Facts facts;
                            for (std::size_t i = 0; i < ground.size(); ++i)
                                if ((mask >> i) & 1u)
                                    facts.insert(ground[i]);
                            for (std::size_t s = 0; s < team.size(); ++s)
                                if (holds(f, team, s, facts)) {
                                    StandardModel m;
                                    for (int i = 0; i < d; ++i)
                                        m.domain.push_back(element_name(i));
                                    for (const auto& [name, arity] : sig.relations())
                                        m.relations[name] = Relation{arity, {}};
                                    for (const auto& [rel, t] : facts)
                                        m.add(rel, t);
                                    Assignment chosen(team[s].begin(), team[s].end());
                                    std::vector<Assignment> members(team.begin(), team.end());
                                    res.found = LfdWitness{
                                        DependenceModel(std::move(m), sig.vars(), members), chosen};
                                    return true;
                                }
                        }
                    }
                }
            }
            if (static_cast<int>(pick.size()) == opt.max_team)
                return false;
            for (int code = start; code < total; ++code) {
                pick.push_back(code);
                if (go(code + 1))
                    return true;
                pick.pop_back();
            }
            return false;
        };
        if (go(0))
            return res;
    }
    return res;
}

} // namespace lfdgf
