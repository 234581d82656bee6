#include "lfdgf/mcheck.hpp"

#include <algorithm>
#include <set>

namespace lfdgf {

VarSet agreement_set(const Assignment& s, const Assignment& t) {
    VarSet out = 0;
    for (std::size_t v = 0; v < s.size(); ++v)
        if (s[v] == t[v])
            out |= singleton(static_cast<Var>(v));
    return out;
}

bool eval_dep(const DependenceModel& m, int member, VarSet v, VarSet u) {
    const auto& s = m.team[member];
    for (const auto& t : m.team) {
        VarSet a = agreement_set(s, t);
        if (subset(v, a) && !subset(u, a))
            return false;
    }
    return true;
}

VarSet dep_closure(const DependenceModel& m, int member, VarSet v) {
    VarSet out = 0;
    for (Var u = 0; u < m.k(); ++u)
        if (eval_dep(m, member, v, singleton(u)))
            out |= singleton(u);
    return out;
}

LfdEvaluator::LfdEvaluator(const DependenceModel& m) : m_(m) {
    const std::size_t n = m.team.size();
    agree_.assign(n, std::vector<VarSet>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            agree_[i][j] = agreement_set(m.team[i], m.team[j]);
}

bool LfdEvaluator::eval(const Assignment& s, const Lfd& f) {
    int i = m_.member_index(s);
    if (i < 0)
        throw InputError("assignment is not a member of the team");
    return eval(i, f);
}

bool LfdEvaluator::eval(int member, const Lfd& f) {
    auto [it, fresh] = memo_.try_emplace(f.get());
    auto& slot = it->second;
    if (fresh) {
        slot.first = f;
        slot.second.assign(m_.team.size(), -1);
    }
    if (slot.second[member] >= 0)
        return slot.second[member] != 0;

    const auto& s = m_.team[member];
    const int n = static_cast<int>(m_.team.size());
    bool r = false;
    switch (f->kind) {
    case LfdKind::Top:
        r = true;
        break;
    case LfdKind::Atom: {
        Tuple t;
        t.reserve(f->args.size());
        for (Var v : f->args) {
            if (v < 0 || v >= m_.k())
                throw InputError("atom uses a variable outside V_LFD");
            t.push_back(s[v]);
        }
        auto rel = m_.base.relations.find(f->rel);
        if (rel != m_.base.relations.end() &&
            rel->second.arity != static_cast<int>(f->args.size()))
            throw InputError("arity mismatch for relation '" + f->rel + "'");
        r = m_.base.holds(f->rel, t);
        break;
    }
    case LfdKind::Dep: {
        r = true;
        for (int j = 0; j < n && r; ++j) {
            VarSet a = agree_[member][j];
            if (subset(f->vars, a) && !contains(a, f->dep))
                r = false;
        }
        break;
    }
    case LfdKind::And:
        r = eval(member, f->lhs) && eval(member, f->rhs);
        break;
    case LfdKind::Not:
        r = !eval(member, f->lhs);
        break;
    case LfdKind::Exists:
        for (int j = 0; j < n && !r; ++j)
            if (subset(f->vars, agree_[member][j]) && eval(j, f->lhs))
                r = true;
        break;
    }
    // Re-lookup: recursive calls may have rehashed the table.
    memo_.at(f.get()).second[member] = r ? 1 : 0;
    return r;
}

bool eval_lfd(const DependenceModel& m, const Assignment& s, const Lfd& f) {
    LfdEvaluator ev(m);
    return ev.eval(s, f);
}

// First-order --------------------------------------------------------------

namespace {

Elem lookup(const FoAssignment& s, const std::string& x) {
    auto it = s.find(x);
    if (it == s.end())
        throw InputError("free variable '" + x + "' is unassigned");
    return it->second;
}

bool eval_fo_rec(const StandardModel& m, FoAssignment& s, const Fo& f);

bool eval_guarded(const StandardModel& m, FoAssignment& s, const Fo& f) {
    const Fo& g = f->guard;
    auto rel = m.relations.find(g->rel);
    if (rel == m.relations.end())
        return false;
    std::set<std::string> bound(f->bound.begin(), f->bound.end());
    std::map<std::string, std::optional<Elem>> saved;
    for (const auto& y : bound) {
        auto it = s.find(y);
        saved[y] = it == s.end() ? std::nullopt : std::optional<Elem>(it->second);
    }
    std::vector<std::optional<Elem>> fixed(g->args.size());
    for (std::size_t i = 0; i < g->args.size(); ++i)
        if (!bound.contains(g->args[i]))
            fixed[i] = lookup(s, g->args[i]);

    bool result = false;
    for (const auto& t : rel->second.tuples) {
        if (t.size() != g->args.size())
            continue;
        std::map<std::string, Elem> binding;
        bool ok = true;
        for (std::size_t i = 0; i < t.size() && ok; ++i) {
            if (fixed[i]) {
                ok = *fixed[i] == t[i];
            } else {
                auto [it, fresh] = binding.emplace(g->args[i], t[i]);
                ok = fresh || it->second == t[i];
            }
        }
        if (!ok)
            continue;
        for (const auto& [y, e] : binding)
            s[y] = e;
        if (eval_fo_rec(m, s, f->lhs)) {
            result = true;
            break;
        }
    }
    for (const auto& [y, old] : saved) {
        if (old)
            s[y] = *old;
        else
            s.erase(y);
    }
    return result;
}

bool eval_unguarded(const StandardModel& m, FoAssignment& s, const Fo& f) {
    if (m.domain.empty())
        return false;
    std::map<std::string, std::optional<Elem>> saved;
    for (const auto& y : f->bound) {
        auto it = s.find(y);
        saved[y] = it == s.end() ? std::nullopt : std::optional<Elem>(it->second);
    }
    std::vector<std::string> ys(saved.size());
    std::transform(saved.begin(), saved.end(), ys.begin(), [](const auto& p) { return p.first; });
    std::vector<Elem> vals(ys.size(), 0);
    const Elem d = static_cast<Elem>(m.size());
    bool result = false;
    while (true) {
        for (std::size_t i = 0; i < ys.size(); ++i)
            s[ys[i]] = vals[i];
        if (eval_fo_rec(m, s, f->lhs)) {
            result = true;
            break;
        }
        int i = static_cast<int>(ys.size()) - 1;
        while (i >= 0 && vals[i] + 1 == d)
            vals[i--] = 0;
        if (i < 0)
            break;
        ++vals[i];
    }
    for (const auto& [y, old] : saved) {
        if (old)
            s[y] = *old;
        else
            s.erase(y);
    }
    return result;
}

bool eval_fo_rec(const StandardModel& m, FoAssignment& s, const Fo& f) {
    switch (f->kind) {
    case FoKind::Top:
        return true;
    case FoKind::Atom: {
        Tuple t;
        t.reserve(f->args.size());
        for (const auto& x : f->args)
            t.push_back(lookup(s, x));
        return m.holds(f->rel, t);
    }
    case FoKind::Eq:
        return lookup(s, f->args[0]) == lookup(s, f->args[1]);
    case FoKind::Not:
        return !eval_fo_rec(m, s, f->lhs);
    case FoKind::And:
        return eval_fo_rec(m, s, f->lhs) && eval_fo_rec(m, s, f->rhs);
    case FoKind::Exists:
        return f->guard ? eval_guarded(m, s, f) : eval_unguarded(m, s, f);
    }
    return false;
}

} // namespace

bool eval_fo(const StandardModel& m, const FoAssignment& s, const Fo& f) {
    FoAssignment scratch = s;
    return eval_fo_rec(m, scratch, f);
}

// Dependence bisimulations ---------------------------------------------------

namespace {

struct BisimContext {
    const DependenceModel& a;
    const DependenceModel& b;
    const Signature& sig;
    std::vector<std::vector<VarSet>> closure_a, closure_b; // [member][V]

    BisimContext(const DependenceModel& a_, const DependenceModel& b_, const Signature& s)
        : a(a_), b(b_), sig(s) {
        auto table = [&](const DependenceModel& m) {
            std::vector<std::vector<VarSet>> out(m.team.size());
            for (std::size_t i = 0; i < m.team.size(); ++i)
                for (VarSet v = 0; v <= sig.all(); ++v)
                    out[i].push_back(dep_closure(m, static_cast<int>(i), v));
            return out;
        };
        closure_a = table(a);
        closure_b = table(b);
    }

    bool atom_harmony(int i, int j, std::string* why) const {
        const auto& s = a.team[i];
        const auto& t = b.team[j];
        for (const auto& [name, arity] : sig.relations()) {
            std::vector<int> us(arity, 0);
            while (true) {
                Tuple x, y;
                for (int u : us) {
                    x.push_back(s[u]);
                    y.push_back(t[u]);
                }
                if (a.base.holds(name, x) != b.base.holds(name, y)) {
                    if (why)
                        *why = "relation " + name + " disagrees";
                    return false;
                }
                int p = arity - 1;
                while (p >= 0 && us[p] + 1 == sig.k())
                    us[p--] = 0;
                if (p < 0)
                    break;
                ++us[p];
            }
        }
        return true;
    }

    // forth from (i,j): every t in a has a partner t' in b.
    bool forth(int i, int j, const std::vector<std::vector<bool>>& z) const {
        for (std::size_t t = 0; t < a.team.size(); ++t) {
            VarSet ag = agreement_set(a.team[i], a.team[t]);
            if (closure_b[j][ag] != ag)
                return false;
            bool found = false;
            for (std::size_t t2 = 0; t2 < b.team.size() && !found; ++t2)
                found = z[t][t2] && subset(ag, agreement_set(b.team[j], b.team[t2]));
            if (!found)
                return false;
        }
        return true;
    }

    bool back(int i, int j, const std::vector<std::vector<bool>>& z) const {
        for (std::size_t t2 = 0; t2 < b.team.size(); ++t2) {
            VarSet ag = agreement_set(b.team[j], b.team[t2]);
            if (closure_a[i][ag] != ag)
                return false;
            bool found = false;
            for (std::size_t t = 0; t < a.team.size() && !found; ++t)
                found = z[t][t2] && subset(ag, agreement_set(a.team[i], a.team[t]));
            if (!found)
                return false;
        }
        return true;
    }
};

} // namespace

BisimVerdict check_dep_bisim(const DependenceModel& a, const DependenceModel& b,
                             const BisimRelation& z, const Signature& sig) {
    BisimContext ctx(a, b, sig);
    std::vector<std::vector<bool>> in(a.team.size(), std::vector<bool>(b.team.size(), false));
    std::vector<bool> dom(a.team.size(), false), cod(b.team.size(), false);
    for (auto [i, j] : z) {
        if (i < 0 || j < 0 || i >= static_cast<int>(a.team.size()) ||
            j >= static_cast<int>(b.team.size()))
            return {false, "total", {i, j}, "pair outside the teams"};
        in[i][j] = dom[i] = cod[j] = true;
    }
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (!dom[i])
            return {false, "total", {static_cast<int>(i), -1}, "left member unrelated"};
    for (std::size_t j = 0; j < cod.size(); ++j)
        if (!cod[j])
            return {false, "total", {-1, static_cast<int>(j)}, "right member unrelated"};
    for (auto [i, j] : z) {
        std::string why;
        if (!ctx.atom_harmony(i, j, &why))
            return {false, "atom", {i, j}, why};
        if (!ctx.forth(i, j, in))
            return {false, "forth", {i, j}, ""};
        if (!ctx.back(i, j, in))
            return {false, "back", {i, j}, ""};
    }
    return {};
}

std::optional<BisimRelation> greatest_dep_bisim(const DependenceModel& a,
                                                const DependenceModel& b, const Signature& sig) {
    BisimContext ctx(a, b, sig);
    const std::size_t n = a.team.size(), m = b.team.size();
    std::vector<std::vector<bool>> z(n, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            z[i][j] = ctx.atom_harmony(static_cast<int>(i), static_cast<int>(j), nullptr);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (z[i][j] && !(ctx.forth(static_cast<int>(i), static_cast<int>(j), z) &&
                                 ctx.back(static_cast<int>(i), static_cast<int>(j), z))) {
                    z[i][j] = false;
                    changed = true;
                }
    }
    BisimRelation out;
    std::vector<bool> dom(n, false), cod(m, false);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (z[i][j]) {
                out.emplace_back(static_cast<int>(i), static_cast<int>(j));
                dom[i] = cod[j] = true;
            }
    if (std::find(dom.begin(), dom.end(), false) != dom.end() ||
        std::find(cod.begin(), cod.end(), false) != cod.end())
        return std::nullopt;
    return out;
}

} // namespace lfdgf
