#include "lfdgf/translate.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "lfdgf/closure.hpp"

namespace lfdgf {

std::string primed(const std::string& v) { return v + "'"; }

namespace {

std::vector<std::string> names(const Signature& sig, VarSet s) {
    std::vector<std::string> out;
    for (Var v : sig.members(s))
        out.push_back(sig.vars()[v]);
    return out;
}

// exists (V_LFD \ V) . (A(v..) & body)
Fo team_exists(VarSet v, Fo body, const Signature& sig) {
    return fo::exists(names(sig, sig.all() & ~v), fo::conj(team_atom(sig), std::move(body)));
}

Fo tr_rec(const Lfd& f, const Signature& sig, bool bullet) {
    switch (f->kind) {
    case LfdKind::Top:
        return fo::top();
    case LfdKind::Atom: {
        std::vector<std::string> args;
        for (Var v : f->args)
            args.push_back(sig.vars()[v]);
        return fo::atom(f->rel, std::move(args));
    }
    case LfdKind::Dep: {
        if (bullet)
            return dep_atoms(f->vars, singleton(f->dep), sig);
        // forall v'..(A(v'..) -> (/\ v'=v -> u'=u))
        const auto& vs = sig.vars();
        std::vector<std::string> bound, pargs;
        for (const auto& v : vs) {
            bound.push_back(primed(v));
            pargs.push_back(primed(v));
        }
        std::vector<Fo> same;
        for (Var v : sig.members(f->vars))
            same.push_back(fo::eq(primed(vs[v]), vs[v]));
        Fo body = fo::implies(fo::conj_all(same), fo::eq(primed(vs[f->dep]), vs[f->dep]));
        return fo::forall(std::move(bound),
                          fo::implies(fo::atom(std::string(Signature::kTeamRelation), pargs), body));
    }
    case LfdKind::And:
        return fo::conj(tr_rec(f->lhs, sig, bullet), tr_rec(f->rhs, sig, bullet));
    case LfdKind::Not:
        return fo::neg(tr_rec(f->lhs, sig, bullet));
    case LfdKind::Exists:
        return team_exists(f->vars, tr_rec(f->lhs, sig, bullet), sig);
    }
    return fo::top();
}

Fo guarded_by_team(Fo body, const Signature& sig) {
    return fo::forall(sig.vars(), fo::implies(team_atom(sig), std::move(body)));
}

} // namespace

Fo team_atom(const Signature& sig) {
    return fo::atom(std::string(Signature::kTeamRelation), sig.vars());
}

Fo dep_atoms(VarSet v, VarSet u, const Signature& sig) {
    std::vector<Fo> parts;
    for (Var x : sig.members(u))
        parts.push_back(fo::atom(sig.dep_relation(v, singleton(x)), names(sig, v)));
    return fo::conj_all(parts);
}

Fo tr(const Lfd& f, const Signature& sig) { return tr_rec(f, sig, false); }

Fo tr_bullet(const Lfd& f, const Signature& sig) { return tr_rec(f, sig, true); }

SetupParts setup_conjuncts(const Lfd& psi, const Signature& sig, std::size_t closure_cap) {
    Closure cl(psi, sig, closure_cap);
    SetupParts out;
    const VarSet all = sig.all();
    for (VarSet v = 0; v <= all; ++v)
        out.projection.push_back(guarded_by_team(dep_atoms(v, v, sig), sig));
    for (VarSet v = 0; v <= all; ++v)
        for (VarSet u = 0; u <= all; ++u)
            for (VarSet w = 0; w <= all; ++w) {
                Fo lhs = fo::conj(dep_atoms(v, u, sig), dep_atoms(u, w, sig));
                out.transitivity.push_back(
                    guarded_by_team(fo::implies(lhs, dep_atoms(v, w, sig)), sig));
            }
    for (const Lfd& xi : cl.items()) {
        if (xi->kind == LfdKind::And || xi->kind == LfdKind::Not)
            continue;
        Fo body = tr_bullet(xi, sig);
        for (VarSet v = 0; v <= all; ++v)
            for (VarSet u = 0; u <= all; ++u) {
                Fo lhs = fo::conj(dep_atoms(v, u, sig), team_exists(v, body, sig));
                out.transfer.push_back(
                    guarded_by_team(fo::implies(lhs, team_exists(v | u, body, sig)), sig));
            }
    }
    return out;
}

Fo setup(const Lfd& psi, const Signature& sig, std::size_t closure_cap) {
    auto parts = setup_conjuncts(psi, sig, closure_cap);
    std::vector<Fo> all;
    for (auto* group : {&parts.projection, &parts.transitivity, &parts.transfer})
        all.insert(all.end(), group->begin(), group->end());
    return fo::conj_all(all);
}

Fo sigma(const Lfd& psi, const Signature& sig, std::size_t closure_cap) {
    return fo::conj(fo::conj(tr_bullet(psi, sig), setup(psi, sig, closure_cap)), team_atom(sig));
}

// tau ---------------------------------------------------------------------

namespace {

class Tau {
public:
    Tau(const Signature& sig, std::size_t cap) : sig_(sig), cap_(cap) {}

    Lfd run(const Fo& f, const VarMap& rho) {
        VarMap r;
        for (const auto& x : f->free) {
            auto it = rho.find(x);
            if (it == rho.end())
                throw InputError("rho does not map free variable '" + x + "'");
            if (it->second < 0 || it->second >= sig_.k())
                throw InputError("rho maps '" + x + "' outside V_LFD");
            r.emplace(x, it->second);
        }
        auto key = std::make_pair(f.get(), r);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        Lfd out = translate(f, r);
        if (out->size > cap_)
            throw CapError("tau output exceeds " + std::to_string(cap_) + " nodes");
        memo_.emplace(std::move(key), out);
        keep_.push_back(f);
        return out;
    }

private:
    std::vector<Var> image(const std::vector<std::string>& xs, const VarMap& r) const {
        std::vector<Var> out;
        for (const auto& x : xs)
            out.push_back(r.at(x));
        return out;
    }

    Lfd translate(const Fo& f, const VarMap& r) {
        switch (f->kind) {
        case FoKind::Top:
            return lfd::top();
        case FoKind::Eq:
            return r.at(f->args[0]) == r.at(f->args[1]) ? lfd::top() : lfd::bottom();
        case FoKind::Atom: {
            auto args = image(f->args, r);
            if (f->rel == Signature::kTeamRelation) {
                bool canonical = static_cast<int>(args.size()) == sig_.k();
                for (std::size_t i = 0; canonical && i < args.size(); ++i)
                    canonical = args[i] == static_cast<Var>(i);
                return canonical ? lfd::top() : lfd::bottom();
            }
            if (auto dv = sig_.parse_dep_relation(f->rel))
                return args == sig_.members(dv->first) ? lfd::dep_set(dv->first, dv->second, sig_.k())
                                                       : lfd::bottom();
            return lfd::atom(f->rel, std::move(args));
        }
        case FoKind::Not:
            return lfd::neg(run(f->lhs, r));
        case FoKind::And:
            return lfd::conj(run(f->lhs, r), run(f->rhs, r));
        case FoKind::Exists:
            break;
        }
        if (!f->guard)
            throw InputError("tau needs guarded quantification: " + print(f));
        VarSet outer = 0;
        for (const auto& [x, v] : r)
            outer |= singleton(v);
        // All extensions of r to the bound variables, lexicographically.
        const auto& ys = f->bound;
        std::vector<Var> pick(ys.size(), 0);
        std::vector<Lfd> disjuncts;
        const bool bare = f->lhs->kind == FoKind::Top;
        while (true) {
            VarMap r2 = r;
            for (std::size_t i = 0; i < ys.size(); ++i)
                r2[ys[i]] = pick[i];
            Lfd g = run(f->guard, r2);
            Lfd body = bare ? g : lfd::conj(g, run(f->lhs, r2));
            disjuncts.push_back(lfd::exists(outer, body));
            std::uint64_t total = 0;
            for (const auto& d : disjuncts)
                total += d->size;
            if (total > cap_)
                throw CapError("tau output exceeds " + std::to_string(cap_) + " nodes");
            int i = static_cast<int>(ys.size()) - 1;
            while (i >= 0 && pick[i] + 1 == sig_.k())
                pick[i--] = 0;
            if (i < 0)
                break;
            ++pick[i];
        }
        return lfd::disj_all(disjuncts);
    }

    const Signature& sig_;
    std::size_t cap_;
    std::map<std::pair<const FoNode*, VarMap>, Lfd> memo_;
    std::vector<Fo> keep_;
};

// Largest arity among atoms other than A and R_{..}_{..}.
int base_atom_arity(const Fo& f, const Signature& sig) {
    if (!f)
        return 0;
    int out = 0;
    if (f->kind == FoKind::Atom && f->rel != Signature::kTeamRelation &&
        !sig.parse_dep_relation(f->rel))
        out = static_cast<int>(f->args.size());
    for (const Fo& c : {f->guard, f->lhs, f->rhs})
        out = std::max(out, base_atom_arity(c, sig));
    return out;
}

} // namespace

Lfd tau(const Fo& f, const VarMap& rho, const Signature& sig, std::size_t node_cap) {
    return Tau(sig, node_cap).run(f, rho);
}

std::vector<std::pair<VarMap, Lfd>> tau_all(const Fo& f, const Signature& sig,
                                            std::size_t node_cap) {
    const int base_arity = base_atom_arity(f, sig);
    if (base_arity > sig.k())
        throw InputError("tau needs at least as many LFD variables as the maximum arity (" +
                         std::to_string(base_arity) + ")");
    std::vector<std::string> xs(f->free.begin(), f->free.end());
    std::vector<Var> pick(xs.size(), 0);
    std::vector<std::pair<VarMap, Lfd>> out;
    Tau t(sig, node_cap);
    while (true) {
        VarMap rho;
        for (std::size_t i = 0; i < xs.size(); ++i)
            rho[xs[i]] = pick[i];
        out.emplace_back(rho, t.run(f, rho));
        int i = static_cast<int>(xs.size()) - 1;
        while (i >= 0 && pick[i] + 1 == sig.k())
            pick[i--] = 0;
        if (i < 0)
            break;
        ++pick[i];
    }
    return out;
}

} // namespace lfdgf
