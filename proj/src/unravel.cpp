#include <algorithm>

#include "lfdgf/mcheck.hpp"
#include "lfdgf/translate.hpp"
#include "lfdgf/typemodel.hpp"

namespace lfdgf {

namespace {

struct Builder {
    const TypeSpace& space;
    const std::vector<TypeBits>& pool; // witness candidates
    std::size_t cap;
    Unraveled u;
    std::vector<std::string> elems;
    std::vector<int> child_count;

    Elem fresh(const std::string& name) {
        elems.push_back(name);
        return static_cast<Elem>(elems.size() - 1);
    }

    bool add_node(TypeBits type, Assignment values, int parent, const std::string& path) {
        if (u.node_type.size() >= cap) {
            u.truncated = true;
            return false;
        }
        u.node_type.push_back(type);
        u.values.push_back(std::move(values));
        u.parent.push_back(parent);
        u.depth.push_back(parent < 0 ? 0 : u.depth[parent] + 1);
        u.expanded.push_back(false);
        u.path.push_back(path);
        child_count.push_back(0);
        return true;
    }

    bool add_child(int t, TypeBits type, VarSet keep) {
        const std::string path = u.path[t] + "." + std::to_string(child_count[t]);
        Assignment vals(space.k());
        for (Var v = 0; v < space.k(); ++v)
            vals[v] = contains(keep, v) ? u.values[t][v]
                                        : fresh(path + ":" + space.signature().vars()[v]);
        if (!add_node(type, std::move(vals), t, path)) {
            elems.resize(elems.size() - (space.k() - popcount(keep)));
            return false;
        }
        ++child_count[t];
        return true;
    }

    template <class Pred>
    bool served(int t, VarSet v, Pred pred) const {
        for (std::size_t w = 0; w < u.values.size(); ++w)
            if (subset(v, agreement_set(u.values[t], u.values[w])) && pred(static_cast<int>(w)))
                return true;
        return false;
    }

    // Serves every demand of node t; false if some demand stays open.
    bool expand(int t) {
        const Closure& cl = space.closure();
        const TypeBits delta = u.node_type[t];
        bool ok = true;
        for (int e : space.exists_members()) {
            if (!has_bit(delta, e))
                continue;
            const VarSet v = cl[e]->vars;
            const int body = cl.index_of(cl[e]->lhs);
            if (served(t, v, [&](int w) { return has_bit(u.node_type[w], body); }))
                continue;
            const VarSet c = space.dep_closure(delta, v);
            auto it = std::find_if(pool.begin(), pool.end(), [&](TypeBits w) {
                return has_bit(w, body) && space.sim(w, delta, c);
            });
            ok = it != pool.end() && add_child(t, *it, c) && ok;
        }
        const VarSet all = space.signature().all();
        for (VarSet v = 0; v <= all; ++v)
            for (Var x = 0; x < space.k(); ++x) {
                if (has_bit(delta, cl.dep_index(v, x)))
                    continue;
                auto differs = [&](int w) {
                    return !contains(agreement_set(u.values[t], u.values[w]), x);
                };
                if (served(t, v, differs))
                    continue;
                ok = add_child(t, delta, space.dep_closure(delta, v)) && ok;
            }
        return ok;
    }
};

// Pos/Neg goodness: pos[i][t] guarantees (i in type(t) => i true at t),
// neg[i][t] guarantees (i true at t => i in type(t)).
void compute_goodness(const TypeSpace& space, Unraveled& u) {
    const Closure& cl = space.closure();
    const int n = space.size();
    const std::size_t nodes = u.node_type.size();
    std::vector<std::vector<VarSet>> agree(nodes, std::vector<VarSet>(nodes));
    for (std::size_t a = 0; a < nodes; ++a)
        for (std::size_t b = 0; b < nodes; ++b)
            agree[a][b] = agreement_set(u.values[a], u.values[b]);

    std::vector<std::vector<bool>> pos(n, std::vector<bool>(nodes, true));
    std::vector<std::vector<bool>> neg(n, std::vector<bool>(nodes, true));
    for (int i = 0; i < n; ++i) {
        const Lfd& f = cl[i];
        const int l = f->lhs ? cl.index_of(f->lhs) : -1;
        const int r = f->rhs ? cl.index_of(f->rhs) : -1;
        for (std::size_t t = 0; t < nodes; ++t) {
            const bool in = has_bit(u.node_type[t], i);
            switch (f->kind) {
            case LfdKind::Top:
            case LfdKind::Atom:
                break;
            case LfdKind::Dep:
                if (!in) {
                    bool witness = false;
                    for (std::size_t w = 0; w < nodes && !witness; ++w)
                        witness = subset(f->vars, agree[t][w]) && !contains(agree[t][w], f->dep);
                    neg[i][t] = witness;
                }
                break;
            case LfdKind::Not:
                pos[i][t] = neg[l][t];
                neg[i][t] = pos[l][t];
                break;
            case LfdKind::And:
                pos[i][t] = pos[l][t] && pos[r][t];
                neg[i][t] = neg[l][t] && neg[r][t];
                break;
            case LfdKind::Exists:
                if (in) {
                    bool witness = false;
                    for (std::size_t w = 0; w < nodes && !witness; ++w)
                        witness = subset(f->vars, agree[t][w]) && has_bit(u.node_type[w], l) &&
                                  pos[l][w];
                    pos[i][t] = witness;
                } else {
                    bool all = true;
                    for (std::size_t w = 0; w < nodes && all; ++w)
                        if (subset(f->vars, agree[t][w]))
                            all = neg[l][w];
                    neg[i][t] = all;
                }
                break;
            }
        }
    }
    u.pos = pos;
    u.good.assign(n, std::vector<bool>(nodes, false));
    for (int i = 0; i < n; ++i)
        for (std::size_t t = 0; t < nodes; ++t)
            u.good[i][t] = pos[i][t] && neg[i][t];
}

} // namespace

Unraveled unravel(const TypeSpace& space, const std::vector<TypeBits>& model, TypeBits target,
                  int depth, std::size_t node_cap) {
    const Signature& sig = space.signature();
    const VarSet fixed = space.dep_closure(target, 0);
    std::vector<TypeBits> pool{target};
    for (TypeBits t : model)
        if (t != target && space.sim(t, target, fixed))
            pool.push_back(t);

    Builder b{space, pool, std::max<std::size_t>(node_cap, 1), {}, {}, {}};
    b.u.max_depth = depth;
    std::vector<Elem> shared(space.k(), -1);
    for (Var v : sig.members(fixed))
        shared[v] = b.fresh("r0:" + sig.vars()[v]);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const std::string path = "r" + std::to_string(i);
        Assignment vals(space.k());
        for (Var v = 0; v < space.k(); ++v)
            vals[v] = shared[v] >= 0 ? shared[v] : b.fresh(path + ":" + sig.vars()[v]);
        if (!b.add_node(pool[i], std::move(vals), -1, path))
            break;
    }
    b.u.target = 0;
    for (std::size_t t = 0; t < b.u.node_type.size(); ++t)
        if (b.u.depth[t] < depth)
            b.u.expanded[t] = b.expand(static_cast<int>(t));

    Unraveled& u = b.u;
    StandardModel base;
    base.domain = b.elems;
    for (const auto& [name, arity] : sig.relations())
        base.relations[name] = Relation{arity, {}};
    const Closure& cl = space.closure();
    for (std::size_t t = 0; t < u.node_type.size(); ++t)
        for (int i = 0; i < space.size(); ++i) {
            if (cl[i]->kind != LfdKind::Atom || !has_bit(u.node_type[t], i))
                continue;
            Tuple tup;
            for (Var v : cl[i]->args)
                tup.push_back(u.values[t][v]);
            base.add(cl[i]->rel, std::move(tup));
        }
    u.model = DependenceModel(std::move(base), sig.vars(), u.values);
    u.member.clear();
    for (const auto& vals : u.values)
        u.member.push_back(u.model.member_index(vals));
    compute_goodness(space, u);
    return std::move(b.u);
}

Unraveled unravel_adaptive(const TypeSpace& space, const std::vector<TypeBits>& model,
                           TypeBits target, std::size_t node_cap, int min_depth) {
    int d = std::max(min_depth, space.closure().root()->edepth + 1);
    Unraveled u = unravel(space, model, target, d, node_cap);
    const int root = space.root();
    while (!(u.pos[root][u.target] || !has_bit(target, root)) && !u.truncated && d < 16) {
        ++d;
        u = unravel(space, model, target, d, node_cap);
    }
    return u;
}

TypeBits type_of(const TypeSpace& space, const StandardModel& hat, const Assignment& s) {
    const Signature& sig = space.signature();
    if (!hat.holds(std::string(Signature::kTeamRelation), s))
        throw InputError("assignment is not an A-tuple of the model");
    FoAssignment fs;
    for (Var v = 0; v < sig.k(); ++v)
        fs[sig.vars()[v]] = s[v];
    TypeBits t = 0;
    for (int i = 0; i < space.size(); ++i)
        if (eval_fo(hat, fs, tr_bullet(space.closure()[i], sig)))
            t |= TypeBits{1} << i;
    return t;
}

std::vector<TypeBits> build_type_model(const TypeSpace& space, const StandardModel& hat) {
    const Signature& sig = space.signature();
    if (!eval_fo(hat, {}, setup(space.closure().root(), sig)))
        throw InputError("model does not satisfy setup(psi)");
    std::vector<TypeBits> out;
    auto it = hat.relations.find(std::string(Signature::kTeamRelation));
    if (it == hat.relations.end())
        return out;
    for (const auto& tup : it->second.tuples)
        out.push_back(type_of(space, hat, tup));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

HResult H(const TypeSpace& space, const StandardModel& hat, const Assignment& s, int depth,
          std::size_t node_cap) {
    auto model = build_type_model(space, hat);
    HResult h;
    h.root_type = type_of(space, hat, s);
    h.unraveled = unravel(space, model, h.root_type, depth, node_cap);
    h.root = h.unraveled.values[h.unraveled.target];
    return h;
}

} // namespace lfdgf
