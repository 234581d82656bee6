#include "lfdgf/typemodel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_set>

namespace lfdgf {

TypeSpace::TypeSpace(const Lfd& psi, const Signature& sig, const Caps& caps)
    : cl_(psi, sig, caps.closure), type_cap_(caps.types) {
    const int n = size();
    fragment_.assign(static_cast<std::size_t>(sig.all()) + 1, 0);
    lhs_.assign(n, -1);
    rhs_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        const Lfd& f = cl_[i];
        for (VarSet v = 0; v <= sig.all(); ++v)
            if (subset(f->free, v))
                fragment_[v] |= TypeBits{1} << i;
        if (f->lhs)
            lhs_[i] = cl_.index_of(f->lhs);
        if (f->rhs)
            rhs_[i] = cl_.index_of(f->rhs);
        if (f->kind == LfdKind::Exists)
            exists_.push_back(i);
        if (f->kind == LfdKind::Top)
            top_ = i;
    }
}

VarSet TypeSpace::dep_closure(TypeBits t, VarSet v) const {
    VarSet out = 0;
    for (Var u = 0; u < k(); ++u)
        if (has_bit(t, cl_.dep_index(v, u)))
            out |= singleton(u);
    return out;
}

bool TypeSpace::neg_consistent(TypeBits t) const {
    for (int i = 0; i < size(); ++i)
        if (cl_[i]->kind == LfdKind::Not && has_bit(t, i) == has_bit(t, lhs_[i]))
            return false;
    return true;
}

bool TypeSpace::and_consistent(TypeBits t) const {
    for (int i = 0; i < size(); ++i)
        if (cl_[i]->kind == LfdKind::And &&
            has_bit(t, i) != (has_bit(t, lhs_[i]) && has_bit(t, rhs_[i])))
            return false;
    return true;
}

bool TypeSpace::e_consistent(TypeBits t) const {
    for (int i : exists_)
        if (has_bit(t, lhs_[i]) && !has_bit(t, i))
            return false;
    return true;
}

bool TypeSpace::projection_ok(TypeBits t) const {
    for (VarSet v = 0; v <= signature().all(); ++v)
        if (!subset(v, dep_closure(t, v)))
            return false;
    return true;
}

bool TypeSpace::transitivity_ok(TypeBits t) const {
    const VarSet all = signature().all();
    std::vector<VarSet> d(all + 1);
    for (VarSet v = 0; v <= all; ++v)
        d[v] = dep_closure(t, v);
    for (VarSet v = 0; v <= all; ++v)
        for (VarSet u = 0; u <= all; ++u) {
            if (!subset(u, d[v]))
                continue;
            for (VarSet w = 0; w <= all; ++w)
                if (subset(w, d[u]) && !subset(w, d[v]))
                    return false;
        }
    return true;
}

bool TypeSpace::is_type(TypeBits t) const {
    if (top_ >= 0 && !has_bit(t, top_))
        return false;
    if (size() < 64 && (t >> size()) != 0)
        return false;
    return neg_consistent(t) && and_consistent(t) && e_consistent(t) && projection_ok(t) &&
           transitivity_ok(t);
}

std::vector<int> TypeSpace::members(TypeBits t) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (has_bit(t, i))
            out.push_back(i);
    return out;
}

// Enumeration --------------------------------------------------------------

namespace {

// Closure operators on k variables, as tables V -> D_V. They correspond to
// families of closed sets containing the full set and closed under
// intersection.
std::vector<std::vector<VarSet>> closure_operators(int k) {
    const VarSet all = (VarSet{1} << k) - 1;
    const std::uint32_t nsets = all; // every subset except the full one
    std::vector<std::vector<VarSet>> out;
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << nsets); ++pick) {
        std::vector<VarSet> closed{all};
        for (VarSet s = 0; s < all; ++s)
            if ((pick >> s) & 1u)
                closed.push_back(s);
        auto is_closed = [&](VarSet s) {
            return s == all || ((pick >> s) & 1u);
        };
        bool ok = true;
        for (std::size_t i = 0; i < closed.size() && ok; ++i)
            for (std::size_t j = i + 1; j < closed.size() && ok; ++j)
                ok = is_closed(closed[i] & closed[j]);
        if (!ok)
            continue;
        std::vector<VarSet> op(all + 1, all);
        for (VarSet v = 0; v <= all; ++v)
            for (VarSet c : closed)
                if (subset(v, c))
                    op[v] &= c;
        out.push_back(std::move(op));
    }
    return out;
}

} // namespace

std::vector<TypeBits> enumerate_types(const TypeSpace& space) {
    const Closure& cl = space.closure();
    const int n = space.size();
    const int k = space.k();
    std::vector<TypeBits> out;

    std::vector<int> lhs(n, -1), rhs(n, -1);
    for (int i = 0; i < n; ++i) {
        if (cl[i]->lhs)
            lhs[i] = cl.index_of(cl[i]->lhs);
        if (cl[i]->rhs)
            rhs[i] = cl.index_of(cl[i]->rhs);
    }

    for (const auto& op : closure_operators(k)) {
        std::function<void(int, TypeBits)> go = [&](int i, TypeBits t) {
            if (i == n) {
                if (out.size() >= space.type_cap())
                    throw CapError("more than " + std::to_string(space.type_cap()) + " types");
                out.push_back(t);
                return;
            }
            const TypeBits bit = TypeBits{1} << i;
            const Lfd& f = cl[i];
            switch (f->kind) {
            case LfdKind::Top:
                go(i + 1, t | bit);
                return;
            case LfdKind::Dep:
                go(i + 1, contains(op[f->vars], f->dep) ? t | bit : t);
                return;
            case LfdKind::Not:
                go(i + 1, has_bit(t, lhs[i]) ? t : t | bit);
                return;
            case LfdKind::And:
                go(i + 1, has_bit(t, lhs[i]) && has_bit(t, rhs[i]) ? t | bit : t);
                return;
            case LfdKind::Exists:
                if (has_bit(t, lhs[i])) {
                    go(i + 1, t | bit);
                    return;
                }
                [[fallthrough]];
            case LfdKind::Atom:
                go(i + 1, t);
                go(i + 1, t | bit);
                return;
            }
        };
        go(0, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Type models ----------------------------------------------------------------

TypeModelVerdict is_type_model(const TypeSpace& space, const std::vector<TypeBits>& model) {
    TypeModelVerdict v;
    const Closure& cl = space.closure();
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (!space.is_type(model[i]))
            return {false, false, "type", static_cast<int>(i), -1};
        if (has_bit(model[i], space.root()))
            v.for_psi = true;
    }
    for (std::size_t i = 1; i < model.size(); ++i)
        if (!space.sim(model[0], model[i], 0))
            return {false, v.for_psi, "universal", static_cast<int>(i), -1};
    for (std::size_t i = 0; i < model.size(); ++i)
        for (int e : space.exists_members()) {
            if (!has_bit(model[i], e))
                continue;
            const VarSet c = space.dep_closure(model[i], cl[e]->vars);
            const int body = cl.index_of(cl[e]->lhs);
            bool found = false;
            for (TypeBits w : model)
                if (has_bit(w, body) && space.sim(w, model[i], c)) {
                    found = true;
                    break;
                }
            if (!found)
                return {false, v.for_psi, "witness", static_cast<int>(i), e};
        }
    return v;
}

SatResult sat_lfd(const TypeSpace& space, bool all_profiles) {
    SatResult res;
    const auto types = enumerate_types(space);
    res.types_enumerated = types.size();
    const Closure& cl = space.closure();
    const VarSet all = space.signature().all();
    const auto& ex = space.exists_members();
    std::vector<int> body(ex.size());
    for (std::size_t j = 0; j < ex.size(); ++j)
        body[j] = cl.index_of(cl[ex[j]]->lhs);

    std::map<TypeBits, std::vector<TypeBits>> profiles;
    for (TypeBits t : types)
        profiles[t & space.fragment_mask(0)].push_back(t);
    res.profiles = profiles.size();

    for (auto& [profile, alive] : profiles) {
        bool changed = true;
        while (changed && !alive.empty()) {
            changed = false;
            // reach[j][C]: V-fragments (C-fragments) of live types holding body j.
            std::vector<std::vector<std::unordered_set<TypeBits>>> reach(
                ex.size(), std::vector<std::unordered_set<TypeBits>>(all + 1));
            for (TypeBits t : alive)
                for (std::size_t j = 0; j < ex.size(); ++j)
                    if (has_bit(t, body[j]))
                        for (VarSet c = 0; c <= all; ++c)
                            reach[j][c].insert(t & space.fragment_mask(c));
            std::vector<TypeBits> next;
            for (TypeBits t : alive) {
                bool ok = true;
                for (std::size_t j = 0; j < ex.size() && ok; ++j) {
                    if (!has_bit(t, ex[j]))
                        continue;
                    const VarSet c = space.dep_closure(t, cl[ex[j]]->vars);
                    ok = reach[j][c].contains(t & space.fragment_mask(c));
                }
                if (ok)
                    next.push_back(t);
                else
                    changed = true;
            }
            alive.swap(next);
        }
        const bool certifies = std::any_of(alive.begin(), alive.end(),
                                           [&](TypeBits t) { return has_bit(t, space.root()); });
        if (!certifies)
            continue;
        if (!res.sat) {
            res.sat = true;
            res.model = alive;
        }
        if (!all_profiles)
            return res;
        res.alternatives.push_back(alive);
    }
    return res;
}

nlohmann::json type_model_json(const TypeSpace& space, const std::vector<TypeBits>& model) {
    nlohmann::json j;
    auto table = nlohmann::json::array();
    for (const auto& f : space.closure().items())
        table.push_back(print(f, space.signature()));
    j["closure"] = table;
    auto types = nlohmann::json::array();
    for (TypeBits t : model)
        types.push_back(space.members(t));
    j["types"] = types;
    j["root"] = space.root();
    return j;
}

} // namespace lfdgf
