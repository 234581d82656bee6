#include <algorithm>
#include <set>

#include "lfdgf/oracle.hpp"

namespace lfdgf {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

std::vector<std::pair<std::string, int>> base_relations(const Signature& sig) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [name, arity] : sig.relations())
        if (name != Signature::kTeamRelation && !sig.parse_dep_relation(name))
            out.emplace_back(name, arity);
    return out;
}

Lfd gen_lfd(Rng& rng, const Signature& sig, const LfdShape& shape, int size, int edepth) {
    const auto rels = base_relations(sig);
    const int k = sig.k();
    auto leaf = [&]() -> Lfd {
        if (rels.empty() || (shape.deps && chance(rng, 0.3))) {
            VarSet v = static_cast<VarSet>(uniform(rng, 0, static_cast<int>(sig.all())));
            return lfd::dep(v, uniform(rng, 0, k - 1));
        }
        const auto& [name, arity] = rels[uniform(rng, 0, static_cast<int>(rels.size()) - 1)];
        std::vector<Var> args;
        for (int i = 0; i < arity; ++i)
            args.push_back(uniform(rng, 0, k - 1));
        return lfd::atom(name, std::move(args));
    };
    if (size <= 1)
        return leaf();
    const int roll = uniform(rng, 0, 99);
    if (roll < 25)
        return lfd::neg(gen_lfd(rng, sig, shape, size - 1, edepth));
    if (roll < 60) {
        const int left = uniform(rng, 1, std::max(1, size - 2));
        return lfd::conj(gen_lfd(rng, sig, shape, left, edepth),
                         gen_lfd(rng, sig, shape, std::max(1, size - 1 - left), edepth));
    }
    if (roll < 90 && edepth > 0) {
        VarSet v = static_cast<VarSet>(uniform(rng, 0, static_cast<int>(sig.all())));
        return lfd::exists(v, gen_lfd(rng, sig, shape, size - 1, edepth - 1));
    }
    return leaf();
}

Fo gen_gf(Rng& rng, const Signature& sig, const GfShape& shape, const std::vector<std::string>& avail,
          int size, int qdepth) {
    const auto rels = base_relations(sig);
    auto quantify = [&]() -> Fo {
        const auto& [name, arity] = rels[uniform(rng, 0, static_cast<int>(rels.size()) - 1)];
        std::vector<std::string> fresh;
        for (const auto& p : shape.pool)
            if (std::find(avail.begin(), avail.end(), p) == avail.end())
                fresh.push_back(p);
        if (fresh.empty())
            fresh = shape.pool;
        std::shuffle(fresh.begin(), fresh.end(), rng);
        const int nbound = uniform(rng, 1, std::min<int>(arity, static_cast<int>(fresh.size())));
        std::vector<std::string> ys(fresh.begin(), fresh.begin() + nbound);
        std::vector<std::string> args = ys;
        std::vector<std::string> scope = avail;
        for (const auto& y : ys)
            if (std::find(scope.begin(), scope.end(), y) == scope.end())
                scope.push_back(y);
        while (static_cast<int>(args.size()) < arity)
            args.push_back(scope[uniform(rng, 0, static_cast<int>(scope.size()) - 1)]);
        std::shuffle(args.begin(), args.end(), rng);
        std::sort(ys.begin(), ys.end());
        Fo guard = fo::atom(name, args);
        std::vector<std::string> inner(guard->free.begin(), guard->free.end());
        Fo body = size > 2 && chance(rng, 0.8) ? gen_gf(rng, sig, shape, inner, size - 2, qdepth - 1)
                                              : fo::top();
        return fo::guarded_exists(guard, ys, body);
    };
    auto leaf = [&]() -> Fo {
        if (avail.empty())
            return quantify();
        const auto& [name, arity] = rels[uniform(rng, 0, static_cast<int>(rels.size()) - 1)];
        std::vector<std::string> args;
        for (int i = 0; i < arity; ++i)
            args.push_back(avail[uniform(rng, 0, static_cast<int>(avail.size()) - 1)]);
        return fo::atom(name, std::move(args));
    };
    if (size <= 1)
        return avail.empty() ? quantify() : leaf();
    const int roll = uniform(rng, 0, 99);
    if (roll < 25)
        return fo::neg(gen_gf(rng, sig, shape, avail, size - 1, qdepth));
    if (roll < 55) {
        const int left = uniform(rng, 1, std::max(1, size - 2));
        return fo::conj(gen_gf(rng, sig, shape, avail, left, qdepth),
                        gen_gf(rng, sig, shape, avail, std::max(1, size - 1 - left), qdepth));
    }
    if (qdepth > 0)
        return quantify();
    return leaf();
}

} // namespace

Lfd random_lfd(Rng& rng, const Signature& sig, const LfdShape& shape) {
    return gen_lfd(rng, sig, shape, uniform(rng, std::max(1, shape.size / 2), std::max(1, shape.size)),
                   shape.max_edepth);
}

Fo random_gf(Rng& rng, const Signature& sig, const std::vector<std::string>& free,
             const GfShape& shape) {
    return gen_gf(rng, sig, shape, free, uniform(rng, 1, std::max(1, shape.size)),
                  shape.max_qdepth);
}

StandardModel random_standard_model(Rng& rng, const Signature& sig, int max_dom, double density) {
    StandardModel m;
    const int d = uniform(rng, 1, max_dom);
    for (int i = 0; i < d; ++i)
        m.domain.push_back(element_name(i));
    for (const auto& [name, arity] : base_relations(sig)) {
        m.relations[name] = Relation{arity, {}};
        Tuple t(arity, 0);
        while (true) {
            if (chance(rng, density))
                m.add(name, t);
            int i = arity - 1;
            while (i >= 0 && t[i] + 1 == d)
                t[i--] = 0;
            if (i < 0)
                break;
            ++t[i];
        }
    }
    return m;
}

DependenceModel random_dependence_model(Rng& rng, const Signature& sig, int max_dom, int max_team,
                                        double density) {
    StandardModel m = random_standard_model(rng, sig, max_dom, density);
    const int d = static_cast<int>(m.size());
    std::uint64_t space = 1;
    for (int x = 0; x < sig.k(); ++x)
        space *= d;
    const int size = uniform(rng, 1, static_cast<int>(std::min<std::uint64_t>(space, max_team)));
    std::set<Assignment> team;
    while (static_cast<int>(team.size()) < size) {
        Assignment a;
        for (int x = 0; x < sig.k(); ++x)
            a.push_back(uniform(rng, 0, d - 1));
        team.insert(a);
    }
    return DependenceModel(std::move(m), sig.vars(), {team.begin(), team.end()});
}

DependenceModel random_distinguished_model(Rng& rng, const Signature& sig, int max_dom,
                                           int max_team, double density) {
    DependenceModel dm = distinguish(random_dependence_model(rng, sig, max_dom, max_team, density)).model;
    // Extra facts among the new elements keep the model distinguished but
    // add facts that no single team member names.
    const int d = static_cast<int>(dm.base.size());
    for (const auto& [name, arity] : base_relations(sig)) {
        const int extra = uniform(rng, 0, 2);
        for (int e = 0; e < extra; ++e) {
            Tuple t;
            for (int i = 0; i < arity; ++i)
                t.push_back(uniform(rng, 0, d - 1));
            dm.base.add(name, t);
        }
    }
    return dm;
}

} // namespace lfdgf
