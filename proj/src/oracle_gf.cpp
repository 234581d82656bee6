#include <functional>
#include <map>
#include <stdexcept>

#include "lfdgf/error.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/sat.hpp"

namespace lfdgf {

std::string element_name(int i) {
    if (i < 26)
        return std::string(1, static_cast<char>('a' + i));
    return "e" + std::to_string(i);
}

namespace {

// Propositional grounding with Tseitin encoding. Literal `truth` is pinned
// true; -truth is false.
class Grounder {
public:
    Grounder(SatSolver& sat, int dom, std::size_t cap) : sat_(sat), dom_(dom), cap_(cap) {
        truth_ = sat_.new_var();
        sat_.add_clause({truth_});
    }

    int ground(const Fo& f, std::map<std::string, Elem>& env) {
        std::vector<Elem> key_vals;
        for (const auto& x : f->free)
            key_vals.push_back(env.at(x));
        auto key = std::make_pair(f.get(), key_vals);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (++nodes_ > cap_)
            throw CapError("grounding exceeds " + std::to_string(cap_) + " nodes");
        int lit = build(f, env);
        memo_.emplace(std::move(key), lit);
        return lit;
    }

    int truth() const { return truth_; }
    const std::map<std::pair<std::string, Tuple>, int>& atoms() const { return atoms_; }

private:
    int build(const Fo& f, std::map<std::string, Elem>& env) {
        switch (f->kind) {
        case FoKind::Top:
            return truth_;
        case FoKind::Eq:
            return env.at(f->args[0]) == env.at(f->args[1]) ? truth_ : -truth_;
        case FoKind::Atom: {
            Tuple t;
            for (const auto& x : f->args)
                t.push_back(env.at(x));
            auto [it, fresh] = atoms_.try_emplace({f->rel, t}, 0);
            if (fresh)
                it->second = sat_.new_var();
            return it->second;
        }
        case FoKind::Not:
            return -ground(f->lhs, env);
        case FoKind::And:
            return mk_and({ground(f->lhs, env), ground(f->rhs, env)});
        case FoKind::Exists:
            break;
        }
        std::map<std::string, std::optional<Elem>> saved;
        for (const auto& y : f->bound) {
            auto it = env.find(y);
            saved[y] = it == env.end() ? std::nullopt : std::optional<Elem>(it->second);
        }
        std::vector<std::string> ys;
        for (const auto& [y, _] : saved)
            ys.push_back(y);
        std::vector<Elem> vals(ys.size(), 0);
        std::vector<int> options;
        while (true) {
            for (std::size_t i = 0; i < ys.size(); ++i)
                env[ys[i]] = vals[i];
            int body = ground(f->lhs, env);
            options.push_back(f->guard ? mk_and({ground(f->guard, env), body}) : body);
            int i = static_cast<int>(ys.size()) - 1;
            while (i >= 0 && vals[i] + 1 == dom_)
                vals[i--] = 0;
            if (i < 0)
                break;
            ++vals[i];
        }
        for (const auto& [y, old] : saved) {
            if (old)
                env[y] = *old;
            else
                env.erase(y);
        }
        return -mk_and(negate(options));
    }

    static std::vector<int> negate(std::vector<int> v) {
        for (int& l : v)
            l = -l;
        return v;
    }

    int mk_and(std::vector<int> lits) {
        std::vector<int> kept;
        for (int l : lits) {
            if (l == -truth_)
                return -truth_;
            if (l != truth_)
                kept.push_back(l);
        }
        if (kept.empty())
            return truth_;
        if (kept.size() == 1)
            return kept[0];
        const int a = sat_.new_var();
        std::vector<int> back{a};
        for (int l : kept) {
            sat_.add_clause({-a, l});
            back.push_back(-l);
        }
        sat_.add_clause(back);
        return a;
    }

    SatSolver& sat_;
    int dom_;
    std::size_t cap_;
    std::size_t nodes_ = 0;
    int truth_ = 0;
    std::map<std::pair<const FoNode*, std::vector<Elem>>, int> memo_;
    std::map<std::pair<std::string, Tuple>, int> atoms_;
};

void arities_of(const Fo& f, std::map<std::string, int>& out) {
    if (!f)
        return;
    if (f->kind == FoKind::Atom)
        out[f->rel] = static_cast<int>(f->args.size());
    arities_of(f->guard, out);
    arities_of(f->lhs, out);
    arities_of(f->rhs, out);
}

std::optional<GfModel> solve_at(const Fo& f, int dom, const std::vector<std::string>& xs,
                                const std::vector<Elem>& vals, const GfSearchOptions& opt,
                                bool pin) {
    SatSolver sat;
    Grounder g(sat, dom, opt.ground_cap);
    std::map<std::string, Elem> env;
    for (std::size_t i = 0; i < xs.size(); ++i)
        env[xs[i]] = vals[i];
    const int root = g.ground(f, env);
    sat.add_clause({root});
    if (pin) {
        Rng rng(opt.seed ^ (static_cast<std::uint64_t>(dom) << 32));
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (const auto& [atom, var] : g.atoms())
            if (coin(rng) < opt.force)
                sat.add_clause({coin(rng) < 0.5 ? var : -var});
    }
    if (!sat.solve())
        return std::nullopt;
    GfModel out;
    for (int i = 0; i < dom; ++i)
        out.model.domain.push_back(element_name(i));
    std::map<std::string, int> arities;
    arities_of(f, arities);
    for (const auto& [rel, arity] : arities)
        out.model.relations[rel] = Relation{arity, {}};
    for (const auto& [atom, var] : g.atoms())
        if (sat.value(var))
            out.model.add(atom.first, atom.second);
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.assignment[xs[i]] = vals[i];
    if (!eval_fo(out.model, out.assignment, f))
        throw std::logic_error("brute_sat_gf: model fails its own formula");
    return out;
}

} // namespace

std::optional<GfModel> brute_sat_gf(const Fo& f, const GfSearchOptions& opt) {
    const std::vector<std::string> xs(f->free.begin(), f->free.end());
    for (int dom = std::max(1, opt.min_dom); dom <= opt.max_dom; ++dom) {
        // Free-variable values up to renaming: restricted growth strings.
        std::vector<Elem> vals(xs.size(), 0);
        std::function<std::optional<GfModel>(std::size_t, int)> go =
            [&](std::size_t i, int used) -> std::optional<GfModel> {
            if (i == xs.size()) {
                const bool pin = opt.seed != 0 && opt.force > 0;
                if (auto m = solve_at(f, dom, xs, vals, opt, pin))
                    return m;
                return pin ? solve_at(f, dom, xs, vals, opt, false) : std::nullopt;
            }
            for (int v = 0; v <= std::min(used, dom - 1); ++v) {
                vals[i] = v;
                if (auto m = go(i + 1, std::max(used, v + 1)))
                    return m;
            }
            return std::nullopt;
        };
        if (auto m = go(0, 0))
            return m;
    }
    return std::nullopt;
}

} // namespace lfdgf
