#include "lfdgf/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lfdgf/mcheck.hpp"

namespace lfdgf {

bool StandardModel::holds(const std::string& rel, const Tuple& t) const {
    auto it = relations.find(rel);
    return it != relations.end() && it->second.tuples.contains(t);
}

Elem StandardModel::element(std::string_view name) const {
    for (std::size_t i = 0; i < domain.size(); ++i)
        if (domain[i] == name)
            return static_cast<Elem>(i);
    throw InputError("unknown domain element '" + std::string(name) + "'");
}

void StandardModel::add(const std::string& rel, Tuple t) {
    auto& r = relations[rel];
    r.arity = static_cast<int>(t.size());
    r.tuples.insert(std::move(t));
}

void StandardModel::validate() const {
    for (const auto& [name, rel] : relations)
        for (const auto& t : rel.tuples) {
            if (static_cast<int>(t.size()) != rel.arity)
                throw InputError("tuple of wrong length in relation '" + name + "'");
            for (Elem e : t)
                if (e < 0 || e >= static_cast<Elem>(domain.size()))
                    throw InputError("tuple element outside the domain in '" + name + "'");
        }
}

DependenceModel::DependenceModel(StandardModel m, std::vector<std::string> v,
                                 std::vector<Assignment> t)
    : base(std::move(m)), vars(std::move(v)), team(std::move(t)) {
    std::sort(team.begin(), team.end());
    team.erase(std::unique(team.begin(), team.end()), team.end());
    validate();
}

int DependenceModel::member_index(const Assignment& a) const {
    auto it = std::lower_bound(team.begin(), team.end(), a);
    if (it == team.end() || *it != a)
        return -1;
    return static_cast<int>(it - team.begin());
}

void DependenceModel::validate() const {
    base.validate();
    for (const auto& s : team) {
        if (s.size() != vars.size())
            throw InputError("team member is not total over V_LFD");
        for (Elem e : s)
            if (e < 0 || e >= static_cast<Elem>(base.size()))
                throw InputError("team member takes a value outside the domain");
    }
}

DependenceModel from_standard_T(const StandardModel& hat, const Signature& sig) {
    const std::string a(Signature::kTeamRelation);
    auto it = hat.relations.find(a);
    if (it == hat.relations.end())
        throw InputError("model does not interpret the team relation A");
    if (it->second.arity != sig.k())
        throw InputError("relation A must have arity |V_LFD|");
    StandardModel base = hat;
    base.relations.erase(a);
    std::vector<Assignment> team(it->second.tuples.begin(), it->second.tuples.end());
    return DependenceModel(std::move(base), sig.vars(), std::move(team));
}

StandardModel to_standard_Tinv(const DependenceModel& m) {
    StandardModel out = m.base;
    auto& a = out.relations[std::string(Signature::kTeamRelation)];
    a.arity = m.k();
    a.tuples = std::set<Tuple>(m.team.begin(), m.team.end());
    return out;
}

DependenceModel full_F(const StandardModel& m, const Signature& sig, const Caps& caps) {
    if (m.domain.empty())
        throw InputError("full_F needs a nonempty domain");
    double count = std::pow(static_cast<double>(m.size()), sig.k());
    if (count > static_cast<double>(caps.team))
        throw CapError("full team of size " + std::to_string(static_cast<long long>(count)) +
                       " exceeds cap");
    std::vector<Assignment> team;
    Assignment s(sig.k(), 0);
    while (true) {
        team.push_back(s);
        int i = sig.k() - 1;
        while (i >= 0 && s[i] + 1 == static_cast<Elem>(m.size()))
            s[i--] = 0;
        if (i < 0)
            break;
        ++s[i];
    }
    return DependenceModel(m, sig.vars(), std::move(team));
}

StandardModel drop_unnamed_G(const DependenceModel& m) {
    std::vector<std::vector<bool>> images;
    for (const auto& s : m.team) {
        std::vector<bool> img(m.base.size(), false);
        for (Elem e : s)
            img[e] = true;
        images.push_back(std::move(img));
    }
    StandardModel out;
    out.domain = m.base.domain;
    for (const auto& [name, rel] : m.base.relations) {
        Relation kept{rel.arity, {}};
        for (const auto& t : rel.tuples) {
            bool named = std::any_of(images.begin(), images.end(), [&](const auto& img) {
                return std::all_of(t.begin(), t.end(), [&](Elem e) { return img[e]; });
            });
            if (named)
                kept.tuples.insert(t);
        }
        out.relations.emplace(name, std::move(kept));
    }
    return out;
}

namespace {

// Calls fn for every tuple in {0..k-1}^n.
template <typename Fn>
void for_each_tuple(int k, int n, Fn&& fn) {
    std::vector<int> t(n, 0);
    while (true) {
        fn(t);
        int i = n - 1;
        while (i >= 0 && t[i] + 1 == k)
            t[i--] = 0;
        if (i < 0)
            return;
        ++t[i];
    }
}

} // namespace

Distinguished distinguish(const DependenceModel& m) {
    const int k = m.k();
    std::map<std::pair<Var, Elem>, Elem> ids;
    StandardModel base;
    auto id_of = [&](Var v, Elem e) {
        auto [it, fresh] = ids.emplace(std::pair{v, e}, static_cast<Elem>(base.domain.size()));
        if (fresh)
            base.domain.push_back(m.vars[v] + ":" + m.base.domain[e]);
        return it->second;
    };
    std::vector<Assignment> team;
    for (const auto& s : m.team) {
        Assignment d(k);
        for (Var v = 0; v < k; ++v)
            d[v] = id_of(v, s[v]);
        team.push_back(std::move(d));
    }
    for (const auto& [name, rel] : m.base.relations) {
        auto& out = base.relations[name];
        out.arity = rel.arity;
        for (const auto& s : m.team)
            for_each_tuple(k, rel.arity, [&](const std::vector<int>& us) {
                Tuple vals(us.size()), dvals(us.size());
                for (std::size_t i = 0; i < us.size(); ++i) {
                    vals[i] = s[us[i]];
                    dvals[i] = ids.at({us[i], s[us[i]]});
                }
                if (rel.tuples.contains(vals))
                    out.tuples.insert(dvals);
            });
    }
    DependenceModel dm(std::move(base), m.vars, team);
    Distinguished result{std::move(dm), {}};
    for (std::size_t i = 0; i < team.size(); ++i)
        result.relation.emplace_back(static_cast<int>(i), result.model.member_index(team[i]));
    return result;
}

bool is_distinguished(const DependenceModel& m) {
    std::vector<int> owner(m.base.size(), -1);
    for (const auto& s : m.team)
        for (Var v = 0; v < m.k(); ++v) {
            int& o = owner[s[v]];
            if (o == -1)
                o = v;
            else if (o != v)
                return false;
        }
    return true;
}

bool is_guarded_assignment(const StandardModel& m, const std::map<std::string, Elem>& s) {
    std::set<Elem> image;
    for (const auto& [x, e] : s)
        image.insert(e);
    if (image.size() <= 1)
        return true;
    for (const auto& [name, rel] : m.relations)
        for (const auto& t : rel.tuples)
            if (std::all_of(image.begin(), image.end(), [&](Elem e) {
                    return std::find(t.begin(), t.end(), e) != t.end();
                }))
                return true;
    return false;
}

Lifted lift_distinguished(const StandardModel& m, const Signature& sig,
                          const std::map<std::string, Elem>& s, const Caps& caps) {
    const int k = sig.k();
    int max_ar = 0;
    for (const auto& [name, rel] : m.relations)
        max_ar = std::max(max_ar, rel.arity);
    if (k < std::max(max_ar, sig.max_arity()))
        throw InputError("lift needs |V_LFD| >= the maximum relation arity");
    if (m.domain.empty())
        throw InputError("lift needs a nonempty domain");
    if (!is_guarded_assignment(m, s))
        throw InputError("assignment is not guarded");
    double team_size = std::pow(static_cast<double>(m.size()), k);
    if (team_size > static_cast<double>(caps.team))
        throw CapError("lifted team exceeds cap");

    const Elem d = static_cast<Elem>(m.size());
    auto pair_id = [k](Elem e, Var u) { return e * k + u; };
    StandardModel base;
    for (Elem e = 0; e < d; ++e)
        for (Var u = 0; u < k; ++u)
            base.domain.push_back(sig.vars()[u] + ":" + m.domain[e]);
    for (const auto& [name, rel] : m.relations) {
        auto& out = base.relations[name];
        out.arity = rel.arity;
        for (const auto& t : rel.tuples)
            for_each_tuple(k, rel.arity, [&](const std::vector<int>& us) {
                for (std::size_t i = 0; i < t.size(); ++i)
                    for (std::size_t j = 0; j < t.size(); ++j)
                        if (t[i] != t[j] && us[i] == us[j])
                            return;
                Tuple lifted(t.size());
                for (std::size_t i = 0; i < t.size(); ++i)
                    lifted[i] = pair_id(t[i], us[i]);
                out.tuples.insert(std::move(lifted));
            });
    }
    std::vector<Assignment> team;
    for_each_tuple(d, k, [&](const std::vector<int>& ms) {
        Assignment a(k);
        for (Var v = 0; v < k; ++v)
            a[v] = pair_id(ms[v], v);
        team.push_back(std::move(a));
    });

    // rho identifies exactly the variables that s identifies.
    std::set<Elem> image;
    for (const auto& [x, e] : s)
        image.insert(e);
    std::map<Elem, Var> slot;
    for (Elem e : image)
        slot.emplace(e, static_cast<Var>(slot.size()));
    Lifted out;
    for (const auto& [x, e] : s)
        out.rho[x] = slot.at(e);
    out.t.assign(k, -1);
    for (const auto& [e, v] : slot)
        out.t[v] = pair_id(e, v);
    for (Var v = 0; v < k; ++v)
        if (out.t[v] < 0)
            out.t[v] = pair_id(0, v);
    out.model = DependenceModel(std::move(base), sig.vars(), std::move(team));
    if (out.model.member_index(out.t) < 0)
        throw std::logic_error("lift: chosen assignment is not in the team");
    return out;
}

StandardModel expand_hat(const DependenceModel& m, const Signature& sig) {
    StandardModel out = to_standard_Tinv(m);
    for (VarSet v = 0; v <= sig.all(); ++v) {
        std::vector<Var> vs = sig.members(v);
        for (VarSet u = 0; u <= sig.all(); ++u) {
            auto& rel = out.relations[sig.dep_relation(v, u)];
            rel.arity = static_cast<int>(vs.size());
            for (std::size_t i = 0; i < m.team.size(); ++i) {
                if (!eval_dep(m, static_cast<int>(i), v, u))
                    continue;
                Tuple t;
                for (Var x : vs)
                    t.push_back(m.team[i][x]);
                rel.tuples.insert(std::move(t));
            }
        }
    }
    return out;
}

// JSON ------------------------------------------------------------------

namespace {

nlohmann::json relations_json(const StandardModel& m) {
    auto rels = nlohmann::json::object();
    for (const auto& [name, rel] : m.relations) {
        std::vector<std::vector<std::string>> tuples;
        for (const auto& t : rel.tuples) {
            std::vector<std::string> row;
            for (Elem e : t)
                row.push_back(m.domain[e]);
            tuples.push_back(std::move(row));
        }
        std::sort(tuples.begin(), tuples.end());
        rels[name] = {{"arity", rel.arity}, {"tuples", tuples}};
    }
    return rels;
}

} // namespace

nlohmann::json to_json(const StandardModel& m) {
    auto dom = m.domain;
    std::sort(dom.begin(), dom.end());
    return {{"domain", dom}, {"relations", relations_json(m)}};
}

nlohmann::json to_json(const DependenceModel& m) {
    auto j = to_json(m.base);
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : m.team) {
        std::vector<std::string> row;
        for (Elem e : s)
            row.push_back(m.base.domain[e]);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    auto team = nlohmann::json::array();
    for (const auto& row : rows) {
        auto obj = nlohmann::json::object();
        for (std::size_t v = 0; v < row.size(); ++v)
            obj[m.vars[v]] = row[v];
        team.push_back(std::move(obj));
    }
    j["team"] = std::move(team);
    j["vars"] = m.vars;
    return j;
}

StandardModel standard_model_from_json(const nlohmann::json& j) {
    StandardModel m;
    try {
        for (const auto& e : j.at("domain"))
            m.domain.push_back(e.get<std::string>());
        if (j.contains("relations"))
            for (const auto& [name, body] : j.at("relations").items()) {
                Relation rel;
                rel.arity = body.at("arity").get<int>();
                for (const auto& row : body.at("tuples")) {
                    Tuple t;
                    for (const auto& e : row)
                        t.push_back(m.element(e.get<std::string>()));
                    rel.tuples.insert(std::move(t));
                }
                m.relations.emplace(name, std::move(rel));
            }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed model JSON: ") + e.what());
    }
    m.validate();
    return m;
}

DependenceModel dependence_model_from_json(const nlohmann::json& j, const Signature& sig) {
    StandardModel base = standard_model_from_json(j);
    if (j.contains("vars") && j.at("vars").get<std::vector<std::string>>() != sig.vars())
        throw InputError("model vars do not match the signature's V_LFD");
    std::vector<Assignment> team;
    if (j.contains("team"))
        for (const auto& obj : j.at("team")) {
            Assignment a(sig.k(), -1);
            for (Var v = 0; v < sig.k(); ++v) {
                if (!obj.contains(sig.vars()[v]))
                    throw InputError("team member misses variable '" + sig.vars()[v] + "'");
                a[v] = base.element(obj.at(sig.vars()[v]).get<std::string>());
            }
            team.push_back(std::move(a));
        }
    return DependenceModel(std::move(base), sig.vars(), std::move(team));
}

Assignment assignment_from_json(const nlohmann::json& j, const DependenceModel& m) {
    Assignment a(m.k(), -1);
    for (Var v = 0; v < m.k(); ++v) {
        if (!j.contains(m.vars[v]))
            throw InputError("assignment misses variable '" + m.vars[v] + "'");
        a[v] = m.base.element(j.at(m.vars[v]).get<std::string>());
    }
    return a;
}

} // namespace lfdgf
