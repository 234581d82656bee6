#include "lfdgf/signature.hpp"

#include <bit>
#include <cstdlib>
#include <set>
#include <sstream>

#include "lfdgf/error.hpp"

namespace lfdgf {

int popcount(VarSet s) { return std::popcount(s); }

Signature::Signature(std::map<std::string, int> relations, std::vector<std::string> vars)
    : relations_(std::move(relations)), vars_(std::move(vars)) {
    if (vars_.empty())
        throw InputError("signature needs at least one LFD variable");
    if (vars_.size() > kMaxLfdVars)
        throw CapError("at most " + std::to_string(kMaxLfdVars) + " LFD variables supported");
    std::set<std::string> seen;
    for (const auto& v : vars_)
        if (!seen.insert(v).second)
            throw InputError("duplicate LFD variable '" + v + "'");
    for (const auto& [name, ar] : relations_) {
        if (ar < 1)
            throw InputError("relation '" + name + "' must have arity >= 1");
        if (name == kTeamRelation || parse_dep_relation(name))
            throw InputError("relation name '" + name + "' is reserved for the expanded signature");
    }
}

std::optional<Var> Signature::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name)
            return static_cast<Var>(i);
    return std::nullopt;
}

std::optional<int> Signature::arity(std::string_view rel) const {
    auto it = relations_.find(std::string(rel));
    if (it == relations_.end())
        return std::nullopt;
    return it->second;
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& [name, ar] : relations_)
        if (!expanded_ || (name != kTeamRelation && !parse_dep_relation(name)))
            m = std::max(m, ar);
    return m;
}

std::vector<Var> Signature::members(VarSet s) const {
    std::vector<Var> out;
    for (Var v = 0; v < k(); ++v)
        if (contains(s, v))
            out.push_back(v);
    return out;
}

std::string Signature::render_set(VarSet s, std::string_view sep) const {
    std::string out;
    bool first = true;
    for (Var v : members(s)) {
        if (!first)
            out += sep;
        out += vars_[v];
        first = false;
    }
    return out;
}

std::string Signature::dep_relation(VarSet v, VarSet u) const {
    return "R_{" + render_set(v, ",") + "}_{" + render_set(u, ",") + "}";
}

std::optional<std::pair<VarSet, VarSet>>
Signature::parse_dep_relation(std::string_view name) const {
    auto parse_set = [&](std::string_view body) -> std::optional<VarSet> {
        VarSet s = 0;
        while (!body.empty()) {
            auto comma = body.find(',');
            auto item = body.substr(0, comma);
            auto idx = var_index(item);
            if (!idx)
                return std::nullopt;
            s |= singleton(*idx);
            if (comma == std::string_view::npos)
                break;
            body.remove_prefix(comma + 1);
        }
        return s;
    };
    if (!name.starts_with("R_{"))
        return std::nullopt;
    auto mid = name.find("}_{");
    if (mid == std::string_view::npos || !name.ends_with("}"))
        return std::nullopt;
    auto v = parse_set(name.substr(3, mid - 3));
    auto u = parse_set(name.substr(mid + 3, name.size() - mid - 4));
    if (!v || !u)
        return std::nullopt;
    // Only the canonical rendering counts.
    if (dep_relation(*v, *u) != name)
        return std::nullopt;
    return std::pair{*v, *u};
}

Signature Signature::expanded() const {
    if (expanded_)
        return *this;
    Signature out = *this;
    out.relations_[std::string(kTeamRelation)] = k();
    for (VarSet v = 0; v <= all(); ++v)
        for (VarSet u = 0; u <= all(); ++u)
            out.relations_[dep_relation(v, u)] = popcount(v);
    out.expanded_ = true;
    return out;
}

Signature parse_signature(std::string_view text) {
    std::map<std::string, int> rels;
    std::vector<std::string> vars;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw))
            continue;
        if (kw == "rel") {
            std::string name;
            int ar = 0;
            if (!(ls >> name >> ar))
                throw InputError("line " + std::to_string(lineno) + ": expected `rel NAME ARITY`");
            if (!rels.emplace(name, ar).second)
                throw InputError("duplicate relation '" + name + "'");
        } else if (kw == "vars") {
            std::string v;
            while (ls >> v)
                vars.push_back(v);
        } else {
            throw InputError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
        }
    }
    return Signature(std::move(rels), std::move(vars));
}

std::string print_signature(const Signature& sig) {
    std::string out;
    for (const auto& [name, ar] : sig.relations())
        out += "rel " + name + " " + std::to_string(ar) + "\n";
    out += "vars";
    for (const auto& v : sig.vars())
        out += " " + v;
    out += "\n";
    return out;
}

} // namespace lfdgf
