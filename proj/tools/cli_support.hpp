#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfdgf/error.hpp"
#include "lfdgf/mcheck.hpp"
#include "lfdgf/models.hpp"
#include "lfdgf/signature.hpp"

namespace lfdgf::cli {

using nlohmann::json;

// Flags shared by every subcommand.
struct Global {
    std::string vars;
    std::string sig;
    std::string caps;
    bool eq = false;
    bool pretty = false;
};

// "-" is stdin.
inline std::string read_text(const std::string& path) {
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline json read_json(const std::string& path) {
    try {
        return json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// Inline JSON when the argument starts with '{' or '[', a file otherwise.
inline json json_arg(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '['))
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw InputError(std::string("inline JSON: ") + e.what());
        }
    return read_json(arg);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline bool reserved_relation(const std::string& name) {
    return name == Signature::kTeamRelation || name.starts_with("R_{");
}

// Relation arities mentioned in formula text: NAME(args).
inline void scan_relations(const std::string& text, std::map<std::string, int>& rels) {
    static const std::regex atom(R"(([A-Za-z_][A-Za-z0-9_']*(?:\{[^}]*\}[A-Za-z0-9_']*)*)\s*\(([^()]*)\))");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), atom); it != std::sregex_iterator();
         ++it) {
        const std::string name = (*it)[1];
        const std::string args = (*it)[2];
        if (reserved_relation(name) || args.find_first_not_of(" \t") == std::string::npos)
            continue;
        const int arity = 1 + static_cast<int>(std::count(args.begin(), args.end(), ','));
        auto [pos, fresh] = rels.emplace(name, arity);
        if (!fresh && pos->second != arity)
            throw InputError("relation '" + name + "' used with arities " +
                             std::to_string(pos->second) + " and " + std::to_string(arity));
    }
}

inline void scan_relations(const json& model, std::map<std::string, int>& rels) {
    if (!model.contains("relations"))
        return;
    for (const auto& [name, rel] : model["relations"].items())
        if (!reserved_relation(name))
            rels.emplace(name, rel.at("arity").get<int>());
}

inline std::vector<std::string> vars_of_model(const json& model) {
    if (model.contains("vars"))
        return model["vars"].get<std::vector<std::string>>();
    if (model.contains("team") && !model["team"].empty()) {
        std::vector<std::string> out;
        for (const auto& [v, _] : model["team"].front().items())
            out.push_back(v);
        return out;
    }
    return {};
}

// --sig is a signature file (`rel P 2` / `vars x y`) or inline "P/1,Q/2".
// Without it, relations come from the formula text and model files. --vars
// overrides the variable list.
inline Signature resolve_signature(const Global& g, const std::vector<std::string>& texts,
                                   const std::vector<json>& models) {
    std::map<std::string, int> rels;
    std::vector<std::string> vars;
    if (!g.sig.empty()) {
        if (std::filesystem::exists(g.sig)) {
            const Signature s = parse_signature(read_text(g.sig));
            rels = s.relations();
            vars = s.vars();
        } else {
            for (const auto& item : split_list(g.sig)) {
                auto slash = item.find('/');
                if (slash == std::string::npos)
                    throw InputError("--sig: expected NAME/ARITY, got '" + item + "'");
                try {
                    rels[item.substr(0, slash)] = std::stoi(item.substr(slash + 1));
                } catch (const std::exception&) {
                    throw InputError("--sig: bad arity in '" + item + "'");
                }
            }
        }
    } else {
        for (const auto& t : texts)
            scan_relations(t, rels);
        for (const auto& m : models)
            scan_relations(m, rels);
    }
    if (!g.vars.empty())
        vars = split_list(g.vars);
    for (const auto& m : models)
        if (vars.empty())
            vars = vars_of_model(m);
    if (vars.empty())
        throw InputError("no LFD variables: pass --vars x,y,...");
    return Signature(rels, vars);
}

inline Caps resolve_caps(const Global& g) {
    Caps c = Caps::from_env();
    return g.caps.empty() ? c : Caps::parse(g.caps, c, "--caps");
}

inline json assignment_json(const DependenceModel& m, const Assignment& s) {
    json out = json::object();
    for (int v = 0; v < m.k(); ++v)
        out[m.vars[v]] = m.base.domain[s[v]];
    return out;
}

inline json assignment_json(const StandardModel& m, const FoAssignment& s) {
    json out = json::object();
    for (const auto& [x, e] : s)
        out[x] = m.domain[e];
    return out;
}

inline FoAssignment fo_assignment_from_json(const json& j, const StandardModel& m) {
    FoAssignment out;
    if (!j.is_object())
        throw InputError("assignment must be an object variable -> element");
    for (const auto& [x, e] : j.items())
        out[x] = m.element(e.get<std::string>());
    return out;
}

} // namespace lfdgf::cli
