#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lfdgf/error.hpp"
#include "lfdgf/fo.hpp"
#include "lfdgf/signature.hpp"

namespace lfdgf {

using Elem = int;
using Tuple = std::vector<Elem>;

struct Relation {
    int arity = 0;
    std::set<Tuple> tuples;
    bool operator==(const Relation&) const = default;
};

// Finite first-order structure. Elements are indices into `domain`, which
// holds their printable names. Relations missing from `relations` are empty.
struct StandardModel {
    std::vector<std::string> domain;
    std::map<std::string, Relation> relations;

    std::size_t size() const { return domain.size(); }
    bool holds(const std::string& rel, const Tuple& t) const;
    // Index of a named element; throws InputError when absent.
    Elem element(std::string_view name) const;
    void add(const std::string& rel, Tuple t);
    void validate() const;
    bool operator==(const StandardModel&) const = default;
};

// Total assignment V_LFD -> domain, indexed by variable.
using Assignment = std::vector<Elem>;

// A standard model paired with a team. The team is kept sorted and
// duplicate-free, so member indices are canonical.
struct DependenceModel {
    StandardModel base;
    std::vector<std::string> vars;
    std::vector<Assignment> team;

    DependenceModel() = default;
    DependenceModel(StandardModel m, std::vector<std::string> vars, std::vector<Assignment> team);

    int k() const { return static_cast<int>(vars.size()); }
    // -1 when a is not in the team.
    int member_index(const Assignment& a) const;
    void validate() const;
    bool operator==(const DependenceModel&) const = default;
};

// T: extract the team from relation A and drop A.
DependenceModel from_standard_T(const StandardModel& hat, const Signature& sig);
// T^-1: interpret A as the team's value tuples.
StandardModel to_standard_Tinv(const DependenceModel& m);
// F: the full dependence model over M.
DependenceModel full_F(const StandardModel& m, const Signature& sig, const Caps& caps = {});
// G: keep only facts whose elements all lie in the image of one team member.
StandardModel drop_unnamed_G(const DependenceModel& m);

struct Distinguished {
    DependenceModel model;
    // Pairs (index in the input team, index in the output team).
    std::vector<std::pair<int, int>> relation;
};
Distinguished distinguish(const DependenceModel& m);
bool is_distinguished(const DependenceModel& m);

struct Lifted {
    DependenceModel model;
    VarMap rho;
    Assignment t;
};
// Distinguished model over Dom(M) x V_LFD whose G-image is GF-equivalent to
// (M, s) via t o rho. `s` maps first-order variables to elements of M.
Lifted lift_distinguished(const StandardModel& m, const Signature& sig,
                          const std::map<std::string, Elem>& s, const Caps& caps = {});
bool is_guarded_assignment(const StandardModel& m, const std::map<std::string, Elem>& s);

// Expansion to the expanded signature: A as the team, R^{V,U} as the tuples
// s(V) of members satisfying D_V U.
StandardModel expand_hat(const DependenceModel& m, const Signature& sig);

// Canonical JSON (sorted keys, sorted tuples).
nlohmann::json to_json(const StandardModel& m);
nlohmann::json to_json(const DependenceModel& m);
StandardModel standard_model_from_json(const nlohmann::json& j);
DependenceModel dependence_model_from_json(const nlohmann::json& j, const Signature& sig);
// Assignment given as {"x": "a", ...}.
Assignment assignment_from_json(const nlohmann::json& j, const DependenceModel& m);

} // namespace lfdgf
