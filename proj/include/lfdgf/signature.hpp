#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lfdgf {

// Index of an LFD variable in Signature::vars().
using Var = int;
// Set of LFD variables as a bitmask over variable indices.
using VarSet = std::uint32_t;

inline constexpr int kMaxLfdVars = 6;

inline bool contains(VarSet s, Var v) { return (s >> v) & 1u; }
inline VarSet singleton(Var v) { return VarSet{1} << v; }
inline bool subset(VarSet a, VarSet b) { return (a & ~b) == 0; }
int popcount(VarSet s);

// Relational signature plus the ordered LFD variable list.
class Signature {
public:
    Signature() = default;
    Signature(std::map<std::string, int> relations, std::vector<std::string> vars);

    int k() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<std::string, int>& relations() const { return relations_; }
    VarSet all() const { return k() == 32 ? ~VarSet{0} : (VarSet{1} << k()) - 1; }

    std::optional<Var> var_index(std::string_view name) const;
    std::optional<int> arity(std::string_view rel) const;
    int max_arity() const;

    // Members of s in canonical (declaration) order.
    std::vector<Var> members(VarSet s) const;
    std::string render_set(VarSet s, std::string_view sep) const;

    // Expanded signature: team relation A plus R^{V,U} for all V,U.
    static constexpr std::string_view kTeamRelation = "A";
    std::string dep_relation(VarSet v, VarSet u) const;
    // Inverse of dep_relation; nullopt if the name is not of that shape.
    std::optional<std::pair<VarSet, VarSet>> parse_dep_relation(std::string_view name) const;
    Signature expanded() const;
    bool is_expanded() const { return expanded_; }

    bool operator==(const Signature&) const = default;

private:
    std::map<std::string, int> relations_;
    std::vector<std::string> vars_;
    bool expanded_ = false;
};

// Reads the `rel P 2` / `vars x y z` text format.
Signature parse_signature(std::string_view text);
std::string print_signature(const Signature& sig);

} // namespace lfdgf
