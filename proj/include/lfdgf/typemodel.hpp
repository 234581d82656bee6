#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfdgf/closure.hpp"
#include "lfdgf/error.hpp"
#include "lfdgf/models.hpp"

namespace lfdgf {

// A subset of Cl(psi), bit i standing for closure member i.
using TypeBits = std::uint64_t;

inline bool has_bit(TypeBits t, int i) { return (t >> i) & 1u; }

// Cl(psi) plus the per-member tables the type predicates need.
class TypeSpace {
public:
    TypeSpace(const Lfd& psi, const Signature& sig, const Caps& caps = {});

    const Closure& closure() const { return cl_; }
    const Signature& signature() const { return cl_.signature(); }
    int size() const { return static_cast<int>(cl_.size()); }
    int root() const { return cl_.root_index(); }
    int k() const { return signature().k(); }
    std::size_t type_cap() const { return type_cap_; }

    // Members whose free variables lie inside v.
    TypeBits fragment_mask(VarSet v) const { return fragment_[v]; }
    bool sim(TypeBits a, TypeBits b, VarSet v) const { return ((a ^ b) & fragment_[v]) == 0; }
    // D^Delta_V
    VarSet dep_closure(TypeBits t, VarSet v) const;

    bool neg_consistent(TypeBits t) const;
    bool and_consistent(TypeBits t) const;
    bool e_consistent(TypeBits t) const;
    bool projection_ok(TypeBits t) const;
    bool transitivity_ok(TypeBits t) const;
    // The five conditions, plus true in every type when it is a member.
    bool is_type(TypeBits t) const;

    std::vector<int> members(TypeBits t) const;
    const std::vector<int>& exists_members() const { return exists_; }

private:
    Closure cl_;
    std::size_t type_cap_;
    std::vector<TypeBits> fragment_;
    std::vector<int> lhs_, rhs_;
    std::vector<int> exists_;
    int top_ = -1;
};

// All types, by constraint propagation: dependence structures first (closure
// operators on V_LFD), then free choices in size order with the Boolean and
// E-consistency bits derived. Throws CapError past space.type_cap().
std::vector<TypeBits> enumerate_types(const TypeSpace& space);

struct TypeModelVerdict {
    bool ok = true;
    bool for_psi = false; // some type contains psi
    std::string clause;   // "type", "witness", "universal"
    int type = -1;        // index into the checked set
    int formula = -1;     // closure index of the unwitnessed E_V phi
};

TypeModelVerdict is_type_model(const TypeSpace& space, const std::vector<TypeBits>& model);

struct SatResult {
    bool sat = false;
    std::vector<TypeBits> model; // passes is_type_model, contains psi when sat
    std::size_t types_enumerated = 0;
    std::size_t profiles = 0;
    // With all_profiles: every surviving profile whose types include psi.
    std::vector<std::vector<TypeBits>> alternatives;
};

// Type elimination per sentence profile. Stops at the first profile that
// certifies psi unless all_profiles is set.
SatResult sat_lfd(const TypeSpace& space, bool all_profiles = false);

// Bounded unraveling of a type model into a dependence model.
struct Unraveled {
    DependenceModel model;
    std::vector<TypeBits> node_type;
    std::vector<Assignment> values; // node -> assignment
    std::vector<int> member;        // node -> index in model.team
    std::vector<int> parent;   // -1 for roots
    std::vector<int> depth;
    std::vector<bool> expanded; // all demands served
    std::vector<std::string> path;
    int target = -1;           // root realizing the requested type
    int max_depth = 0;
    bool truncated = false;    // node cap reached

    // good[i][t]: truth of closure member i at node t provably equals
    // membership in node_type[t].
    std::vector<std::vector<bool>> good;
    std::vector<std::vector<bool>> pos; // member => true
};

// Unravels the part of `model` that can coexist with `target` (types that
// agree with it on the variables fixed by D_{} ). depth counts expansion
// rounds below the roots.
Unraveled unravel(const TypeSpace& space, const std::vector<TypeBits>& model, TypeBits target,
                  int depth, std::size_t node_cap);
// Deepens from the default (E-depth of psi + 1) until psi is certified at the
// target root or the node cap stops growth.
Unraveled unravel_adaptive(const TypeSpace& space, const std::vector<TypeBits>& model,
                           TypeBits target, std::size_t node_cap, int min_depth = 0);

// type^psi(M,s) = { phi in Cl | M,s |= tr_bullet(phi) }.
TypeBits type_of(const TypeSpace& space, const StandardModel& hat, const Assignment& s);
// Types over all A-tuples; InputError when hat does not satisfy setup(psi).
std::vector<TypeBits> build_type_model(const TypeSpace& space, const StandardModel& hat);

struct HResult {
    Unraveled unraveled;
    Assignment root;
    TypeBits root_type = 0;
};
HResult H(const TypeSpace& space, const StandardModel& hat, const Assignment& s, int depth,
          std::size_t node_cap);

nlohmann::json type_model_json(const TypeSpace& space, const std::vector<TypeBits>& model);

} // namespace lfdgf
