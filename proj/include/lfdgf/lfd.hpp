#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "lfdgf/signature.hpp"

namespace lfdgf {

enum class LfdKind : std::uint8_t { Top, Atom, Dep, And, Not, Exists };

struct LfdNode;
using Lfd = std::shared_ptr<const LfdNode>;

// Immutable LFD formula node. Built only through the factory functions below,
// which precompute free variables, hash, size and E-nesting depth.
struct LfdNode {
    LfdKind kind;
    std::string rel;        // Atom
    std::vector<Var> args;  // Atom
    VarSet vars = 0;        // Dep: V, Exists: V
    Var dep = -1;           // Dep: u
    Lfd lhs, rhs;           // And: lhs & rhs; Not, Exists: lhs

    VarSet free = 0;
    std::size_t hash = 0;
    std::uint64_t size = 1; // tree size, saturating
    int edepth = 0;         // nesting depth of E modalities
};

namespace lfd {
Lfd top();
Lfd bottom(); // ~top
Lfd atom(std::string rel, std::vector<Var> args);
Lfd dep(VarSet v, Var u);
// D_V U as the conjunction of D_V u over u in U (top for empty U).
Lfd dep_set(VarSet v, VarSet u, int k);
Lfd conj(Lfd a, Lfd b);
Lfd neg(Lfd a);
Lfd exists(VarSet v, Lfd body);
// a | b, encoded as ~(~a & ~b).
Lfd disj(Lfd a, Lfd b);
Lfd disj_all(const std::vector<Lfd>& items);
Lfd conj_all(const std::vector<Lfd>& items);
} // namespace lfd

bool equal(const Lfd& a, const Lfd& b);
// Total structural order; used to canonicalize closures.
int compare(const Lfd& a, const Lfd& b);

struct LfdHash {
    std::size_t operator()(const Lfd& f) const { return f->hash; }
};
struct LfdEq {
    bool operator()(const Lfd& a, const Lfd& b) const { return equal(a, b); }
};

VarSet free_vars(const Lfd& f);
Lfd single_negation(const Lfd& f);
bool has_dep(const Lfd& f);

// Checks variables and atom arities against the signature.
void validate(const Lfd& f, const Signature& sig);

std::string print(const Lfd& f, const Signature& sig);

} // namespace lfdgf
