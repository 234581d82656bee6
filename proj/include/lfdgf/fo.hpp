#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lfdgf/signature.hpp"

namespace lfdgf {

enum class FoKind : std::uint8_t { Top, Atom, Eq, Not, And, Exists };

struct FoNode;
using Fo = std::shared_ptr<const FoNode>;
using FoVars = std::set<std::string>;

// Immutable first-order formula node.
//
// Exists carries an optional guard atom. fo::exists() normalizes
// `exists y . (G & f)` into guarded form whenever G is an atom mentioning all
// of y and covering free(f); the body of a guarded quantifier is then f alone
// (top when the quantified formula was just the guard).
struct FoNode {
    FoKind kind;
    std::string rel;               // Atom
    std::vector<std::string> args; // Atom: arguments; Eq: two variables
    std::vector<std::string> bound; // Exists
    Fo guard;                       // Exists (may be null)
    Fo lhs, rhs;                    // And: lhs & rhs; Not, Exists: lhs

    FoVars free;
    std::uint64_t size = 1;
};

namespace fo {
Fo top();
Fo bottom();
Fo atom(std::string rel, std::vector<std::string> args);
Fo eq(std::string x, std::string y);
Fo neg(Fo a);
Fo conj(Fo a, Fo b);
Fo conj_all(const std::vector<Fo>& items);
Fo disj(Fo a, Fo b);
Fo implies(Fo a, Fo b);
// Existential quantifier; normalizes into guarded form when possible.
Fo exists(std::vector<std::string> bound, Fo body);
// forall y (a -> b)  ==  ~exists y (a & ~b)
Fo forall(std::vector<std::string> bound, Fo body);
// exists y (guard & body) with an explicit guard; throws if the guard
// condition fails.
Fo guarded_exists(Fo guard, std::vector<std::string> bound, Fo body);
} // namespace fo

// rho: first-order variable -> LFD variable.
using VarMap = std::map<std::string, Var>;

enum class Guardedness { GF, SelfGuarded, NotGF };

const FoVars& free_vars(const Fo& f);
Guardedness is_guarded(const Fo& f);
bool is_gf(const Fo& f);
bool uses_equality(const Fo& f);
std::set<std::string> relations_of(const Fo& f);
int max_atom_arity(const Fo& f);

void validate(const Fo& f, const Signature& sig, bool equality_mode);

std::string print(const Fo& f);

} // namespace lfdgf
