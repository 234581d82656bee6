#pragma once

#include <utility>
#include <vector>

#include "lfdgf/error.hpp"
#include "lfdgf/fo.hpp"
#include "lfdgf/lfd.hpp"
#include "lfdgf/signature.hpp"

namespace lfdgf {

// FO variable names: LFD variable v is the FO variable of the same name, its
// auxiliary copy is v followed by a prime.
std::string primed(const std::string& v);

// LFD -> FO over S + A. Dependence atoms use equality, so the result is
// outside GF whenever the input mentions D.
Fo tr(const Lfd& f, const Signature& sig);
// LFD -> GF over the expanded signature: D_V u becomes R_{V}_{u}(v..).
Fo tr_bullet(const Lfd& f, const Signature& sig);
// tr_bullet(D_V U): conjunction of the singleton R atoms, top for empty U.
Fo dep_atoms(VarSet v, VarSet u, const Signature& sig);
// A(v1..vk).
Fo team_atom(const Signature& sig);

struct SetupParts {
    std::vector<Fo> projection;   // one per V
    std::vector<Fo> transitivity; // one per (V,U,W)
    std::vector<Fo> transfer;     // one per (xi,V,U)
};
SetupParts setup_conjuncts(const Lfd& psi, const Signature& sig, std::size_t closure_cap = 64);
Fo setup(const Lfd& psi, const Signature& sig, std::size_t closure_cap = 64);
// tr_bullet(psi) & setup(psi) & A(v..)
Fo sigma(const Lfd& psi, const Signature& sig, std::size_t closure_cap = 64);

// GF -> LFD under rho. Handles the extended A, R and equality clauses.
// Throws InputError on unguarded quantifiers or when rho misses a free
// variable, CapError when the output tree exceeds node_cap.
Lfd tau(const Fo& f, const VarMap& rho, const Signature& sig,
        std::size_t node_cap = Caps{}.tau_nodes);
// Every rho: free(f) -> V_LFD with its translation, in lexicographic order.
std::vector<std::pair<VarMap, Lfd>> tau_all(const Fo& f, const Signature& sig,
                                            std::size_t node_cap = Caps{}.tau_nodes);

} // namespace lfdgf
