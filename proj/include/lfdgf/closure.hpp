#pragma once

#include <unordered_map>
#include <vector>

#include "lfdgf/lfd.hpp"
#include "lfdgf/signature.hpp"

namespace lfdgf {

// Cl(psi): subformulas of psi and every D_V u, closed under single negation,
// in a canonical order (tree size, then structural order) so that bit
// positions are stable across runs.
class Closure {
public:
    Closure(const Lfd& psi, const Signature& sig, std::size_t cap = 64);

    const Signature& signature() const { return sig_; }
    const Lfd& root() const { return root_; }
    std::size_t size() const { return items_.size(); }
    const Lfd& operator[](std::size_t i) const { return items_[i]; }
    const std::vector<Lfd>& items() const { return items_; }

    // -1 when f is not a member.
    int index_of(const Lfd& f) const;
    int root_index() const { return root_idx_; }
    int negation_of(int i) const { return negation_[i]; }
    int dep_index(VarSet v, Var u) const { return dep_idx_[v * sig_.k() + u]; }

private:
    Signature sig_;
    Lfd root_;
    std::vector<Lfd> items_;
    std::vector<int> negation_;
    std::vector<int> dep_idx_;
    std::unordered_map<Lfd, int, LfdHash, LfdEq> index_;
    int root_idx_ = -1;
};

} // namespace lfdgf
