#include "lfdgf/closure.hpp"

#include <algorithm>
#include <unordered_set>

#include "lfdgf/error.hpp"

namespace lfdgf {
namespace {

using LfdSet = std::unordered_set<Lfd, LfdHash, LfdEq>;

void add_subformulas(const Lfd& f, LfdSet& out) {
    if (!out.insert(f).second)
        return;
    if (f->lhs)
        add_subformulas(f->lhs, out);
    if (f->rhs)
        add_subformulas(f->rhs, out);
}

} // namespace

Closure::Closure(const Lfd& psi, const Signature& sig, std::size_t cap)
    : sig_(sig), root_(psi) {
    validate(psi, sig);
    if (cap > 64)
        throw CapError("closure cap cannot exceed 64 (types are 64-bit sets)");
    LfdSet base;
    add_subformulas(psi, base);
    for (VarSet v = 0; v <= sig.all(); ++v)
        for (Var u = 0; u < sig.k(); ++u)
            base.insert(lfd::dep(v, u));
    LfdSet all = base;
    for (const auto& f : base) {
        all.insert(single_negation(f));
        if (all.size() > cap)
            break;
    }
    if (all.size() > cap)
        throw CapError("closure exceeds cap of " + std::to_string(cap) + " formulas");

    items_.assign(all.begin(), all.end());
    std::sort(items_.begin(), items_.end(), [](const Lfd& a, const Lfd& b) {
        if (a->size != b->size)
            return a->size < b->size;
        return compare(a, b) < 0;
    });
    for (std::size_t i = 0; i < items_.size(); ++i)
        index_.emplace(items_[i], static_cast<int>(i));
    negation_.resize(items_.size());
    for (std::size_t i = 0; i < items_.size(); ++i)
        negation_[i] = index_of(single_negation(items_[i]));
    dep_idx_.assign(static_cast<std::size_t>(sig.all() + 1) * sig.k(), -1);
    for (VarSet v = 0; v <= sig.all(); ++v)
        for (Var u = 0; u < sig.k(); ++u)
            dep_idx_[v * sig.k() + u] = index_of(lfd::dep(v, u));
    root_idx_ = index_of(psi);
}

int Closure::index_of(const Lfd& f) const {
    auto it = index_.find(f);
    return it == index_.end() ? -1 : it->second;
}

} // namespace lfdgf
