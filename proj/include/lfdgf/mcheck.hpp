#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lfdgf/fo.hpp"
#include "lfdgf/lfd.hpp"
#include "lfdgf/models.hpp"

namespace lfdgf {

// LFD truth over a fixed dependence model. Results are memoized per
// (subformula, team member), so evaluating many formulas that share
// subterms, or DAG-shaped formulas, stays linear in their node count.
class LfdEvaluator {
public:
    explicit LfdEvaluator(const DependenceModel& m);

    bool eval(int member, const Lfd& f);
    bool eval(const Assignment& s, const Lfd& f);

private:
    const DependenceModel& m_;
    std::vector<std::vector<VarSet>> agree_;
    std::unordered_map<const LfdNode*, std::pair<Lfd, std::vector<std::int8_t>>> memo_;
};

// Throws InputError when s is not a team member.
bool eval_lfd(const DependenceModel& m, const Assignment& s, const Lfd& f);
// D_V U at the given member: every team member agreeing on V agrees on U.
bool eval_dep(const DependenceModel& m, int member, VarSet v, VarSet u);
VarSet agreement_set(const Assignment& s, const Assignment& t);
// D_V^s: the variables locally determined by V at s.
VarSet dep_closure(const DependenceModel& m, int member, VarSet v);

// Partial first-order assignment.
using FoAssignment = std::map<std::string, Elem>;

// Tarskian truth. Guarded quantifiers iterate the guard relation.
// Throws InputError on an unassigned free variable.
bool eval_fo(const StandardModel& m, const FoAssignment& s, const Fo& f);

// Pairs of team-member indices.
using BisimRelation = std::vector<std::pair<int, int>>;

struct BisimVerdict {
    bool ok = true;
    std::string clause; // "total", "atom", "forth", "back"
    std::pair<int, int> pair{-1, -1};
    std::string detail;
};

BisimVerdict check_dep_bisim(const DependenceModel& a, const DependenceModel& b,
                             const BisimRelation& z, const Signature& sig);
// Largest dependence bisimulation, or nullopt when it is not total.
std::optional<BisimRelation> greatest_dep_bisim(const DependenceModel& a,
                                                const DependenceModel& b, const Signature& sig);

} // namespace lfdgf
