#include <algorithm>

#include <gtest/gtest.h>

#include "lfdgf/mcheck.hpp"
#include "lfdgf/models.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/parse.hpp"
#include "lfdgf/translate.hpp"
#include "lfdgf/typemodel.hpp"

using namespace lfdgf;

namespace {

const Signature kX({{"P", 1}}, {"x"});
const Signature kXY({{"P", 1}, {"Q", 2}}, {"x", "y"});

Signature corpus_sig(int k) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(k);
    return Signature({{"P", 1}, {"Q", 2}}, names);
}

// Every subset passing the five conditions, by exhaustive scan.
std::vector<TypeBits> types_by_scan(const TypeSpace& space) {
    std::vector<TypeBits> out;
    for (TypeBits t = 0; t < (TypeBits{1} << space.size()); ++t)
        if (space.is_type(t))
            out.push_back(t);
    return out;
}

std::vector<TypeBits> sorted(std::vector<TypeBits> v) {
    std::sort(v.begin(), v.end());
    return v;
}

TypeBits root_type(const TypeSpace& space, const std::vector<TypeBits>& model) {
    for (TypeBits t : model)
        if (has_bit(t, space.root()))
            return t;
    return 0;
}

} // namespace

TEST(EnumerateTypes, SingleAtomHasFourTypes) {
    const TypeSpace space(parse_lfd("P(x)", kX), kX);
    const auto types = enumerate_types(space);
    EXPECT_EQ(types.size(), 4u);
    EXPECT_EQ(sorted(types), types_by_scan(space));
}

TEST(EnumerateTypes, MatchesExhaustiveScan) {
    Rng rng(1);
    int compared = 0;
    while (compared < 60) {
        const Signature sig = corpus_sig(1 + compared % 2);
        const Lfd psi = random_lfd(rng, sig, {5, 2, true});
        const TypeSpace space(psi, sig);
        if (space.size() > 18)
            continue;
        ++compared;
        const auto types = enumerate_types(space);
        for (TypeBits t : types) {
            EXPECT_TRUE(space.neg_consistent(t));
            EXPECT_TRUE(space.and_consistent(t));
            EXPECT_TRUE(space.e_consistent(t));
            EXPECT_TRUE(space.projection_ok(t));
            EXPECT_TRUE(space.transitivity_ok(t));
        }
        EXPECT_EQ(sorted(types), types_by_scan(space)) << print(psi, sig);
    }
}

TEST(EnumerateTypes, ExistsConsistency) {
    const TypeSpace space(parse_lfd("E[] P(x)", kX), kX);
    const int p = space.closure().index_of(parse_lfd("P(x)", kX));
    const int e = space.closure().index_of(parse_lfd("E[] P(x)", kX));
    for (TypeBits t : enumerate_types(space))
        EXPECT_TRUE(!has_bit(t, p) || has_bit(t, e));
}

TEST(EnumerateTypes, CapEnforced) {
    Caps caps;
    caps.types = 3;
    const TypeSpace space(parse_lfd("P(x)", kX), kX, caps);
    EXPECT_THROW(enumerate_types(space), CapError);
}

TEST(Sim, Examples) {
    const TypeSpace space(parse_lfd("(P(x) & E[x] P(y))", kXY), kXY);
    const auto types = enumerate_types(space);
    bool found_differing = false;
    for (TypeBits a : types) {
        EXPECT_TRUE(space.sim(a, a, 0));
        for (TypeBits b : types) {
            EXPECT_EQ(space.sim(a, b, kXY.all()), a == b);
            if (space.sim(a, b, 0b01)) {
                EXPECT_EQ(space.dep_closure(a, 0b01), space.dep_closure(b, 0b01));
                found_differing |= a != b;
            }
        }
    }
    // Types that differ only on formulas mentioning y are still x-similar.
    EXPECT_TRUE(found_differing);
}

TEST(DepClosureType, ProjectionAndMinimalType) {
    const TypeSpace space(parse_lfd("Q(x,y)", kXY), kXY);
    bool saw_minimal = false;
    for (TypeBits t : enumerate_types(space)) {
        bool minimal = true;
        for (VarSet v = 0; v <= kXY.all(); ++v) {
            EXPECT_TRUE(subset(v, space.dep_closure(t, v)));
            minimal &= space.dep_closure(t, v) == v;
        }
        saw_minimal |= minimal;
    }
    EXPECT_TRUE(saw_minimal);
}

TEST(IsTypeModel, EmptyAndMutated) {
    const TypeSpace space(parse_lfd("(E[] P(x) & E[] ~P(x))", kX), kX);
    const TypeModelVerdict empty = is_type_model(space, {});
    EXPECT_TRUE(empty.ok);
    EXPECT_FALSE(empty.for_psi);

    const SatResult r = sat_lfd(space);
    ASSERT_TRUE(r.sat);
    const TypeModelVerdict good = is_type_model(space, r.model);
    EXPECT_TRUE(good.ok);
    EXPECT_TRUE(good.for_psi);
    // Drop the type that witnesses ~P(x).
    const int p = space.closure().index_of(parse_lfd("P(x)", kX));
    std::vector<TypeBits> cut;
    for (TypeBits t : r.model)
        if (has_bit(t, p))
            cut.push_back(t);
    const TypeModelVerdict bad = is_type_model(space, cut);
    EXPECT_FALSE(bad.ok);
    EXPECT_EQ(bad.clause, "witness");
}

TEST(SatLfd, Contradictions) {
    EXPECT_FALSE(sat_lfd(TypeSpace(parse_lfd("(E[] P(x) & ~E[] P(x))", kX), kX)).sat);
    const Lfd constant = parse_lfd("((D[] x & E[] P(x)) & E[] ~P(x))", kX);
    EXPECT_FALSE(sat_lfd(TypeSpace(constant, kX)).sat);
    EXPECT_FALSE(brute_sat_lfd(constant, kX, {.max_dom = 3, .max_team = 4}).found);
    for (const auto& [rho, f] : tau_all(parse_fo("(exists x . P(x) & ~exists y . P(y))"), kXY))
        EXPECT_FALSE(sat_lfd(TypeSpace(f, kXY)).sat);
}

TEST(SatLfd, SelfCertifyingAndAgreesWithBruteForce) {
    Rng rng(2);
    int sat = 0, unsat = 0;
    for (int i = 0; i < 150; ++i) {
        const Signature sig = corpus_sig(1 + i % 2);
        const Lfd psi = random_lfd(rng, sig, {6, 2, true});
        const TypeSpace space(psi, sig);
        const SatResult r = sat_lfd(space);
        const LfdSearch b = brute_sat_lfd(psi, sig, {.max_dom = 2, .max_team = 3});
        if (b.found) {
            EXPECT_TRUE(eval_lfd(b.found->model, b.found->s, psi));
            EXPECT_TRUE(r.sat) << print(psi, sig);
        }
        if (r.sat) {
            ++sat;
            const TypeModelVerdict v = is_type_model(space, r.model);
            EXPECT_TRUE(v.ok && v.for_psi);
        } else {
            ++unsat;
            EXPECT_FALSE(b.found) << print(psi, sig);
        }
    }
    EXPECT_GT(sat, 0);
    EXPECT_GT(unsat, 0);
}

TEST(Unravel, CertifiesSimpleFormula) {
    const Lfd psi = parse_lfd("(E[] P(x) & E[] ~P(x))", kX);
    const TypeSpace space(psi, kX);
    const SatResult r = sat_lfd(space);
    ASSERT_TRUE(r.sat);
    const Unraveled u = unravel_adaptive(space, r.model, root_type(space, r.model), 100);
    ASSERT_GE(u.target, 0);
    EXPECT_TRUE(u.pos[space.root()][u.target]);
    EXPECT_TRUE(eval_lfd(u.model, u.values[u.target], psi));
}

TEST(Unravel, DependenceAtomsAndAgreementClosure) {
    Rng rng(3);
    for (int i = 0; i < 80; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const Lfd psi = random_lfd(rng, sig, {8, 2, true});
        const TypeSpace space(psi, sig);
        const SatResult r = sat_lfd(space);
        if (!r.sat)
            continue;
        const Unraveled u = unravel(space, r.model, root_type(space, r.model), 3, 200);
        const Closure& cl = space.closure();
        for (std::size_t t = 0; t < u.node_type.size(); ++t) {
            if (u.expanded[t]) {
                for (VarSet v = 0; v <= sig.all(); ++v)
                    for (Var w = 0; w < sig.k(); ++w) {
                        EXPECT_EQ(eval_dep(u.model, u.member[t], v, singleton(w)),
                                  has_bit(u.node_type[t], cl.dep_index(v, w)));
                    }
            }
            for (std::size_t s = 0; s < u.node_type.size(); ++s) {
                const VarSet a = agreement_set(u.values[t], u.values[s]);
                EXPECT_EQ(space.dep_closure(u.node_type[t], a), a);
            }
        }
    }
}

TEST(Unravel, DepthMonotonicity) {
    const Lfd psi = parse_lfd("E[] (P(x) & E[x] ~Q(x,y))", kXY);
    const TypeSpace space(psi, kXY);
    const SatResult r = sat_lfd(space);
    ASSERT_TRUE(r.sat);
    const TypeBits target = root_type(space, r.model);
    std::size_t last = 0;
    for (int d = 1; d <= 4; ++d) {
        const Unraveled u = unravel(space, r.model, target, d, 400);
        std::size_t good = 0;
        for (int i = 0; i < space.size(); ++i)
            good += u.good[i][u.target];
        EXPECT_GE(good, last);
        last = good;
    }
}

TEST(TypeOf, ExpandHatRealizesModelTypes) {
    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const Lfd psi = random_lfd(rng, sig, {6, 2, true});
        const TypeSpace space(psi, sig);
        const StandardModel hat = expand_hat(m, sig);
        LfdEvaluator ev(m);
        std::vector<TypeBits> realized;
        for (std::size_t j = 0; j < m.team.size(); ++j) {
            TypeBits t = 0;
            for (int c = 0; c < space.size(); ++c)
                if (ev.eval(static_cast<int>(j), space.closure()[c]))
                    t |= TypeBits{1} << c;
            EXPECT_EQ(type_of(space, hat, m.team[j]), t);
            EXPECT_TRUE(space.neg_consistent(t));
            EXPECT_TRUE(space.projection_ok(t));
            realized.push_back(t);
        }
        std::sort(realized.begin(), realized.end());
        realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
        const auto built = build_type_model(space, hat);
        EXPECT_EQ(sorted(built), realized);
        EXPECT_TRUE(is_type_model(space, built).ok);
    }
}

TEST(BuildTypeModel, Preconditions) {
    const TypeSpace space(parse_lfd("P(x)", kX), kX);
    StandardModel hat;
    hat.domain = {"a"};
    hat.relations["A"].arity = 1;
    EXPECT_TRUE(build_type_model(space, hat).empty());
    hat.add("A", {0});
    // A-tuple present but no R facts: projection fails.
    EXPECT_THROW(build_type_model(space, hat), InputError);
    EXPECT_THROW(type_of(space, expand_hat(DependenceModel(hat, {"x"}, {{0}}), kX), {1}), InputError);
}

TEST(H, RootTypeAndTruth) {
    Rng rng(5);
    for (int i = 0; i < 60; ++i) {
        const Signature sig = corpus_sig(1 + i % 2);
        const DependenceModel m = random_dependence_model(rng, sig, 2, 3);
        const Lfd psi = random_lfd(rng, sig, {6, 2, true});
        const TypeSpace space(psi, sig);
        const StandardModel hat = expand_hat(m, sig);
        const HResult h = H(space, hat, m.team[0], psi->edepth + 1, 200);
        EXPECT_EQ(h.root_type, type_of(space, hat, m.team[0]));
        const Unraveled& u = h.unraveled;
        LfdEvaluator ev(u.model);
        for (int c = 0; c < space.size(); ++c)
            if (u.good[c][u.target]) {
                EXPECT_EQ(ev.eval(u.member[u.target], space.closure()[c]), has_bit(h.root_type, c));
            }
    }
}
