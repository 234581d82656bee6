#include <gtest/gtest.h>

#include "lfdgf/closure.hpp"
#include "lfdgf/error.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/parse.hpp"
#include "lfdgf/translate.hpp"

using namespace lfdgf;

namespace {

const Signature kXY({{"P", 1}, {"Q", 2}, {"G", 2}}, {"x", "y"});
const Signature kX({{"P", 1}}, {"x"});

VarSet vars(const Signature& sig, std::initializer_list<const char*> names) {
    VarSet s = 0;
    for (const char* n : names)
        s |= singleton(*sig.var_index(n));
    return s;
}

} // namespace

TEST(Signature, RejectsBadDeclarations) {
    EXPECT_THROW(Signature({{"P", 1}}, {}), InputError);
    EXPECT_THROW(Signature({{"P", 1}}, {"x", "x"}), InputError);
    EXPECT_THROW(Signature({{"P", 0}}, {"x"}), InputError);
    EXPECT_THROW(Signature({{"A", 1}}, {"x"}), InputError);
    EXPECT_THROW(Signature({{"R_{x}_{x}", 1}}, {"x"}), InputError);
}

TEST(Signature, ExpandedSignature) {
    const Signature e = kXY.expanded();
    EXPECT_EQ(e.arity("A"), 2);
    EXPECT_EQ(e.arity("R_{x}_{y}"), 1);
    EXPECT_EQ(e.arity("R_{x,y}_{}"), 2);
    EXPECT_EQ(e.arity("R_{}_{x}"), 0);
    // Base relations plus A plus one R per pair of subsets.
    EXPECT_EQ(e.relations().size(), kXY.relations().size() + 1 + 16);
    auto p = e.parse_dep_relation("R_{y}_{x,y}");
    ASSERT_TRUE(p);
    EXPECT_EQ(p->first, vars(kXY, {"y"}));
    EXPECT_EQ(p->second, vars(kXY, {"x", "y"}));
    EXPECT_FALSE(e.parse_dep_relation("R_{y,x}_{x}")); // not canonical order
}

TEST(Signature, TextRoundTrip) {
    const Signature s = parse_signature("rel P 1\nrel Q 2  # binary\nvars x y z\n");
    EXPECT_EQ(s.k(), 3);
    EXPECT_EQ(s.arity("Q"), 2);
    EXPECT_EQ(parse_signature(print_signature(s)), s);
    EXPECT_THROW(parse_signature("rel P\nvars x"), InputError);
}

TEST(FreeVarsLfd, Examples) {
    EXPECT_EQ(free_vars(parse_lfd("Q(x,y)", kXY)), vars(kXY, {"x", "y"}));
    EXPECT_EQ(free_vars(parse_lfd("E[x] P(y)", kXY)), vars(kXY, {"x"}));
    EXPECT_EQ(free_vars(parse_lfd("(D[] x & ~P(y))", kXY)), vars(kXY, {"y"}));
    EXPECT_EQ(free_vars(parse_lfd("D[x] y", kXY)), vars(kXY, {"x"}));
}

TEST(FreeVarsFo, Examples) {
    EXPECT_EQ(free_vars(parse_fo("exists y . (G(x,y) & P(y))")), (FoVars{"x"}));
    EXPECT_EQ(free_vars(parse_fo("(P(x) & ~Q(y))")), (FoVars{"x", "y"}));
    EXPECT_EQ(free_vars(parse_fo("x = y", nullptr, true)), (FoVars{"x", "y"}));
}

TEST(Parse, EqualityNeedsMode) {
    EXPECT_THROW(parse_fo("x = y"), InputError);
}

TEST(Parse, LfdSugar) {
    const Lfd setdep = parse_lfd("D[x][x y]", kXY);
    EXPECT_TRUE(equal(setdep, parse_lfd("(D[x] x & D[x] y)", kXY)));
    EXPECT_TRUE(equal(parse_lfd("(P(x) | P(y))", kXY), parse_lfd("~(~P(x) & ~P(y))", kXY)));
    EXPECT_TRUE(equal(parse_lfd("(P(x) -> P(y))", kXY), parse_lfd("~(P(x) & ~P(y))", kXY)));
    EXPECT_TRUE(equal(parse_lfd("false", kXY), parse_lfd("~true", kXY)));
}

TEST(Parse, LfdErrors) {
    EXPECT_THROW(parse_lfd("D[x] y", kX), InputError);
    EXPECT_THROW(parse_lfd("P(x,x)", kX), InputError);
    EXPECT_THROW(parse_lfd("S(x)", kX), InputError);
    EXPECT_THROW(parse_lfd("(P(x) &", kX), InputError);
}

TEST(Parse, ForallIsNegatedExists) {
    const Fo a = parse_fo("forall y . (G(x,y) -> P(y))");
    const Fo b = parse_fo("~exists y . (G(x,y) & ~P(y))");
    EXPECT_EQ(print(a), print(b));
}

TEST(Closure, SingleAtom) {
    const Closure cl(parse_lfd("P(x)", kX), kX);
    EXPECT_EQ(cl.size(), 6u);
    for (const char* f : {"P(x)", "~P(x)", "D[] x", "~D[] x", "D[x] x", "~D[x] x"})
        EXPECT_GE(cl.index_of(parse_lfd(f, kX)), 0) << f;
}

TEST(Closure, ExistsAtom) {
    const Closure cl(parse_lfd("E[] P(x)", kX), kX);
    EXPECT_EQ(cl.size(), 8u);
    for (const char* f : {"P(x)", "E[] P(x)", "D[] x", "~D[] x", "D[x] x", "~D[x] x"})
        EXPECT_GE(cl.index_of(parse_lfd(f, kX)), 0) << f;
}

TEST(Closure, CapEnforced) {
    const Lfd big = parse_lfd("(E[] P(x) & (E[x] Q(x,y) & (E[y] P(y) & ~E[] Q(y,x))))", kXY);
    EXPECT_THROW(Closure(big, kXY, 8), CapError);
}

TEST(Closure, DependenceAtomCountAndIdempotence) {
    Rng rng(11);
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::string> names{"x", "y", "z"};
        names.resize(k);
        const Signature sig({{"P", 1}, {"Q", 2}}, names);
        for (int i = 0; i < 60; ++i) {
            const Lfd psi = random_lfd(rng, sig, {6, 2, true});
            const Closure cl(psi, sig);
            int deps = 0;
            for (const Lfd& f : cl.items())
                deps += f->kind == LfdKind::Dep;
            EXPECT_EQ(deps, k << k);
            for (const Lfd& f : cl.items()) {
                const Closure sub(f, sig);
                for (const Lfd& g : sub.items())
                    ASSERT_GE(cl.index_of(g), 0) << print(g, sig) << " in Cl(" << print(f, sig) << ")";
            }
            for (std::size_t j = 0; j < cl.size(); ++j)
                EXPECT_TRUE(equal(cl[cl.negation_of(static_cast<int>(j))], single_negation(cl[j])));
        }
    }
}

TEST(SingleNegation, Examples) {
    EXPECT_TRUE(equal(single_negation(parse_lfd("~P(x)", kX)), parse_lfd("P(x)", kX)));
    EXPECT_TRUE(equal(single_negation(parse_lfd("P(x)", kX)), parse_lfd("~P(x)", kX)));
    EXPECT_TRUE(equal(single_negation(parse_lfd("~~P(x)", kX)), parse_lfd("~P(x)", kX)));
}

TEST(Guardedness, Examples) {
    EXPECT_EQ(is_guarded(parse_fo("exists y . (G(x,y) & P(y))")), Guardedness::GF);
    EXPECT_NE(is_guarded(parse_fo("(exists x . P(x) & ~exists y . P(y))")), Guardedness::NotGF);
    EXPECT_EQ(is_guarded(parse_fo("exists y . (P(x) & Q(y))")), Guardedness::NotGF);
    EXPECT_EQ(is_guarded(parse_fo("exists x y . Q(x,y)")), Guardedness::GF);
}

TEST(Guardedness, GuardedExistsChecksGuard) {
    EXPECT_THROW(fo::guarded_exists(fo::atom("P", {"y"}), {"y"}, fo::atom("Q", {"x", "y"})),
                 InputError);
    EXPECT_NO_THROW(fo::guarded_exists(fo::atom("G", {"x", "y"}), {"y"}, fo::atom("P", {"y"})));
}

TEST(PrintParse, LfdRoundTrip) {
    Rng rng(5);
    for (int k = 1; k <= 3; ++k) {
        std::vector<std::string> names{"x", "y", "z"};
        names.resize(k);
        const Signature sig({{"P", 1}, {"Q", 2}}, names);
        for (int i = 0; i < 300; ++i) {
            const Lfd f = random_lfd(rng, sig, {10, 3, true});
            const std::string text = print(f, sig);
            const Lfd g = parse_lfd(text, sig);
            ASSERT_TRUE(equal(f, g)) << text;
            EXPECT_EQ(print(g, sig), text);
        }
    }
}

TEST(PrintParse, GfRoundTrip) {
    Rng rng(6);
    const Signature sig({{"P", 1}, {"Q", 2}}, {"x", "y"});
    for (int i = 0; i < 300; ++i) {
        const Fo f = random_gf(rng, sig, {"a"}, {10, 2});
        const std::string text = print(f);
        const Fo g = parse_fo(text, &sig);
        EXPECT_EQ(print(g), text);
        EXPECT_TRUE(is_gf(g)) << text;
        EXPECT_EQ(free_vars(g), free_vars(f));
    }
}

TEST(PrintParse, WhitespaceInsensitive) {
    EXPECT_TRUE(equal(parse_lfd("  E[ x   y ]   ( P(x)&D[x]y )", kXY), parse_lfd("E[x y] (P(x) & D[x] y)", kXY)));
}

TEST(Guardedness, TrOfDependenceFreeFormulaIsGuarded) {
    Rng rng(8);
    const Signature sig({{"P", 1}, {"Q", 2}}, {"x", "y", "z"});
    for (int i = 0; i < 200; ++i) {
        const Lfd f = random_lfd(rng, sig, {10, 3, false});
        ASSERT_FALSE(has_dep(f));
        EXPECT_TRUE(is_gf(tr(f, sig))) << print(f, sig);
    }
}
