#include <set>

#include <gtest/gtest.h>

#include "lfdgf/closure.hpp"
#include "lfdgf/mcheck.hpp"
#include "lfdgf/models.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/parse.hpp"
#include "lfdgf/translate.hpp"

using namespace lfdgf;

namespace {

const Signature kXY({{"P", 1}, {"Q", 2}}, {"x", "y"});
const Signature kX({{"P", 1}}, {"x"});

Signature corpus_sig(int k) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(k);
    return Signature({{"P", 1}, {"Q", 2}}, names);
}

FoAssignment fo_assignment(const Signature& sig, const Assignment& s) {
    FoAssignment out;
    for (Var v = 0; v < sig.k(); ++v)
        out[sig.vars()[v]] = s[v];
    return out;
}

void collect_vars(const Fo& f, std::set<std::string>& out) {
    if (!f)
        return;
    out.insert(f->args.begin(), f->args.end());
    out.insert(f->bound.begin(), f->bound.end());
    collect_vars(f->guard, out);
    collect_vars(f->lhs, out);
    collect_vars(f->rhs, out);
}

// Every quantifier is guarded by the team atom.
bool guarded_by_team(const Fo& f) {
    if (!f)
        return true;
    if (f->kind == FoKind::Exists && (!f->guard || f->guard->rel != "A"))
        return false;
    return guarded_by_team(f->lhs) && guarded_by_team(f->rhs);
}

std::set<std::string> printed(const std::vector<Fo>& fs) {
    std::set<std::string> out;
    for (const auto& f : fs)
        out.insert(print(f));
    return out;
}

} // namespace

TEST(Tr, Examples) {
    EXPECT_EQ(print(tr(parse_lfd("E[x] P(y)", kXY), kXY)), "exists y . (A(x,y) & P(y))");
    EXPECT_EQ(print(tr(parse_lfd("Q(x,y)", kXY), kXY)), "Q(x,y)");
    EXPECT_EQ(primed("x"), "x'");
}

TEST(Tr, DependenceClauseUsesEquality) {
    const Fo f = tr(parse_lfd("D[x] y", kXY), kXY);
    EXPECT_TRUE(uses_equality(f));
    EXPECT_EQ(free_vars(f), (FoVars{"x", "y"}));
}

TEST(Tr, CorrectOnRandomModels) {
    Rng rng(1);
    for (int i = 0; i < 300; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const Lfd psi = random_lfd(rng, sig, {8, 3, true});
        const Fo f = fo::conj(tr(psi, sig), team_atom(sig));
        const StandardModel hat = to_standard_Tinv(m);
        LfdEvaluator ev(m);
        for (std::size_t j = 0; j < m.team.size(); ++j)
            EXPECT_EQ(ev.eval(static_cast<int>(j), psi), eval_fo(hat, fo_assignment(sig, m.team[j]), f))
                << print(psi, sig);
    }
}

TEST(TrBullet, Examples) {
    EXPECT_EQ(print(tr_bullet(parse_lfd("D[x] y", kXY), kXY)), "R_{x}_{y}(x)");
    EXPECT_EQ(print(tr_bullet(parse_lfd("D[] x", kXY), kXY)), "R_{}_{x}()");
}

TEST(TrBullet, AgreesWithTrWithoutDependenceAndIsGuarded) {
    Rng rng(2);
    for (int i = 0; i < 300; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const Lfd plain = random_lfd(rng, sig, {10, 3, false});
        EXPECT_EQ(print(tr_bullet(plain, sig)), print(tr(plain, sig)));
        const Lfd any = random_lfd(rng, sig, {10, 3, true});
        EXPECT_TRUE(is_gf(tr_bullet(any, sig))) << print(any, sig);
    }
}

TEST(TrBullet, CommutesWithBooleans) {
    const Lfd a = parse_lfd("E[x] P(y)", kXY), b = parse_lfd("D[y] x", kXY);
    EXPECT_EQ(print(tr_bullet(lfd::conj(a, b), kXY)), print(fo::conj(tr_bullet(a, kXY), tr_bullet(b, kXY))));
    EXPECT_EQ(print(tr_bullet(lfd::neg(a), kXY)), print(fo::neg(tr_bullet(a, kXY))));
}

TEST(TrBullet, ExpandHatCorrectness) {
    Rng rng(3);
    for (int i = 0; i < 300; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const Lfd psi = random_lfd(rng, sig, {8, 3, true});
        const StandardModel hat = expand_hat(m, sig);
        const Fo f = fo::conj(tr_bullet(psi, sig), team_atom(sig));
        LfdEvaluator ev(m);
        for (std::size_t j = 0; j < m.team.size(); ++j)
            EXPECT_EQ(ev.eval(static_cast<int>(j), psi), eval_fo(hat, fo_assignment(sig, m.team[j]), f));
    }
}

TEST(Setup, CountsForSingleAtom) {
    const SetupParts p = setup_conjuncts(parse_lfd("P(x)", kX), kX);
    EXPECT_EQ(p.projection.size(), 2u);
    EXPECT_EQ(p.transitivity.size(), 8u);
    // Non-decomposable members: P(x), D[] x, D[x] x.
    EXPECT_EQ(p.transfer.size(), 3u * 4u);
}

TEST(Setup, CountsFollowTheFormula) {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const int k = 1 + i % 3;
        const Signature sig = corpus_sig(k);
        const Lfd psi = random_lfd(rng, sig, {6, 2, true});
        std::size_t nondecomposable = 0;
        const Closure cl(psi, sig);
        for (const Lfd& f : cl.items())
            nondecomposable += f->kind != LfdKind::And && f->kind != LfdKind::Not;
        const SetupParts p = setup_conjuncts(psi, sig);
        EXPECT_EQ(p.projection.size(), std::size_t{1} << k);
        EXPECT_EQ(p.transitivity.size(), std::size_t{1} << (3 * k));
        EXPECT_EQ(p.transfer.size(), nondecomposable << (2 * k));
    }
}

TEST(Setup, ConjunctionWithNegationMergesConjuncts) {
    const Lfd a = parse_lfd("E[x] P(y)", kXY), b = parse_lfd("(D[y] x & Q(x,y))", kXY);
    const SetupParts both = setup_conjuncts(lfd::conj(a, lfd::neg(b)), kXY);
    const SetupParts pa = setup_conjuncts(a, kXY), pb = setup_conjuncts(b, kXY);
    std::set<std::string> expect = printed(pa.transfer);
    for (const auto& s : printed(pb.transfer))
        expect.insert(s);
    EXPECT_EQ(printed(both.transfer), expect);
    EXPECT_EQ(printed(both.projection), printed(pa.projection));
    EXPECT_EQ(printed(both.transitivity), printed(pb.transitivity));
}

TEST(Sigma, ShapeAndVariables) {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const Lfd psi = random_lfd(rng, sig, {6, 2, true});
        const Fo s = sigma(psi, sig);
        EXPECT_TRUE(is_gf(s));
        EXPECT_TRUE(guarded_by_team(s));
        std::set<std::string> vars;
        collect_vars(s, vars);
        EXPECT_EQ(vars, std::set<std::string>(sig.vars().begin(), sig.vars().end()));
    }
}

TEST(Tau, PaperSentenceExample) {
    const Fo f = parse_fo("(exists x . P(x) & ~exists y . P(y))");
    const Lfd expect = parse_lfd("((E[] P(x) | E[] P(y)) & ~(E[] P(x) | E[] P(y)))", kXY);
    EXPECT_TRUE(equal(tau(f, {}, kXY), expect)) << print(tau(f, {}, kXY), kXY);
}

TEST(Tau, TeamAtomClause) {
    const Signature e = kXY.expanded();
    const Fo a = parse_fo("A(u,w)", &e);
    EXPECT_TRUE(equal(tau(a, {{"u", 0}, {"w", 1}}, e), lfd::top()));
    EXPECT_TRUE(equal(tau(a, {{"u", 1}, {"w", 0}}, e), lfd::bottom()));
    EXPECT_TRUE(equal(tau(a, {{"u", 0}, {"w", 0}}, e), lfd::bottom()));
}

TEST(Tau, DependenceRelationClause) {
    const Signature e = kXY.expanded();
    const Fo r = parse_fo("R_{x}_{y}(u)", &e);
    EXPECT_TRUE(equal(tau(r, {{"u", 0}}, e), parse_lfd("D[x] y", kXY)));
    EXPECT_TRUE(equal(tau(r, {{"u", 1}}, e), lfd::bottom()));
}

TEST(Tau, DependenceRelationClauseIsCorrectOnDistinguishedModels) {
    Rng rng(6);
    const Signature sig = corpus_sig(2);
    const Signature e = sig.expanded();
    for (int i = 0; i < 200; ++i) {
        const DependenceModel m = random_distinguished_model(rng, sig, 3, 4);
        DependenceModel hat_m = m;
        hat_m.base = expand_hat(m, sig);
        const StandardModel g = drop_unnamed_G(hat_m);
        for (VarSet v = 1; v <= sig.all(); ++v)
            for (VarSet u = 0; u <= sig.all(); ++u) {
                std::vector<std::string> args;
                for (std::size_t n = 0; n < sig.members(v).size(); ++n)
                    args.push_back("a" + std::to_string(n));
                const Fo atom = fo::atom(sig.dep_relation(v, u), args);
                for (const auto& [rho, lf] : tau_all(atom, e)) {
                    for (std::size_t j = 0; j < m.team.size(); ++j) {
                        FoAssignment s;
                        for (const auto& [x, w] : rho)
                            s[x] = m.team[j][w];
                        EXPECT_EQ(eval_lfd(m, m.team[j], lf), eval_fo(g, s, atom)) << print(atom);
                    }
                }
            }
    }
}

TEST(Tau, EqualityClause) {
    const Fo f = parse_fo("u = w", nullptr, true);
    EXPECT_TRUE(equal(tau(f, {{"u", 0}, {"w", 0}}, kXY), lfd::top()));
    EXPECT_TRUE(equal(tau(f, {{"u", 0}, {"w", 1}}, kXY), lfd::bottom()));
}

TEST(Tau, Errors) {
    EXPECT_THROW(tau(parse_fo("exists y . (P(x) & Q(y,y))"), {{"x", 0}}, kXY), InputError);
    EXPECT_THROW(tau(parse_fo("P(u)"), {}, kXY), InputError);
    const Fo deep = parse_fo("exists a b . (Q(a,b) & exists c . (Q(b,c) & exists d . (Q(c,d) & P(d))))");
    EXPECT_THROW(tau(deep, {}, kXY, 10), CapError);
}

TEST(Tau, CommutesWithNegation) {
    const Fo f = parse_fo("exists b . (Q(a,b) & P(b))");
    const VarMap rho{{"a", 1}};
    EXPECT_TRUE(equal(tau(fo::neg(f), rho, kXY), lfd::neg(tau(f, rho, kXY))));
}

TEST(TauAll, Enumeration) {
    EXPECT_EQ(tau_all(parse_fo("exists a . P(a)"), kXY).size(), 1u);
    const auto two = tau_all(parse_fo("Q(a,b)"), kXY);
    ASSERT_EQ(two.size(), 4u);
    EXPECT_EQ(print(two[0].second, kXY), "Q(x,x)");
    EXPECT_EQ(print(two[3].second, kXY), "Q(y,y)");
    EXPECT_THROW(tau_all(parse_fo("Q(a,b)"), kX), InputError);
}

TEST(Tau, CorrectOnDistinguishedModels) {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        const Signature sig = corpus_sig(2 + i % 2);
        const DependenceModel m = random_distinguished_model(rng, sig, 3, 4);
        const StandardModel g = drop_unnamed_G(m);
        const Fo f = random_gf(rng, sig, i % 2 ? std::vector<std::string>{"a"} : std::vector<std::string>{},
                               {8, 2});
        for (const auto& [rho, lf] : tau_all(f, sig)) {
            LfdEvaluator ev(m);
            for (std::size_t j = 0; j < m.team.size(); ++j) {
                FoAssignment s;
                for (const auto& [x, v] : rho)
                    s[x] = m.team[j][v];
                EXPECT_EQ(ev.eval(static_cast<int>(j), lf), eval_fo(g, s, f)) << print(f);
            }
        }
    }
}

TEST(Tau, RoundTripThroughTrBullet) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_distinguished_model(rng, sig, 3, 4);
        const Lfd xi = random_lfd(rng, sig, {6, 2, true});
        VarMap id;
        for (Var v = 0; v < sig.k(); ++v)
            id[sig.vars()[v]] = v;
        const Lfd back = tau(tr_bullet(xi, sig), id, sig.expanded());
        LfdEvaluator ev(m);
        for (std::size_t j = 0; j < m.team.size(); ++j)
            EXPECT_EQ(ev.eval(static_cast<int>(j), xi), ev.eval(static_cast<int>(j), back)) << print(xi, sig);
    }
}
