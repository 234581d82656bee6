#include <gtest/gtest.h>

#include "lfdgf/mcheck.hpp"
#include "lfdgf/models.hpp"
#include "lfdgf/oracle.hpp"
#include "lfdgf/parse.hpp"
#include "lfdgf/translate.hpp"

using namespace lfdgf;
using nlohmann::json;

namespace {

const Signature kXY({{"P", 1}, {"R", 2}}, {"x", "y"});
const Signature kX({{"P", 1}}, {"x"});

json J(const char* text) { return json::parse(text); }

StandardModel standard(const json& j) { return standard_model_from_json(j); }

DependenceModel dependence(const json& j, const Signature& sig) {
    return dependence_model_from_json(j, sig);
}

std::size_t fact_count(const StandardModel& m) {
    std::size_t n = 0;
    for (const auto& [_, r] : m.relations)
        n += r.tuples.size();
    return n;
}

Signature corpus_sig(int k) {
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(k);
    return Signature({{"P", 1}, {"R", 2}}, names);
}

} // namespace

TEST(TransformT, ExtractsTeam) {
    const StandardModel hat =
        standard(J(R"({"domain":["a","b"],"relations":{"A":{"arity":2,"tuples":[["a","b"]]}}})"));
    const DependenceModel m = from_standard_T(hat, kXY);
    ASSERT_EQ(m.team.size(), 1u);
    EXPECT_EQ(m.base.domain[m.team[0][0]], "a");
    EXPECT_EQ(m.base.domain[m.team[0][1]], "b");
    EXPECT_FALSE(m.base.relations.contains("A"));
}

TEST(TransformT, EmptyTeam) {
    const StandardModel hat = standard(
        {{"domain", {"a"}}, {"relations", {{"A", {{"arity", 2}, {"tuples", json::array()}}}}}});
    EXPECT_TRUE(from_standard_T(hat, kXY).team.empty());
    const StandardModel no_a = standard({{"domain", {"a"}}, {"relations", json::object()}});
    EXPECT_THROW(from_standard_T(no_a, kXY), InputError);
}

TEST(TransformT, Tinv) {
    const DependenceModel m = dependence(
        {{"domain", {"a", "b"}}, {"relations", json::object()}, {"team", {{{"x", "a"}, {"y", "b"}}}}},
        kXY);
    const StandardModel hat = to_standard_Tinv(m);
    EXPECT_TRUE(hat.holds("A", {hat.element("a"), hat.element("b")}));
    EXPECT_EQ(hat.relations.at("A").tuples.size(), 1u);
    DependenceModel empty = m;
    empty.team.clear();
    EXPECT_TRUE(to_standard_Tinv(empty).relations.at("A").tuples.empty());
}

TEST(TransformT, Bijective) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        EXPECT_EQ(from_standard_T(to_standard_Tinv(m), sig), m);
        const StandardModel hat = to_standard_Tinv(m);
        EXPECT_EQ(to_standard_Tinv(from_standard_T(hat, sig)), hat);
    }
}

TEST(FullF, CountsAndDependence) {
    const StandardModel m = standard(
        {{"domain", {"a", "b"}}, {"relations", {{"P", {{"arity", 1}, {"tuples", {{"a"}}}}}}}});
    const DependenceModel f = full_F(m, kXY);
    EXPECT_EQ(f.team.size(), 4u);
    for (int s = 0; s < 4; ++s) {
        EXPECT_FALSE(eval_dep(f, s, 0, 0b01));
        EXPECT_FALSE(eval_dep(f, s, 0b10, 0b01));
        EXPECT_TRUE(eval_dep(f, s, 0b01, 0b01));
    }
    Caps caps;
    caps.team = 3;
    EXPECT_THROW(full_F(m, kXY, caps), CapError);
}

TEST(FullF, GOfFIsIdentity) {
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const Signature sig = corpus_sig(2 + i % 2);
        const StandardModel m = random_standard_model(rng, sig, 3);
        EXPECT_EQ(drop_unnamed_G(full_F(m, sig)), m);
    }
}

TEST(DropG, Examples) {
    const DependenceModel kept = dependence(J(R"({"domain":["a","b"],
        "relations":{"R":{"arity":2,"tuples":[["a","b"]]}},
        "team":[{"x":"a","y":"b"}]})"), kXY);
    EXPECT_EQ(drop_unnamed_G(kept).relations.at("R").tuples.size(), 1u);
    const DependenceModel dropped = dependence(J(R"({"domain":["a","b"],
        "relations":{"R":{"arity":2,"tuples":[["a","b"]]}},
        "team":[{"x":"a","y":"a"},{"x":"b","y":"b"}]})"), kXY);
    const StandardModel g = drop_unnamed_G(dropped);
    EXPECT_TRUE(!g.relations.contains("R") || g.relations.at("R").tuples.empty());
}

TEST(DropG, NeverAddsFacts) {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const StandardModel g = drop_unnamed_G(m);
        EXPECT_EQ(g.domain, m.base.domain);
        EXPECT_LE(fact_count(g), fact_count(m.base));
        for (const auto& [name, r] : g.relations)
            for (const auto& t : r.tuples)
                EXPECT_TRUE(m.base.holds(name, t));
    }
}

TEST(Distinguish, Examples) {
    const DependenceModel m = dependence(
        {{"domain", {"a"}},
         {"relations", {{"P", {{"arity", 1}, {"tuples", {{"a"}}}}}}},
         {"team", {{{"x", "a"}, {"y", "a"}}}}},
        kXY);
    EXPECT_FALSE(is_distinguished(m));
    const Distinguished d = distinguish(m);
    ASSERT_EQ(d.model.team.size(), 1u);
    const auto& dom = d.model.base.domain;
    EXPECT_EQ(dom[d.model.team[0][0]], "x:a");
    EXPECT_EQ(dom[d.model.team[0][1]], "y:a");
    EXPECT_TRUE(is_distinguished(d.model));
    EXPECT_TRUE(d.model.base.holds("P", {d.model.base.element("x:a")}));
}

TEST(Distinguish, PreservesCardinalityAndIsIdempotentUpToRenaming) {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const DependenceModel d = distinguish(m).model;
        EXPECT_EQ(d.team.size(), m.team.size());
        EXPECT_TRUE(is_distinguished(d));
        // Elements of dd are "v:v:e"; dropping the outer prefix recovers d.
        DependenceModel dd = distinguish(d).model;
        for (auto& name : dd.base.domain)
            name = name.substr(name.find(':') + 1);
        json a = to_json(dd), b = to_json(d);
        EXPECT_EQ(a, b);
    }
}

TEST(IsDistinguished, Examples) {
    EXPECT_TRUE(is_distinguished(dependence(
        {{"domain", {"a", "b"}}, {"relations", json::object()}, {"team", {{{"x", "a"}, {"y", "b"}}}}},
        kXY)));
    EXPECT_FALSE(is_distinguished(dependence(
        {{"domain", {"a", "b"}},
         {"relations", json::object()},
         {"team", {{{"x", "a"}, {"y", "b"}}, {{"x", "b"}, {"y", "a"}}}}},
        kXY)));
}

TEST(Lift, Examples) {
    const StandardModel m =
        standard(J(R"({"domain":["a","b"],"relations":{"R":{"arity":2,"tuples":[["a","a"]]}}})"));
    const Lifted l = lift_distinguished(m, kXY, {{"u", m.element("a")}});
    EXPECT_EQ(l.model.base.size(), m.size() * 2);
    EXPECT_TRUE(is_distinguished(l.model));
    const auto& b = l.model.base;
    EXPECT_TRUE(b.holds("R", {b.element("x:a"), b.element("x:a")}));
    EXPECT_TRUE(b.holds("R", {b.element("x:a"), b.element("y:a")}));
    EXPECT_GE(l.model.member_index(l.t), 0);
    // (t o rho)(u) = (s(u), rho(u))
    const Var v = l.rho.at("u");
    EXPECT_EQ(b.domain[l.t[v]], kXY.vars()[v] + ":a");
}

TEST(Lift, Preconditions) {
    const Signature narrow({{"T", 3}}, {"x", "y"});
    const StandardModel m =
        standard(J(R"({"domain":["a"],"relations":{"T":{"arity":3,"tuples":[["a","a","a"]]}}})"));
    EXPECT_THROW(lift_distinguished(m, narrow, {}), InputError);
    const StandardModel p =
        standard(J(R"({"domain":["a","b"],"relations":{"R":{"arity":2,"tuples":[["a","a"]]}}})"));
    EXPECT_THROW(lift_distinguished(p, kXY, {{"u", p.element("a")}, {"w", p.element("b")}}), InputError);
}

TEST(Lift, TOfRhoPairsValueWithVariable) {
    Rng rng(7);
    const Signature sig = corpus_sig(2);
    for (int i = 0; i < 100; ++i) {
        const StandardModel m = random_standard_model(rng, sig, 3);
        // A guarded assignment: both ends of some R fact, or empty.
        FoAssignment s;
        auto it = m.relations.find("R");
        if (it != m.relations.end() && !it->second.tuples.empty()) {
            const Tuple& t = *it->second.tuples.begin();
            s = {{"u", t[0]}, {"w", t[1]}};
        }
        const Lifted l = lift_distinguished(m, sig, s);
        EXPECT_TRUE(is_distinguished(l.model));
        for (const auto& [x, e] : s)
            EXPECT_EQ(l.model.base.domain[l.t[l.rho.at(x)]], sig.vars()[l.rho.at(x)] + ":" + m.domain[e]);
    }
}

TEST(ExpandHat, DependenceRelations) {
    const DependenceModel one = dependence(
        {{"domain", {"a"}}, {"relations", json::object()}, {"team", {{{"x", "a"}}}}}, kX);
    const StandardModel h1 = expand_hat(one, kX);
    EXPECT_EQ(h1.relations.at("R_{x}_{x}").tuples, (std::set<Tuple>{{0}}));
    const DependenceModel two = dependence(
        {{"domain", {"a", "b"}}, {"relations", json::object()}, {"team", {{{"x", "a"}}, {{"x", "b"}}}}},
        kX);
    const StandardModel h2 = expand_hat(two, kX);
    auto it = h2.relations.find("R_{}_{x}");
    EXPECT_TRUE(it == h2.relations.end() || it->second.tuples.empty());
    EXPECT_EQ(h2.relations.at("A").tuples.size(), 2u);
}

TEST(ExpandHat, SatisfiesSetup) {
    Rng rng(8);
    for (int i = 0; i < 100; ++i) {
        const Signature sig = corpus_sig(1 + i % 3);
        const DependenceModel m = random_dependence_model(rng, sig, 3, 4);
        const Lfd psi = random_lfd(rng, sig, {6, 2, true});
        EXPECT_TRUE(eval_fo(expand_hat(m, sig), {}, setup(psi, sig))) << print(psi, sig);
    }
}

TEST(Json, CanonicalAndRoundTrip) {
    const json in = J(R"({"domain":["b","a"],
        "relations":{"R":{"arity":2,"tuples":[["b","a"],["a","b"]]}},
        "team":[{"x":"b","y":"a"},{"x":"a","y":"b"}]})");
    const DependenceModel m = dependence(in, kXY);
    const json out = to_json(m);
    EXPECT_EQ(out["relations"]["R"]["tuples"], J(R"([["a","b"],["b","a"]])"));
    EXPECT_EQ(to_json(dependence(out, kXY)).dump(), out.dump());
}

TEST(Json, Validation) {
    EXPECT_THROW(standard(J(R"({"domain":["a"],"relations":{"P":{"arity":1,"tuples":[["z"]]}}})")),
                 InputError);
    EXPECT_THROW(standard(J(R"({"domain":["a"],"relations":{"P":{"arity":2,"tuples":[["a"]]}}})")),
                 InputError);
    EXPECT_THROW(dependence({{"domain", {"a"}}, {"relations", json::object()}, {"team", {{{"x", "a"}}}}}, kXY),
                 InputError);
}
