#include "support.hpp"

#include <gtest/gtest.h>

using namespace nrcl;
using test::Tuple;

namespace {

struct ConstrainedFixture : ::testing::Test {
    Signature sig2{{{"P", 2}, {"L", 3}}, {"a", "b"}};
    Signature sig3{{{"P", 2}, {"L", 3}}, {"a", "b", "c"}};
    VarPool pool;

    ConstrainedLiteral lit(std::string_view text, const Signature& sig) { return test::cl(text, sig, pool); }
    std::string show(const ConstrainedLiteral& c, const Signature& sig) { return test::show(c, sig, pool); }

    static std::set<Tuple> tuples(std::initializer_list<Tuple> ts) { return ts; }
};

}  // namespace

TEST_F(ConstrainedFixture, GndExamples) {
    auto c = lit("P(x,y) :: (x,y) != (v,v) /\\ x != a /\\ y != b", sig3);
    // indices: a=0 b=1 c=2
    EXPECT_EQ(test::gnd_atoms(c, 2), tuples({{1, 0}}));
    EXPECT_EQ(test::gnd_atoms(c, 3), tuples({{1, 0}, {2, 0}, {1, 2}}));
    EXPECT_EQ(gnd(c, 3).size(), 3u);
    EXPECT_EQ(gnd(c, 2).size(), 1u);
    EXPECT_TRUE(gnd(lit("P(x,y) :: BOT", sig3), 3).empty());
}

TEST_F(ConstrainedFixture, ConjunctionExample) {
    auto c1 = lit("P(x,y) :: (x,y) != (v,v) /\\ x != a /\\ y != b", sig3);
    auto c2 = lit("P(z,a) :: z != b", sig3);
    auto r = conjunction(c1, c2, pool);
    EXPECT_EQ(test::gnd_atoms(r, 3), tuples({{2, 0}}));
    EXPECT_EQ(show(r, sig3), "P(z,a) :: z != a /\\ z != b");
}

TEST_F(ConstrainedFixture, ConjunctionClashIsBottom) {
    auto r = conjunction(lit("P(a,x) :: TOP", sig3), lit("P(b,y) :: TOP", sig3), pool);
    EXPECT_TRUE(r.pi.is_bot());
    auto same = conjunction(lit("P(x,y) :: TOP", sig3), lit("P(u,w) :: TOP", sig3), pool);
    EXPECT_TRUE(same.pi.is_top());
    EXPECT_EQ(test::gnd_atoms(same, 3).size(), 9u);
}

TEST_F(ConstrainedFixture, DifferenceExample) {
    auto all = lit("L(x1,x2,x3) :: TOP", sig3);
    auto rest = lit("L(x1,x2,x3) :: x1 != a /\\ x2 != a /\\ x3 != a", sig3);
    auto pieces = difference(all, rest, pool);
    ASSERT_EQ(pieces.size(), 3u);
    EXPECT_EQ(show(pieces[0].cl, sig3), "L(a,x2,x3) :: TOP");
    EXPECT_EQ(show(pieces[1].cl, sig3), "L(x1,a,x3) :: x1 != a");
    EXPECT_EQ(show(pieces[2].cl, sig3), "L(x1,x2,a) :: x1 != a /\\ x2 != a");
}

TEST_F(ConstrainedFixture, DifferenceTrivialCases) {
    auto c = lit("P(x,y) :: x != a", sig3);
    auto everything = difference(c, lit("P(u,w) :: TOP", sig3), pool);
    for (const auto& p : everything) EXPECT_TRUE(is_empty(p.cl, 3));
    auto nothing = difference(c, lit("P(u,w) :: BOT", sig3), pool);
    std::set<Tuple> cover;
    for (const auto& p : nothing)
        for (const auto& t : test::gnd_atoms(p.cl, 3)) cover.insert(t);
    EXPECT_EQ(cover, test::gnd_atoms(c, 3));
}

TEST_F(ConstrainedFixture, EmptinessExamples) {
    auto c = lit("P(z,a) :: z != a /\\ z != b", sig3);
    EXPECT_TRUE(is_empty(c, 2));
    EXPECT_FALSE(is_empty(c, 3));
    EXPECT_FALSE(is_empty(lit("P(x,y) :: TOP", sig3), 3));
}

TEST_F(ConstrainedFixture, FreeVariableEliminationExample) {
    // (P(y,z) ; (x,y) != (v,v) /\ (x,z) != (w,w)) with x free
    VarScope scope;
    Literal l = parse_display_literal("P(y,z)", sig2, pool, scope);
    Constraint pi = parse_display_constraint("(x,y) != (v,v) /\\ (x,z) != (w,w)", sig2, pool, scope);
    auto out = elim_free_vars(Closure{l, {}, pi}, 2);
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(show(out[0].as_literal(), sig2), "P(y,z) :: y != a /\\ z != a");
    EXPECT_EQ(show(out[1].as_literal(), sig2), "P(y,z) :: y != b /\\ z != b");

    auto none = elim_free_vars(Closure{l, {}, Constraint::top()}, 2);
    ASSERT_EQ(none.size(), 1u);
    EXPECT_EQ(none[0].as_literal().lit, l);
}

TEST_F(ConstrainedFixture, FreeVariableEliminationAllBottom) {
    VarScope scope;
    Literal l = parse_display_literal("P(y,y)", sig2, pool, scope);
    Constraint pi = parse_display_constraint("x != a /\\ x != b", sig2, pool, scope);
    EXPECT_TRUE(elim_free_vars(Closure{l, {}, pi}, 2).empty());
}

// Randomized oracle equivalence on arity <= 3, |D| <= 3, <= 4 parts.
TEST(ConstrainedRandom, OperationsMatchGroundSets) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        std::size_t n = 1 + seed % 3, arity = 1 + seed / 3 % 3;
        std::vector<std::string> dom{"a", "b", "c"};
        dom.resize(n);
        Signature sig({{"L", arity}}, dom);
        VarPool pool;
        test::ConstraintGen gen(seed * 31 + 5);
        gen.domain = n;
        PredId L = *sig.find_pred("L");

        std::vector<VarId> v1{pool.fresh("x"), pool.fresh("y"), pool.fresh("z")};
        std::vector<VarId> v2{pool.fresh("u"), pool.fresh("w"), pool.fresh("t")};
        Atom a1 = gen.atom(L, arity, v1), a2 = gen.atom(L, arity, v2);
        ConstrainedLiteral c1{Literal{true, a1}, normalize(gen.make(vars_of(a1), pool))};
        ConstrainedLiteral c2{Literal{true, a2}, normalize(gen.make(vars_of(a2), pool))};
        auto g1 = test::gnd_atoms(c1, n), g2 = test::gnd_atoms(c2, n);

        EXPECT_EQ(is_empty(c1, n), g1.empty()) << seed;

        auto conj = conjunction(c1, c2, pool);
        std::set<Tuple> inter;
        for (const auto& t : g1)
            if (g2.count(t)) inter.insert(t);
        EXPECT_EQ(test::gnd_atoms(conj, n), inter) << seed;

        std::set<Tuple> cover;
        std::size_t total = 0;
        for (const auto& p : difference(c1, c2, pool)) {
            EXPECT_EQ(p.inst.apply(c1.lit), p.cl.lit) << seed;
            auto gp = test::gnd_atoms(p.cl, n);
            total += gp.size();
            cover.insert(gp.begin(), gp.end());
        }
        std::set<Tuple> diff;
        for (const auto& t : g1)
            if (!g2.count(t)) diff.insert(t);
        EXPECT_EQ(cover, diff) << seed;
        EXPECT_EQ(total, cover.size()) << "pieces overlap, seed " << seed;
    }
}

TEST(ConstrainedRandom, EliminationPreservesExistentialCover) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        std::size_t n = 1 + seed % 3, arity = 1 + seed / 3 % 2;
        std::vector<std::string> dom{"a", "b", "c"};
        dom.resize(n);
        Signature sig({{"L", arity}}, dom);
        VarPool pool;
        test::ConstraintGen gen(seed * 17 + 3);
        gen.domain = n;
        PredId L = *sig.find_pred("L");
        std::vector<VarId> lv{pool.fresh("x"), pool.fresh("y")};
        VarId free1 = pool.fresh("f"), free2 = pool.fresh("g");
        Atom a = gen.atom(L, arity, lv);
        auto left = vars_of(a);
        left.push_back(free1);
        left.push_back(free2);
        Constraint pi = normalize(gen.make(left, pool));
        if (pi.is_bot()) continue;
        auto want = test::gnd_atoms(a, pi, n);

        std::set<Tuple> got;
        for (const auto& c : elim_free_vars(Closure{Literal{true, a}, {}, pi}, n)) {
            auto cl = c.as_literal();
            EXPECT_TRUE(free_vars(cl.lit, cl.pi).empty()) << seed;
            auto g = test::gnd_atoms(cl, n);
            got.insert(g.begin(), g.end());
        }
        EXPECT_EQ(got, want) << seed;
    }
}
