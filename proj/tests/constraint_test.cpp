#include "support.hpp"

#include "nrcl/constraint.hpp"
#include "nrcl/render.hpp"

#include <gtest/gtest.h>

using namespace nrcl;
using nrcl::test::Ground;

namespace {

struct ConstraintFixture : ::testing::Test {
    Signature sig{{{"P", 2}}, {"a", "b", "c"}};
    VarPool pool;
    Term a = Term::constant(0), b = Term::constant(1), c = Term::constant(2);
    VarId vx = pool.fresh("x"), vy = pool.fresh("y"), vz = pool.fresh("z");
    Term x = Term::variable(vx), y = Term::variable(vy), z = Term::variable(vz);

    Term rv(const char* base) { return Term::variable(pool.fresh(base)); }
    std::string show(const Constraint& pi) {
        Namer n(sig, pool);
        return render(pi, n);
    }
    // (x,y) != (v,v) /\ y != a
    Constraint example() {
        Term v = rv("v");
        return Constraint::of({Disequation{{x, y}, {v, v}}, Disequation{{y}, {a}}});
    }
};

// independent normal-form predicate
bool normal_form_by_definition(const Constraint& c) {
    if (c.is_bot()) return true;
    std::set<VarId> left, right_all;
    for (const auto& d : c.parts()) {
        std::set<VarId> here;
        for (Term t : d.lhs) {
            if (!t.is_var() || !here.insert(t.var()).second) return false;
            left.insert(t.var());
        }
        if (d.lhs.empty()) return false;
        std::set<VarId> rhs;
        for (Term t : d.rhs)
            if (t.is_var()) rhs.insert(t.var());
        for (VarId v : rhs)
            if (!right_all.insert(v).second) return false;
    }
    for (VarId v : left)
        if (right_all.count(v)) return false;
    return true;
}

}  // namespace

TEST_F(ConstraintFixture, NormalizeWorkedExamples) {
    Term v = rv("v"), w = rv("w");
    auto c1 = Constraint::of({Disequation{{x, a, y, x}, {b, v, w, w}}});
    EXPECT_EQ(show(normalize(c1)), "(x,y) != (b,b)");

    Term w0 = rv("w"), v0 = rv("v"), t0 = rv("t");
    auto c2 = Constraint::of({Disequation{{x, a, y, x}, {w0, w0, v0, t0}}});
    EXPECT_EQ(show(normalize(c2)), "x != a");

    EXPECT_TRUE(normalize(Constraint::of({Disequation{{}, {}}})).is_bot());
    EXPECT_TRUE(normalize(Constraint::of({Disequation{{a}, {b}}})).is_top());
}

TEST_F(ConstraintFixture, InducedSubstitutions) {
    auto pi = example();
    auto subs = induced_substitutions(pi);
    ASSERT_EQ(subs.size(), 2u);
    Term v = pi.parts()[0].rhs[0];
    EXPECT_EQ(subs[0], Substitution::from_bindings({{vx, v}, {vy, v}}));
    EXPECT_EQ(subs[1], Substitution::from_bindings({{vy, a}}));
    EXPECT_TRUE(induced_substitutions(Constraint::top()).empty());
    auto bot = induced_substitutions(Constraint::bot());
    ASSERT_EQ(bot.size(), 1u);
    EXPECT_TRUE(bot[0].empty());
}

TEST_F(ConstraintFixture, ViolatesExamples) {
    Term v = rv("v");
    auto diag = Constraint::of({Disequation{{x, y}, {v, v}}});
    EXPECT_TRUE(violates(Substitution::from_bindings({{vx, a}, {vy, a}}), diag));
    EXPECT_FALSE(violates(Substitution::from_bindings({{vx, a}, {vy, b}}), example()));
    EXPECT_FALSE(violates(Substitution::from_bindings({{vx, c}}), Constraint::top()));
}

TEST_F(ConstraintFixture, SolutionsExamples) {
    std::vector<VarId> xy{vx, vy};
    auto sols = solutions(example(), xy, 2);
    ASSERT_EQ(sols.size(), 1u);
    EXPECT_EQ(sols[0], Substitution::from_bindings({{vx, a}, {vy, b}}));
    std::vector<VarId> just_x{vx};
    EXPECT_EQ(solutions(Constraint::top(), just_x, 2).size(), 2u);
    EXPECT_TRUE(solutions(Constraint::bot(), just_x, 2).empty());
}

TEST_F(ConstraintFixture, FindSolutionExamples) {
    std::vector<VarId> xy{vx, vy};
    auto s = find_solution_enum(example(), xy, 2);
    ASSERT_TRUE(s);
    EXPECT_EQ(*s, Substitution::from_bindings({{vx, a}, {vy, b}}));

    auto za = Constraint::of({Disequation{{z}, {a}}, Disequation{{z}, {b}}});
    std::vector<VarId> just_z{vz};
    EXPECT_FALSE(find_solution_enum(za, just_z, 2));
    EXPECT_TRUE(find_solution_enum(za, just_z, 3));

    auto top = find_solution_enum(Constraint::top(), xy, 3);
    ASSERT_TRUE(top);
    EXPECT_EQ(*top, Substitution::from_bindings({{vx, a}, {vy, a}}));
}

TEST_F(ConstraintFixture, RenameRhsKeepsLeftSides) {
    auto pi = example();
    auto r = rename_rhs_fresh(pi, pool);
    EXPECT_EQ(r.lvars(), pi.lvars());
    EXPECT_NE(r.rvars(), pi.rvars());
    EXPECT_EQ(show(r), show(pi));
}

TEST(ConstraintRandom, NormalizePreservesSolutionsAndIsIdempotent) {
    Signature sig{{{"P", 1}}, {"a", "b", "c"}};
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        VarPool pool;
        std::vector<VarId> left{pool.fresh("x"), pool.fresh("y"), pool.fresh("z"), pool.fresh("u")};
        test::ConstraintGen gen(seed);
        gen.raw = true;
        gen.domain = 1 + seed % 3;
        Constraint raw = gen.make(left, pool);
        Constraint n1 = normalize(raw);
        EXPECT_TRUE(normal_form_by_definition(n1)) << "seed " << seed;
        EXPECT_TRUE(is_normal_form(n1)) << "seed " << seed;
        EXPECT_EQ(test::solution_set(raw, left, gen.domain), test::solution_set(n1, left, gen.domain)) << "seed " << seed;
        EXPECT_EQ(normalize(n1), n1) << "seed " << seed;
    }
}

TEST(ConstraintRandom, EnumerationAgreesWithReferenceSemantics) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        VarPool pool;
        std::vector<VarId> left{pool.fresh("x"), pool.fresh("y"), pool.fresh("z")};
        test::ConstraintGen gen(seed + 1000);
        gen.domain = 1 + seed % 3;
        Constraint pi = normalize(gen.make(left, pool));
        auto ref = test::solution_set(pi, left, gen.domain);

        auto lib = solutions(pi, left, gen.domain);
        std::set<test::Tuple> got;
        for (const auto& s : lib) {
            test::Tuple t;
            for (VarId v : left) t.push_back(s.apply(Term::variable(v)).const_index());
            got.insert(t);
            EXPECT_FALSE(violates(s, pi));
        }
        EXPECT_EQ(got, ref) << "seed " << seed;

        auto first = find_solution_enum(pi, left, gen.domain);
        EXPECT_EQ(first.has_value(), !ref.empty()) << "seed " << seed;
        EXPECT_EQ(is_satisfiable(pi, gen.domain), !ref.empty());
        if (first) {
            test::Tuple t;
            for (VarId v : left) t.push_back(first->apply(Term::variable(v)).const_index());
            EXPECT_EQ(t, *ref.begin()) << "seed " << seed;
        }

        // violates is the complement of membership on every grounding
        test::for_each_grounding(left, gen.domain, [&](const Ground& g) {
            std::vector<Substitution::Binding> bs;
            for (auto [v, d] : g) bs.emplace_back(v, Term::constant(d));
            EXPECT_EQ(violates(Substitution::from_bindings(bs), pi), !test::solves(pi, g));
        });
    }
}
