#include "support.hpp"

#include "nrcl/ordering.hpp"
#include "nrcl/trail.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nrcl;

namespace {

TrailEntry entry(const ConstrainedLiteral& cl, int level, int decision_level = 0) {
    TrailEntry e;
    e.closure = Closure{cl.lit, {}, cl.pi};
    e.inst = cl.lit;
    e.level = level;
    e.decision_level = decision_level;
    return e;
}

Literal ground(std::string_view text, const Signature& sig) {
    VarPool pool;
    VarScope scope;
    return parse_display_literal(text, sig, pool, scope);
}

struct ExampleTrail : ::testing::Test {
    Signature sig{{{"P", 3}, {"Q", 2}}, {"a", "b", "c"}};
    VarPool pool;
    Trail trail{sig};

    ConstrainedLiteral lit(std::string_view t) { return test::cl(t, sig, pool); }

    void SetUp() override {
        trail.push(entry(lit("~P(c,x,x) :: TOP"), 0));
        trail.push(entry(lit("P(x,y,z) :: x != c"), 1, 1));
    }
};

}  // namespace

TEST_F(ExampleTrail, ValuesAndLevels) {
    EXPECT_EQ(value_of(trail, ground("P(a,b,c)", sig)), Value::True);
    EXPECT_EQ(value_of(trail, ground("~P(a,b,c)", sig)), Value::False);
    EXPECT_EQ(value_of(trail, ground("P(c,a,a)", sig)), Value::False);
    EXPECT_EQ(value_of(trail, ground("P(c,a,b)", sig)), Value::Undef);
    EXPECT_EQ(level_of(trail, ground("P(a,b,c)", sig)), 1);
    EXPECT_EQ(level_of(trail, ground("P(c,a,a)", sig)), 0);
}

TEST_F(ExampleTrail, ConflictClauseIsFalse) {
    auto q = lit("~Q(a,x) :: x != c");
    trail.push(entry(q, 1));
    VarScope scope;
    Clause c;
    for (auto t : {"~P(x,y,z)", "~P(u,w,t)", "Q(x,u)"}) c.lits.push_back(parse_display_literal(t, sig, pool, scope));
    Constraint pi = parse_display_constraint("u != c", sig, pool, scope);
    auto sigma = Substitution::from_bindings({{c.lits[0].atom.args[0].var(), Term::constant(0)}});
    EXPECT_EQ(clause_value(trail, ConstrainedClause{c, sigma, pi}), ClauseValue::False);
    // without the binding some instance has Q(b,..) undefined
    EXPECT_EQ(clause_value(trail, ConstrainedClause{c, {}, pi}), ClauseValue::Mixed);
}

TEST_F(ExampleTrail, LearnedUnitIsAssertiveAtLevelOne) {
    auto l = lit("~P(a,y,z) :: TOP");
    std::vector<Literal> lits{l.lit};
    EXPECT_TRUE(has_false_instance(full_view(trail), lits, Constraint::top()));
    EXPECT_TRUE(is_assertive(full_view(trail), lits, Constraint::top(), 1));
    // on the level-0 prefix it propagates instead
    EXPECT_TRUE(propagates(level_view(trail, 0), lits, Constraint::top()));
    EXPECT_FALSE(is_assertive(full_view(trail), lits, Constraint::top(), 0));
}

TEST_F(ExampleTrail, StrongConsistencyReportsOverlap) {
    auto overlap = trail.push(entry(lit("P(a,b,y) :: TOP"), 1));
    EXPECT_EQ(overlap.size(), 3u);
}

TEST_F(ExampleTrail, ScanAgreesWithIndex) {
    for (std::size_t code = 0; code < sig.atom_count(); ++code) {
        auto scan = trail.definer_by_scan(sig.atom_from_code(code));
        auto idx = trail.definer(code);
        EXPECT_EQ(scan.has_value(), idx >= 0);
        if (scan) EXPECT_EQ(static_cast<std::int64_t>(*scan), idx);
    }
}

namespace {

struct BlockingExample : ::testing::Test {
    Signature sig{{{"P", 1}, {"Q", 2}}, {"a", "b", "c"}};
    VarPool pool;
    Trail trail{sig};
    Clause clause;

    void SetUp() override {
        trail.push(entry(test::cl("~Q(x,y) :: TOP", sig, pool), 1, 1));
        VarScope scope;
        for (auto t : {"~P(x)", "~P(y)", "Q(x,y)"}) clause.lits.push_back(parse_display_literal(t, sig, pool, scope));
    }

    std::optional<BlockWitness> blocked(std::string_view decision) {
        auto d = test::cl(decision, sig, pool);
        std::vector<std::uint8_t> cover(sig.atom_count(), 0);
        for (auto code : trail.covered_codes(d)) cover[code] = 1;
        GroundView v{&trail, trail.size(), Overlay{cover, d.lit.positive}};
        return blocking_instance(v, clause);
    }
};

}  // namespace

TEST_F(BlockingExample, WideDecisionsAreBlocked) {
    for (auto d : {"P(x) :: TOP", "P(x) :: x != c"}) {
        auto w = blocked(d);
        ASSERT_TRUE(w) << d;
        Clause inst = w->grounding.apply(clause);
        Namer n(sig, pool);
        EXPECT_EQ(render(inst, n), "~P(a) \\/ ~P(b) \\/ Q(a,b)") << d;
    }
}

TEST_F(BlockingExample, SingleAtomDecisionsAreNeverBlocked) {
    for (auto d : {"P(a) :: TOP", "P(b) :: TOP", "P(c) :: TOP", "P(x) :: x != a /\\ x != b"})
        EXPECT_FALSE(blocked(d)) << d;
}

TEST(InducedInterpretation, PositiveEntriesOnly) {
    Signature sig{{{"P", 1}}, {"a", "b", "c"}};
    VarPool pool;
    Trail t(sig);
    EXPECT_TRUE(induced_interpretation(t).empty());
    t.push(entry(test::cl("P(x) :: x != c", sig, pool), 0));
    auto got = induced_interpretation(t);
    std::vector<std::size_t> want{sig.atom_code(ground("P(a)", sig).atom), sig.atom_code(ground("P(b)", sig).atom)};
    EXPECT_EQ(got, want);
}

// ---- induced ordering against a definition-level comparator ----

namespace {

struct RefOrder {
    const Trail& t;
    const Signature& sig;

    // Def position, the undefined marker maximal
    std::size_t def(const Atom& a) const {
        for (std::size_t i = 0; i < t.size(); ++i)
            for (const auto& g : gnd(t[i].literal(), sig.domain_size()))
                if (g.atom == a) return i;
        return t.size();
    }
    int abs_cmp(std::pair<std::size_t, bool> x, std::pair<std::size_t, bool> y) const {
        if (x.first != y.first) return x.first < y.first ? -1 : 1;
        // negated abstract literal above the positive one
        if (x.second != y.second) return x.second ? 1 : -1;
        return 0;
    }
    int lit_cmp(const Literal& a, const Literal& b) const {
        std::size_t da = def(a.atom), db = def(b.atom);
        if (da != db) return da < db ? -1 : 1;
        auto ca = sig.atom_code(a.atom), cb = sig.atom_code(b.atom);
        if (ca != cb) return ca < cb ? -1 : 1;
        if (a.positive != b.positive) return a.positive ? -1 : 1;
        return 0;
    }
    // M < N iff M != N and every element of M-N is dominated by one of N-M
    template <class T, class Cmp>
    static int dm(std::vector<T> m, std::vector<T> n, Cmp cmp) {
        std::vector<bool> used(n.size(), false);
        std::vector<T> m_only, n_only;
        for (const auto& x : m) {
            bool hit = false;
            for (std::size_t j = 0; j < n.size() && !hit; ++j)
                if (!used[j] && cmp(x, n[j]) == 0) used[j] = hit = true;
            if (!hit) m_only.push_back(x);
        }
        for (std::size_t j = 0; j < n.size(); ++j)
            if (!used[j]) n_only.push_back(n[j]);
        auto dominated = [&](const std::vector<T>& lo, const std::vector<T>& hi) {
            for (const auto& x : lo) {
                bool ok = false;
                for (const auto& y : hi) ok = ok || cmp(x, y) < 0;
                if (!ok) return false;
            }
            return true;
        };
        if (m_only.empty() && n_only.empty()) return 0;
        if (dominated(m_only, n_only)) return -1;
        if (dominated(n_only, m_only)) return 1;
        ADD_FAILURE() << "multiset extension not total";
        return 0;
    }
    int clause_cmp(const Clause& a, const Clause& b) const {
        auto abstract = [&](const Clause& c) {
            std::vector<std::pair<std::size_t, bool>> out;
            for (const auto& l : c.lits) out.emplace_back(def(l.atom), !l.positive);
            return out;
        };
        if (int r = dm(abstract(a), abstract(b), [&](auto x, auto y) { return abs_cmp(x, y); }); r != 0) return r;
        return dm(a.lits, b.lits, [&](const Literal& x, const Literal& y) { return lit_cmp(x, y); });
    }
};

int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

}  // namespace

TEST(InducedOrdering, MatchesDefinitionOnRandomClauses) {
    Signature sig{{{"P", 1}, {"Q", 2}}, {"a", "b", "c"}};
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::mt19937_64 rng(seed);
        VarPool pool;
        Trail t(sig);
        t.push(entry(test::cl(seed % 2 ? "Q(x,y) :: (x,y) != (v,v)" : "~Q(x,y) :: (x,y) != (v,v)", sig, pool), 0));
        std::vector<std::size_t> pcodes{0, 1, 2};
        std::shuffle(pcodes.begin(), pcodes.end(), rng);
        for (std::size_t i = 0; i < rng() % 4; ++i) {
            Atom a = sig.atom_from_code(pcodes[i]);
            t.push(entry({Literal{static_cast<bool>(rng() % 2), a}, Constraint::top()}, 1 + static_cast<int>(i), 1 + static_cast<int>(i)));
        }
        InducedOrdering ord(t);
        RefOrder ref{t, sig};
        auto rand_clause = [&] {
            Clause c;
            std::size_t len = rng() % 4;
            for (std::size_t i = 0; i < len; ++i)
                c.lits.push_back(Literal{static_cast<bool>(rng() % 2), sig.atom_from_code(rng() % sig.atom_count())});
            return c;
        };
        for (int k = 0; k < 200; ++k) {
            Clause c1 = rand_clause(), c2 = rand_clause(), c3 = rand_clause();
            int r12 = sign(ord.compare(c1, c2));
            EXPECT_EQ(r12, ref.clause_cmp(c1, c2));
            EXPECT_EQ(r12, -sign(ord.compare(c2, c1)));
            if (r12 < 0 && sign(ord.compare(c2, c3)) < 0) EXPECT_LT(sign(ord.compare(c1, c3)), 0);
            // the empty clause is below every non-empty one
            if (!c1.empty()) EXPECT_LT(sign(ord.compare(Clause{}, c1)), 0);
            // a proper sub-multiset is smaller
            if (!c1.empty()) {
                Clause sub = c1;
                sub.lits.pop_back();
                EXPECT_LT(sign(ord.compare(sub, c1)), 0);
            }
        }
    }
}

TEST(InducedOrdering, PositionThenBaseOrder) {
    Signature sig{{{"P", 1}}, {"a", "b", "c"}};
    VarPool pool;
    Trail t(sig);
    t.push(entry(test::cl("P(c) :: TOP", sig, pool), 0));
    t.push(entry(test::cl("~P(a) :: TOP", sig, pool), 0));
    InducedOrdering ord(t);
    auto code = [&](const char* s) { return sig.atom_code(ground(s, sig).atom); };
    EXPECT_TRUE(ord.compare_atoms(code("P(c)"), code("P(a)")) < 0);
    EXPECT_TRUE(ord.compare_atoms(code("P(a)"), code("P(b)")) < 0);
    EXPECT_TRUE(ord.compare(ground("P(b)", sig), ground("~P(b)", sig)) < 0);
}
