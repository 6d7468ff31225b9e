#include "support.hpp"

#include "nrcl/io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace nrcl;

namespace {

std::string read(const std::string& name) {
    std::ifstream in(std::string(NRCL_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParseError parse_error(std::string_view text) {
    try {
        parse_problem(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no error for: " << text;
    return ParseError(0, 0, "");
}

}  // namespace

TEST(ProblemParser, MinimalProblem) {
    auto p = parse_problem("domain a b . clause: P(X) .");
    EXPECT_EQ(p.sig.domain_size(), 2u);
    ASSERT_EQ(p.clauses.size(), 1u);
    EXPECT_EQ(p.clauses[0].label, "clause");
    EXPECT_EQ(p.clauses[0].clause.size(), 1u);
    EXPECT_TRUE(p.clauses[0].clause.lits[0].positive);
    EXPECT_TRUE(p.clauses[0].clause.lits[0].atom.args[0].is_var());
}

TEST(ProblemParser, WorkedProblem) {
    auto p = parse_problem(read("two_conflicts.p"));
    EXPECT_EQ(p.clauses.size(), 4u);
    EXPECT_EQ(p.sig.domain(), (std::vector<std::string>{"a", "b", "c"}));
    ASSERT_TRUE(p.sig.find_pred("P"));
    ASSERT_TRUE(p.sig.find_pred("Q"));
    EXPECT_EQ(p.sig.arity(*p.sig.find_pred("P")), 3u);
    EXPECT_EQ(p.sig.arity(*p.sig.find_pred("Q")), 2u);
    // variables are per clause
    EXPECT_EQ(vars_of(p.clauses[1].clause).size(), 6u);
}

TEST(ProblemParser, EmptyClause) {
    auto p = parse_problem("domain a .\nfalse .\n");
    ASSERT_EQ(p.clauses.size(), 1u);
    EXPECT_TRUE(p.clauses[0].clause.empty());
}

TEST(ProblemParser, ErrorsCarryPositions) {
    auto e = parse_error("domain a b .\nP(X) |\n");
    EXPECT_EQ(e.line(), 3u);

    e = parse_error("domain a b .\nP(X Y) .\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 5u);

    e = parse_error("domain a .\nP(c) .\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("undeclared constant c"), std::string::npos);

    EXPECT_EQ(parse_error("P(a) .\n").line(), 1u);
    EXPECT_NE(std::string(parse_error("domain a a .\n").what()).find("duplicate"), std::string::npos);
}

TEST(ProblemParser, ArityMismatchNamesBothOccurrences) {
    auto e = parse_error("domain a .\nP(X) .\nQ(a) | P(a,X) .\n");
    std::string msg = e.what();
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 8u);
    EXPECT_NE(msg.find("2:1"), std::string::npos) << msg;
    EXPECT_NE(msg.find("3:8"), std::string::npos) << msg;
}

TEST(ProblemParser, RoundTrip) {
    for (auto text : {std::string("domain a b c .\nP(X,a) | -Q(X,Y) .\nl1: -P(a,b) .\nfalse .\n"),
                      read("two_conflicts.p")}) {
        auto p = parse_problem(text);
        auto once = render_problem(p);
        EXPECT_EQ(render_problem(parse_problem(once)), once);
    }
}

TEST(ModelIo, RoundTrip) {
    auto p = parse_problem(read("two_conflicts.p"));
    VarPool pool = p.vars;
    auto text = read("two_conflicts.model");
    auto model = parse_model(text, p.sig, pool);
    ASSERT_EQ(model.size(), 5u);
    EXPECT_EQ(render_model(model, p.sig, pool), text);
}

TEST(ModelIo, EmptyModelIsJustTheFooter) {
    Signature sig({{"P", 1}}, {"a"});
    EXPECT_EQ(render_model({}, sig, VarPool{}), "% all other atoms false\n");
}

TEST(ModelIo, ErrorsReportTheLine) {
    Signature sig({{"P", 1}}, {"a"});
    VarPool pool;
    try {
        parse_model("P(a)\n% note\nR(a)\n", sig, pool);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(ScriptIo, DecideAndPropagateLines) {
    auto items = parse_script("% comment\ndecide P(x) :: x != a\n\npropagate C3\n");
    ASSERT_EQ(items.size(), 2u);
    EXPECT_EQ(items[0].kind, ScriptItem::Kind::Decide);
    EXPECT_EQ(items[0].literal_text, "P(x) :: x != a");
    EXPECT_EQ(items[1].kind, ScriptItem::Kind::PreferClause);
    EXPECT_EQ(items[1].clause, 2u);
    EXPECT_THROW(parse_script("propagate C0\n"), ParseError);
    EXPECT_THROW(parse_script("propagate 3\n"), ParseError);
    EXPECT_THROW(parse_script("choose P(a)\n"), ParseError);
}

TEST(ScriptIo, TraceLinesReplayDecisions) {
    auto items = parse_script(read("two_conflicts.trace"));
    std::vector<std::string> want{"P(x,y,z) :: x != c", "P(b,y,z) :: TOP", "~P(c,y,z) :: (y,z) != (v,v)",
                                  "Q(x,y) :: TOP"};
    std::vector<std::string> got;
    for (const auto& it : items) {
        EXPECT_EQ(it.kind, ScriptItem::Kind::Decide);
        got.push_back(it.literal_text);
    }
    EXPECT_EQ(got, want);
}

TEST(DisplaySyntax, ConstrainedLiteralRoundTrip) {
    Signature sig({{"P", 3}}, {"a", "b", "c"});
    for (auto t : {"P(x,y,z) :: TOP", "~P(c,y,z) :: (y,z) != (v,v)", "P(x,y,a) :: x != a /\\ y != a",
                   "P(x,y,z) :: (x,y) != (v,v) /\\ (y,z) != (w,w)"}) {
        VarPool pool;
        EXPECT_EQ(test::show(test::cl(t, sig, pool), sig, pool), t);
    }
    VarPool pool;
    EXPECT_TRUE(test::cl("P(a,b,c)", sig, pool).pi.is_top());
    EXPECT_THROW(test::cl("R(a)", sig, pool), ParseError);
}
