#include "nrcl/io.hpp"

#include "nrcl/render.hpp"

#include <cctype>
#include <optional>

namespace nrcl {

namespace {

struct Token {
    enum class Kind { Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t line = 1, col = 1;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

// Splits into identifiers and punctuation; `%` starts a comment.
std::vector<Token> lex(std::string_view s) {
    static const char* const multi[] = {"::", "!=", "/\\", "\\/"};
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '%') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t{Token::Kind::Punct, "", line, col};
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            t.kind = Token::Kind::Ident;
            t.text = std::string(s.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (const char* m : multi) {
            std::string_view mv(m);
            if (s.substr(i, mv.size()) == mv) {
                t.text = std::string(mv);
                advance(mv.size());
                matched = true;
                break;
            }
        }
        if (!matched) {
            if (std::string_view("(),.|-~:").find(c) == std::string_view::npos)
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
            t.text = std::string(1, c);
            advance(1);
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{Token::Kind::End, "", line, col});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool at_end() const { return peek().kind == Token::Kind::End; }
    bool accept(std::string_view p) {
        if (peek().kind == Token::Kind::Punct && peek().text == p) {
            next();
            return true;
        }
        return false;
    }
    const Token& expect(std::string_view p) {
        if (peek().kind != Token::Kind::Punct || peek().text != p) fail("expected '" + std::string(p) + "'");
        return next();
    }
    const Token& expect_ident(const std::string& what) {
        if (peek().kind != Token::Kind::Ident) fail("expected " + what);
        return next();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, msg + (t.kind == Token::Kind::End ? " at end of input" : ", found '" + t.text + "'"));
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------ problem files

struct RawTerm {
    std::string name;
    std::size_t line, col;
};
struct RawLit {
    bool positive;
    std::string pred;
    std::vector<RawTerm> args;
    std::size_t line, col;
};
struct RawClause {
    std::string label;
    std::vector<RawLit> lits;
};

bool is_variable_name(const std::string& s) { return std::isupper(static_cast<unsigned char>(s[0])) != 0; }

std::string base_name_of(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != '\'') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out.empty() ? "x" : out;
}

RawLit parse_raw_literal(Cursor& cur) {
    bool positive = !(cur.accept("-") || cur.accept("~"));
    const Token& p = cur.expect_ident("a predicate");
    RawLit l{positive, p.text, {}, p.line, p.col};
    if (cur.accept("(")) {
        do {
            const Token& a = cur.expect_ident("an argument");
            l.args.push_back({a.text, a.line, a.col});
        } while (cur.accept(","));
        cur.expect(")");
    }
    return l;
}

}  // namespace

Problem parse_problem(std::string_view text) {
    Cursor cur(lex(text));
    std::optional<std::vector<std::string>> domain;
    std::vector<RawClause> raw;
    while (!cur.at_end()) {
        const Token& t = cur.peek();
        if (t.kind == Token::Kind::Ident && t.text == "domain" && cur.peek(1).kind == Token::Kind::Ident) {
            if (domain) throw ParseError(t.line, t.col, "domain declared twice");
            cur.next();
            domain.emplace();
            while (cur.peek().kind == Token::Kind::Ident) domain->push_back(cur.next().text);
            cur.expect(".");
            for (std::size_t i = 0; i < domain->size(); ++i)
                for (std::size_t j = 0; j < i; ++j)
                    if ((*domain)[i] == (*domain)[j]) throw ParseError(t.line, t.col, "duplicate constant " + (*domain)[i]);
            continue;
        }
        RawClause rc;
        if (t.kind == Token::Kind::Ident && cur.peek(1).kind == Token::Kind::Punct && cur.peek(1).text == ":") {
            rc.label = t.text;
            cur.next();
            cur.next();
        }
        if (cur.peek().kind == Token::Kind::Ident && cur.peek().text == "false" && cur.peek(1).text == ".") {
            cur.next();
        } else {
            do rc.lits.push_back(parse_raw_literal(cur));
            while (cur.accept("|"));
        }
        cur.expect(".");
        raw.push_back(std::move(rc));
    }
    if (!domain) throw ParseError(1, 1, "missing domain declaration");
    if (domain->empty()) throw ParseError(1, 1, "empty domain");

    struct Seen {
        std::size_t arity, line, col;
    };
    std::map<std::string, Seen> arities;
    for (const auto& rc : raw)
        for (const auto& l : rc.lits) {
            auto [it, fresh] = arities.emplace(l.pred, Seen{l.args.size(), l.line, l.col});
            if (!fresh && it->second.arity != l.args.size())
                throw ParseError(l.line, l.col,
                                 "arity mismatch for " + l.pred + ": " + std::to_string(it->second.arity) + " at " +
                                     std::to_string(it->second.line) + ":" + std::to_string(it->second.col) + " but " +
                                     std::to_string(l.args.size()) + " at " + std::to_string(l.line) + ":" +
                                     std::to_string(l.col));
        }
    std::vector<std::pair<std::string, std::size_t>> preds;
    for (const auto& [name, s] : arities) preds.emplace_back(name, s.arity);

    Problem out{Signature(preds, *domain), {}, {}};
    for (const auto& rc : raw) {
        std::map<std::string, VarId> scope;
        Clause c;
        for (const auto& rl : rc.lits) {
            Literal l{rl.positive, Atom{*out.sig.find_pred(rl.pred), {}}};
            for (const auto& a : rl.args) {
                if (is_variable_name(a.name)) {
                    auto it = scope.find(a.name);
                    if (it == scope.end()) it = scope.emplace(a.name, out.vars.fresh(base_name_of(a.name))).first;
                    l.atom.args.push_back(Term::variable(it->second));
                } else if (auto k = out.sig.find_constant(a.name)) {
                    l.atom.args.push_back(Term::constant(*k));
                } else {
                    throw ParseError(a.line, a.col, "undeclared constant " + a.name);
                }
            }
            c.lits.push_back(std::move(l));
        }
        out.clauses.push_back({rc.label, std::move(c)});
    }
    return out;
}

std::string render_problem(const Problem& p) {
    std::string out = "domain";
    for (const auto& d : p.sig.domain()) out += " " + d;
    out += " .\n";
    for (const auto& nc : p.clauses) {
        Namer n(p.sig, p.vars, Syntax::Problem);
        if (!nc.label.empty()) out += nc.label + ": ";
        out += render(nc.clause, n) + " .\n";
    }
    return out;
}

// ------------------------------------------------------------ display syntax

namespace {

Term display_term(const Token& t, const Signature& sig, VarPool& pool, VarScope& scope) {
    if (auto k = sig.find_constant(t.text)) return Term::constant(*k);
    auto it = scope.find(t.text);
    if (it == scope.end()) it = scope.emplace(t.text, pool.fresh(base_name_of(t.text))).first;
    return Term::variable(it->second);
}

Literal display_literal(Cursor& cur, const Signature& sig, VarPool& pool, VarScope& scope) {
    bool positive = !(cur.accept("~") || cur.accept("-"));
    const Token& p = cur.expect_ident("a predicate");
    auto pred = sig.find_pred(p.text);
    if (!pred) throw ParseError(p.line, p.col, "unknown predicate " + p.text);
    Literal l{positive, Atom{*pred, {}}};
    if (cur.accept("(")) {
        do l.atom.args.push_back(display_term(cur.expect_ident("an argument"), sig, pool, scope));
        while (cur.accept(","));
        cur.expect(")");
    }
    if (l.atom.args.size() != sig.arity(*pred))
        throw ParseError(p.line, p.col, "arity mismatch for " + p.text + ": expected " + std::to_string(sig.arity(*pred)));
    return l;
}

Args display_tuple(Cursor& cur, const Signature& sig, VarPool& pool, VarScope& scope) {
    Args out;
    if (cur.accept("(")) {
        do out.push_back(display_term(cur.expect_ident("a term"), sig, pool, scope));
        while (cur.accept(","));
        cur.expect(")");
    } else {
        out.push_back(display_term(cur.expect_ident("a term"), sig, pool, scope));
    }
    return out;
}

Constraint display_constraint(Cursor& cur, const Signature& sig, VarPool& pool, VarScope& scope) {
    if (cur.peek().kind == Token::Kind::Ident && cur.peek().text == "TOP") {
        cur.next();
        return Constraint::top();
    }
    if (cur.peek().kind == Token::Kind::Ident && cur.peek().text == "BOT") {
        cur.next();
        return Constraint::bot();
    }
    Constraint pi;
    do {
        const Token& at = cur.peek();
        Args lhs = display_tuple(cur, sig, pool, scope);
        cur.expect("!=");
        VarScope local;
        Args rhs = display_tuple(cur, sig, pool, local);
        if (lhs.size() != rhs.size()) throw ParseError(at.line, at.col, "tuple lengths differ");
        pi.add(Disequation{std::move(lhs), std::move(rhs)});
    } while (cur.accept("/\\"));
    return pi;
}

void expect_end(Cursor& cur) {
    if (!cur.at_end()) cur.fail("unexpected trailing input");
}

}  // namespace

Literal parse_display_literal(std::string_view text, const Signature& sig, VarPool& pool, VarScope& scope) {
    Cursor cur(lex(text));
    auto l = display_literal(cur, sig, pool, scope);
    expect_end(cur);
    return l;
}

Constraint parse_display_constraint(std::string_view text, const Signature& sig, VarPool& pool, VarScope& scope) {
    Cursor cur(lex(text));
    auto pi = display_constraint(cur, sig, pool, scope);
    expect_end(cur);
    return pi;
}

ConstrainedLiteral parse_constrained_literal(std::string_view text, const Signature& sig, VarPool& pool) {
    Cursor cur(lex(text));
    VarScope scope;
    ConstrainedLiteral cl{display_literal(cur, sig, pool, scope), Constraint::top()};
    if (cur.accept("::")) cl.pi = display_constraint(cur, sig, pool, scope);
    expect_end(cur);
    return cl;
}

std::string render_model(std::span<const ConstrainedLiteral> model, const Signature& sig, const VarPool& pool) {
    std::string out;
    for (const auto& cl : model) out += render(cl, sig, pool) + "\n";
    return out + "% all other atoms false\n";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        line = trim(line);
        if (line.empty() || line.front() == '%') continue;
        f(line_no, line);
    }
}

}  // namespace

std::vector<ConstrainedLiteral> parse_model(std::string_view text, const Signature& sig, VarPool& pool) {
    std::vector<ConstrainedLiteral> out;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        try {
            out.push_back(parse_constrained_literal(line, sig, pool));
        } catch (const ParseError& e) {
            throw ParseError(line_no, e.column(), e.what());
        }
    });
    return out;
}

std::vector<ScriptItem> parse_script(std::string_view text) {
    std::vector<ScriptItem> out;
    for_each_line(text, [&](std::size_t line_no, std::string_view line) {
        if (line.starts_with("decide ")) {
            out.push_back({ScriptItem::Kind::Decide, std::string(trim(line.substr(7))), 0});
        } else if (line.starts_with("propagate ")) {
            auto arg = trim(line.substr(10));
            std::size_t n = 0;
            bool ok = arg.size() > 1 && arg[0] == 'C';
            for (std::size_t i = 1; ok && i < arg.size(); ++i) {
                ok = std::isdigit(static_cast<unsigned char>(arg[i])) != 0;
                n = n * 10 + static_cast<std::size_t>(arg[i] - '0');
            }
            if (!ok || n == 0) throw ParseError(line_no, 1, "expected `propagate C<n>`");
            out.push_back({ScriptItem::Kind::PreferClause, {}, n - 1});
        } else if (line.starts_with("RULE ")) {
            auto bar1 = line.find('|');
            if (bar1 == std::string_view::npos) throw ParseError(line_no, 1, "malformed trace line");
            if (trim(line.substr(5, bar1 - 5)) != "Decide") return;
            auto bar2 = line.find('|', bar1 + 1);
            if (bar2 == std::string_view::npos) throw ParseError(line_no, 1, "malformed trace line");
            auto payload = trim(line.substr(bar2 + 1));
            if (payload.starts_with("[")) {
                auto close = payload.find(']');
                if (close == std::string_view::npos) throw ParseError(line_no, 1, "malformed decision tag");
                payload = trim(payload.substr(close + 1));
            }
            out.push_back({ScriptItem::Kind::Decide, std::string(payload), 0});
        } else {
            throw ParseError(line_no, 1, "unrecognized script line");
        }
    });
    return out;
}

std::string render_event(const TraceEvent& e) {
    return "RULE " + e.rule + " | level " + std::to_string(e.level) + " | " + e.payload;
}

std::string render_trace(const RunResult& r) {
    std::string out;
    for (const auto& n : r.notes) out += "% " + n + "\n";
    for (const auto& e : r.trace) out += render_event(e) + "\n";
    return out;
}

}  // namespace nrcl
