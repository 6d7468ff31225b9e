#include "nrcl/render.hpp"

#include <cctype>

namespace nrcl {

const std::string& Namer::name(VarId v) {
    if (auto it = names_.find(v); it != names_.end()) return it->second;
    std::string base = pool_->base_name(v);
    if (syntax_ == Syntax::Problem && !base.empty())
        base[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(base[0])));
    auto taken = [&](const std::string& s) {
        return used_.count(s) > 0 || (syntax_ == Syntax::Display && sig_->find_constant(s).has_value());
    };
    std::string cand = base;
    for (int i = 2; taken(cand); ++i) cand = syntax_ == Syntax::Display ? cand + "'" : base + "_" + std::to_string(i);
    used_.insert(cand);
    return names_.emplace(v, cand).first->second;
}

std::string render(Term t, Namer& n) {
    return t.is_var() ? n.name(t.var()) : n.signature().constant_name(t.const_index());
}

namespace {

std::string render_tuple(std::span<const Term> ts, Namer& n, bool parens_for_single) {
    if (ts.size() == 1 && !parens_for_single) return render(ts[0], n);
    std::string out = "(";
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ',';
        out += render(ts[i], n);
    }
    return out + ")";
}

}  // namespace

std::string render(const Atom& a, Namer& n) {
    std::string out = n.signature().pred_name(a.pred);
    if (!a.args.empty()) out += render_tuple(a.args, n, true);
    return out;
}

std::string render(const Literal& l, Namer& n) {
    std::string sign = l.positive ? "" : (n.syntax() == Syntax::Display ? "~" : "-");
    return sign + render(l.atom, n);
}

std::string render(const Clause& c, Namer& n) {
    if (c.empty()) return "false";
    const char* sep = n.syntax() == Syntax::Display ? " \\/ " : " | ";
    std::string out;
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
        if (i) out += sep;
        out += render(c.lits[i], n);
    }
    return out;
}

std::string render(const Constraint& pi, Namer& n) {
    if (pi.is_bot()) return "BOT";
    if (pi.is_top()) return "TOP";
    std::string out;
    for (std::size_t i = 0; i < pi.parts().size(); ++i) {
        const auto& d = pi.parts()[i];
        if (i) out += " /\\ ";
        out += render_tuple(d.lhs, n, false) + " != " + render_tuple(d.rhs, n, false);
    }
    return out;
}

std::string render(const Substitution& s, Namer& n) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s.bindings()) {
        if (!first) out += ", ";
        first = false;
        out += n.name(v) + " <- " + render(t, n);
    }
    return out + "}";
}

std::string render(const ConstrainedLiteral& cl, Namer& n) {
    std::string lit = render(cl.lit, n);
    return lit + " :: " + render(cl.pi, n);
}

std::string render(const ConstrainedLiteral& cl, const Signature& sig, const VarPool& pool) {
    Namer n(sig, pool);
    return render(cl, n);
}

std::string render_clause_triple(const Clause& c, const Substitution& s, const Constraint& pi, Namer& n) {
    std::string cs = render(c, n);
    std::string ss = render(s, n);
    return "(" + cs + " ; " + ss + " ; " + render(pi, n) + ")";
}

}  // namespace nrcl
