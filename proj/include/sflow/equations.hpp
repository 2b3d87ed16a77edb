#pragma once

#include <string>
#include <vector>

#include "sflow/term.hpp"

namespace sflow {

// One instance of a presentation rule: both sides closed terms over the
// session field. Scale-parameterized rules appear once per sampled constant,
// all instances sharing the rule id.
struct Equation {
    std::string id;
    TermPtr lhs, rhs;
    std::string constraint; // e.g. "c != 0"; informational
};

inline std::vector<FieldValue> default_equation_samples(const Field& f) {
    std::vector<FieldValue> s;
    for (long long v : {0, 1, -1, 2, 3}) s.push_back(FieldValue::from_int(f, v));
    return s;
}

inline std::vector<Equation> equation_library(const Field& f,
                                              std::vector<FieldValue> samples = {}) {
    if (samples.empty()) samples = default_equation_samples(f);
    std::vector<Equation> lib;
    auto rule = [&](const std::string& id, const std::string& l, const std::string& r,
                    const std::string& cons = "") {
        lib.push_back({id, term_parse(l, f), term_parse(r, f), cons});
    };
    auto sc = [](const FieldValue& c) { return "scale(" + c.str() + ")"; };

    // additive monoid / duplication comonoid / bimonoid
    rule("1", "(zero*id[1]);add", "id[1]");
    rule("2", "(add*id[1]);add", "(id[1]*add);add");
    rule("3", "swap;add", "add");
    rule("4", "dup;(del*id[1])", "id[1]");
    rule("5", "dup;(dup*id[1])", "dup;(id[1]*dup)");
    rule("6", "dup;swap", "dup");
    rule("7", "add;dup", "(dup*dup);(id[1]*swap*id[1]);(add*add)");
    rule("8", "zero;dup", "zero*zero");
    rule("9", "add;del", "del*del");
    rule("10", "zero;del", "id[0]");
    // scaling
    for (const FieldValue& c : samples)
        for (const FieldValue& b : samples) {
            rule("11", sc(c) + ";" + sc(b), sc(b * c));
            rule("12", sc(b + c), "dup;(" + sc(b) + "*" + sc(c) + ");add");
        }
    rule("13", "scale(1)", "id[1]");
    rule("14", "scale(0)", "del;zero");
    for (const FieldValue& c : samples) {
        rule("15", "(" + sc(c) + "*" + sc(c) + ");add", "add;" + sc(c));
        rule("16", "zero;" + sc(c), "zero");
        rule("17", sc(c) + ";dup", "dup;(" + sc(c) + "*" + sc(c) + ")");
        rule("18", sc(c) + ";del", "del");
    }
    // cups, caps and adjoints
    rule("19", "(cap*id[1]);(id[1]*cup)", "id[1]");
    rule("20", "(id[1]*cap);(cup*id[1])", "id[1]");
    rule("21", "(id[1]*add~);(add*id[1])", "add;add~");
    rule("22", "add;add~", "(add~*id[1]);(id[1]*add)");
    rule("23", "(id[1]*dup);(dup~*id[1])", "dup~;dup");
    rule("24", "dup~;dup", "(dup*id[1]);(id[1]*dup~)");
    rule("25", "add~;add", "id[1]");
    rule("26", "zero;zero~", "id[0]");
    rule("27", "dup;dup~", "id[1]");
    rule("28", "del~;del", "id[0]");
    rule("29", "(scale(-1)*id[1]);cup", "add;zero~");
    rule("30", "cap", "del~;dup");
    for (const FieldValue& c : samples) {
        if (c.is_zero()) continue;
        rule("31", sc(c) + "~", sc(c.inv()), "c != 0");
    }
    // consequences of the presentation
    rule("D1", "del", "dup;cup");
    rule("D2", "cap;dup~;scale(0)", "zero");
    rule("D3", "(scale(-1)*add~);(cup*id[1])", "add");
    rule("D4", "(cap*id[1]);(id[1]*dup~)", "dup");
    rule("D5", "(id[1]*dup~);add",
         "(dup*id[1]*id[1]);(id[1]*swap*id[1]);(add*add);dup~");
    rule("D6", "dup;(zero~*id[1])", "zero~;zero");
    rule("D7", "(del~*id[1]);add", "del;del~");
    for (const FieldValue& c : samples) {
        if (c.is_one()) continue;
        rule("D8", "add~;(id[1]*" + sc(c) + ");add", "del;del~", "c != 1");
        rule("D9", "dup;(id[1]*" + sc(c) + ");dup~", "zero~;zero", "c != 1");
    }
    rule("D10", "cup", "(scale(-1)*id[1]);add;zero~");
    // the symmetry is definable from the other generators
    rule("braid", "swap",
         "(dup*dup);(scale(-1)*add*scale(-1));(id[1]*dup*id[1]);(add*add)");
    // negation behaves as an antipode
    rule("antipode-l", "dup;(scale(-1)*id[1]);add", "del;zero");
    rule("antipode-r", "dup;(id[1]*scale(-1));add", "del;zero");
    return lib;
}

// ---- one rewrite step --------------------------------------------------

namespace detail {

inline TermPtr replace_at(const TermPtr& t, const std::vector<size_t>& path, size_t i,
                          const TermPtr& sub) {
    if (i == path.size()) return sub;
    if (t->kind != Term::Kind::Compose && t->kind != Term::Kind::Tensor)
        throw BadPath("no child " + std::to_string(path[i]) + " at depth " + std::to_string(i));
    if (path[i] > 1) throw BadPath("child index " + std::to_string(path[i]));
    TermPtr a = t->a, b = t->b;
    if (path[i] == 0)
        a = replace_at(a, path, i + 1, sub);
    else
        b = replace_at(b, path, i + 1, sub);
    return t->kind == Term::Kind::Compose ? term_compose(a, b) : term_tensor(a, b);
}

inline TermPtr subterm_at(const TermPtr& t, const std::vector<size_t>& path, size_t i) {
    if (i == path.size()) return t;
    if (t->kind != Term::Kind::Compose && t->kind != Term::Kind::Tensor)
        throw BadPath("no child " + std::to_string(path[i]) + " at depth " + std::to_string(i));
    if (path[i] > 1) throw BadPath("child index " + std::to_string(path[i]));
    return subterm_at(path[i] == 0 ? t->a : t->b, path, i + 1);
}

} // namespace detail

// Rewrites the subterm at `path` (0 = first/top child, 1 = second/bottom)
// by the rule with the given id; forward replaces lhs with rhs. Matching is
// up to identity and associativity normalization.
inline TermPtr apply_equation(const TermPtr& t, const std::vector<size_t>& path,
                              const std::string& rule_id, bool forward,
                              const std::vector<Equation>& lib) {
    TermPtr sub = detail::subterm_at(t, path, 0);
    bool seen = false;
    for (const Equation& e : lib) {
        if (e.id != rule_id) continue;
        seen = true;
        const TermPtr& from = forward ? e.lhs : e.rhs;
        const TermPtr& to = forward ? e.rhs : e.lhs;
        if (term_eq(sub, from)) return detail::replace_at(t, path, 0, to);
    }
    throw NoMatch(seen ? "rule " + rule_id + " does not match the subterm"
                       : "no rule named " + rule_id);
}

} // namespace sflow
