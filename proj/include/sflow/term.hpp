#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sflow/field.hpp"

namespace sflow {

enum class GenKind { Add, Zero, Dup, Del, Scale, Cup, Cap, Int };

inline const char* gen_name(GenKind k) {
    switch (k) {
        case GenKind::Add: return "add";
        case GenKind::Zero: return "zero";
        case GenKind::Dup: return "dup";
        case GenKind::Del: return "del";
        case GenKind::Scale: return "scale";
        case GenKind::Cup: return "cup";
        case GenKind::Cap: return "cap";
        case GenKind::Int: return "int";
    }
    return "?";
}

// A generator occurrence. A daggered cup is stored as cap (and vice versa),
// so the flag is always false on cup/cap.
struct GenLabel {
    GenKind kind;
    bool daggered = false;
    std::optional<FieldValue> c; // scale constant

    GenLabel(GenKind k, bool dag = false, std::optional<FieldValue> cst = std::nullopt)
        : kind(k), daggered(dag), c(std::move(cst)) {
        if (daggered && kind == GenKind::Cup) kind = GenKind::Cap, daggered = false;
        else if (daggered && kind == GenKind::Cap) kind = GenKind::Cup, daggered = false;
    }

    // (inputs, outputs) of the undaggered generator
    std::pair<size_t, size_t> base_arity() const {
        switch (kind) {
            case GenKind::Add: return {2, 1};
            case GenKind::Zero: return {0, 1};
            case GenKind::Dup: return {1, 2};
            case GenKind::Del: return {1, 0};
            case GenKind::Scale: return {1, 1};
            case GenKind::Cup: return {2, 0};
            case GenKind::Cap: return {0, 2};
            case GenKind::Int: return {1, 1};
        }
        return {0, 0};
    }
    size_t dom() const { return daggered ? base_arity().second : base_arity().first; }
    size_t cod() const { return daggered ? base_arity().first : base_arity().second; }

    GenLabel dagger() const { return GenLabel(kind, !daggered, c); }

    bool operator==(const GenLabel& o) const {
        if (kind != o.kind || daggered != o.daggered || c.has_value() != o.c.has_value())
            return false;
        return !c || *c == *o.c;
    }

    std::string str() const {
        std::string s = gen_name(kind);
        if (kind == GenKind::Scale) s += "(" + c->str() + ")";
        if (daggered) s += "~";
        return s;
    }
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable syntax tree of a signal-flow diagram.
struct Term {
    enum class Kind { Gen, Id, Swap, Compose, Tensor };

    Kind kind;
    std::optional<GenLabel> gen; // Gen
    size_t n = 0;                // Id width
    TermPtr a, b;                // Compose: first a then b; Tensor: a on top
    size_t dom_ = 0, cod_ = 0;

    size_t dom() const { return dom_; }
    size_t cod() const { return cod_; }
};

inline TermPtr term_gen(GenLabel g) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Gen;
    t->dom_ = g.dom();
    t->cod_ = g.cod();
    t->gen = std::move(g);
    return t;
}

inline TermPtr term_id(size_t n) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Id;
    t->n = n;
    t->dom_ = t->cod_ = n;
    return t;
}

inline TermPtr term_swap() {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Swap;
    t->dom_ = t->cod_ = 2;
    return t;
}

inline TermPtr term_compose(TermPtr f, TermPtr g) {
    if (f->cod() != g->dom())
        throw ArityError("compose mismatch: " + std::to_string(f->cod()) + " outputs vs " +
                         std::to_string(g->dom()) + " inputs");
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Compose;
    t->dom_ = f->dom();
    t->cod_ = g->cod();
    t->a = std::move(f);
    t->b = std::move(g);
    return t;
}

inline TermPtr term_tensor(TermPtr f, TermPtr g) {
    auto t = std::make_shared<Term>();
    t->kind = Term::Kind::Tensor;
    t->dom_ = f->dom() + g->dom();
    t->cod_ = f->cod() + g->cod();
    t->a = std::move(f);
    t->b = std::move(g);
    return t;
}

inline TermPtr term_scale(const FieldValue& c) {
    return term_gen(GenLabel(GenKind::Scale, false, c));
}

namespace detail {

inline void compose_factors(const TermPtr& t, std::vector<TermPtr>& out) {
    if (t->kind == Term::Kind::Compose) {
        compose_factors(t->a, out);
        compose_factors(t->b, out);
    } else {
        out.push_back(t);
    }
}

inline void tensor_factors(const TermPtr& t, std::vector<TermPtr>& out) {
    if (t->kind == Term::Kind::Tensor) {
        tensor_factors(t->a, out);
        tensor_factors(t->b, out);
    } else {
        out.push_back(t);
    }
}

} // namespace detail

// Canonical form: Compose and Tensor right-nested; adjacent Id factors in a
// tensor merged (Id(0) vanishing); identity factors dropped from compositions.
inline TermPtr normalize(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Gen:
        case Term::Kind::Id:
        case Term::Kind::Swap: return t;
        case Term::Kind::Tensor: {
            std::vector<TermPtr> fs;
            detail::tensor_factors(t, fs);
            std::vector<TermPtr> merged;
            for (const TermPtr& f : fs) {
                TermPtr nf = normalize(f);
                if (nf->kind == Term::Kind::Tensor) {
                    detail::tensor_factors(nf, merged); // re-flatten nested results
                    continue;
                }
                if (nf->kind == Term::Kind::Id) {
                    if (nf->n == 0) continue;
                    if (!merged.empty() && merged.back()->kind == Term::Kind::Id) {
                        merged.back() = term_id(merged.back()->n + nf->n);
                        continue;
                    }
                }
                merged.push_back(nf);
            }
            if (merged.empty()) return term_id(0);
            TermPtr out = merged.back();
            for (size_t i = merged.size() - 1; i-- > 0;) out = term_tensor(merged[i], out);
            return out;
        }
        case Term::Kind::Compose: {
            std::vector<TermPtr> fs;
            detail::compose_factors(t, fs);
            std::vector<TermPtr> kept;
            for (const TermPtr& f : fs) {
                TermPtr nf = normalize(f);
                if (nf->kind == Term::Kind::Compose) {
                    detail::compose_factors(nf, kept);
                    continue;
                }
                if (nf->kind == Term::Kind::Id) continue;
                kept.push_back(nf);
            }
            if (kept.empty()) return term_id(t->dom());
            TermPtr out = kept.back();
            for (size_t i = kept.size() - 1; i-- > 0;) out = term_compose(kept[i], out);
            return out;
        }
    }
    return t;
}

// Structural equality of normalized forms.
inline bool term_struct_eq(const TermPtr& x, const TermPtr& y) {
    if (x->kind != y->kind) return false;
    switch (x->kind) {
        case Term::Kind::Gen: return *x->gen == *y->gen;
        case Term::Kind::Id: return x->n == y->n;
        case Term::Kind::Swap: return true;
        case Term::Kind::Compose:
        case Term::Kind::Tensor:
            return term_struct_eq(x->a, y->a) && term_struct_eq(x->b, y->b);
    }
    return false;
}

inline bool term_eq(const TermPtr& x, const TermPtr& y) {
    return term_struct_eq(normalize(x), normalize(y));
}

// ---- printing ----------------------------------------------------------

namespace detail {
inline std::string print_rec(const TermPtr& t, bool in_tensor) {
    switch (t->kind) {
        case Term::Kind::Gen: return t->gen->str();
        case Term::Kind::Id: return "id[" + std::to_string(t->n) + "]";
        case Term::Kind::Swap: return "swap";
        case Term::Kind::Tensor: {
            std::vector<TermPtr> fs;
            tensor_factors(t, fs);
            std::string out;
            for (size_t i = 0; i < fs.size(); ++i) {
                if (i) out += " * ";
                out += print_rec(fs[i], true);
            }
            return in_tensor ? "(" + out + ")" : out;
        }
        case Term::Kind::Compose: {
            std::vector<TermPtr> fs;
            compose_factors(t, fs);
            std::string out;
            for (size_t i = 0; i < fs.size(); ++i) {
                if (i) out += " ; ";
                out += print_rec(fs[i], true);
            }
            return "(" + out + ")";
        }
    }
    return "?";
}
} // namespace detail

inline std::string term_print(const TermPtr& t) { return detail::print_rec(t, false); }

// ---- parsing -----------------------------------------------------------

namespace detail {

class TermParser {
public:
    TermParser(const std::string& text, Field field) : t_(text), f_(field) {}

    TermPtr parse() {
        TermPtr r = term();
        skip_ws();
        if (pos_ != t_.size()) throw SyntaxError("trailing input", pos_);
        return normalize(r);
    }

private:
    TermPtr term() {
        TermPtr r = tensor();
        while (eat(';')) r = term_compose(r, tensor());
        return r;
    }

    TermPtr tensor() {
        TermPtr r = atom();
        while (eat('*')) r = term_tensor(r, atom());
        return r;
    }

    TermPtr atom() {
        skip_ws();
        size_t start = pos_;
        TermPtr r;
        if (eat('(')) {
            r = term();
            expect(')');
        } else {
            std::string w = word();
            if (w == "id") {
                expect('[');
                r = term_id(nat());
                expect(']');
            } else if (w == "swap") {
                r = term_swap();
            } else if (w == "scale") {
                expect('(');
                r = term_scale(scalar());
                expect(')');
            } else if (w == "add") r = term_gen(GenLabel(GenKind::Add));
            else if (w == "zero") r = term_gen(GenLabel(GenKind::Zero));
            else if (w == "dup") r = term_gen(GenLabel(GenKind::Dup));
            else if (w == "del") r = term_gen(GenLabel(GenKind::Del));
            else if (w == "cup") r = term_gen(GenLabel(GenKind::Cup));
            else if (w == "cap") r = term_gen(GenLabel(GenKind::Cap));
            else if (w == "int") r = term_gen(GenLabel(GenKind::Int));
            else throw SyntaxError("unknown atom '" + w + "'", start);
        }
        while (eat('~')) r = dagger_postfix(r);
        return r;
    }

    static TermPtr dagger_postfix(const TermPtr& t);

    FieldValue scalar() {
        // grab the balanced-paren span up to the scale's closing ')'
        size_t start = pos_, depth = 0;
        while (pos_ < t_.size()) {
            char c = t_[pos_];
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            ++pos_;
        }
        if (pos_ == t_.size()) throw SyntaxError("unterminated scalar", start);
        return parse_scalar(f_, t_.substr(start, pos_ - start), start);
    }

    std::string word() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < t_.size() && std::isalpha(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError("expected a diagram atom", start);
        return t_.substr(start, pos_ - start);
    }

    size_t nat() {
        skip_ws();
        size_t start = pos_, v = 0;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_])))
            v = v * 10 + static_cast<size_t>(t_[pos_++] - '0');
        if (pos_ == start) throw SyntaxError("expected a number", start);
        return v;
    }

    void skip_ws() {
        while (pos_ < t_.size() &&
               std::isspace(static_cast<unsigned char>(t_[pos_])))
            ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < t_.size() && t_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }

    const std::string& t_;
    Field f_;
    size_t pos_ = 0;
};

} // namespace detail

// Dagger: reverse every composition and flip each generator's adjoint flag.
inline TermPtr dagger_term(const TermPtr& t) {
    switch (t->kind) {
        case Term::Kind::Gen: return term_gen(t->gen->dagger());
        case Term::Kind::Id:
        case Term::Kind::Swap: return t;
        case Term::Kind::Compose: return term_compose(dagger_term(t->b), dagger_term(t->a));
        case Term::Kind::Tensor: return term_tensor(dagger_term(t->a), dagger_term(t->b));
    }
    return t;
}

inline TermPtr detail::TermParser::dagger_postfix(const TermPtr& t) { return dagger_term(t); }

inline TermPtr term_parse(const std::string& text, const Field& field) {
    return detail::TermParser(text, field).parse();
}

// Star duality on one generator: add<->dup, zero<->del, scale fixed, int
// fixed; cup/cap gain a sign twist. A daggered label maps to the starred
// base label with the flag re-applied.
inline TermPtr star_gen(const GenLabel& g) {
    TermPtr base;
    switch (g.kind) {
        case GenKind::Add: base = term_gen(GenLabel(GenKind::Dup)); break;
        case GenKind::Dup: base = term_gen(GenLabel(GenKind::Add)); break;
        case GenKind::Zero: base = term_gen(GenLabel(GenKind::Del)); break;
        case GenKind::Del: base = term_gen(GenLabel(GenKind::Zero)); break;
        case GenKind::Scale:
        case GenKind::Int: base = term_gen(GenLabel(g.kind, false, g.c)); break;
        case GenKind::Cup: {
            // cup* = cap ; (id x scale(-1)), arity flipped like the others
            FieldValue m1 = -FieldValue::one(g.c ? g.c->field() : Field::q());
            base = term_compose(term_gen(GenLabel(GenKind::Cap)),
                                term_tensor(term_id(1), term_scale(m1)));
            break;
        }
        case GenKind::Cap: {
            // cap* = (id x scale(-1)) ; cup
            FieldValue m1 = -FieldValue::one(g.c ? g.c->field() : Field::q());
            base = term_compose(term_tensor(term_id(1), term_scale(m1)),
                                term_gen(GenLabel(GenKind::Cup)));
            break;
        }
    }
    return g.daggered ? dagger_term(base) : base;
}

// Star duality ("bizarro"): generator table above, compositions reversed,
// tensor order kept.
inline TermPtr star_term(const TermPtr& t, const Field& field) {
    switch (t->kind) {
        case Term::Kind::Gen: {
            GenLabel g = *t->gen;
            if ((g.kind == GenKind::Cup || g.kind == GenKind::Cap) && !g.c)
                g.c = FieldValue::one(field); // pin the sign twist's field
            return star_gen(g);
        }
        case Term::Kind::Id:
        case Term::Kind::Swap: return t;
        case Term::Kind::Compose:
            return term_compose(star_term(t->b, field), star_term(t->a, field));
        case Term::Kind::Tensor:
            return term_tensor(star_term(t->a, field), star_term(t->b, field));
    }
    return t;
}

} // namespace sflow
