#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "sflow/errors.hpp"
#include "sflow/poly.hpp"

namespace sflow {

enum class FieldKind { Q, GF, QS };

namespace detail {
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % p);
}
inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2, 3, 5, 7, 11, 13}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) d >>= 1, ++r;
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}
} // namespace detail

struct Field {
    FieldKind kind = FieldKind::Q;
    uint64_t p = 0; // modulus for GF

    static Field q() { return {FieldKind::Q, 0}; }
    static Field gf(uint64_t p) {
        if (p > (uint64_t(1) << 31) || !detail::is_prime(p))
            throw Error("gf modulus must be a prime <= 2^31, got " + std::to_string(p));
        return {FieldKind::GF, p};
    }
    static Field qs() { return {FieldKind::QS, 0}; }

    bool operator==(const Field& o) const { return kind == o.kind && p == o.p; }

    std::string name() const {
        switch (kind) {
            case FieldKind::Q: return "q";
            case FieldKind::GF: return "gf:" + std::to_string(p);
            case FieldKind::QS: return "qs";
        }
        return "?";
    }
    static Field parse(const std::string& s) {
        if (s == "q") return q();
        if (s == "qs") return qs();
        if (s.rfind("gf:", 0) == 0) return gf(std::stoull(s.substr(3)));
        throw Error("unknown field: " + s + " (expected q, gf:<p>, or qs)");
    }
};

// Rational function in s: reduced fraction with monic denominator; zero is 0/1.
struct RatFunc {
    Poly num;
    Poly den{BigRat(1)};

    RatFunc() = default;
    RatFunc(Poly n, Poly d) {
        if (d.is_zero()) throw DivisionByZero();
        Poly g = poly_gcd(n, d);
        if (!g.is_zero()) {
            n = divmod(n, g).first;
            d = divmod(d, g).first;
        }
        if (n.is_zero()) {
            d = Poly(BigRat(1));
        } else if (d.lead() != 1) {
            BigRat inv = BigRat(1) / d.lead();
            for (auto& k : n.c) k *= inv;
            for (auto& k : d.c) k *= inv;
        }
        num = std::move(n);
        den = std::move(d);
    }
    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
};

inline RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}
inline RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
}
inline RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return {a.num * b.num, a.den * b.den};
}
inline RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw DivisionByZero();
    return {a.num * b.den, a.den * b.num};
}
inline RatFunc rf_neg(const RatFunc& a) { return {-a.num, a.den}; }

// An exact scalar in Q, GF(p), or Q(s). Always canonical: rationals reduced,
// residues in [0,p), rational functions reduced with monic denominator.
class FieldValue {
public:
    FieldValue() = default; // zero over Q
    static FieldValue rational(BigRat v) {
        FieldValue x;
        x.f_ = Field::q();
        x.q_ = std::move(v);
        return x;
    }
    static FieldValue gf(const Field& f, uint64_t v) {
        FieldValue x;
        x.f_ = f;
        x.r_ = v % f.p;
        return x;
    }
    static FieldValue qs(RatFunc v) {
        FieldValue x;
        x.f_ = Field::qs();
        x.rf_ = std::move(v);
        return x;
    }
    static FieldValue zero(const Field& f) { return from_int(f, 0); }
    static FieldValue one(const Field& f) { return from_int(f, 1); }
    static FieldValue from_int(const Field& f, long long v) {
        switch (f.kind) {
            case FieldKind::Q: return rational(BigRat(v));
            case FieldKind::GF: {
                long long m = v % static_cast<long long>(f.p);
                if (m < 0) m += f.p;
                return gf(f, static_cast<uint64_t>(m));
            }
            case FieldKind::QS: return qs(RatFunc(Poly(BigRat(v)), Poly(BigRat(1))));
        }
        throw Error("bad field");
    }
    static FieldValue from_rat(const Field& f, const BigRat& v) {
        switch (f.kind) {
            case FieldKind::Q: return rational(v);
            case FieldKind::GF: {
                BigInt n = numerator(v) % BigInt(f.p);
                if (n < 0) n += f.p;
                BigInt d = denominator(v) % BigInt(f.p);
                FieldValue nn = gf(f, n.convert_to<uint64_t>());
                FieldValue dd = gf(f, d.convert_to<uint64_t>());
                return nn / dd;
            }
            case FieldKind::QS: return qs(RatFunc(Poly(v), Poly(BigRat(1))));
        }
        throw Error("bad field");
    }
    // Embed Q into Q(s); identity on Q(s) values.
    FieldValue to_qs() const {
        switch (f_.kind) {
            case FieldKind::Q: return qs(RatFunc(Poly(q_), Poly(BigRat(1))));
            case FieldKind::QS: return *this;
            default: throw FieldMismatch("cannot embed " + f_.name() + " into qs");
        }
    }
    static FieldValue s_var() { return qs(RatFunc(Poly::s(), Poly(BigRat(1)))); }

    const Field& field() const { return f_; }
    const BigRat& rat() const { return q_; }
    uint64_t residue() const { return r_; }
    const RatFunc& ratfunc() const { return rf_; }

    bool is_zero() const {
        switch (f_.kind) {
            case FieldKind::Q: return q_ == 0;
            case FieldKind::GF: return r_ == 0;
            case FieldKind::QS: return rf_.is_zero();
        }
        return false;
    }
    bool is_one() const { return *this == one(f_); }

    bool operator==(const FieldValue& o) const {
        if (!(f_ == o.f_)) return false;
        switch (f_.kind) {
            case FieldKind::Q: return q_ == o.q_;
            case FieldKind::GF: return r_ == o.r_;
            case FieldKind::QS: return rf_ == o.rf_;
        }
        return false;
    }
    bool operator!=(const FieldValue& o) const { return !(*this == o); }

    friend FieldValue operator+(const FieldValue& a, const FieldValue& b) {
        a.check(b);
        switch (a.f_.kind) {
            case FieldKind::Q: return rational(a.q_ + b.q_);
            case FieldKind::GF: return gf(a.f_, (a.r_ + b.r_) % a.f_.p);
            case FieldKind::QS: return qs(a.rf_ + b.rf_);
        }
        throw Error("bad field");
    }
    friend FieldValue operator-(const FieldValue& a, const FieldValue& b) {
        a.check(b);
        switch (a.f_.kind) {
            case FieldKind::Q: return rational(a.q_ - b.q_);
            case FieldKind::GF: return gf(a.f_, (a.r_ + a.f_.p - b.r_) % a.f_.p);
            case FieldKind::QS: return qs(a.rf_ - b.rf_);
        }
        throw Error("bad field");
    }
    friend FieldValue operator*(const FieldValue& a, const FieldValue& b) {
        a.check(b);
        switch (a.f_.kind) {
            case FieldKind::Q: return rational(a.q_ * b.q_);
            case FieldKind::GF: return gf(a.f_, detail::mulmod(a.r_, b.r_, a.f_.p));
            case FieldKind::QS: return qs(a.rf_ * b.rf_);
        }
        throw Error("bad field");
    }
    friend FieldValue operator/(const FieldValue& a, const FieldValue& b) {
        a.check(b);
        if (b.is_zero()) throw DivisionByZero();
        switch (a.f_.kind) {
            case FieldKind::Q: return rational(a.q_ / b.q_);
            case FieldKind::GF:
                return gf(a.f_, detail::mulmod(a.r_, detail::powmod(b.r_, a.f_.p - 2, a.f_.p), a.f_.p));
            case FieldKind::QS: return qs(a.rf_ / b.rf_);
        }
        throw Error("bad field");
    }
    FieldValue operator-() const {
        switch (f_.kind) {
            case FieldKind::Q: return rational(-q_);
            case FieldKind::GF: return gf(f_, (f_.p - r_) % f_.p);
            case FieldKind::QS: return qs(rf_neg(rf_));
        }
        throw Error("bad field");
    }
    FieldValue inv() const { return one(f_) / *this; }

    std::string str() const {
        switch (f_.kind) {
            case FieldKind::Q: return rat_to_string(q_);
            case FieldKind::GF: return std::to_string(r_);
            case FieldKind::QS: {
                if (rf_.den == Poly(BigRat(1))) return poly_to_string(rf_.num);
                return "(" + poly_to_string(rf_.num) + ")/(" + poly_to_string(rf_.den) + ")";
            }
        }
        return "?";
    }

private:
    void check(const FieldValue& o) const {
        if (!(f_ == o.f_)) throw FieldMismatch(f_.name() + " vs " + o.f_.name());
    }

    Field f_ = Field::q();
    BigRat q_;
    uint64_t r_ = 0;
    RatFunc rf_;
};

namespace detail {

// Recursive-descent parser for scalar literals: rationals like "-3/7" and
// rational-function expressions like "(s^2+1)/(s-2)" or "2*s^3 - 1/2".
class ScalarParser {
public:
    ScalarParser(const std::string& text, size_t base) : t_(text), base_(base) {}

    RatFunc parse() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != t_.size()) throw SyntaxError("trailing characters in scalar", base_ + pos_);
        return v;
    }

private:
    RatFunc expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = (get() == '-');
        RatFunc v = term();
        if (neg) v = rf_neg(v);
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                RatFunc r = term();
                v = (c == '+') ? v + r : v - r;
            } else {
                return v;
            }
        }
    }
    RatFunc term() {
        RatFunc v = factor();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*' || c == '/') {
                get();
                RatFunc r = factor();
                v = (c == '*') ? v * r : v / r;
            } else {
                return v;
            }
        }
    }
    RatFunc factor() {
        RatFunc v = atom();
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            size_t start = pos_;
            while (isdigit(static_cast<unsigned char>(peek()))) get();
            if (pos_ == start) throw SyntaxError("expected exponent", base_ + pos_);
            unsigned long e = std::stoul(t_.substr(start, pos_ - start));
            RatFunc r(Poly(BigRat(1)), Poly(BigRat(1)));
            for (unsigned long i = 0; i < e; ++i) r = r * v;
            return r;
        }
        return v;
    }
    RatFunc atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            RatFunc v = expr();
            skip_ws();
            if (get() != ')') throw SyntaxError("expected ')'", base_ + pos_);
            return v;
        }
        if (c == 's') {
            get();
            return {Poly::s(), Poly(BigRat(1))};
        }
        if (isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (isdigit(static_cast<unsigned char>(peek()))) get();
            BigInt n(t_.substr(start, pos_ - start));
            return {Poly(BigRat(n)), Poly(BigRat(1))};
        }
        throw SyntaxError("expected scalar atom", base_ + pos_);
    }
    void skip_ws() {
        while (pos_ < t_.size() && isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < t_.size() ? t_[pos_] : '\0'; }
    char get() { return pos_ < t_.size() ? t_[pos_++] : '\0'; }

    const std::string& t_;
    size_t base_;
    size_t pos_ = 0;
};

} // namespace detail

// Parses a scalar literal in the given field. `at` is the offset of `text`
// inside an enclosing document, used for error positions.
inline FieldValue parse_scalar(const Field& f, const std::string& text, size_t at = 0) {
    RatFunc v = detail::ScalarParser(text, at).parse();
    switch (f.kind) {
        case FieldKind::QS: return FieldValue::qs(v);
        case FieldKind::Q:
        case FieldKind::GF: {
            if (v.num.degree() > 0 || v.den.degree() > 0)
                throw SyntaxError("scalar uses 's' but the field is " + f.name(), at);
            BigRat q = v.num.is_zero() ? BigRat(0) : v.num.c[0] / v.den.c[0];
            return FieldValue::from_rat(f, q);
        }
    }
    throw Error("bad field");
}

} // namespace sflow
