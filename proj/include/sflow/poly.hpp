#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "sflow/errors.hpp"

namespace sflow {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Univariate polynomial in s over Q. Coefficient of s^i at c[i];
// the zero polynomial has an empty coefficient vector, otherwise c.back() != 0.
struct Poly {
    std::vector<BigRat> c;

    Poly() = default;
    explicit Poly(BigRat k) {
        if (k != 0) c.push_back(std::move(k));
    }
    static Poly s() { return Poly(std::vector<BigRat>{BigRat(0), BigRat(1)}); }
    explicit Poly(std::vector<BigRat> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for zero
    const BigRat& lead() const { return c.back(); }

    bool operator==(const Poly& o) const { return c == o.c; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] += a.c[i];
            if (i < b.c.size()) r.c[i] += b.c[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r;
        r.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < r.c.size(); ++i) {
            if (i < a.c.size()) r.c[i] += a.c[i];
            if (i < b.c.size()) r.c[i] -= b.c[i];
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        Poly r;
        r.c.assign(a.c.size() + b.c.size() - 1, BigRat(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& k : r.c) k = -k;
        return r;
    }

    // Quotient and remainder with deg(rem) < deg(b).
    friend std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero();
        Poly q;
        if (a.degree() >= b.degree()) q.c.assign(a.degree() - b.degree() + 1, BigRat(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            int k = a.degree() - b.degree();
            BigRat f = a.lead() / b.lead();
            q.c[k] += f;
            for (size_t i = 0; i < b.c.size(); ++i) a.c[i + k] -= f * b.c[i];
            a.trim();
        }
        q.trim();
        return {q, a};
    }

    BigRat eval(const BigRat& x) const {
        BigRat acc(0);
        for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
        return acc;
    }
};

// Monic gcd; gcd(0,0) = 0.
inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
    }
    if (!a.is_zero() && a.lead() != 1) {
        BigRat inv = BigRat(1) / a.lead();
        for (auto& k : a.c) k *= inv;
    }
    return a;
}

inline std::string rat_to_string(const BigRat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Prints e.g. "s^2+1", "2*s^3-s+1/2", "0".
inline std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (size_t i = p.c.size(); i-- > 0;) {
        const BigRat& k = p.c[i];
        if (k == 0) continue;
        bool neg = k < 0;
        BigRat mag = neg ? BigRat(-k) : k;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? "-" : "+";
        if (i == 0) {
            out += rat_to_string(mag);
        } else {
            if (mag != 1) out += rat_to_string(mag) + "*";
            out += (i == 1) ? "s" : "s^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace sflow
