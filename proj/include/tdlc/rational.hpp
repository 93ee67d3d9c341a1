#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "tdlc/errors.hpp"

namespace tdlc {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& base, long exp) {
    if (exp < 0) throw ContractViolation("big_pow: negative exponent");
    BigInt r = 1, b = base;
    long e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

// Exact rational, always reduced, denominator > 0.
struct Rational {
    BigInt num;
    BigInt den;

    Rational() : num(0), den(1) {}
    Rational(long v) : num(v), den(1) {}
    Rational(BigInt n) : num(std::move(n)), den(1) {}
    Rational(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    void normalize() {
        if (den == 0) throw InputError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_zero() const { return num == 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num * b.num, a.den * b.den);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num == 0) throw InputError("rational division by zero");
        return Rational(a.num * b.den, a.den * b.num);
    }
    Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const {
        std::string s = num.str();
        if (den != 1) s += "/" + den.str();
        return s;
    }

    // p-adic valuation; requires a nonzero value.
    long valuation(long p) const {
        if (num == 0) throw ContractViolation("valuation of zero rational");
        long v = 0;
        BigInt n = num < 0 ? BigInt(-num) : num;
        while (n % p == 0) { n /= p; ++v; }
        BigInt d = den;
        while (d % p == 0) { d /= p; --v; }
        return v;
    }
};

// Parses "a", "-a", "a/b". Whitespace not allowed inside.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw InputError("malformed rational literal: '" + text + "'");
    }
}

} // namespace tdlc
