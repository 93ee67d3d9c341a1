#pragma once

#include <climits>
#include <string>

#include "tdlc/errors.hpp"
#include "tdlc/rational.hpp"

namespace tdlc {

// Exact element of Q_p carried as p^v * (unit mod p^N).
//
// A nonzero scalar has an exact valuation `val` and a unit known modulo p^N,
// i.e. the value is pinned inside p^val * (unit + p^N * Z_p).  A zero marker
// means "indistinguishable from 0 at the current precision": the value lies in
// p^floor * Z_p where `floor` is LONG_MAX for an exact zero and finite for a
// zero produced by cancellation.
class Scalar {
public:
    static constexpr long kExactZero = LONG_MAX;

    Scalar() : p_(0), zero_(true), val_(0), unit_(0), prec_(0), floor_(kExactZero) {}

    static Scalar zero(long p) {
        Scalar s;
        s.p_ = p;
        return s;
    }

    static Scalar zero_at_floor(long p, long floor) {
        Scalar s;
        s.p_ = p;
        s.floor_ = floor;
        return s;
    }

    static Scalar from_unit(long p, long val, BigInt unit, int prec) {
        if (prec < 1) throw PrecisionExhausted("scalar constructed with no significant digits");
        Scalar s;
        s.p_ = p;
        s.zero_ = false;
        s.val_ = val;
        s.prec_ = prec;
        BigInt m = big_pow(p, prec);
        unit %= m;
        if (unit < 0) unit += m;
        if (unit % p == 0)
            throw ContractViolation("scalar unit not coprime to p");
        s.unit_ = unit;
        return s;
    }

    static Scalar from_rational(long p, const Rational& r, int prec) {
        if (r.is_zero()) return zero(p);
        BigInt n = r.num, d = r.den;
        long v = 0;
        bool neg = n < 0;
        if (neg) n = -n;
        while (n % p == 0) { n /= p; ++v; }
        while (d % p == 0) { d /= p; --v; }
        BigInt m = big_pow(p, prec);
        BigInt u = (n % m) * inverse_mod(d % m, m, p) % m;
        if (neg) u = m - u;
        return from_unit(p, v, u, prec);
    }

    static Scalar from_integer(long p, long value, int prec) {
        return from_rational(p, Rational(value), prec);
    }

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && floor_ == kExactZero; }
    long zero_floor() const { return floor_; }

    long val() const {
        if (zero_) throw PrecisionExhausted("valuation requested of a scalar indistinguishable from zero");
        return val_;
    }
    const BigInt& unit() const { return unit_; }
    int precision() const { return prec_; }

    // Level below which the value is fully determined: value + p^level Z_p is exact.
    long known_level() const { return zero_ ? floor_ : sat_add(val_, prec_); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return add_impl(a, b, false); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return add_impl(a, b, true); }

    Scalar operator-() const {
        if (zero_) return *this;
        BigInt m = big_pow(p_, prec_);
        return from_unit(p_, val_, m - unit_, prec_);
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same_prime(a, b);
        if (a.zero_ || b.zero_) {
            long fa = a.zero_ ? a.floor_ : a.val_;
            long fb = b.zero_ ? b.floor_ : b.val_;
            if (a.is_exact_zero() || b.is_exact_zero()) return zero(a.p_);
            return zero_at_floor(a.p_, sat_add(fa, fb));
        }
        int prec = std::min(a.prec_, b.prec_);
        BigInt m = big_pow(a.p_, prec);
        return from_unit(a.p_, a.val_ + b.val_, a.unit_ % m * (b.unit_ % m), prec);
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        check_same_prime(a, b);
        if (b.zero_)
            throw PrecisionExhausted("division by a scalar indistinguishable from zero at current precision");
        if (a.zero_) {
            if (a.is_exact_zero()) return zero(a.p_);
            return zero_at_floor(a.p_, sat_add(a.floor_, -b.val_));
        }
        int prec = std::min(a.prec_, b.prec_);
        BigInt m = big_pow(a.p_, prec);
        BigInt u = a.unit_ % m * inverse_mod(b.unit_ % m, m, a.p_);
        return from_unit(a.p_, a.val_ - b.val_, u, prec);
    }

    Scalar inverse() const {
        if (zero_)
            throw PrecisionExhausted("inversion of a scalar indistinguishable from zero at current precision");
        BigInt m = big_pow(p_, prec_);
        return from_unit(p_, -val_, inverse_mod(unit_, m, p_), prec_);
    }

    // p^k as an exact scalar at the given precision.
    static Scalar p_power(long p, long k, int prec) { return from_unit(p, k, 1, prec); }

    // Spec equality: valuations agree and units agree mod p^min(N1,N2);
    // zero markers are equal to each other and unequal to any finite scalar.
    bool equals(const Scalar& o) const {
        check_same_prime(*this, o);
        if (zero_ || o.zero_) return zero_ && o.zero_;
        if (val_ != o.val_) return false;
        int prec = std::min(prec_, o.prec_);
        BigInt m = big_pow(p_, prec);
        return unit_ % m == o.unit_ % m;
    }

    // True when the residue class mod p^level Z_p is determined.
    bool known_mod(long level) const { return known_level() >= level; }

    // Canonical residue mod p^level Z_p as an exact rational in [0, p^level),
    // with denominator a power of p.  Requires known_mod(level).
    Rational residue_mod(long level) const {
        if (!known_mod(level))
            throw PrecisionExhausted("residue mod p^" + std::to_string(level) +
                                     " not determined at current precision");
        if (zero_ || val_ >= level) return Rational(0);
        long digits = level - val_;
        BigInt u = unit_ % big_pow(p_, digits);
        if (val_ >= 0) return Rational(u * big_pow(p_, val_));
        return Rational(u, big_pow(p_, -val_));
    }

    // Exact rational equal to this scalar, valid only when the scalar is known
    // to be exact by construction (used after canonical-form materialization).
    Rational to_rational_exact() const {
        if (zero_) return Rational(0);
        if (val_ >= 0) return Rational(unit_ * big_pow(p_, val_));
        return Rational(unit_, big_pow(p_, -val_));
    }

    std::string str() const {
        if (zero_) return floor_ == kExactZero ? "0" : "0(~p^" + std::to_string(floor_) + ")";
        std::string s = std::to_string(p_) + "^" + std::to_string(val_) + "*" + unit_.str();
        return s + ":" + std::to_string(prec_);
    }

private:
    long p_;
    bool zero_;
    long val_;
    BigInt unit_;
    int prec_;
    long floor_;

    static void check_same_prime(const Scalar& a, const Scalar& b) {
        if (a.p_ != b.p_) throw InputError("scalar arithmetic across different primes");
    }

    static long sat_add(long a, long b) {
        if (a == kExactZero || b == kExactZero) return kExactZero;
        long r = a + b;
        return r;
    }

    static BigInt inverse_mod(BigInt a, const BigInt& m, long p) {
        a %= m;
        if (a < 0) a += m;
        if (a % p == 0) throw ContractViolation("inverse of non-unit mod p^N");
        BigInt r0 = m, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            BigInt q = r0 / r1;
            BigInt r2 = r0 - q * r1;
            BigInt s2 = s0 - q * s1;
            r0 = r1; r1 = r2; s0 = s1; s1 = s2;
        }
        // r0 = gcd = 1 since a is a unit mod p^N
        s0 %= m;
        if (s0 < 0) s0 += m;
        return s0;
    }

    static Scalar add_impl(const Scalar& a, const Scalar& b, bool subtract) {
        check_same_prime(a, b);
        if (a.zero_ && b.zero_)
            return a.is_exact_zero() && b.is_exact_zero()
                       ? zero(a.p_)
                       : zero_at_floor(a.p_, std::min(a.floor_, b.floor_));
        if (a.zero_ || b.zero_) {
            const Scalar& z = a.zero_ ? a : b;
            const Scalar& x = a.zero_ ? b : a;
            Scalar xs = (subtract && !a.zero_) ? x : (subtract ? -x : x);
            // value = xs + (something in p^floor Z_p)
            if (z.is_exact_zero()) return xs;
            if (z.floor_ <= xs.val_) return zero_at_floor(a.p_, z.floor_);
            long digits = z.floor_ - xs.val_;
            int prec = std::min<long>(xs.prec_, digits);
            return from_unit(a.p_, xs.val_, xs.unit_, prec);
        }
        // both finite: align to the smaller valuation
        const Scalar* lo = &a;
        const Scalar* hi = &b;
        bool swapped = false;
        if (b.val_ < a.val_) { lo = &b; hi = &a; swapped = true; }
        long shift = hi->val_ - lo->val_;
        // t is known mod p^M
        long M = std::min<long>(lo->prec_, shift + hi->prec_);
        if (M < 1) throw PrecisionExhausted("addition with no overlapping significant digits");
        BigInt m = big_pow(a.p_, M);
        BigInt t = lo->unit_ % m;
        BigInt other = hi->unit_ % m * (big_pow(a.p_, shift) % m) % m;
        bool negate_hi = subtract && !swapped;   // a - b with hi == b
        bool negate_lo = subtract && swapped;    // a - b with lo == b
        if (negate_lo) t = (m - t) % m;
        if (negate_hi) other = (m - other) % m;
        t = (t + other) % m;
        if (t == 0) return zero_at_floor(a.p_, lo->val_ + M);
        long s = 0;
        BigInt u = t;
        while (u % a.p_ == 0) { u /= a.p_; ++s; }
        return from_unit(a.p_, lo->val_ + s, u, static_cast<int>(M - s));
    }
};

} // namespace tdlc
