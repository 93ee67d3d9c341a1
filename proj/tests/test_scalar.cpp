#include <catch2/catch_amalgamated.hpp>

#include "tdlc/padic/scalar.hpp"

using namespace tdlc;

TEST_CASE("valuation of integers") {
    // 75 = 3 * 5^2
    Scalar s = Scalar::from_integer(5, 75, 10);
    REQUIRE(s.val() == 2);
    REQUIRE(s.unit() == 3);
}

TEST_CASE("valuations add under multiplication") {
    Scalar a = Scalar::from_rational(5, Rational(5), 10);       // 5^1
    Scalar b = Scalar::from_rational(5, Rational(50), 10);      // 2 * 5^2
    REQUIRE((a * b).val() == 3);
}

TEST_CASE("exact cancellation yields a zero marker, flagged on inversion") {
    Scalar one = Scalar::from_integer(5, 1, 4);
    Scalar minus_one = Scalar::from_integer(5, -1, 4);
    Scalar z = one + minus_one;
    REQUIRE(z.is_zero());
    REQUIRE_FALSE(z.is_exact_zero());
    REQUIRE(z.zero_floor() == 4);
    REQUIRE_THROWS_AS(z.inverse(), PrecisionExhausted);
    REQUIRE_THROWS_AS(one / z, PrecisionExhausted);
}

TEST_CASE("addition precision reflects cancellation") {
    // (1 + 5^3) - 1 = 5^3: three digits cancel
    Scalar a = Scalar::from_integer(5, 1 + 125, 6);
    Scalar b = Scalar::from_integer(5, 1, 6);
    Scalar d = a - b;
    REQUIRE(d.val() == 3);
    REQUIRE(d.unit() == 1);
    REQUIRE(d.precision() == 3);  // 6 - (3 - 0)
}

TEST_CASE("prime mismatch rejected") {
    Scalar a = Scalar::from_integer(5, 1, 4);
    Scalar b = Scalar::from_integer(3, 1, 4);
    REQUIRE_THROWS_AS(a + b, InputError);
}

TEST_CASE("division is exact with no digit loss") {
    Scalar a = Scalar::from_rational(5, Rational(7, 25), 8);
    REQUIRE(a.val() == -2);
    Scalar b = Scalar::from_integer(5, 10, 8);
    Scalar q = a / b;
    REQUIRE(q.val() == -3);
    REQUIRE(q.precision() == 8);
    // round trip
    REQUIRE((q * b).equals(a));
}

TEST_CASE("equality compares units at shared precision") {
    Scalar a = Scalar::from_integer(5, 2 + 625, 4);  // unit 2 + 5^4 == 2 mod 5^4
    Scalar b = Scalar::from_integer(5, 2, 4);
    REQUIRE(a.equals(b));
    Scalar c = Scalar::from_integer(5, 2 + 125, 4);  // differs in digit 3
    REQUIRE_FALSE(c.equals(b));
    Scalar blo = Scalar::from_integer(5, 2, 2);
    REQUIRE(c.equals(blo));  // min precision 2: agree
}

TEST_CASE("negative rationals and units") {
    Scalar a = Scalar::from_rational(5, Rational(-1), 3);
    REQUIRE(a.val() == 0);
    REQUIRE(a.unit() == 124);  // -1 mod 5^3
    Scalar sum = a + Scalar::from_integer(5, 1, 3);
    REQUIRE(sum.is_zero());
}

TEST_CASE("residues for canonical forms") {
    Scalar a = Scalar::from_rational(5, Rational(7, 5), 6);  // 5^-1 * 7
    REQUIRE(a.residue_mod(1).str() == "7/5");
    REQUIRE(a.residue_mod(0) == Rational(2, 5));  // 7/5 = 2/5 + 1
    REQUIRE(a.residue_mod(-1) == Rational(0));    // 7/5 lies in 5^-1 Z_5
    REQUIRE(Scalar::from_integer(5, 50, 6).residue_mod(1) == Rational(0));
    REQUIRE_THROWS_AS(Scalar::from_integer(5, 1, 2).residue_mod(5), PrecisionExhausted);
}

TEST_CASE("zero markers absorb additions soundly") {
    Scalar z = Scalar::zero_at_floor(5, 3);
    Scalar small = Scalar::from_unit(5, 4, 1, 6);  // 5^4
    Scalar s = z + small;
    REQUIRE(s.is_zero());        // 5^4 is invisible below floor 3
    REQUIRE(s.zero_floor() == 3);
    Scalar big = Scalar::from_unit(5, 1, 1, 6);  // 5^1
    Scalar t = z + big;
    REQUIRE(t.val() == 1);
    REQUIRE(t.precision() == 2);  // known only mod 5^3
}
