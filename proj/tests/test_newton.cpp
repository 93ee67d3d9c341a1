#include <catch2/catch_amalgamated.hpp>

#include "tdlc/padic/newton.hpp"

using namespace tdlc;

namespace {
long num(const Rational& r) { return static_cast<long>(r.num); }
long den(const Rational& r) { return static_cast<long>(r.den); }
}  // namespace

TEST_CASE("convention self-check passes") {
    REQUIRE_NOTHROW(newton_self_check(5));
    REQUIRE_NOTHROW(newton_self_check(2));
}

TEST_CASE("root valuations of (x-1)(x-5)") {
    long p = 5;
    auto S = [&](long v) { return Scalar::from_integer(p, v, 20); };
    Poly f(p, {S(5), S(-6), S(1)});
    NewtonPolygon np = newton_polygon(f);
    auto vals = np.root_valuations();
    REQUIRE(vals.size() == 2);
    // derived oracle: factor directly, valuations {0, 1}
    std::vector<long> got;
    for (auto& v : vals) { REQUIRE(den(v) == 1); got.push_back(num(v)); }
    std::sort(got.begin(), got.end());
    REQUIRE(got == std::vector<long>{0, 1});
}

TEST_CASE("root valuations of x^2 - 5 are both 1/2") {
    long p = 5;
    auto S = [&](long v) { return Scalar::from_integer(p, v, 20); };
    Poly f(p, {S(-5), S(0), S(1)});
    NewtonPolygon np = newton_polygon(f);
    REQUIRE(np.segments.size() == 1);
    REQUIRE(np.segments[0].length == 2);
    REQUIRE(num(-np.segments[0].slope) == 1);
    REQUIRE(den(-np.segments[0].slope) == 2);
}

TEST_CASE("x - 1 has a single valuation-0 root") {
    long p = 5;
    auto S = [&](long v) { return Scalar::from_integer(p, v, 20); };
    Poly f(p, {S(-1), S(1)});
    NewtonPolygon np = newton_polygon(f);
    auto vals = np.root_valuations();
    REQUIRE(vals.size() == 1);
    REQUIRE(vals[0] == Rational(0));
}

TEST_CASE("slope lengths sum to the degree and x^k split works") {
    long p = 3;
    auto S = [&](long v) { return Scalar::from_integer(p, v, 20); };
    // x^2 * (x-3) = x^3 - 3x^2
    Poly f(p, {S(0), S(0), S(-3), S(1)});
    NewtonPolygon np = newton_polygon(f);
    REQUIRE(np.x_order == 2);
    int total = np.x_order;
    for (auto& s : np.segments) total += s.length;
    REQUIRE(total == 3);
    REQUIRE(np.root_valuations() == std::vector<Rational>{Rational(1)});
}

TEST_CASE("expanding exponent over a segment is integral") {
    // mixed half-valuations: (x^2 - 5)(x^2 - 1/5) has segment sums +1 and -1
    long p = 5;
    auto R = [&](Rational r) { return Scalar::from_rational(p, r, 20); };
    Poly f(p, {R(Rational(-1)), R(Rational(0)), R(Rational(5) + Rational(1, 5)), R(Rational(0)),
               R(Rational(1))});
    // f = x^4 - (5 + 1/5) x^2 + 1 ... constructed sign: (x^2-5)(x^2-1/5) = x^4 - (5+1/5)x^2 + 1
    NewtonPolygon np = newton_polygon(f);
    REQUIRE(np.segments.size() == 2);
    long rise0 = num(np.segments[0].slope * Rational(np.segments[0].length));
    long rise1 = num(np.segments[1].slope * Rational(np.segments[1].length));
    REQUIRE(den(np.segments[0].slope * Rational(np.segments[0].length)) == 1);
    REQUIRE(rise0 == -1);
    REQUIRE(rise1 == 1);
}

TEST_CASE("class factors split the spectrum") {
    long p = 5;
    auto R = [&](Rational r) { return Scalar::from_rational(p, r, 24); };
    // (x-5)(x-1)(x-1/5): one root in each class
    Poly f(p, {R(Rational(-1)), R(Rational(31, 5)), R(Rational(-31, 5)), R(Rational(1))});
    ClassFactors cf = class_factors(f);
    REQUIRE(cf.contracting.degree() == 1);
    REQUIRE(cf.neutral.degree() == 1);
    REQUIRE(cf.expanding.degree() == 1);
    // contracting factor: root 5 -> x - 5
    REQUIRE(cf.contracting.c[0].equals(R(Rational(-5))));
    REQUIRE(cf.neutral.c[0].equals(R(Rational(-1))));
    REQUIRE(cf.expanding.c[0].equals(R(Rational(-1, 5))));
    // product reassembles f at precision
    Poly prod = cf.contracting * cf.neutral * cf.expanding;
    for (int i = 0; i <= 3; ++i) REQUIRE(prod.c[i].equals(f.c[i]));
}

TEST_CASE("class factors with a quadratic half-valuation segment") {
    long p = 5;
    auto S = [&](long v) { return Scalar::from_integer(p, v, 24); };
    // x^2 - 5: both roots valuation 1/2, all contracting
    Poly f(p, {S(-5), S(0), S(1)});
    ClassFactors cf = class_factors(f);
    REQUIRE(cf.contracting.degree() == 2);
    REQUIRE(cf.neutral.degree() == 0);
    REQUIRE(cf.expanding.degree() == 0);
}

TEST_CASE("cancellation zeros below the hull are refused") {
    long p = 5;
    auto S = [&](long v) { return Scalar::from_integer(p, v, 20); };
    Scalar murky = Scalar::zero_at_floor(p, 0);  // could be a unit
    Poly f(p, {S(5), murky, S(1)});
    REQUIRE_THROWS_AS(newton_polygon(f), PrecisionExhausted);
    // with a high floor the hull is certain: hull through (0,1),(2,0)
    Scalar benign = Scalar::zero_at_floor(p, 3);
    Poly g(p, {S(5), benign, S(1)});
    REQUIRE_NOTHROW(newton_polygon(g));
}
