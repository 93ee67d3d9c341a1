#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tdlc/padic/lattice.hpp"

using namespace tdlc;

namespace {

Lattice from_cols(long p, std::vector<std::vector<Rational>> cols, int prec = 20) {
    return Lattice::from_rational_columns(p, cols, prec);
}

// seeded random full-rank lattice with entries spanning a few p-powers
Lattice random_lattice(std::mt19937_64& rng, long p, int n, int prec = 20) {
    while (true) {
        std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                long num = static_cast<long>(rng() % 19) - 9;
                long e = static_cast<long>(rng() % 5) - 2;
                Rational r(num);
                if (e > 0) r = r * Rational(big_pow(p, e));
                if (e < 0) r = r / Rational(big_pow(p, -e));
                cols[j][i] = r;
            }
        try {
            return from_cols(p, cols, prec);
        } catch (const InputError&) {
            continue;  // singular draw
        } catch (const PrecisionExhausted&) {
            continue;  // singular at precision (proportional columns)
        }
    }
}

}  // namespace

TEST_CASE("canonicalize reorders the standard-ish basis") {
    Lattice L = from_cols(5, {{Rational(0), Rational(1)}, {Rational(5), Rational(0)}});
    REQUIRE(L.diag_exponents() == std::vector<long>{1, 0});
    REQUIRE(L.basis()[0][0] == Rational(5));
    REQUIRE(L.basis()[1][1] == Rational(1));
    REQUIRE(L.basis()[0][1] == Rational(0));
}

TEST_CASE("column reduction example") {
    // generators (1,0),(1,5): canonical (1,0),(0,5)
    Lattice L = from_cols(5, {{Rational(1), Rational(0)}, {Rational(1), Rational(5)}});
    Lattice expect = from_cols(5, {{Rational(1), Rational(0)}, {Rational(0), Rational(5)}});
    REQUIRE(L == expect);
}

TEST_CASE("standard basis is a fixed point") {
    Lattice L = Lattice::scaled_standard(5, 3, 0, 20);
    Lattice M = Lattice::canonicalize(L.to_mat(20), 20);
    REQUIRE(L == M);
}

TEST_CASE("index of p Z^3 in Z^3") {
    Lattice sub = Lattice::scaled_standard(5, 3, 1, 20);
    Lattice sup = Lattice::scaled_standard(5, 3, 0, 20);
    REQUIRE(lattice_index(sub, sup) == 125);
    REQUIRE_THROWS_AS(lattice_index(sup, sub), InputError);
}

TEST_CASE("coordinatewise intersection") {
    Lattice a = from_cols(5, {{Rational(1, 5), Rational(0)}, {Rational(0), Rational(1)}});
    Lattice b = from_cols(5, {{Rational(1), Rational(0)}, {Rational(0), Rational(1, 5)}});
    Lattice expect = Lattice::scaled_standard(5, 2, 0, 20);
    REQUIRE(lattice_intersect(a, b) == expect);
}

TEST_CASE("canonical form is representation independent under unimodular remixing") {
    std::mt19937_64 rng(7);
    for (long p : {2L, 3L, 5L}) {
        for (int rep = 0; rep < 20; ++rep) {
            Lattice L = random_lattice(rng, p, 3);
            // remix columns by a random integral unimodular matrix
            std::vector<std::vector<Rational>> cols(3, std::vector<Rational>(3));
            for (int j = 0; j < 3; ++j)
                for (int i = 0; i < 3; ++i) cols[j][i] = L.basis()[i][j];
            for (int k = 0; k < 6; ++k) {
                int from = static_cast<int>(rng() % 3);
                int to = static_cast<int>(rng() % 3);
                if (from == to) continue;
                long c = static_cast<long>(rng() % 7) - 3;
                for (int i = 0; i < 3; ++i)
                    cols[to][i] = cols[to][i] + Rational(c) * cols[from][i];
            }
            Lattice M = from_cols(p, cols);
            REQUIRE(L == M);
        }
    }
}

TEST_CASE("index multiplicativity on random pairs") {
    std::mt19937_64 rng(11);
    int done = 0;
    for (long p : {2L, 3L, 5L}) {
        for (int rep = 0; rep < 34 && done < 100; ++rep, ++done) {
            int n = 2 + static_cast<int>(rng() % 2);
            Lattice L1 = random_lattice(rng, p, n);
            Lattice L2 = random_lattice(rng, p, n);
            Lattice meet = lattice_intersect(L1, L2);
            Lattice join = lattice_sum(L1, L2);
            BigInt i1 = lattice_index(meet, L1);
            BigInt i2 = lattice_index(L1, join);
            BigInt i3 = lattice_index(meet, join);
            REQUIRE(i1 * i2 == i3);
            // det valuation identity
            REQUIRE(meet.det_valuation() + join.det_valuation() ==
                    L1.det_valuation() + L2.det_valuation());
        }
    }
}

TEST_CASE("apply and inverse apply round trip") {
    std::mt19937_64 rng(13);
    Mat A = Mat::from_rational(5, {{Rational(2), Rational(5)}, {Rational(1, 5), Rational(3)}}, 24);
    Mat Ai = invert(A);
    for (int rep = 0; rep < 10; ++rep) {
        Lattice L = random_lattice(rng, 5, 2, 24);
        Lattice back = lattice_apply(Ai, lattice_apply(A, L, 24), 24);
        REQUIRE(back == L);
    }
}

TEST_CASE("membership by back substitution") {
    Lattice L = from_cols(5, {{Rational(5), Rational(0)}, {Rational(2), Rational(1)}});
    REQUIRE(L.contains({Rational(5), Rational(0)}));
    REQUIRE(L.contains({Rational(7), Rational(1)}));
    REQUIRE_FALSE(L.contains({Rational(1), Rational(0)}));
    REQUIRE_FALSE(L.contains({Rational(1, 5), Rational(0)}));
}
