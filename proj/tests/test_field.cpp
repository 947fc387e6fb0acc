#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grassmann/field.hpp"

using namespace grassmann;

TEST_CASE("prime field arithmetic tables") {
    Field F(5, 1);
    CHECK(F.q() == 5);
    for (Elem a = 0; a < 5; ++a)
        for (Elem b = 0; b < 5; ++b) {
            CHECK(F.add(a, b) == (a + b) % 5);
            CHECK(F.mul(a, b) == (a * b) % 5);
        }
    for (Elem a = 1; a < 5; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK_THROWS_AS(F.inv(0), std::domain_error);
}

TEST_CASE("field axioms hold exhaustively for small orders") {
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 2u}, {5u, 1u}}) {
        Field F(p, e);
        const unsigned q = F.q();
        for (Elem a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.add(a, F.neg(a)) == 0);
            for (Elem b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                for (Elem c = 0; c < q; ++c) {
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                    CHECK(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
                }
            }
        }
        // the multiplicative group has order q-1
        for (Elem a = 1; a < q; ++a) CHECK(F.pow(a, q - 1) == 1);
    }
}

TEST_CASE("frobenius generates exactly e automorphisms") {
    Field F(2, 3);
    auto auts = F.automorphisms();
    CHECK(auts.size() == 3);
    for (Elem a = 0; a < F.q(); ++a) {
        CHECK(F.frobenius(a, 1) == F.mul(a, a));
        CHECK(F.frobenius(a, 3 % 3) == a);
    }
    // each non-identity automorphism moves something
    for (unsigned t = 1; t < 3; ++t) {
        bool moves = false;
        for (Elem a = 0; a < F.q(); ++a)
            if (F.frobenius(a, t) != a) moves = true;
        CHECK(moves);
    }
}

TEST_CASE("invalid field parameters are rejected") {
    CHECK_THROWS(Field(4, 1));   // not prime
    CHECK_THROWS(Field(2, 0));   // degree zero
    CHECK_THROWS(Field(2, 2, {1, 1, 0}));  // reducible / non-monic tail
    CHECK_THROWS(Field(2, 2, {0, 0, 1}));  // x^2 is reducible
}

TEST_CASE("explicit modulus changes representation but not axioms") {
    // x^3 + x^2 + 1 is irreducible over F_2, unlike the default x^3 + x + 1
    Field F(2, 3, {1, 0, 1, 1});
    CHECK(F.q() == 8);
    for (Elem a = 1; a < 8; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("field json round trip") {
    Field F(3, 2);
    auto j = F.to_json();
    CHECK(j.at("p") == 3);
    CHECK(j.at("e") == 2);
    Field G = Field::from_json(j);
    CHECK(G.q() == 9);
    for (Elem a = 0; a < 9; ++a)
        for (Elem b = 0; b < 9; ++b) CHECK(F.mul(a, b) == G.mul(a, b));
}
