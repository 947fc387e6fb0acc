#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grassmann/subspace.hpp"

using namespace grassmann;

TEST_CASE("span canonicalizes: different bases give the same subspace") {
    Field F(3, 1);
    Subspace a = Subspace::span(F, 3, {{1, 0, 1}, {0, 1, 1}});
    Subspace b = Subspace::span(F, 3, {{1, 1, 2}, {2, 1, 0}});
    CHECK(a == b);
    CHECK(a.dim() == 2);
    CHECK(a.key() == b.key());
}

TEST_CASE("containment of vectors and subspaces") {
    Field F(2, 1);
    Subspace s = Subspace::span(F, 4, {{1, 0, 0, 1}, {0, 1, 1, 0}});
    CHECK(s.contains_vector(F, {1, 1, 1, 1}));
    CHECK(!s.contains_vector(F, {1, 1, 0, 0}));
    Subspace line = Subspace::span(F, 4, {{1, 1, 1, 1}});
    CHECK(s.contains(F, line));
    CHECK(!line.contains(F, s));
}

TEST_CASE("sum and intersection satisfy the dimension formula exhaustively") {
    Field F(2, 1);
    // all pairs of 2-dim subspaces of F_2^4: dim(X+Y) + dim(X cap Y) = 4
    std::vector<Subspace> twos;
    // crude enumeration by spanning pairs of vectors
    std::vector<Vec> vecs;
    for (unsigned v = 1; v < 16; ++v)
        vecs.push_back({v & 1u, (v >> 1) & 1u, (v >> 2) & 1u, (v >> 3) & 1u});
    std::set<Subspace> seen;
    for (const auto& a : vecs)
        for (const auto& b : vecs) {
            Subspace s = Subspace::span(F, 4, {a, b});
            if (s.dim() == 2) seen.insert(s);
        }
    twos.assign(seen.begin(), seen.end());
    CHECK(twos.size() == 35);
    for (const auto& x : twos)
        for (const auto& y : twos) {
            Subspace s = sum(F, x, y);
            Subspace i = intersect(F, x, y);
            CHECK(s.dim() + i.dim() == 4);
            CHECK(s.contains(F, x));
            CHECK(x.contains(F, i));
        }
}

TEST_CASE("annihilator is an order-reversing involution") {
    Field F(3, 1);
    Subspace s = Subspace::span(F, 3, {{1, 2, 0}});
    Subspace ann = s.annihilator(F);
    CHECK(ann.dim() == 2);
    CHECK(ann.annihilator(F) == s);
    Subspace big = Subspace::span(F, 3, {{1, 2, 0}, {0, 0, 1}});
    CHECK(big.annihilator(F).dim() == 1);
    CHECK(ann.contains(F, big.annihilator(F)));
    CHECK(Subspace::zero(3).annihilator(F).dim() == 3);
}

TEST_CASE("image under a semilinear map preserves dimension and structure") {
    Field F(2, 2);
    Rng rng(3);
    SemilinearMap l = random_semilinear(F, 3, rng);
    Subspace s = Subspace::span(F, 3, {{1, 0, 2}, {0, 1, 3}});
    Subspace img = s.image(F, l);
    CHECK(img.dim() == 2);
    // images of the basis vectors land inside
    for (unsigned r = 0; r < 2; ++r)
        CHECK(img.contains_vector(F, apply(F, l, s.basis().row(r))));
}

TEST_CASE("hyperplane relation") {
    Field F(2, 1);
    Subspace y = Subspace::span(F, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    Subspace x = Subspace::span(F, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Subspace z = Subspace::span(F, 4, {{1, 0, 0, 0}, {0, 0, 0, 1}});
    CHECK(is_hyperplane_of(F, x, y));
    CHECK(!is_hyperplane_of(F, z, y));
    CHECK(!is_hyperplane_of(F, y, x));
}

TEST_CASE("json round trip and rejection of non-canonical input") {
    Field F(3, 1);
    Subspace s = Subspace::span(F, 3, {{1, 2, 0}, {0, 0, 1}});
    auto j = s.to_json();
    CHECK(j.at("n") == 3);
    CHECK(j.at("dim") == 2);
    CHECK(Subspace::from_json(F, j) == s);
    // non-RREF rows must be rejected, not silently fixed
    nlohmann::json bad = {{"n", 3}, {"dim", 2}, {"rref", {{2, 1, 0}, {0, 0, 1}}}};
    CHECK_THROWS(Subspace::from_json(F, bad));
    nlohmann::json bad2 = {{"n", 3}, {"dim", 1}, {"rref", {{1, 2, 0}, {0, 0, 1}}}};
    CHECK_THROWS(Subspace::from_json(F, bad2));
}
