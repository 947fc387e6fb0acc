#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grassmann/grassmannian.hpp"

using namespace grassmann;

TEST_CASE("gaussian binomial against independently computed values") {
    // oracle values computed by summing q^{inversions} over lattice paths
    auto oracle = [](unsigned n, unsigned k, std::uint64_t q) {
        // dp over the standard recurrence with plain integers
        std::vector<std::vector<std::uint64_t>> g(n + 1, std::vector<std::uint64_t>(k + 1, 0));
        for (unsigned i = 0; i <= n; ++i) g[i][0] = 1;
        for (unsigned i = 1; i <= n; ++i)
            for (unsigned j = 1; j <= std::min(i, k); ++j) {
                std::uint64_t pw = 1;
                for (unsigned t = 0; t < j; ++t) pw *= q;
                g[i][j] = (j <= i - 1 ? g[i - 1][j] : 0) * pw + g[i - 1][j - 1];
            }
        return g[n][k];
    };
    for (unsigned n = 1; n <= 8; ++n)
        for (unsigned k = 0; k <= n; ++k)
            for (std::uint64_t q : {2, 3, 4, 5})
                CHECK(gaussian_binomial(n, k, q) == oracle(n, k, q));
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(7, 1, 2) == 127);
}

TEST_CASE("enumeration count matches the closed form and is duplicate free") {
    for (auto [n, k, p, e] : {std::tuple{4u, 2u, 2u, 1u}, {4u, 2u, 3u, 1u}, {3u, 1u, 2u, 2u},
                              {5u, 2u, 2u, 1u}}) {
        Field F(p, e);
        Grassmannian G(F, n, k);
        CHECK(G.size() == gaussian_binomial(n, k, F.q()));
        for (std::size_t i = 0; i < G.size(); ++i) {
            CHECK(G.at(i).dim() == k);
            CHECK(G.ordinal_of(G.at(i)) == i);
        }
    }
}

TEST_CASE("adjacency is symmetric irreflexive and matches intersection dimension") {
    Field F(2, 1);
    Grassmannian G(F, 4, 2);
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            bool adj = adjacent(F, G.at(i), G.at(j));
            CHECK(adj == (intersect(F, G.at(i), G.at(j)).dim() == 1));
            CHECK(adj == adjacent(F, G.at(j), G.at(i)));
        }
}

TEST_CASE("stars tops and lines have the right sizes over F_2 and F_3") {
    for (unsigned p : {2u, 3u}) {
        Field F(p, 1);
        Grassmannian G(F, 4, 2);
        Subspace X = Subspace::span(F, 4, {{1, 0, 0, 0}});
        auto st = star(F, X);
        CHECK(st.size() == gaussian_binomial(3, 1, p));  // 2-spaces over X
        for (const auto& s : st) CHECK(s.contains(F, X));
        Subspace Y = Subspace::span(F, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
        auto tp = top(F, Y);
        CHECK(tp.size() == gaussian_binomial(3, 2, p));
        for (const auto& s : tp) CHECK(Y.contains(F, s));
        auto ln = line(F, X, Y);
        CHECK(ln.size() == p + 1);
        for (const auto& s : ln) {
            CHECK(s.contains(F, X));
            CHECK(Y.contains(F, s));
        }
    }
}

TEST_CASE("graph distances realize the intersection-dimension metric") {
    Field F(2, 1);
    Grassmannian G(F, 4, 2);
    GrassmannGraph graph(G);
    CHECK(graph.connected());
    auto d = graph.distances_from(0);
    for (std::size_t j = 0; j < G.size(); ++j) {
        unsigned expect = 2 - intersect(F, G.at(0), G.at(j)).dim();
        CHECK(d[j] == expect);
    }
}

TEST_CASE("maximal clique classification at n=4 k=2 q=2") {
    Field F(2, 1);
    Grassmannian G(F, 4, 2);
    GrassmannGraph graph(G);
    auto cliques = graph.classified_maximal_cliques();
    std::size_t stars = 0, tops = 0;
    for (const auto& c : cliques) {
        REQUIRE(c.kind != CliqueKind::Other);
        if (c.kind == CliqueKind::Star) {
            ++stars;
            CHECK(c.witness.dim() == 1);
            c.members.for_each([&](std::size_t i) { CHECK(G.at(i).contains(F, c.witness)); });
        } else {
            ++tops;
            CHECK(c.witness.dim() == 3);
            c.members.for_each([&](std::size_t i) { CHECK(c.witness.contains(F, G.at(i))); });
        }
        CHECK(c.members.count() == 7);
    }
    CHECK(stars == 15);
    CHECK(tops == 15);
}

TEST_CASE("induced star-to-star map descends a semilinear permutation") {
    Field F(2, 1);
    Grassmannian G2(F, 4, 2), G1(F, 4, 1);
    Rng rng(5);
    SemilinearMap l = random_semilinear(F, 4, rng);
    auto perm2 = induced_permutation(G2, l);
    auto down = induce_on_adjacent_grassmannian(G2, G1, perm2, InduceDirection::Down);
    auto perm1 = induced_permutation(G1, l);
    CHECK(down == perm1);
}

TEST_CASE("graph json export shape") {
    Field F(2, 1);
    Grassmannian G(F, 3, 1);
    GrassmannGraph graph(G);
    auto j = graph.to_json();
    CHECK(j.at("n") == 3);
    CHECK(j.at("k") == 1);
    CHECK(j.at("q") == 2);
    CHECK(j.at("edges").size() == 21);  // distinct points are always adjacent: K_7
}
