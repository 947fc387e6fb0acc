#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "grassmann/apartment.hpp"

using namespace grassmann;

TEST_CASE("apartment of the standard frame is the coordinate subspaces") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 4), 2);
    CHECK(A.labels().size() == 6);
    for (Label l : A.labels()) {
        const Subspace& s = A.subspace_of(l);
        CHECK(s.dim() == 2);
        auto idx = label_indices(l);
        for (unsigned i : idx) {
            Vec e(4, 0);
            e[i] = 1;
            CHECK(s.contains_vector(F, e));
        }
        CHECK(A.label_of(s) == l);
    }
}

TEST_CASE("frames with proportional vectors give the same apartment") {
    Field F(3, 1);
    Frame a(F, Mat::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3));
    Frame b(F, Mat::from_rows({{2, 0, 0}, {0, 1, 0}, {0, 0, 2}}, 3));
    CHECK(a.same_apartment_as(b));
    Apartment A(F, a, 2), B(F, b, 2);
    for (Label l : A.labels()) CHECK(B.contains(A.subspace_of(l)));
}

TEST_CASE("membership test agrees with explicit apartment construction") {
    Field F(2, 1);
    Rng rng(9);
    Frame fr = Frame::random(F, 4, rng);
    Apartment A(F, fr, 2);
    Grassmannian G(F, 4, 2);
    for (std::size_t i = 0; i < G.size(); ++i)
        CHECK(Apartment::member_of_frame(F, fr, G.at(i)) == A.contains(G.at(i)));
}

TEST_CASE("frame enumeration count matches the closed form") {
    // |GL(n,q)| / ((q-1)^n n!) distinct apartments
    auto frame_count = [](unsigned n, unsigned q) {
        std::uint64_t gl = 1, qn = 1;
        for (unsigned i = 0; i < n; ++i) qn *= q;
        std::uint64_t pw = 1;
        for (unsigned i = 0; i < n; ++i) {
            gl *= (qn - pw);
            pw *= q;
        }
        std::uint64_t denom = 1;
        for (unsigned i = 1; i <= n; ++i) denom *= i;
        for (unsigned i = 0; i < n; ++i) denom *= (q - 1);
        return gl / denom;
    };
    for (auto [n, p, e] : {std::tuple{3u, 2u, 1u}, {4u, 2u, 1u}, {3u, 3u, 1u}, {3u, 2u, 2u}}) {
        Field F(p, e);
        std::uint64_t count = 0;
        std::set<std::set<Subspace>> seen;
        for_each_frame(F, n, [&](const Frame& fr) {
            ++count;
            seen.insert(fr.line_set());
        }, 1000000);
        CHECK(count == frame_count(n, F.q()));
        CHECK(seen.size() == count);  // each apartment visited exactly once
    }
}

TEST_CASE("simple subsets have the predicted sizes and star/top structure") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 5), 2);
    for (unsigned i = 0; i < 5; ++i) {
        auto s = simple_subsets(A, i);
        CHECK(s.plus.size() == binomial(4, 1));   // labels containing i
        CHECK(s.minus.size() == binomial(4, 2));  // labels avoiding i
        for (Label l : s.plus) CHECK((((l >> i) & 1u) != 0u));
        for (Label l : s.minus) CHECK(((((l >> i) & 1u)) == 0u));
    }
}

TEST_CASE("structural maximal inexact collection at n=4 k=2 matches the formula") {
    for (unsigned p : {2u, 3u}) {
        Field F(p, 1);
        Apartment A(F, Frame::standard(F, 4), 2);
        auto fam = structural_maximal_inexact(A);
        CHECK(fam.size() == 12);  // n(n-1) ordered pairs
        for (const auto& s : fam) CHECK(s.size() == 4);  // |A(+i,+j)| + |A(-i)| = 3 + 1
        // each should be the complement of a complementary subset
        std::set<LabeledSubset> fam_set(fam.begin(), fam.end());
        for (unsigned i = 0; i < 4; ++i)
            for (unsigned j = 0; j < 4; ++j) {
                if (i == j) continue;
                CHECK(fam_set.count(maximal_inexact_subset(A, i, j)));
            }
    }
}

TEST_CASE("exhaustive maximal inexact subsets equal the structural family at n=4 k=2") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 4), 2);
    auto brute = maximal_inexact_subsets_bruteforce(A);
    auto structural = structural_maximal_inexact(A);
    CHECK(std::set<LabeledSubset>(brute.begin(), brute.end()) ==
          std::set<LabeledSubset>(structural.begin(), structural.end()));
}

TEST_CASE("structural inexactness witness is confirmed exhaustively at n=4 k=2 q=2") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 4), 2);
    // every subset of the 6 labels: structural and exhaustive verdicts agree
    auto labels = A.labels();
    for (unsigned mask = 0; mask < (1u << labels.size()); ++mask) {
        LabeledSubset s;
        for (unsigned t = 0; t < labels.size(); ++t)
            if ((mask >> t) & 1u) s.insert(labels[t]);
        bool structural = is_inexact_structural(A, s).has_value();
        bool exhaustive = is_inexact_exhaustive(A, s).has_value();
        CHECK(structural == exhaustive);
    }
}

TEST_CASE("complementary subsets and their adjacency") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 5), 2);
    auto c13 = complementary_subset(A, 0, 2);
    // A(+1,-3): labels containing 1 but not 3
    for (Label l : c13) {
        CHECK(((l & 1u) != 0u));
        CHECK((((l >> 2) & 1u) == 0u));
    }
    CHECK(c13.size() == binomial(3, 1));
    CHECK(complementary_adjacent({0, 2}, {0, 3}));
    CHECK(complementary_adjacent({1, 2}, {0, 2}));
    CHECK(!complementary_adjacent({0, 2}, {1, 3}));
    CHECK_THROWS(complementary_subset(A, 1, 1));
}

TEST_CASE("label adjacency matches intersection maximality only in the stable range") {
    // at n=6 k=3 (so 3 <= k <= n-3) the two notions coincide
    unsigned n = 6, k = 3;
    std::vector<std::pair<unsigned, unsigned>> pairs;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            if (i != j) pairs.emplace_back(i, j);
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, n), k);
    std::vector<LabeledSubset> fam;
    for (auto [i, j] : pairs) fam.push_back(complementary_subset(A, i, j));
    auto adj = family_adjacency_by_maximal_intersection(fam);
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b)
            CHECK(adj[a].test(b) == complementary_adjacent(pairs[a], pairs[b]));
}

TEST_CASE("simple subset recovery from the complementary family") {
    for (auto [n, k] : {std::pair{4u, 2u}, {5u, 2u}, {6u, 3u}}) {
        Field F(2, 1);
        Apartment A(F, Frame::standard(F, n), k);
        std::vector<LabeledSubset> fam;
        for (unsigned i = 0; i < n; ++i)
            for (unsigned j = 0; j < n; ++j)
                if (i != j) fam.push_back(complementary_subset(A, i, j));
        LabeledSubset whole(A.labels().begin(), A.labels().end());
        auto rec = recover_simple_subsets(fam, whole, n, k);
        CHECK(rec.size() == 2 * n);
        std::set<LabeledSubset> rec_set(rec.begin(), rec.end());
        for (unsigned i = 0; i < n; ++i) {
            auto s = simple_subsets(A, i);
            CHECK(rec_set.count(LabeledSubset(s.plus.begin(), s.plus.end())));
            CHECK(rec_set.count(LabeledSubset(s.minus.begin(), s.minus.end())));
        }
    }
}

TEST_CASE("any two subspaces with the same dimension share an apartment") {
    Field F(3, 1);
    Grassmannian G(F, 4, 2);
    Rng rng(21);
    for (int t = 0; t < 40; ++t) {
        std::size_t i = rng.below(G.size()), j = rng.below(G.size());
        Apartment A = common_apartment(F, G.at(i), G.at(j));
        CHECK(A.contains(G.at(i)));
        CHECK(A.contains(G.at(j)));
    }
}

TEST_CASE("labeled subset json uses 1-based labels") {
    LabeledSubset s{0b011u, 0b101u};
    auto j = labeled_subset_to_json(s);
    CHECK(j.at("labels").size() == 2);
    CHECK(j.at("labels")[0] == nlohmann::json({1, 2}));
    CHECK(labeled_subset_from_json(j) == s);
}
