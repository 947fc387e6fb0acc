#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grassmann/special.hpp"

using namespace grassmann;

namespace {

grassmann::ApartmentBijection make_case(const Field& F, unsigned n, unsigned k,
                                        const std::vector<unsigned>& delta, SpecialKind kind,
                                        Rng& rng) {
    Apartment A(F, Frame::random(F, n, rng), k);
    Apartment B(F, Frame::random(F, n, rng), k);
    return make_special_bijection(A, B, delta, kind);
}

} // namespace

TEST_CASE("apartment bijection validation") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 4), 2);
    Apartment B(F, Frame::standard(F, 4), 2);
    std::map<Label, Label> m;
    for (Label l : A.labels()) m[l] = l;
    ApartmentBijection g(A, B, m);
    CHECK(g.apply(0b0011u) == 0b0011u);
    CHECK(g.apply_inverse(0b0101u) == 0b0101u);
    // missing label
    m.erase(0b0011u);
    CHECK_THROWS(ApartmentBijection(A, B, m));
    // non-injective
    m[0b0011u] = 0b0101u;
    CHECK_THROWS(ApartmentBijection(A, B, m));
}

TEST_CASE("first type relabelings are special and classified correctly") {
    Field F(3, 1);
    Rng rng(13);
    std::vector<unsigned> delta{2, 0, 3, 1};
    auto g = make_case(F, 4, 2, delta, SpecialKind::FirstType, rng);
    CHECK(is_special(g));
    auto c1 = classify_by_matching(g);
    auto c2 = classify_by_procedure(g);
    CHECK(c1.delta == delta);
    CHECK(c1.kind == SpecialKind::FirstType);
    CHECK(c2.delta == delta);
    CHECK(c2.kind == SpecialKind::FirstType);
    CHECK(special_is_graph_isomorphism(g, c1));
}

TEST_CASE("second type bijections exist exactly at n = 2k") {
    Field F(2, 1);
    Rng rng(17);
    std::vector<unsigned> delta{1, 3, 0, 2};
    auto g = make_case(F, 4, 2, delta, SpecialKind::SecondType, rng);
    CHECK(is_special(g));
    auto c = classify_by_matching(g);
    CHECK(c.kind == SpecialKind::SecondType);
    CHECK(c.delta == delta);
    CHECK(special_is_graph_isomorphism(g, c));
    // the complementation move is rejected away from n = 2k
    Apartment A(F, Frame::standard(F, 5), 2);
    Apartment B(F, Frame::standard(F, 5), 2);
    std::vector<unsigned> d5{0, 1, 2, 3, 4};
    CHECK_THROWS(make_special_bijection(A, B, d5, SpecialKind::SecondType));
}

TEST_CASE("images of simple subsets under a second type bijection swap sign") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 4), 2);
    Apartment B(F, Frame::standard(F, 4), 2);
    std::vector<unsigned> id{0, 1, 2, 3};
    auto g = make_special_bijection(A, B, id, SpecialKind::SecondType);
    auto s0 = simple_subsets(A, 0);
    auto t0 = simple_subsets(B, 0);
    std::set<Label> image;
    for (Label l : s0.plus) image.insert(g.apply(l));
    CHECK(image == std::set<Label>(t0.minus.begin(), t0.minus.end()));
}

TEST_CASE("a transposition of two labels is not special") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 4), 2);
    Apartment B(F, Frame::standard(F, 4), 2);
    std::map<Label, Label> m;
    for (Label l : A.labels()) m[l] = l;
    std::swap(m[0b0011u], m[0b0101u]);
    ApartmentBijection g(A, B, m);
    bool rejected = !is_special(g);
    if (!rejected) {
        CHECK_THROWS(classify_by_matching(g));
        rejected = true;
    }
    CHECK(rejected);
}

TEST_CASE("classifier range guard") {
    Field F(2, 1);
    Apartment A(F, Frame::standard(F, 3), 1);
    Apartment B(F, Frame::standard(F, 3), 1);
    std::map<Label, Label> m;
    for (Label l : A.labels()) m[l] = l;
    ApartmentBijection g(A, B, m);
    CHECK_THROWS(classify_by_matching(g));
}

TEST_CASE("bijection json round trip") {
    Field F(2, 1);
    Rng rng(23);
    std::vector<unsigned> delta{3, 2, 1, 0};
    auto g = make_case(F, 4, 2, delta, SpecialKind::FirstType, rng);
    auto j = g.to_json();
    auto g2 = ApartmentBijection::from_json(F, j);
    for (Label l : g.source().labels()) CHECK(g2.apply(l) == g.apply(l));
    auto c = classify_by_matching(g2);
    CHECK(c.delta == delta);
}
