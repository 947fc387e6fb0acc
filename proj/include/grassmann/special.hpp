#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "grassmann/apartment.hpp"

namespace grassmann {

/// A bijection between the element sets of two apartments with the same
/// (n, k, q), stored label-to-label once the apartments are fixed.
class ApartmentBijection {
public:
    ApartmentBijection(Apartment source, Apartment target, std::map<Label, Label> mapping)
        : source_(std::move(source)), target_(std::move(target)), map_(std::move(mapping)) {
        if (source_.n() != target_.n() || source_.k() != target_.k())
            throw std::invalid_argument("apartments have mismatched parameters");
        if (map_.size() != source_.size())
            throw std::invalid_argument("mapping does not cover the source apartment");
        std::set<Label> seen;
        for (const auto& [a, b] : map_) {
            source_.subspace_of(a);  // validates
            target_.subspace_of(b);
            if (!seen.insert(b).second)
                throw std::invalid_argument("mapping is not injective");
        }
    }

    const Apartment& source() const { return source_; }
    const Apartment& target() const { return target_; }

    Label apply(Label j) const { return map_.at(j); }

    Label apply_inverse(Label j) const {
        for (const auto& [a, b] : map_)
            if (b == j) return a;
        throw std::invalid_argument("label not in image");
    }

    LabeledSubset image(const LabeledSubset& s) const {
        LabeledSubset out;
        for (Label j : s) out.insert(map_.at(j));
        return out;
    }

    LabeledSubset preimage(const LabeledSubset& s) const {
        LabeledSubset out;
        std::set<Label> want(s.begin(), s.end());
        for (const auto& [a, b] : map_)
            if (want.count(b)) out.insert(a);
        return out;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
        for (const auto& [a, b] : map_) {
            nlohmann::ordered_json pa = nlohmann::ordered_json::array();
            nlohmann::ordered_json pb = nlohmann::ordered_json::array();
            for (unsigned i : label_indices(a)) pa.push_back(i + 1);
            for (unsigned i : label_indices(b)) pb.push_back(i + 1);
            pairs.push_back({std::move(pa), std::move(pb)});
        }
        return {{"source_frame", source_.frame().to_json()},
                {"target_frame", target_.frame().to_json()},
                {"k", source_.k()},
                {"pairs", std::move(pairs)}};
    }

    static ApartmentBijection from_json(const Field& F, const nlohmann::json& j) {
        Frame sf = Frame::from_json(F, j.at("source_frame"));
        Frame tf = Frame::from_json(F, j.at("target_frame"));
        unsigned k = j.at("k").get<unsigned>();
        std::map<Label, Label> mapping;
        auto to_label = [](const nlohmann::json& arr) {
            Label l = 0;
            for (const auto& i : arr) {
                unsigned idx = i.get<unsigned>();
                if (idx == 0) throw std::invalid_argument("labels are 1-based");
                l |= Label{1} << (idx - 1);
            }
            return l;
        };
        for (const auto& p : j.at("pairs"))
            mapping[to_label(p.at(0))] = to_label(p.at(1));
        return ApartmentBijection(Apartment(F, sf, k), Apartment(F, tf, k), std::move(mapping));
    }

private:
    Apartment source_, target_;
    std::map<Label, Label> map_;
};

enum class SpecialKind { FirstType, SecondType };

/// Lemma output: a permutation delta of the frame indices plus the type tag.
struct SpecialBijectionClass {
    std::vector<unsigned> delta;  // delta[i] = image index
    SpecialKind kind = SpecialKind::FirstType;

    bool operator==(const SpecialBijectionClass&) const = default;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json d = nlohmann::ordered_json::array();
        for (unsigned x : delta) d.push_back(x + 1);
        return {{"delta", std::move(d)},
                {"kind", kind == SpecialKind::FirstType ? "first" : "second"}};
    }
};

inline void require_classifier_range(unsigned n, unsigned k) {
    if (k < 2 || k + 2 > n)
        throw std::invalid_argument("classifier requires 2 <= k <= n-2");
}

/// g is special iff g and g^{-1} carry the maximal inexact family of one
/// apartment onto the maximal inexact family of the other.
inline bool is_special(const ApartmentBijection& g) {
    require_classifier_range(g.source().n(), g.source().k());
    auto src_family = structural_maximal_inexact(g.source());
    auto dst_family = structural_maximal_inexact(g.target());
    std::set<LabeledSubset> dst_set(dst_family.begin(), dst_family.end());
    std::set<LabeledSubset> src_set(src_family.begin(), src_family.end());
    for (const auto& m : src_family)
        if (!dst_set.count(g.image(m))) return false;
    for (const auto& m : dst_family)
        if (!src_set.count(g.preimage(m))) return false;
    return true;
}

namespace detail {

/// Name an element-set of an apartment as A(+m) or A(-m), if it is one.
inline std::optional<std::pair<unsigned, SpecialKind>> match_simple(
    const Apartment& A, const LabeledSubset& s) {
    for (unsigned m = 0; m < A.n(); ++m) {
        auto sm = simple_subsets(A, m);
        if (s == sm.plus) return std::make_pair(m, SpecialKind::FirstType);
        if (s == sm.minus) return std::make_pair(m, SpecialKind::SecondType);
    }
    return std::nullopt;
}

inline SpecialBijectionClass assemble_class(
    const ApartmentBijection& g,
    const std::function<std::optional<std::pair<unsigned, SpecialKind>>(const LabeledSubset&)>&
        name_image) {
    const unsigned n = g.source().n();
    SpecialBijectionClass cls;
    cls.delta.assign(n, 0);
    std::optional<SpecialKind> kind;
    std::vector<bool> hit(n, false);
    for (unsigned i = 0; i < n; ++i) {
        LabeledSubset img = g.image(simple_subsets(g.source(), i).plus);
        auto named = name_image(img);
        if (!named) throw std::runtime_error("not special: image of a simple subset is not simple");
        if (kind && *kind != named->second)
            throw std::runtime_error("not special: inconsistent types across indices");
        kind = named->second;
        cls.delta[i] = named->first;
        if (hit[named->first]) throw std::runtime_error("not special: delta is not injective");
        hit[named->first] = true;
    }
    cls.kind = *kind;
    // the class must reproduce g label by label; preserving the inexactness
    // machinery setwise is necessary but not sufficient at small parameters
    const Label full = (Label{1} << n) - 1;
    for (Label j : g.source().labels()) {
        Label expected = 0;
        for (unsigned i : label_indices(j)) expected |= Label{1} << cls.delta[i];
        if (cls.kind == SpecialKind::SecondType) expected = full & ~expected;
        if (g.apply(j) != expected)
            throw std::runtime_error("not special: class does not reproduce the bijection");
    }
    return cls;
}

} // namespace detail

/// Direct matching: test each g(A(+i)) against every A'(+m) and A'(-m).
inline SpecialBijectionClass classify_by_matching(const ApartmentBijection& g) {
    require_classifier_range(g.source().n(), g.source().k());
    return detail::assemble_class(g, [&](const LabeledSubset& img) {
        return detail::match_simple(g.target(), img);
    });
}

/// The label-free proof procedure: push the complementary subsets of the
/// source through g, rebuild the adjacency relation of the image family by
/// intersection-maximality, extract maximal mutually-adjacent collections,
/// union them into the simple subsets of the target, and only then name the
/// results against the target frame to read off delta and the type.
inline SpecialBijectionClass classify_by_procedure(const ApartmentBijection& g) {
    const unsigned n = g.source().n();
    const unsigned k = g.source().k();
    require_classifier_range(n, k);

    // target-side maximal inexact family, used only to confirm images are
    // complementary subsets
    auto dst_family = structural_maximal_inexact(g.target());
    std::set<LabeledSubset> dst_inexact(dst_family.begin(), dst_family.end());
    std::set<Label> whole(g.target().labels().begin(), g.target().labels().end());

    std::vector<std::set<Label>> image_comps;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            LabeledSubset img = g.image(complementary_subset(g.source(), i, j));
            LabeledSubset complement;
            for (Label l : whole)
                if (!img.count(l)) complement.insert(l);
            if (!dst_inexact.count(complement))
                throw std::runtime_error("not special: image is not a complementary subset");
            image_comps.push_back(std::set<Label>(img.begin(), img.end()));
        }
    // dedupe (distinct (i,j) give distinct sets for honest input, but be safe)
    std::set<std::set<Label>> uniq(image_comps.begin(), image_comps.end());
    std::vector<std::set<Label>> family(uniq.begin(), uniq.end());

    auto simples = recover_simple_subsets(family, whole, n, k);
    std::set<std::set<Label>> simple_set(simples.begin(), simples.end());

    return detail::assemble_class(g, [&](const LabeledSubset& img) {
        std::set<Label> key(img.begin(), img.end());
        if (!simple_set.count(key))
            return std::optional<std::pair<unsigned, SpecialKind>>{};
        // the recovered family carries no names; the target frame supplies them
        return detail::match_simple(g.target(), img);
    });
}

/// For a classified g: adjacency preservation checked extensionally, and for
/// FirstType the label relabeling J -> delta(J) confirmed element by element.
/// Returns false with the offending label pair.
inline bool special_is_graph_isomorphism(const ApartmentBijection& g,
                                         const SpecialBijectionClass& cls,
                                         std::pair<Label, Label>* witness = nullptr) {
    const auto& labels = g.source().labels();
    for (Label a : labels)
        for (Label b : labels) {
            if (a >= b) continue;
            bool adj_src = label_size(a & b) + 1 == label_size(a);
            Label ia = g.apply(a), ib = g.apply(b);
            bool adj_dst = label_size(ia & ib) + 1 == label_size(ia);
            if (adj_src != adj_dst) {
                if (witness) *witness = {a, b};
                return false;
            }
        }
    if (cls.kind == SpecialKind::FirstType) {
        for (Label a : labels) {
            Label expected = 0;
            for (unsigned i : label_indices(a)) expected |= Label{1} << cls.delta[i];
            if (g.apply(a) != expected) {
                if (witness) *witness = {a, a};
                return false;
            }
        }
    }
    return true;
}

/// The special bijection determined by (delta, kind) between two apartments:
/// label J maps to delta(J), or to the complement of delta(J) for the second
/// type (which requires n = 2k).
inline ApartmentBijection make_special_bijection(const Apartment& A, const Apartment& B,
                                                 const std::vector<unsigned>& delta,
                                                 SpecialKind kind) {
    const unsigned n = A.n();
    const Label full = (n == 32) ? ~Label{0} : ((Label{1} << n) - 1);
    if (kind == SpecialKind::SecondType && A.n() != 2 * A.k())
        throw std::invalid_argument("second type requires n = 2k");
    std::map<Label, Label> mapping;
    for (Label j : A.labels()) {
        Label img = 0;
        for (unsigned i : label_indices(j)) img |= Label{1} << delta[i];
        if (kind == SpecialKind::SecondType) img = full & ~img;
        mapping[j] = img;
    }
    return ApartmentBijection(A, B, std::move(mapping));
}

} // namespace grassmann
