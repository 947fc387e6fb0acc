#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "grassmann/grassmannian.hpp"

namespace grassmann {

/// A label is the index set J of frame vectors spanning an apartment element,
/// packed as a bitmask over {0..n-1}.
using Label = std::uint32_t;

inline unsigned label_size(Label j) { return static_cast<unsigned>(std::popcount(j)); }

inline std::vector<unsigned> label_indices(Label j) {
    std::vector<unsigned> out;
    for (unsigned i = 0; i < 32; ++i)
        if (j & (Label{1} << i)) out.push_back(i);
    return out;
}

/// An unordered frame: n independent lines with one chosen representative
/// vector per line. Two frames define the same apartment iff their line sets
/// coincide.
class Frame {
public:
    Frame(const Field& F, Mat vectors) : vectors_(std::move(vectors)) {
        if (vectors_.rows != vectors_.cols)
            throw std::invalid_argument("frame needs n vectors of F_q^n");
        if (rank(F, vectors_) != vectors_.rows)
            throw std::invalid_argument("frame vectors are dependent");
        for (unsigned i = 0; i < vectors_.rows; ++i)
            lines_.push_back(Subspace::span(F, vectors_.cols, {vectors_.row(i)}));
    }

    static Frame standard(const Field& F, unsigned n) {
        return Frame(F, Mat::identity(n));
    }

    static Frame random(const Field& F, unsigned n, Rng& rng) {
        return Frame(F, random_invertible(F, n, rng));
    }

    unsigned n() const { return vectors_.rows; }
    const Mat& vectors() const { return vectors_; }
    Vec vector(unsigned i) const { return vectors_.row(i); }
    const Subspace& line(unsigned i) const { return lines_[i]; }

    std::set<Subspace> line_set() const { return {lines_.begin(), lines_.end()}; }

    bool same_apartment_as(const Frame& o) const { return line_set() == o.line_set(); }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (unsigned i = 0; i < vectors_.rows; ++i) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (unsigned j = 0; j < vectors_.cols; ++j) r.push_back(vectors_.at(i, j));
            rows.push_back(std::move(r));
        }
        return rows;
    }

    static Frame from_json(const Field& F, const nlohmann::json& j) {
        std::vector<Vec> rows;
        for (const auto& r : j) rows.push_back(r.get<Vec>());
        if (rows.empty()) throw std::invalid_argument("empty frame");
        return Frame(F, Mat::from_rows(rows, static_cast<unsigned>(rows.size())));
    }

private:
    Mat vectors_;
    std::vector<Subspace> lines_;
};

/// The apartment of G_k defined by a frame: one element per k-subset
/// J of {0..n-1}, spanned by the labeled frame vectors.
class Apartment {
public:
    Apartment(const Field& F, Frame frame, unsigned k)
        : field_(F), frame_(std::move(frame)), k_(k) {
        const unsigned n = frame_.n();
        if (k == 0 || k >= n)
            throw std::invalid_argument("apartment requires 0 < k < n");
        for_each_combination(n, k, [&](const std::vector<unsigned>& idx) {
            Label j = 0;
            std::vector<Vec> rows;
            for (unsigned i : idx) {
                j |= Label{1} << i;
                rows.push_back(frame_.vector(i));
            }
            Subspace s = Subspace::span(field_, n, rows);
            labels_.push_back(j);
            by_label_.emplace(j, s);
            by_subspace_.emplace(std::move(s), j);
        });
        if (by_subspace_.size() != labels_.size())
            throw std::logic_error("apartment elements collide");
    }

    const Field& field() const { return field_; }
    const Frame& frame() const { return frame_; }
    unsigned n() const { return frame_.n(); }
    unsigned k() const { return k_; }
    std::size_t size() const { return labels_.size(); }

    const std::vector<Label>& labels() const { return labels_; }

    const Subspace& subspace_of(Label j) const {
        auto it = by_label_.find(j);
        if (it == by_label_.end()) throw std::invalid_argument("label is not a k-subset here");
        return it->second;
    }

    std::optional<Label> label_of(const Subspace& s) const {
        auto it = by_subspace_.find(s);
        if (it == by_subspace_.end()) return std::nullopt;
        return it->second;
    }

    bool contains(const Subspace& s) const { return by_subspace_.count(s) > 0; }

    std::vector<Subspace> elements() const {
        std::vector<Subspace> out;
        for (Label j : labels_) out.push_back(subspace_of(j));
        return out;
    }

    /// Membership of an arbitrary k-subspace in the apartment of an arbitrary
    /// frame, without building the apartment: s lies in it iff the frame lines
    /// it contains span it.
    static bool member_of_frame(const Field& F, const Frame& fr, const Subspace& s) {
        std::vector<Vec> rows;
        for (unsigned i = 0; i < fr.n(); ++i)
            if (s.contains_vector(F, fr.vector(i))) rows.push_back(fr.vector(i));
        if (rows.size() != s.dim()) return false;
        return Subspace::span(F, s.ambient(), rows) == s;
    }

    nlohmann::ordered_json to_json() const {
        return {{"frame", frame_.to_json()}, {"k", k_}};
    }

    static Apartment from_json(const Field& F, const nlohmann::json& j) {
        return Apartment(F, Frame::from_json(F, j.at("frame")), j.at("k").get<unsigned>());
    }

private:
    Field field_;
    Frame frame_;
    unsigned k_;
    std::vector<Label> labels_;
    std::map<Label, Subspace> by_label_;
    std::map<Subspace, Label> by_subspace_;
};

/// A subset of an apartment, stored as its label set.
using LabeledSubset = std::set<Label>;

inline nlohmann::ordered_json labeled_subset_to_json(const LabeledSubset& s) {
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (Label j : s) {
        nlohmann::ordered_json one = nlohmann::ordered_json::array();
        for (unsigned i : label_indices(j)) one.push_back(i + 1);  // external 1-based
        labels.push_back(std::move(one));
    }
    return {{"labels", std::move(labels)}};
}

inline LabeledSubset labeled_subset_from_json(const nlohmann::json& j) {
    LabeledSubset out;
    for (const auto& one : j.at("labels")) {
        Label l = 0;
        for (const auto& i : one) {
            unsigned idx = i.get<unsigned>();
            if (idx == 0) throw std::invalid_argument("labels are 1-based");
            l |= Label{1} << (idx - 1);
        }
        out.insert(l);
    }
    return out;
}

/// A(+i): elements containing e_i; A(-i): the rest.
struct SimpleSubsets {
    LabeledSubset plus, minus;
};

inline SimpleSubsets simple_subsets(const Apartment& A, unsigned i) {
    if (i >= A.n()) throw std::invalid_argument("frame index out of range");
    SimpleSubsets out;
    for (Label j : A.labels()) {
        if (j & (Label{1} << i)) out.plus.insert(j);
        else out.minus.insert(j);
    }
    return out;
}

/// A(+i,-j): elements containing e_i but not e_j.
inline LabeledSubset complementary_subset(const Apartment& A, unsigned i, unsigned j) {
    if (i == j) throw std::invalid_argument("complementary subset needs distinct indices");
    if (i >= A.n() || j >= A.n()) throw std::invalid_argument("frame index out of range");
    LabeledSubset out;
    for (Label l : A.labels())
        if ((l & (Label{1} << i)) && !(l & (Label{1} << j))) out.insert(l);
    return out;
}

/// A(+i,+j) union A(-i): the maximal inexact subset complementary to A(+i,-j).
inline LabeledSubset maximal_inexact_subset(const Apartment& A, unsigned i, unsigned j) {
    if (i == j) throw std::invalid_argument("maximal inexact subset needs distinct indices");
    LabeledSubset comp = complementary_subset(A, i, j);
    LabeledSubset out;
    for (Label l : A.labels())
        if (!comp.count(l)) out.insert(l);
    return out;
}

/// All distinct maximal inexact subsets generated structurally from the
/// ordered index pairs.
inline std::vector<LabeledSubset> structural_maximal_inexact(const Apartment& A) {
    std::set<LabeledSubset> seen;
    for (unsigned i = 0; i < A.n(); ++i)
        for (unsigned j = 0; j < A.n(); ++j)
            if (i != j) seen.insert(maximal_inexact_subset(A, i, j));
    return {seen.begin(), seen.end()};
}

/// Enumerate all frames of F_q^n as combinations of n independent lines;
/// visits each apartment exactly once. Throws when the frame count exceeds
/// the guard.
template <typename Fn>
void for_each_frame(const Field& F, unsigned n, Fn&& fn,
                    std::uint64_t guard_frames = 500000) {
    // frame count = |GL(n,q)| / ((q-1)^n n!)
    unsigned __int128 gl = 1;
    unsigned __int128 qn = 1;
    for (unsigned i = 0; i < n; ++i) qn *= F.q();
    unsigned __int128 qi = 1;
    for (unsigned i = 0; i < n; ++i) {
        gl *= qn - qi;
        qi *= F.q();
    }
    unsigned __int128 denom = 1;
    for (unsigned i = 1; i <= n; ++i) denom *= i;
    for (unsigned i = 0; i < n; ++i) denom *= F.q() - 1;
    unsigned __int128 frames = gl / denom;
    if (frames > guard_frames)
        throw std::invalid_argument("frame count " + std::to_string(static_cast<std::uint64_t>(frames)) +
                                    " exceeds the guard of " + std::to_string(guard_frames));

    std::vector<Subspace> lines = all_lines(F, n);
    std::vector<Vec> reps;
    for (const auto& L : lines) reps.push_back(L.basis().row(0));

    std::vector<unsigned> chosen;
    std::vector<Mat> partial;  // running RREF of chosen reps
    partial.push_back(Mat(0, n));

    auto indep = [&](const Mat& st, const Vec& v) {
        Mat m(st.rows + 1, n);
        for (unsigned i = 0; i < st.rows; ++i) m.set_row(i, st.row(i));
        m.set_row(st.rows, v);
        return rank(F, m) == st.rows + 1;
    };

    std::function<void(unsigned)> rec = [&](unsigned from) {
        if (chosen.size() == n) {
            Mat m(n, n);
            for (unsigned i = 0; i < n; ++i) m.set_row(i, reps[chosen[i]]);
            fn(Frame(F, m));
            return;
        }
        for (unsigned idx = from; idx < lines.size(); ++idx) {
            const Mat& st = partial.back();
            if (!indep(st, reps[idx])) continue;
            chosen.push_back(idx);
            Mat m(st.rows + 1, n);
            for (unsigned i = 0; i < st.rows; ++i) m.set_row(i, st.row(i));
            m.set_row(st.rows, reps[idx]);
            partial.push_back(rref(F, m).m);
            rec(idx + 1);
            partial.pop_back();
            chosen.pop_back();
        }
    };
    rec(0);
}

/// Witness returned by inexactness checks: a frame whose apartment differs
/// from A yet contains the subset.
struct InexactWitness {
    Mat frame_vectors;
};

/// Structural mode: try every frame obtained from A's frame by the
/// elementary modification e_i -> e_i + c e_j. These witnesses cover every
/// subset of a maximal inexact subset.
inline std::optional<InexactWitness> is_inexact_structural(const Apartment& A,
                                                           const LabeledSubset& X) {
    const Field& F = A.field();
    const unsigned n = A.n();
    for (Label l : X)
        if (!A.subspace_of(l).dim()) throw std::invalid_argument("bad label");
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            if (i == j) continue;
            for (Elem c = 1; c < F.q(); ++c) {
                Mat m = A.frame().vectors();
                Vec vi = m.row(i);
                Vec vj = m.row(j);
                m.set_row(i, vec_add(F, vi, vec_scale(F, c, vj)));
                Frame fr(F, m);
                bool contains_all = true;
                for (Label l : X)
                    if (!Apartment::member_of_frame(F, fr, A.subspace_of(l))) {
                        contains_all = false;
                        break;
                    }
                if (contains_all) return InexactWitness{m};
            }
        }
    return std::nullopt;
}

/// Oracle mode: exhaustive search over all frames of F_q^n.
inline std::optional<InexactWitness> is_inexact_exhaustive(const Apartment& A,
                                                           const LabeledSubset& X,
                                                           std::uint64_t guard_frames = 500000) {
    const Field& F = A.field();
    std::optional<InexactWitness> found;
    for_each_frame(F, A.n(), [&](const Frame& fr) {
        if (found) return;
        if (fr.same_apartment_as(A.frame())) return;
        for (Label l : X)
            if (!Apartment::member_of_frame(F, fr, A.subspace_of(l))) return;
        found = InexactWitness{fr.vectors()};
    }, guard_frames);
    return found;
}

/// Inclusion-maximal inexact subsets of A found by subset scan with the
/// exhaustive frame oracle only; never consults the structural generator.
inline std::vector<LabeledSubset> maximal_inexact_subsets_bruteforce(
    const Apartment& A, std::uint64_t guard_frames = 500000) {
    const std::size_t m = A.size();
    if (m > 8)
        throw std::invalid_argument("brute-force subset scan guarded to C(n,k) <= 8 elements");
    const Field& F = A.field();
    std::vector<Label> labels = A.labels();
    std::vector<Subspace> elems;
    for (Label l : labels) elems.push_back(A.subspace_of(l));

    // containment mask of every other apartment against A's elements
    std::vector<std::uint32_t> masks;
    for_each_frame(F, A.n(), [&](const Frame& fr) {
        if (fr.same_apartment_as(A.frame())) return;
        std::uint32_t mask = 0;
        for (std::size_t t = 0; t < m; ++t)
            if (Apartment::member_of_frame(F, fr, elems[t])) mask |= std::uint32_t{1} << t;
        masks.push_back(mask);
    }, guard_frames);

    const std::uint32_t all = (m == 32) ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1);
    std::vector<bool> inexact(std::size_t{1} << m, false);
    for (std::uint32_t s = 0; s <= all; ++s) {
        for (std::uint32_t mk : masks)
            if ((s & ~mk) == 0) { inexact[s] = true; break; }
    }
    std::vector<LabeledSubset> out;
    for (std::uint32_t s = 0; s <= all; ++s) {
        if (!inexact[s]) continue;
        bool maximal = true;
        for (std::size_t t = 0; t < m && maximal; ++t)
            if (!(s & (std::uint32_t{1} << t)) && inexact[s | (std::uint32_t{1} << t)])
                maximal = false;
        if (!maximal) continue;
        LabeledSubset ls;
        for (std::size_t t = 0; t < m; ++t)
            if (s & (std::uint32_t{1} << t)) ls.insert(labels[t]);
        out.push_back(std::move(ls));
    }
    return out;
}

/// Label rule for adjacency of complementary subsets A(+i,-j), A(+i',-j'):
/// i = i' or j = j'.
inline bool complementary_adjacent(std::pair<unsigned, unsigned> c1,
                                   std::pair<unsigned, unsigned> c2) {
    if (c1 == c2) return false;
    return c1.first == c2.first || c1.second == c2.second;
}

/// Intersection-maximality adjacency on an abstract family of sets: X,Y are
/// adjacent when X cap Y is inclusion-maximal among all pairwise
/// intersections of distinct members.
template <typename T>
std::vector<Bitset> family_adjacency_by_maximal_intersection(
    const std::vector<std::set<T>>& family) {
    const std::size_t m = family.size();
    std::vector<std::vector<std::set<T>>> inter(m, std::vector<std::set<T>>(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            std::set<T> I;
            std::set_intersection(family[a].begin(), family[a].end(),
                                  family[b].begin(), family[b].end(),
                                  std::inserter(I, I.begin()));
            inter[a][b] = std::move(I);
        }
    auto strictly_within = [](const std::set<T>& x, const std::set<T>& y) {
        return x.size() < y.size() && std::includes(y.begin(), y.end(), x.begin(), x.end());
    };
    std::vector<Bitset> adj(m, Bitset(m));
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            if (inter[a][b].empty()) continue;
            bool maximal = true;
            for (std::size_t c = 0; c < m && maximal; ++c)
                for (std::size_t d = c + 1; d < m && maximal; ++d) {
                    if (c == a && d == b) continue;
                    if (strictly_within(inter[a][b], inter[c][d])) maximal = false;
                }
            if (maximal) {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    return adj;
}

/// Maximal cliques of an abstract adjacency (small vertex counts only).
inline std::vector<std::vector<std::size_t>> abstract_maximal_cliques(
    const std::vector<Bitset>& adj) {
    const std::size_t m = adj.size();
    std::vector<Bitset> out;
    std::function<void(Bitset&, Bitset, Bitset)> bk = [&](Bitset& R, Bitset P, Bitset X) {
        if (P.none() && X.none()) {
            out.push_back(R);
            return;
        }
        Bitset PX = P | X;
        std::size_t pivot = PX.find_first();
        std::size_t best = 0;
        PX.for_each([&](std::size_t u) {
            std::size_t c = (P & adj[u]).count();
            if (c > best) { best = c; pivot = u; }
        });
        Bitset cand = P;
        cand.and_not(adj[pivot]);
        cand.for_each([&](std::size_t v) {
            R.set(v);
            bk(R, P & adj[v], X & adj[v]);
            R.reset(v);
            P.reset(v);
            X.set(v);
        });
    };
    Bitset R(m), P(m), X(m);
    for (std::size_t i = 0; i < m; ++i) P.set(i);
    bk(R, P, X);
    std::vector<std::vector<std::size_t>> res;
    for (const auto& c : out) res.push_back(c.to_indices());
    return res;
}

/// Recover the 2n simple subsets from the complementary subsets given only as
/// unlabeled element-sets: intersection-maximality adjacency, maximal
/// mutually-adjacent collections, unions, then a size/partition filter.
///
/// The filter is needed because at k = 2 and k = n-2 the finite
/// intersection-maximality relation degenerates: at n = 2k = 4 it admits
/// extra cliques whose unions have the wrong cardinality, and at k = 2,
/// n >= 5 only the first-type collections survive, so second-type simple
/// subsets are recovered as complements.
template <typename T>
std::vector<std::set<T>> recover_simple_subsets(const std::vector<std::set<T>>& complementary,
                                                const std::set<T>& whole,
                                                unsigned n, unsigned k) {
    if (k < 2 || k + 2 > n)
        throw std::invalid_argument("machinery requires 1 < k < n-1");
    auto adj = family_adjacency_by_maximal_intersection(complementary);
    auto cliques = abstract_maximal_cliques(adj);

    std::set<std::set<T>> candidates;
    for (const auto& cl : cliques) {
        std::set<T> u;
        for (std::size_t idx : cl) u.insert(complementary[idx].begin(), complementary[idx].end());
        std::set<T> comp;
        for (const T& x : whole)
            if (!u.count(x)) comp.insert(x);
        candidates.insert(std::move(u));
        candidates.insert(std::move(comp));
    }
    const std::size_t s1 = binomial(n - 1, k - 1);  // |A(+i)|
    const std::size_t s2 = binomial(n - 1, k);      // |A(-i)|
    std::vector<std::set<T>> out;
    for (const auto& c : candidates) {
        if (c.size() != s1 && c.size() != s2) continue;
        std::set<T> comp;
        for (const T& x : whole)
            if (!c.count(x)) comp.insert(x);
        if (!candidates.count(comp)) continue;
        out.push_back(c);
    }
    if (out.size() != 2 * static_cast<std::size_t>(n))
        throw std::runtime_error("simple subset recovery did not yield 2n sets");
    return out;
}

/// An apartment containing both X and Y: extend a basis of X cap Y to bases
/// of X and of Y (their union is independent), then to a basis of the space.
inline Apartment common_apartment(const Field& F, const Subspace& X, const Subspace& Y) {
    if (X.ambient() != Y.ambient() || X.dim() != Y.dim())
        throw std::invalid_argument("common apartment needs equidimensional subspaces");
    const unsigned n = X.ambient();
    Subspace I = intersect(F, X, Y);
    std::vector<Vec> rows;
    auto stack_rank = [&](const Vec& v) {
        Mat m(static_cast<unsigned>(rows.size()) + 1, n);
        for (unsigned i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
        m.set_row(static_cast<unsigned>(rows.size()), v);
        return rank(F, m) == rows.size() + 1;
    };
    auto extend_with = [&](const Mat& basis) {
        for (unsigned i = 0; i < basis.rows; ++i) {
            Vec v = basis.row(i);
            if (stack_rank(v)) rows.push_back(std::move(v));
        }
    };
    extend_with(I.basis());
    extend_with(X.basis());
    extend_with(Y.basis());
    extend_with(Mat::identity(n));
    Frame fr(F, Mat::from_rows(rows, n));
    return Apartment(F, fr, X.dim());
}

} // namespace grassmann
