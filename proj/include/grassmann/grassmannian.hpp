#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "grassmann/subspace.hpp"
#include "grassmann/util.hpp"

namespace grassmann {

/// Gaussian binomial [n choose k]_q by the product formula; every
/// intermediate prefix product is itself a q-binomial, so the interleaved
/// multiply/divide stays exact.
inline std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    auto qpow = [&](unsigned m) {
        unsigned __int128 v = 1;
        for (unsigned i = 0; i < m; ++i) v *= q;
        return v;
    };
    for (unsigned i = 0; i < k; ++i) {
        r *= qpow(n - i) - 1;
        r /= qpow(i + 1) - 1;
    }
    if (r > static_cast<unsigned __int128>(UINT64_MAX))
        throw std::overflow_error("gaussian binomial overflows 64 bits");
    return static_cast<std::uint64_t>(r);
}

/// All vectors of F_q^n in lexicographic order (first coordinate fastest).
template <typename Fn>
void for_each_vector(const Field& F, unsigned n, Fn&& fn) {
    Vec v(n, 0);
    while (true) {
        fn(const_cast<const Vec&>(v));
        unsigned i = 0;
        while (i < n && v[i] == F.q() - 1) { v[i] = 0; ++i; }
        if (i == n) return;
        ++v[i];
    }
}

/// Canonical representatives of the 1-dimensional subspaces of F_q^n,
/// as Subspace values in deterministic order.
inline std::vector<Subspace> all_lines(const Field& F, unsigned n) {
    std::set<Subspace> seen;
    for_each_vector(F, n, [&](const Vec& v) {
        if (is_zero_vec(v)) return;
        seen.insert(Subspace::span(F, n, {v}));
    });
    return {seen.begin(), seen.end()};
}

/// The Grassmannian G_k(F_q^n): every k-subspace exactly once, indexed in
/// the deterministic order of their packed RREF encodings.
class Grassmannian {
public:
    Grassmannian(const Field& F, unsigned n, unsigned k,
                 std::uint64_t guard_elements = 200000)
        : field_(F), n_(n), k_(k) {
        if (k > n) throw std::invalid_argument("subspace dimension exceeds ambient dimension");
        std::uint64_t expected = gaussian_binomial(n, k, F.q());
        if (expected > guard_elements)
            throw std::invalid_argument(
                "Grassmannian size " + std::to_string(expected) +
                " exceeds the guard of " + std::to_string(guard_elements) + " elements");
        enumerate();
        if (elements_.size() != expected)
            throw std::logic_error("enumeration disagrees with the Gaussian binomial");
    }

    const Field& field() const { return field_; }
    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    std::size_t size() const { return elements_.size(); }

    const Subspace& at(std::size_t i) const { return elements_.at(i); }
    const std::vector<Subspace>& elements() const { return elements_; }

    std::size_t ordinal_of(const Subspace& s) const {
        auto it = index_.find(s.key());
        if (it == index_.end()) throw std::invalid_argument("subspace is not an element here");
        return it->second;
    }

    bool is_element(const Subspace& s) const {
        return s.ambient() == n_ && s.dim() == k_ && index_.count(s.key()) > 0;
    }

private:
    void enumerate() {
        // iterate pivot-column sets; free entries live right of their pivot
        // in non-pivot columns
        const unsigned q = field_.q();
        for_each_combination(n_, k_, [&](const std::vector<unsigned>& pivots) {
            std::vector<bool> is_pivot(n_, false);
            for (unsigned c : pivots) is_pivot[c] = true;
            std::vector<std::pair<unsigned, unsigned>> free_pos;
            for (unsigned i = 0; i < k_; ++i)
                for (unsigned j = pivots[i] + 1; j < n_; ++j)
                    if (!is_pivot[j]) free_pos.emplace_back(i, j);
            std::vector<Elem> vals(free_pos.size(), 0);
            while (true) {
                Mat m(k_, n_);
                for (unsigned i = 0; i < k_; ++i) m.at(i, pivots[i]) = 1;
                for (std::size_t t = 0; t < free_pos.size(); ++t)
                    m.at(free_pos[t].first, free_pos[t].second) = vals[t];
                Subspace s = Subspace::from_matrix(field_, n_, m);
                elements_.push_back(std::move(s));
                std::size_t t = 0;
                while (t < vals.size() && vals[t] == q - 1) { vals[t] = 0; ++t; }
                if (t == vals.size()) break;
                ++vals[t];
            }
        });
        std::sort(elements_.begin(), elements_.end());
        for (std::size_t i = 0; i < elements_.size(); ++i)
            index_.emplace(elements_[i].key(), i);
    }

    Field field_;
    unsigned n_, k_;
    std::vector<Subspace> elements_;
    std::map<std::vector<std::uint64_t>, std::size_t> index_;
};

/// X and Y are adjacent in the Grassmann graph: their intersection is a
/// hyperplane in both, i.e. dim(X+Y) = k+1.
inline bool adjacent(const Field& F, const Subspace& X, const Subspace& Y) {
    if (X.dim() != Y.dim()) throw std::invalid_argument("adjacency requires equal dimensions");
    if (X == Y) return false;
    return sum(F, X, Y).dim() == X.dim() + 1;
}

/// All k-subspaces that contain X as a hyperplane (dim X = k-1).
inline std::vector<Subspace> star(const Field& F, const Subspace& X) {
    const unsigned n = X.ambient();
    std::set<Subspace> out;
    for_each_vector(F, n, [&](const Vec& v) {
        if (is_zero_vec(v) || X.contains_vector(F, v)) return;
        Mat m(X.dim() + 1, n);
        for (unsigned i = 0; i < X.dim(); ++i) m.set_row(i, X.basis().row(i));
        m.set_row(X.dim(), v);
        out.insert(Subspace::from_matrix(F, n, m));
    });
    return {out.begin(), out.end()};
}

/// All hyperplanes of Y (dim Y = k+1), i.e. all subspaces of codimension 1 in Y.
inline std::vector<Subspace> top(const Field& F, const Subspace& Y) {
    const unsigned d = Y.dim();
    if (d == 0) return {};
    std::vector<Subspace> out;
    // hyperplanes of the d-dimensional coordinate space, lifted through Y's basis
    std::vector<Subspace> coord_lines = all_lines(F, d);
    std::set<Subspace> seen;
    for (const Subspace& L : coord_lines) {
        // hyperplane = annihilator of a line in coordinates
        Subspace H = L.annihilator(F);
        std::vector<Vec> rows;
        for (unsigned i = 0; i < H.dim(); ++i) {
            Vec coeff = H.basis().row(i);
            Vec v(Y.ambient(), 0);
            for (unsigned t = 0; t < d; ++t)
                if (coeff[t]) v = vec_add(F, v, vec_scale(F, coeff[t], Y.basis().row(t)));
            rows.push_back(std::move(v));
        }
        Subspace s = Subspace::span(F, Y.ambient(), rows);
        if (seen.insert(s).second) out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// All Z with X subset Z subset Y (dim X = k-1, dim Y = k+1); empty when X
/// is not contained in Y, a (q+1)-element line otherwise.
inline std::vector<Subspace> line(const Field& F, const Subspace& X, const Subspace& Y) {
    if (X.dim() + 2 != Y.dim())
        throw std::invalid_argument("line requires dim Y = dim X + 2");
    if (!Y.contains(F, X)) return {};
    std::vector<Subspace> out;
    for (const Subspace& Z : top(F, Y))
        if (Z.contains(F, X)) out.push_back(Z);
    return out;
}

enum class CliqueKind { Star, Top, Other };

struct ClassifiedClique {
    Bitset members;
    CliqueKind kind = CliqueKind::Other;
    Subspace witness;  // the star center or the top ceiling
};

/// Adjacency structure of the Grassmann graph over element ordinals.
class GrassmannGraph {
public:
    explicit GrassmannGraph(const Grassmannian& G) : G_(G) {
        const std::size_t N = G.size();
        adj_.assign(N, Bitset(N));
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j)
                if (adjacent(G.field(), G.at(i), G.at(j))) {
                    adj_[i].set(j);
                    adj_[j].set(i);
                }
    }

    const Grassmannian& grassmannian() const { return G_; }
    std::size_t size() const { return adj_.size(); }
    const Bitset& neighbors(std::size_t i) const { return adj_[i]; }
    bool edge(std::size_t i, std::size_t j) const { return adj_[i].test(j); }

    /// BFS distances from a start vertex (SIZE_MAX for unreachable).
    std::vector<std::size_t> distances_from(std::size_t start) const {
        std::vector<std::size_t> d(size(), static_cast<std::size_t>(-1));
        std::queue<std::size_t> q;
        d[start] = 0;
        q.push(start);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop();
            adj_[v].for_each([&](std::size_t w) {
                if (d[w] == static_cast<std::size_t>(-1)) {
                    d[w] = d[v] + 1;
                    q.push(w);
                }
            });
        }
        return d;
    }

    bool connected() const {
        if (size() == 0) return true;
        auto d = distances_from(0);
        for (auto x : d) if (x == static_cast<std::size_t>(-1)) return false;
        return true;
    }

    /// Pivoting Bron-Kerbosch over ordinal bitsets.
    std::vector<Bitset> maximal_cliques() const {
        std::vector<Bitset> out;
        Bitset R(size()), P(size()), X(size());
        for (std::size_t i = 0; i < size(); ++i) P.set(i);
        bron_kerbosch(R, P, X, out);
        return out;
    }

    /// A maximal clique is tagged Star(center) when it equals the set of
    /// elements over a common (k-1)-dim hyperplane, Top(ceiling) when it is
    /// the hyperplane set of a common (k+1)-dim cover. The degenerate
    /// parameters k in {1, n-1} produce the single all-clique tagged Other.
    ClassifiedClique classify_clique(const Bitset& clique) const {
        const Field& F = G_.field();
        ClassifiedClique res;
        res.members = clique;
        if (G_.k() == 1 || G_.k() + 1 == G_.n()) return res;  // Other by convention
        auto idx = clique.to_indices();
        Subspace meet = G_.at(idx[0]);
        Subspace join = G_.at(idx[0]);
        for (std::size_t t = 1; t < idx.size(); ++t) {
            meet = intersect(F, meet, G_.at(idx[t]));
            join = sum(F, join, G_.at(idx[t]));
        }
        if (meet.dim() + 1 == G_.k()) {
            auto st = star(F, meet);
            if (st.size() == idx.size()) {
                bool ok = true;
                for (const auto& s : st)
                    if (!clique.test(G_.ordinal_of(s))) { ok = false; break; }
                if (ok) {
                    res.kind = CliqueKind::Star;
                    res.witness = meet;
                    return res;
                }
            }
        }
        if (join.dim() == G_.k() + 1) {
            auto tp = top(F, join);
            if (tp.size() == idx.size()) {
                bool ok = true;
                for (const auto& s : tp)
                    if (!clique.test(G_.ordinal_of(s))) { ok = false; break; }
                if (ok) {
                    res.kind = CliqueKind::Top;
                    res.witness = join;
                    return res;
                }
            }
        }
        return res;
    }

    std::vector<ClassifiedClique> classified_maximal_cliques() const {
        std::vector<ClassifiedClique> out;
        for (const auto& c : maximal_cliques()) out.push_back(classify_clique(c));
        return out;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json edges = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < size(); ++i)
            adj_[i].for_each([&](std::size_t j) {
                if (j > i) edges.push_back({i, j});
            });
        return {{"n", G_.n()}, {"k", G_.k()}, {"q", G_.field().q()}, {"edges", std::move(edges)}};
    }

    std::string to_dot() const {
        std::ostringstream os;
        os << "graph grassmann {\n";
        for (std::size_t i = 0; i < size(); ++i) {
            os << "  v" << i << " [label=\"" << i << "\", tooltip=\"";
            const Subspace& s = G_.at(i);
            for (unsigned r = 0; r < s.dim(); ++r) {
                if (r) os << "; ";
                for (unsigned c = 0; c < s.ambient(); ++c) {
                    if (c) os << " ";
                    os << s.basis().at(r, c);
                }
            }
            os << "\"];\n";
        }
        for (std::size_t i = 0; i < size(); ++i)
            adj_[i].for_each([&](std::size_t j) {
                if (j > i) os << "  v" << i << " -- v" << j << ";\n";
            });
        os << "}\n";
        return os.str();
    }

private:
    void bron_kerbosch(Bitset& R, Bitset P, Bitset X, std::vector<Bitset>& out) const {
        if (P.none() && X.none()) {
            out.push_back(R);
            return;
        }
        // pivot: vertex of P|X with the most neighbors in P
        Bitset PX = P | X;
        std::size_t pivot = PX.find_first();
        std::size_t best = 0;
        PX.for_each([&](std::size_t u) {
            std::size_t c = (P & adj_[u]).count();
            if (c > best) { best = c; pivot = u; }
        });
        Bitset cand = P;
        cand.and_not(adj_[pivot]);
        cand.for_each([&](std::size_t v) {
            R.set(v);
            bron_kerbosch(R, P & adj_[v], X & adj_[v], out);
            R.reset(v);
            P.reset(v);
            X.set(v);
        });
    }

    const Grassmannian& G_;
    std::vector<Bitset> adj_;
};

/// Thrown when the image of a star is not a star (or of a top not a top);
/// diagnoses the star/top type flip possible only at n = 2k.
struct TypeFlipError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class InduceDirection { Down, Up };

/// Given a bijection f of G_k (as an ordinal permutation), produce the unique
/// map g on G_{k-1} with f(star(X)) = star(g(X)) (Down), or on G_{k+1} with
/// f(top(Y)) = top(g(Y)) (Up). Fails loudly if an image clique has the wrong
/// kind.
inline std::vector<std::size_t> induce_on_adjacent_grassmannian(
    const Grassmannian& Gk, const Grassmannian& Gadj,
    const std::vector<std::size_t>& perm, InduceDirection dir) {
    const Field& F = Gk.field();
    if (dir == InduceDirection::Down && Gadj.k() + 1 != Gk.k())
        throw std::invalid_argument("down induction needs G_{k-1}");
    if (dir == InduceDirection::Up && Gadj.k() != Gk.k() + 1)
        throw std::invalid_argument("up induction needs G_{k+1}");
    std::vector<std::size_t> out(Gadj.size());
    for (std::size_t i = 0; i < Gadj.size(); ++i) {
        const Subspace& X = Gadj.at(i);
        std::vector<Subspace> clique = dir == InduceDirection::Down ? star(F, X) : top(F, X);
        std::set<Subspace> image;
        Subspace meet, join;
        bool first = true;
        for (const auto& Z : clique) {
            Subspace W = Gk.at(perm[Gk.ordinal_of(Z)]);
            if (first) {
                meet = W;
                join = W;
                first = false;
            } else {
                meet = intersect(F, meet, W);
                join = sum(F, join, W);
            }
            image.insert(std::move(W));
        }
        if (dir == InduceDirection::Down) {
            if (meet.dim() + 1 != Gk.k())
                throw TypeFlipError("star/top type flip: image of a star is not a star");
            auto st = star(F, meet);
            if (st.size() != image.size() ||
                !std::equal(st.begin(), st.end(), image.begin()))
                throw TypeFlipError("star/top type flip: image of a star is not a star");
            out[i] = Gadj.ordinal_of(meet);
        } else {
            if (join.dim() != Gk.k() + 1)
                throw TypeFlipError("star/top type flip: image of a top is not a top");
            auto tp = top(F, join);
            if (tp.size() != image.size() ||
                !std::equal(tp.begin(), tp.end(), image.begin()))
                throw TypeFlipError("star/top type flip: image of a top is not a top");
            out[i] = Gadj.ordinal_of(join);
        }
    }
    return out;
}

/// The ordinal permutation of G_k induced by a semilinear map.
inline std::vector<std::size_t> induced_permutation(const Grassmannian& G,
                                                    const SemilinearMap& l) {
    std::vector<std::size_t> perm(G.size());
    for (std::size_t i = 0; i < G.size(); ++i)
        perm[i] = G.ordinal_of(G.at(i).image(G.field(), l));
    return perm;
}

} // namespace grassmann
