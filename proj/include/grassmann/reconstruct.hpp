#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "grassmann/apartment.hpp"
#include "grassmann/special.hpp"

namespace grassmann {

/// The Grassmannians G_1..G_max of one ambient space, built once and shared.
class Tower {
public:
    Tower(const Field& F, unsigned n, unsigned max_k,
          std::uint64_t guard_elements = 200000)
        : field_(F), n_(n) {
        for (unsigned k = 1; k <= max_k; ++k)
            levels_.emplace_back(field_, n, k, guard_elements);
    }

    const Field& field() const { return field_; }
    unsigned n() const { return n_; }
    unsigned max_k() const { return static_cast<unsigned>(levels_.size()); }
    const Grassmannian& at(unsigned k) const { return levels_.at(k - 1); }

private:
    Field field_;
    unsigned n_;
    std::vector<Grassmannian> levels_;
};

/// A bijection of G_k stored as a permutation of element ordinals against the
/// canonical element order.
struct GrassmannianBijection {
    unsigned n = 0, k = 0;
    std::vector<std::size_t> perm;

    std::vector<std::size_t> inverse() const {
        std::vector<std::size_t> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
        return inv;
    }

    nlohmann::ordered_json to_json(const Field& F) const {
        return {{"n", n}, {"k", k}, {"q", F.q()}, {"perm", perm}};
    }

    static GrassmannianBijection from_json(const nlohmann::json& j) {
        GrassmannianBijection b;
        b.n = j.at("n").get<unsigned>();
        b.k = j.at("k").get<unsigned>();
        b.perm = j.at("perm").get<std::vector<std::size_t>>();
        std::vector<bool> seen(b.perm.size(), false);
        for (std::size_t p : b.perm) {
            if (p >= b.perm.size() || seen[p])
                throw std::invalid_argument("perm is not a permutation");
            seen[p] = true;
        }
        return b;
    }
};

inline GrassmannianBijection bijection_from_semilinear(const Grassmannian& G,
                                                       const SemilinearMap& l) {
    return GrassmannianBijection{G.n(), G.k(), induced_permutation(G, l)};
}

/// The apartment of G_k defined by a frame, as a sorted ordinal set.
inline std::vector<std::size_t> apartment_ordinals(const Grassmannian& G, const Frame& fr) {
    std::vector<std::size_t> out;
    Apartment A(G.field(), fr, G.k());
    for (Label l : A.labels()) out.push_back(G.ordinal_of(A.subspace_of(l)));
    std::sort(out.begin(), out.end());
    return out;
}

/// Decide whether a set of k-subspaces is an apartment, recovering the frame:
/// candidate lines are the 1-dim subspaces contained in the prescribed number
/// of elements whose common intersection is the line itself.
inline std::optional<Frame> recognize_apartment(const Field& F, unsigned n, unsigned k,
                                                const std::vector<Subspace>& elems) {
    if (elems.size() != binomial(n, k)) return std::nullopt;
    std::set<Subspace> uniq(elems.begin(), elems.end());
    if (uniq.size() != elems.size()) return std::nullopt;

    std::vector<Subspace> cand_lines;
    if (k == 1) {
        cand_lines = elems;
    } else {
        std::set<Subspace> seen;
        for (const auto& X : elems)
            for (const auto& L : all_lines(F, X.dim())) {
                // lift coordinate line through X's basis
                Vec coeff = L.basis().row(0);
                Vec v(n, 0);
                for (unsigned t = 0; t < X.dim(); ++t)
                    if (coeff[t]) v = vec_add(F, v, vec_scale(F, coeff[t], X.basis().row(t)));
                seen.insert(Subspace::span(F, n, {v}));
            }
        const std::size_t want = binomial(n - 1, k - 1);
        for (const auto& L : seen) {
            std::size_t cnt = 0;
            Subspace meet;
            bool first = true;
            for (const auto& X : elems) {
                if (!X.contains(F, L)) continue;
                ++cnt;
                if (first) { meet = X; first = false; }
                else meet = intersect(F, meet, X);
            }
            if (cnt == want && meet == L) cand_lines.push_back(L);
        }
    }
    if (cand_lines.size() != n) return std::nullopt;
    Mat m(n, n);
    for (unsigned i = 0; i < n; ++i) m.set_row(i, cand_lines[i].basis().row(0));
    if (rank(F, m) != n) return std::nullopt;
    Frame fr(F, m);
    // extensional confirmation
    Apartment A(F, fr, k);
    for (const auto& X : elems)
        if (!A.contains(X)) return std::nullopt;
    return fr;
}

enum class ApartmentCheckMode { Exhaustive, Sampled };

struct ApartmentWitness {
    Frame frame;
    bool forward = true;  // false: witness against f^{-1}
};

/// Theorem hypothesis test: f and f^{-1} send apartments to apartments.
inline std::optional<ApartmentWitness> apartment_preservation_witness(
    const Grassmannian& G, const GrassmannianBijection& f, ApartmentCheckMode mode,
    Rng* rng = nullptr, std::size_t samples = 200, std::uint64_t guard_frames = 500000) {
    const Field& F = G.field();
    auto inv = f.inverse();
    auto check_one = [&](const Frame& fr) -> std::optional<ApartmentWitness> {
        Apartment A(F, fr, G.k());
        for (int dir = 0; dir < 2; ++dir) {
            const auto& p = dir == 0 ? f.perm : inv;
            std::vector<Subspace> image;
            for (Label l : A.labels())
                image.push_back(G.at(p[G.ordinal_of(A.subspace_of(l))]));
            if (!recognize_apartment(F, G.n(), G.k(), image))
                return ApartmentWitness{fr, dir == 0};
        }
        return std::nullopt;
    };
    if (mode == ApartmentCheckMode::Exhaustive) {
        std::optional<ApartmentWitness> found;
        for_each_frame(F, G.n(), [&](const Frame& fr) {
            if (found) return;
            found = check_one(fr);
        }, guard_frames);
        return found;
    }
    if (!rng) throw std::invalid_argument("sampled mode needs an rng");
    for (std::size_t s = 0; s < samples; ++s) {
        auto w = check_one(Frame::random(F, G.n(), *rng));
        if (w) return w;
    }
    return std::nullopt;
}

inline bool preserves_apartments(const Grassmannian& G, const GrassmannianBijection& f,
                                 ApartmentCheckMode mode, Rng* rng = nullptr,
                                 std::size_t samples = 200) {
    return !apartment_preservation_witness(G, f, mode, rng, samples).has_value();
}

/// Constructive fundamental-theorem reconstruction on G_1 (n >= 3): fix the
/// standard frame points and the unit point, scale the image columns through
/// the unit point, probe the pencil through <e_1>, <e_2> for the field
/// automorphism, then verify total agreement.
inline SemilinearMap ftpg_reconstruct(const Grassmannian& G1, const GrassmannianBijection& f) {
    const Field& F = G1.field();
    const unsigned n = G1.n();
    if (G1.k() != 1 || f.k != 1) throw std::invalid_argument("ftpg needs k = 1");
    if (n < 3) throw std::invalid_argument("ftpg needs n >= 3");

    auto image_of_vec = [&](const Vec& v) {
        std::size_t ord = G1.ordinal_of(Subspace::span(F, n, {v}));
        return G1.at(f.perm[ord]).basis().row(0);
    };

    // columns: representatives of the frame-point images
    Mat V(n, n);
    for (unsigned i = 0; i < n; ++i) {
        Vec ei(n, 0);
        ei[i] = 1;
        Vec w = image_of_vec(ei);
        for (unsigned r = 0; r < n; ++r) V.at(r, i) = w[r];
    }
    auto Vinv = inverse(F, V);
    if (!Vinv) throw std::runtime_error("not induced by any semilinear map: frame image degenerate");

    Vec unit(n, 1);
    Vec wu = image_of_vec(unit);
    Vec c = mat_vec(F, *Vinv, wu);
    for (Elem ci : c)
        if (ci == 0)
            throw std::runtime_error("not induced by any semilinear map: unit point degenerate");
    Mat M(n, n);
    for (unsigned r = 0; r < n; ++r)
        for (unsigned i = 0; i < n; ++i) M.at(r, i) = F.mul(V.at(r, i), c[i]);
    auto Minv = inverse(F, M);

    // recover sigma from the pencil through <e_1>, <e_2>
    std::vector<Elem> sigma(F.q(), 0);
    for (Elem a = 0; a < F.q(); ++a) {
        Vec v(n, 0);
        v[0] = 1;
        v[1] = a;
        Vec w = image_of_vec(v);
        Vec x = mat_vec(F, *Minv, w);
        if (x[0] == 0)
            throw std::runtime_error("not induced by any semilinear map: pencil probe degenerate");
        for (unsigned r = 2; r < n; ++r)
            if (x[r] != 0)
                throw std::runtime_error("not induced by any semilinear map: pencil not preserved");
        sigma[a] = F.div(x[1], x[0]);
    }
    std::optional<unsigned> power;
    for (unsigned t = 0; t < F.e(); ++t) {
        bool ok = true;
        for (Elem a = 0; a < F.q(); ++a)
            if (sigma[a] != F.frobenius(a, t)) { ok = false; break; }
        if (ok) { power = t; break; }
    }
    if (!power)
        throw std::runtime_error("not induced by any semilinear map: recovered sigma is not an automorphism");

    SemilinearMap l{M, *power};
    for (std::size_t i = 0; i < G1.size(); ++i)
        if (G1.ordinal_of(G1.at(i).image(F, l)) != f.perm[i])
            throw std::runtime_error("not induced by any semilinear map: total verification failed");
    return l;
}

/// The point P' = intersection of f(A \ {X}) for an apartment A of G_{n-1}
/// built from a frame whose first line is P; X is the unique element of A not
/// containing P.
inline Subspace induced_point_image(const Field& F, const Grassmannian& Gn1,
                                    const GrassmannianBijection& f, const Subspace& P,
                                    const Frame& fr) {
    const unsigned n = Gn1.n();
    // hyperplanes spanned by all frame vectors but one
    Subspace inter;
    bool first = true;
    for (unsigned omit = 0; omit < n; ++omit) {
        std::vector<Vec> rows;
        for (unsigned i = 0; i < n; ++i)
            if (i != omit) rows.push_back(fr.vector(i));
        Subspace H = Subspace::span(F, n, rows);
        if (!H.contains(F, P)) continue;  // skip the unique X not through P
        Subspace img = Gn1.at(f.perm[Gn1.ordinal_of(H)]);
        if (first) { inter = img; first = false; }
        else inter = intersect(F, inter, img);
    }
    if (inter.dim() != 1)
        throw std::runtime_error("hyperplane procedure: intersection is not a point");
    return inter;
}

/// Extend the representative of P to a frame; the optional offset permutes
/// the completion so independence of the choice can be exercised.
inline Frame frame_through_point(const Field& F, unsigned n, const Subspace& P,
                                 unsigned offset = 0) {
    std::vector<Vec> rows{P.basis().row(0)};
    Mat id = Mat::identity(n);
    for (unsigned t = 0; t < n; ++t) {
        unsigned i = (t + offset) % n;
        Mat m(static_cast<unsigned>(rows.size()) + 1, n);
        for (unsigned r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
        m.set_row(static_cast<unsigned>(rows.size()), id.row(i));
        if (rank(F, m) == rows.size() + 1) rows.push_back(id.row(i));
        if (rows.size() == n) break;
    }
    return Frame(F, Mat::from_rows(rows, n));
}

/// The hyperplane-Grassmannian procedure for k = n-1: induce the point map
/// P -> intersection of f(A \ {X}), reconstruct it by the fundamental
/// theorem, and confirm the same map induces f.
inline SemilinearMap hyperplane_reconstruct(const Tower& T, const GrassmannianBijection& f) {
    const Field& F = T.field();
    const unsigned n = T.n();
    if (f.k + 1 != n) throw std::invalid_argument("hyperplane procedure needs k = n-1");
    const Grassmannian& Gn1 = T.at(n - 1);
    const Grassmannian& G1 = T.at(1);

    GrassmannianBijection g{n, 1, std::vector<std::size_t>(G1.size())};
    std::vector<bool> hit(G1.size(), false);
    for (std::size_t i = 0; i < G1.size(); ++i) {
        const Subspace& P = G1.at(i);
        Subspace Pimg = induced_point_image(F, Gn1, f, P, frame_through_point(F, n, P));
        std::size_t o = G1.ordinal_of(Pimg);
        if (hit[o]) throw std::runtime_error("hyperplane procedure: induced point map not injective");
        hit[o] = true;
        g.perm[i] = o;
    }
    SemilinearMap l = ftpg_reconstruct(G1, g);
    for (std::size_t i = 0; i < Gn1.size(); ++i)
        if (Gn1.ordinal_of(Gn1.at(i).image(F, l)) != f.perm[i])
            throw std::runtime_error("hyperplane procedure: reconstructed map does not induce f");
    return l;
}

/// The annihilator-duality permutation of G_k onto G_{n-k} (an involution on
/// one Grassmannian when n = 2k).
inline std::vector<std::size_t> duality_permutation(const Grassmannian& Gk,
                                                    const Grassmannian& Gnk) {
    std::vector<std::size_t> out(Gk.size());
    for (std::size_t i = 0; i < Gk.size(); ++i)
        out[i] = Gnk.ordinal_of(Gk.at(i).annihilator(Gk.field()));
    return out;
}

struct ReconstructionResult {
    SemilinearMap map;
    bool dualized = false;  // f = duality after the action of map
    nlohmann::ordered_json certificate;

    /// Expected image ordinal of element i under the certified decomposition.
    std::size_t expected_image(const Grassmannian& G, std::size_t i,
                               const std::vector<std::size_t>& duality) const {
        std::size_t o = G.ordinal_of(G.at(i).image(G.field(), map));
        return dualized ? duality[o] : o;
    }
};

struct ReconstructionError : std::runtime_error {
    ReconstructionError(const std::string& stage, const std::string& what)
        : std::runtime_error("reconstruction failed at stage '" + stage + "': " + what),
          stage(stage) {}
    std::string stage;
};

/// Theorem-as-algorithm. Descends through stars to G_1, reconstructs there,
/// and verifies the lift on every element of G_k. A star-to-top flip at
/// n = 2k is normalized by composing with the annihilator duality; the
/// factor is recorded in the certificate.
inline ReconstructionResult reconstruct(const Tower& T, const GrassmannianBijection& f,
                                        ApartmentCheckMode mode = ApartmentCheckMode::Sampled,
                                        Rng* rng = nullptr, std::size_t samples = 200,
                                        std::size_t pair_samples = 500) {
    const Field& F = T.field();
    const unsigned n = T.n();
    const unsigned k = f.k;
    if (k < 1 || k >= n) throw std::invalid_argument("need 1 <= k <= n-1");
    const Grassmannian& Gk = T.at(k);

    nlohmann::ordered_json cert;
    cert["n"] = n;
    cert["k"] = k;
    cert["q"] = F.q();
    cert["stages"] = nlohmann::ordered_json::array();

    std::optional<Rng> local_rng;
    if (!rng) {
        local_rng.emplace(0);
        rng = &*local_rng;
    }

    auto w = apartment_preservation_witness(Gk, f, mode, rng, samples);
    if (w) throw ReconstructionError("apartment-preservation", "witness apartment found");
    cert["stages"].push_back({{"stage", "apartment-preservation"},
                              {"mode", mode == ApartmentCheckMode::Exhaustive ? "exhaustive" : "sampled"},
                              {"samples", mode == ApartmentCheckMode::Exhaustive ? 0 : samples}});

    // graph automorphism spot check on sampled pairs
    {
        std::size_t checked = 0;
        for (std::size_t t = 0; t < pair_samples; ++t) {
            std::size_t i = rng->below(Gk.size());
            std::size_t j = rng->below(Gk.size());
            if (i == j) continue;
            bool a = adjacent(F, Gk.at(i), Gk.at(j));
            bool b = adjacent(F, Gk.at(f.perm[i]), Gk.at(f.perm[j]));
            if (a != b)
                throw ReconstructionError("graph-automorphism", "adjacency not preserved");
            ++checked;
        }
        cert["stages"].push_back({{"stage", "graph-automorphism"}, {"pairs", checked}});
    }

    bool dualized = false;
    GrassmannianBijection cur = f;
    std::vector<std::size_t> dual_perm;
    if (k >= 2) {
        // probe one star; a type flip is legitimate only at n = 2k
        try {
            induce_on_adjacent_grassmannian(Gk, T.at(k - 1), cur.perm, InduceDirection::Down);
        } catch (const TypeFlipError&) {
            if (n != 2 * k)
                throw ReconstructionError("star-to-star",
                                          "star image is not a star and n != 2k");
            dual_perm = duality_permutation(Gk, Gk);
            GrassmannianBijection composed = cur;
            for (std::size_t i = 0; i < cur.perm.size(); ++i)
                composed.perm[i] = dual_perm[cur.perm[i]];
            cur = std::move(composed);
            dualized = true;
        }
        cert["stages"].push_back({{"stage", "star-to-star"}, {"dualized", dualized}});
    }

    // descent through stars
    for (unsigned level = k; level >= 2; --level) {
        cur.perm = induce_on_adjacent_grassmannian(T.at(level), T.at(level - 1), cur.perm,
                                                   InduceDirection::Down);
        cur.k = level - 1;
        // induced maps keep sending apartments to apartments; spot check
        std::size_t verify = std::min<std::size_t>(samples, 20);
        auto wd = apartment_preservation_witness(T.at(level - 1), cur,
                                                 ApartmentCheckMode::Sampled, rng, verify);
        if (wd)
            throw ReconstructionError("descent",
                                      "induced map at level " + std::to_string(level - 1) +
                                          " does not preserve apartments");
        cert["stages"].push_back({{"stage", "descent"}, {"to_k", level - 1}});
    }

    SemilinearMap l = ftpg_reconstruct(T.at(1), cur);
    cert["stages"].push_back({{"stage", "ftpg"}, {"aut_power", l.aut_power}});

    // total verification on G_k
    if (dualized && dual_perm.empty()) dual_perm = duality_permutation(Gk, Gk);
    ReconstructionResult res{l, dualized, {}};
    for (std::size_t i = 0; i < Gk.size(); ++i)
        if (res.expected_image(Gk, i, dual_perm) != f.perm[i])
            throw ReconstructionError("final-verification",
                                      "reconstructed map does not induce f");
    cert["stages"].push_back({{"stage", "final-verification"}, {"elements", Gk.size()}});
    cert["dualized"] = dualized;
    res.certificate = std::move(cert);
    return res;
}

inline nlohmann::ordered_json reconstruction_result_to_json(const ReconstructionResult& r) {
    return {{"map", r.map.to_json()}, {"dualized", r.dualized}, {"certificate", r.certificate}};
}

/// The gluing check: for sampled pairs X, Y with nonzero intersection, the
/// point maps obtained by restricting l to X and to Y must agree on every
/// point of X cap Y (and l must actually carry X to f(X), Y to f(Y)).
inline bool local_glue_check(const Tower& T, const GrassmannianBijection& f,
                             const SemilinearMap& l, bool dualized, Rng& rng,
                             std::size_t pair_samples = 500,
                             std::pair<std::size_t, std::size_t>* witness = nullptr) {
    const Field& F = T.field();
    const Grassmannian& Gk = T.at(f.k);
    std::vector<std::size_t> dual;
    if (dualized) dual = duality_permutation(Gk, Gk);
    auto f_image = [&](std::size_t i) {
        return Gk.at(f.perm[i]);
    };
    auto l_image = [&](std::size_t i) {
        Subspace s = Gk.at(i).image(F, l);
        if (!dualized) return s;
        return s.annihilator(F);
    };
    if (f.k == 1) {
        // distinct points never share a nonzero vector; the gluing condition
        // degenerates to pointwise agreement
        for (std::size_t t = 0; t < pair_samples; ++t) {
            std::size_t i = rng.below(Gk.size());
            if (!(l_image(i) == f_image(i))) {
                if (witness) *witness = {i, i};
                return false;
            }
        }
        return true;
    }
    std::size_t done = 0, attempts = 0;
    const std::size_t max_attempts = pair_samples * 200 + 1000;
    while (done < pair_samples && attempts < max_attempts) {
        ++attempts;
        std::size_t i = rng.below(Gk.size());
        std::size_t j = rng.below(Gk.size());
        if (i == j) continue;
        Subspace I = intersect(F, Gk.at(i), Gk.at(j));
        if (I.dim() == 0) continue;  // the lemma's hypothesis: nonzero intersection
        ++done;
        if (!(l_image(i) == f_image(i)) || !(l_image(j) == f_image(j))) {
            if (witness) *witness = {i, j};
            return false;
        }
        // restrictions of one global map agree pointwise; check extensionally
        for (const auto& L : all_lines(F, I.dim())) {
            Vec coeff = L.basis().row(0);
            Vec v(T.n(), 0);
            for (unsigned t = 0; t < I.dim(); ++t)
                if (coeff[t]) v = vec_add(F, v, vec_scale(F, coeff[t], I.basis().row(t)));
            Subspace P = Subspace::span(F, T.n(), {v});
            Subspace h = P.image(F, l);
            // for a genuinely glued map the point image must lie in both
            // subspace images; duality reverses incidence so the containment
            // check only applies on the non-dual side
            bool inside = dualized ? h.dim() == 1
                                   : f_image(i).contains(F, h) && f_image(j).contains(F, h);
            if (!inside) {
                if (witness) *witness = {i, j};
                return false;
            }
        }
    }
    return true;
}

} // namespace grassmann
