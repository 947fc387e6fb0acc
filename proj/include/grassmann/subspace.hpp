#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "grassmann/linalg.hpp"

namespace grassmann {

/// A subspace of F_q^n held in canonical reduced-row-echelon form, so two
/// Subspace values are equal iff their basis matrices are identical.
class Subspace {
public:
    Subspace() = default;

    /// Rows may be dependent; they are canonicalized and zero rows dropped.
    static Subspace span(const Field& F, unsigned n, const std::vector<Vec>& vectors) {
        return from_matrix(F, n, Mat::from_rows(vectors, n));
    }

    static Subspace from_matrix(const Field& F, unsigned n, const Mat& m) {
        if (m.cols != n) throw std::invalid_argument("ambient dimension mismatch");
        auto r = rref(F, m);
        Subspace s;
        s.n_ = n;
        s.basis_ = Mat(r.rank, n);
        for (unsigned i = 0; i < r.rank; ++i) s.basis_.set_row(i, r.m.row(i));
        s.pivots_ = r.pivots;
        return s;
    }

    static Subspace zero(unsigned n) {
        Subspace s;
        s.n_ = n;
        s.basis_ = Mat(0, n);
        return s;
    }

    static Subspace full(const Field&, unsigned n) {
        Subspace s;
        s.n_ = n;
        s.basis_ = Mat::identity(n);
        for (unsigned i = 0; i < n; ++i) s.pivots_.push_back(i);
        return s;
    }

    unsigned ambient() const { return n_; }
    unsigned dim() const { return basis_.rows; }
    const Mat& basis() const { return basis_; }
    const std::vector<unsigned>& pivots() const { return pivots_; }

    bool contains_vector(const Field& F, const Vec& v) const {
        if (v.size() != n_) throw std::invalid_argument("ambient dimension mismatch");
        // reduce v against the RREF rows
        Vec w = v;
        for (unsigned i = 0; i < basis_.rows; ++i) {
            Elem c = w[pivots_[i]];
            if (c == 0) continue;
            for (unsigned j = 0; j < n_; ++j) w[j] = F.sub(w[j], F.mul(c, basis_.at(i, j)));
        }
        return is_zero_vec(w);
    }

    /// other is a subspace of *this.
    bool contains(const Field& F, const Subspace& other) const {
        check_ambient(other);
        if (other.dim() > dim()) return false;
        for (unsigned i = 0; i < other.basis_.rows; ++i)
            if (!contains_vector(F, other.basis_.row(i))) return false;
        return true;
    }

    /// {v : <x, v> = 0 for all x here} under the standard dot product.
    Subspace annihilator(const Field& F) const {
        if (dim() == 0) return full(F, n_);
        return from_matrix(F, n_, nullspace(F, basis_));
    }

    /// Canonical form of {l(x) : x in this subspace}.
    Subspace image(const Field& F, const SemilinearMap& l) const {
        if (l.m.cols != n_) throw std::invalid_argument("ambient dimension mismatch");
        std::vector<Vec> rows;
        rows.reserve(dim());
        for (unsigned i = 0; i < basis_.rows; ++i)
            rows.push_back(apply(F, l, basis_.row(i)));
        if (rows.empty()) return zero(n_);
        return span(F, n_, rows);
    }

    /// Packed RREF rows; total order and hash key.
    std::vector<std::uint64_t> key() const {
        std::vector<std::uint64_t> k;
        k.reserve(basis_.rows);
        for (unsigned i = 0; i < basis_.rows; ++i) {
            std::uint64_t v = 0;
            for (unsigned j = 0; j < n_; ++j) v = v * 64 + basis_.at(i, j);
            k.push_back(v);
        }
        return k;
    }

    bool operator==(const Subspace& o) const {
        return n_ == o.n_ && basis_ == o.basis_;
    }
    bool operator<(const Subspace& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        if (basis_.rows != o.basis_.rows) return basis_.rows < o.basis_.rows;
        return basis_.a < o.basis_.a;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json rows_j = nlohmann::ordered_json::array();
        for (unsigned i = 0; i < basis_.rows; ++i) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (unsigned j = 0; j < n_; ++j) r.push_back(basis_.at(i, j));
            rows_j.push_back(std::move(r));
        }
        return {{"n", n_}, {"dim", dim()}, {"rref", std::move(rows_j)}};
    }

    /// Loaders re-canonicalize and reject rows that are not already in RREF.
    static Subspace from_json(const Field& F, const nlohmann::json& j) {
        unsigned n = j.at("n").get<unsigned>();
        std::vector<Vec> rows;
        for (const auto& r : j.at("rref")) rows.push_back(r.get<Vec>());
        Mat m = Mat::from_rows(rows, n);
        Subspace s = from_matrix(F, n, m);
        if (s.dim() != rows.size() || !(s.basis() == m))
            throw std::invalid_argument("subspace rows are not in reduced row echelon form");
        if (j.contains("dim") && j.at("dim").get<unsigned>() != s.dim())
            throw std::invalid_argument("subspace dim field mismatch");
        return s;
    }

private:
    void check_ambient(const Subspace& o) const {
        if (n_ != o.n_) throw std::invalid_argument("ambient dimension mismatch");
    }

    unsigned n_ = 0;
    Mat basis_;
    std::vector<unsigned> pivots_;
};

inline Subspace sum(const Field& F, const Subspace& X, const Subspace& Y) {
    if (X.ambient() != Y.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    Mat stacked(X.dim() + Y.dim(), X.ambient());
    for (unsigned i = 0; i < X.dim(); ++i) stacked.set_row(i, X.basis().row(i));
    for (unsigned i = 0; i < Y.dim(); ++i) stacked.set_row(X.dim() + i, Y.basis().row(i));
    return Subspace::from_matrix(F, X.ambient(), stacked);
}

/// Computed through annihilator duality: X cap Y = ann(ann X + ann Y).
inline Subspace intersect(const Field& F, const Subspace& X, const Subspace& Y) {
    if (X.ambient() != Y.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    return sum(F, X.annihilator(F), Y.annihilator(F)).annihilator(F);
}

/// X is a hyperplane of Y: contained with codimension exactly one.
inline bool is_hyperplane_of(const Field& F, const Subspace& X, const Subspace& Y) {
    return Y.dim() == X.dim() + 1 && Y.contains(F, X);
}

} // namespace grassmann
