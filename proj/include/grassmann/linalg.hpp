#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "grassmann/field.hpp"
#include "grassmann/util.hpp"

namespace grassmann {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over F_q.
struct Mat {
    unsigned rows = 0, cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(unsigned r, unsigned c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    Elem& at(unsigned i, unsigned j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    Elem at(unsigned i, unsigned j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    Vec row(unsigned i) const {
        return Vec(a.begin() + static_cast<std::ptrdiff_t>(i) * cols,
                   a.begin() + static_cast<std::ptrdiff_t>(i + 1) * cols);
    }
    void set_row(unsigned i, const Vec& v) {
        for (unsigned j = 0; j < cols; ++j) at(i, j) = v[j];
    }

    static Mat identity(unsigned n) {
        Mat m(n, n);
        for (unsigned i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<Vec>& rows_in, unsigned cols) {
        Mat m(static_cast<unsigned>(rows_in.size()), cols);
        for (unsigned i = 0; i < m.rows; ++i) {
            if (rows_in[i].size() != cols) throw std::invalid_argument("row length mismatch");
            m.set_row(i, rows_in[i]);
        }
        return m;
    }

    bool operator==(const Mat&) const = default;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json rows_j = nlohmann::ordered_json::array();
        for (unsigned i = 0; i < rows; ++i) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (unsigned j = 0; j < cols; ++j) r.push_back(at(i, j));
            rows_j.push_back(std::move(r));
        }
        return {{"rows", rows}, {"cols", cols}, {"entries", std::move(rows_j)}};
    }

    static Mat from_json(const nlohmann::json& j) {
        Mat m(j.at("rows").get<unsigned>(), j.at("cols").get<unsigned>());
        const auto& e = j.at("entries");
        if (e.size() != m.rows) throw std::invalid_argument("entry row count mismatch");
        for (unsigned i = 0; i < m.rows; ++i) {
            if (e[i].size() != m.cols) throw std::invalid_argument("entry col count mismatch");
            for (unsigned jj = 0; jj < m.cols; ++jj) m.at(i, jj) = e[i][jj].get<Elem>();
        }
        return m;
    }
};

inline Mat mat_mul(const Field& F, const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix dimension mismatch");
    Mat C(A.rows, B.cols);
    for (unsigned i = 0; i < A.rows; ++i)
        for (unsigned k = 0; k < A.cols; ++k) {
            Elem aik = A.at(i, k);
            if (aik == 0) continue;
            for (unsigned j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
        }
    return C;
}

/// A acting on a column vector.
inline Vec mat_vec(const Field& F, const Mat& A, const Vec& v) {
    if (A.cols != v.size()) throw std::invalid_argument("matrix/vector dimension mismatch");
    Vec w(A.rows, 0);
    for (unsigned i = 0; i < A.rows; ++i)
        for (unsigned j = 0; j < A.cols; ++j)
            w[i] = F.add(w[i], F.mul(A.at(i, j), v[j]));
    return w;
}

inline Vec vec_add(const Field& F, const Vec& a, const Vec& b) {
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = F.add(a[i], b[i]);
    return c;
}

inline Vec vec_scale(const Field& F, Elem c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(c, a[i]);
    return r;
}

inline bool is_zero_vec(const Vec& v) {
    for (Elem x : v) if (x) return false;
    return true;
}

struct RrefResult {
    Mat m;
    unsigned rank = 0;
    std::vector<unsigned> pivots;
};

/// Reduced row echelon form; the row space is unchanged.
inline RrefResult rref(const Field& F, Mat m) {
    RrefResult res;
    unsigned r = 0;
    for (unsigned c = 0; c < m.cols && r < m.rows; ++c) {
        unsigned piv = m.rows;
        for (unsigned i = r; i < m.rows; ++i)
            if (m.at(i, c) != 0) { piv = i; break; }
        if (piv == m.rows) continue;
        if (piv != r)
            for (unsigned j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Elem inv = F.inv(m.at(r, c));
        for (unsigned j = 0; j < m.cols; ++j) m.at(r, j) = F.mul(inv, m.at(r, j));
        for (unsigned i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            Elem f = m.at(i, c);
            if (f == 0) continue;
            for (unsigned j = 0; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    res.m = std::move(m);
    return res;
}

inline unsigned rank(const Field& F, const Mat& m) { return rref(F, m).rank; }

inline std::optional<Mat> inverse(const Field& F, const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    unsigned n = m.rows;
    Mat aug(n, 2 * n);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = 1;
    }
    auto r = rref(F, aug);
    for (unsigned i = 0; i < n; ++i)
        if (r.m.at(i, i) != 1) return std::nullopt;
    Mat inv(n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) inv.at(i, j) = r.m.at(i, n + j);
    return inv;
}

/// Basis (in RREF) of {x : A x = 0}, returned as rows.
inline Mat nullspace(const Field& F, const Mat& A) {
    auto r = rref(F, A);
    std::vector<bool> is_pivot(A.cols, false);
    for (unsigned c : r.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (unsigned c = 0; c < A.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v(A.cols, 0);
        v[c] = 1;
        for (unsigned i = 0; i < r.pivots.size(); ++i)
            v[r.pivots[i]] = F.neg(r.m.at(i, c));
        basis.push_back(std::move(v));
    }
    Mat ns = Mat::from_rows(basis, A.cols);
    return rref(F, ns).m;  // canonical order
}

/// Frobenius power applied entrywise.
inline Mat aut_applied(const Field& F, Mat m, unsigned t) {
    for (Elem& x : m.a) x = F.frobenius(x, t);
    return m;
}

inline Vec aut_applied(const Field& F, Vec v, unsigned t) {
    for (Elem& x : v) x = F.frobenius(x, t);
    return v;
}

/// An invertible matrix paired with a field automorphism power.
/// Application convention: automorphism on coordinates first, then the matrix
/// acting on the column vector.
struct SemilinearMap {
    Mat m;
    unsigned aut_power = 0;

    bool operator==(const SemilinearMap&) const = default;

    nlohmann::ordered_json to_json() const {
        auto j = m.to_json();
        j["aut_power"] = aut_power;
        return j;
    }

    static SemilinearMap from_json(const nlohmann::json& j) {
        return SemilinearMap{Mat::from_json(j), j.value("aut_power", 0u)};
    }
};

inline Vec apply(const Field& F, const SemilinearMap& l, const Vec& v) {
    if (l.m.cols != v.size()) throw std::invalid_argument("semilinear map dimension mismatch");
    return mat_vec(F, l.m, aut_applied(F, v, l.aut_power));
}

/// compose(l1, l2) applies l2 first: apply(compose(l1,l2), v) = l1(l2(v)).
inline SemilinearMap compose(const Field& F, const SemilinearMap& l1, const SemilinearMap& l2) {
    SemilinearMap r;
    r.aut_power = (l1.aut_power + l2.aut_power) % F.e();
    r.m = mat_mul(F, l1.m, aut_applied(F, l2.m, l1.aut_power));
    return r;
}

inline SemilinearMap invert(const Field& F, const SemilinearMap& l) {
    auto minv = inverse(F, l.m);
    if (!minv) throw std::invalid_argument("semilinear map matrix is singular");
    unsigned t = (F.e() - l.aut_power % F.e()) % F.e();
    return SemilinearMap{aut_applied(F, *minv, t), t};
}

/// True iff the automorphisms agree and the matrices differ by one nonzero
/// global scalar, i.e. the maps induce the same action on subspaces.
inline bool projectively_equal(const Field& F, const SemilinearMap& l1, const SemilinearMap& l2) {
    if (l1.aut_power % F.e() != l2.aut_power % F.e()) return false;
    if (l1.m.rows != l2.m.rows || l1.m.cols != l2.m.cols) return false;
    Elem scale = 0;
    for (std::size_t i = 0; i < l1.m.a.size(); ++i) {
        Elem x = l1.m.a[i], y = l2.m.a[i];
        if ((x == 0) != (y == 0)) return false;
        if (x == 0) continue;
        Elem s = F.div(x, y);
        if (scale == 0) scale = s;
        else if (s != scale) return false;
    }
    return scale != 0;
}

inline Mat random_matrix(const Field& F, unsigned rows, unsigned cols, Rng& rng) {
    Mat m(rows, cols);
    for (Elem& x : m.a) x = static_cast<Elem>(rng.below(F.q()));
    return m;
}

/// Rejection sampling on the rank check.
inline Mat random_invertible(const Field& F, unsigned n, Rng& rng) {
    while (true) {
        Mat m = random_matrix(F, n, n, rng);
        if (rank(F, m) == n) return m;
    }
}

inline SemilinearMap random_semilinear(const Field& F, unsigned n, Rng& rng) {
    return SemilinearMap{random_invertible(F, n, rng),
                         static_cast<unsigned>(rng.below(F.e()))};
}

} // namespace grassmann
