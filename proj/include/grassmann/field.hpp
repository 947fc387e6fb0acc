#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace grassmann {

/// A field element is its residue encoding: an integer in [0, q) whose
/// base-p digits are the coefficients of the polynomial residue.
using Elem = unsigned;

/// A field automorphism x |-> x^(p^power), power in [0, e).
struct FieldAut {
    unsigned power = 0;
    bool operator==(const FieldAut&) const = default;
};

namespace poly {

// Dense little-endian coefficient vectors over F_p.

inline void trim(std::vector<unsigned>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::vector<unsigned> mul(const std::vector<unsigned>& a,
                                 const std::vector<unsigned>& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned> c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

/// Remainder of f modulo a monic divisor m.
inline std::vector<unsigned> mod(std::vector<unsigned> f,
                                 const std::vector<unsigned>& m, unsigned p) {
    trim(f);
    const std::size_t dm = m.size() - 1;
    while (f.size() > dm) {
        unsigned lead = f.back();
        std::size_t shift = f.size() - 1 - dm;
        for (std::size_t i = 0; i < m.size(); ++i) {
            unsigned sub = (lead * m[i]) % p;
            f[shift + i] = (f[shift + i] + p - sub) % p;
        }
        trim(f);
        if (f.empty()) break;
    }
    return f;
}

/// Trial division by every monic polynomial of degree 1..deg(f)/2.
inline bool is_irreducible(const std::vector<unsigned>& f, unsigned p) {
    if (f.size() < 2 || f.back() != 1) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            std::vector<unsigned> g(d + 1, 0);
            std::uint64_t v = low;
            for (std::size_t i = 0; i < d; ++i) { g[i] = static_cast<unsigned>(v % p); v /= p; }
            g[d] = 1;
            if (mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace poly

/// Arithmetic in F_q = F_{p^e} for small prime powers, with precomputed
/// addition/multiplication/inverse tables and the Frobenius automorphism group.
class Field {
public:
    static constexpr unsigned kMaxOrder = 64;

    explicit Field(unsigned p, unsigned e = 1, std::vector<unsigned> modulus = {})
        : p_(p), e_(e) {
        if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
        if (e == 0) throw std::invalid_argument("extension degree must be >= 1");
        q_ = 1;
        for (unsigned i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > kMaxOrder) throw std::invalid_argument(
                "field order exceeds the supported bound q <= " + std::to_string(kMaxOrder));
        }
        if (e_ == 1) {
            modulus_.clear();
        } else {
            if (modulus.empty()) {
                modulus_ = default_modulus(p_, e_);
            } else {
                poly::trim(modulus);
                if (modulus.size() != e_ + 1 || modulus.back() != 1)
                    throw std::invalid_argument("modulus must be monic of degree e");
                for (unsigned c : modulus)
                    if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
                if (!poly::is_irreducible(modulus, p_))
                    throw std::invalid_argument("modulus is reducible over F_p");
                modulus_ = std::move(modulus);
            }
        }
        build_tables();
    }

    unsigned p() const { return p_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % q_; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }

    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("zero has no inverse");
        return inv_[a];
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t n) const {
        Elem r = one();
        Elem base = a;
        while (n) {
            if (n & 1) r = mul(r, base);
            base = mul(base, base);
            n >>= 1;
        }
        return r;
    }

    /// x |-> x^(p^t)
    Elem frobenius(Elem a, unsigned t) const { return frob_[(t % e_) * q_ + a]; }

    Elem apply(const FieldAut& s, Elem a) const { return frobenius(a, s.power); }

    /// All e automorphisms, each verified additive and multiplicative
    /// by exhaustion over the q^2 pairs.
    std::vector<FieldAut> automorphisms() const {
        std::vector<FieldAut> out;
        for (unsigned t = 0; t < e_; ++t) {
            for (Elem a = 0; a < q_; ++a)
                for (Elem b = 0; b < q_; ++b) {
                    if (frobenius(add(a, b), t) != add(frobenius(a, t), frobenius(b, t)) ||
                        frobenius(mul(a, b), t) != mul(frobenius(a, t), frobenius(b, t)))
                        throw std::logic_error("frobenius candidate failed exhaustion");
                }
            out.push_back(FieldAut{t});
        }
        return out;
    }

    bool operator==(const Field& o) const {
        return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
    }

    nlohmann::ordered_json to_json() const {
        return {{"p", p_}, {"e", e_}, {"modulus", modulus_}};
    }

    static Field from_json(const nlohmann::json& j) {
        std::vector<unsigned> mod = j.value("modulus", std::vector<unsigned>{});
        return Field(j.at("p").get<unsigned>(), j.at("e").get<unsigned>(), mod);
    }

    static bool is_prime(unsigned p) {
        if (p < 2) return false;
        for (unsigned d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

    /// Smallest (by encoded low part) monic irreducible of degree e over F_p.
    static std::vector<unsigned> default_modulus(unsigned p, unsigned e) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < e; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            std::vector<unsigned> f(e + 1, 0);
            std::uint64_t v = low;
            for (unsigned i = 0; i < e; ++i) { f[i] = static_cast<unsigned>(v % p); v /= p; }
            f[e] = 1;
            if (poly::is_irreducible(f, p)) return f;
        }
        throw std::logic_error("no irreducible polynomial found");  // unreachable
    }

private:
    void build_tables() {
        add_.resize(q_ * q_);
        mul_.resize(q_ * q_);
        neg_.resize(q_);
        inv_.assign(q_, 0);
        for (Elem a = 0; a < q_; ++a) {
            for (Elem b = 0; b < q_; ++b) {
                add_[a * q_ + b] = add_residues(a, b);
                mul_[a * q_ + b] = mul_residues(a, b);
            }
        }
        for (Elem a = 0; a < q_; ++a) {
            for (Elem b = 0; b < q_; ++b)
                if (add_[a * q_ + b] == 0) { neg_[a] = b; break; }
        }
        for (Elem a = 1; a < q_; ++a) {
            bool found = false;
            for (Elem b = 1; b < q_; ++b)
                if (mul_[a * q_ + b] == 1) { inv_[a] = b; found = true; break; }
            if (!found) throw std::logic_error("non-invertible nonzero residue: modulus reducible?");
        }
        frob_.resize(e_ * q_);
        for (unsigned t = 0; t < e_; ++t) {
            std::uint64_t pt = 1;
            for (unsigned i = 0; i < t; ++i) pt *= p_;
            for (Elem a = 0; a < q_; ++a) frob_[t * q_ + a] = pow(a, pt);
        }
    }

    std::vector<unsigned> digits(Elem v) const {
        std::vector<unsigned> d(e_, 0);
        for (unsigned i = 0; i < e_; ++i) { d[i] = v % p_; v /= p_; }
        return d;
    }

    Elem undigits(const std::vector<unsigned>& d) const {
        Elem v = 0;
        for (unsigned i = e_; i-- > 0;) v = v * p_ + (i < d.size() ? d[i] : 0);
        return v;
    }

    Elem add_residues(Elem a, Elem b) const {
        auto da = digits(a), db = digits(b);
        for (unsigned i = 0; i < e_; ++i) da[i] = (da[i] + db[i]) % p_;
        return undigits(da);
    }

    Elem mul_residues(Elem a, Elem b) const {
        if (e_ == 1) return (a * b) % p_;
        auto prod = poly::mul(digits(a), digits(b), p_);
        auto r = poly::mod(prod, modulus_, p_);
        return undigits(r);
    }

    unsigned p_, e_, q_;
    std::vector<unsigned> modulus_;
    std::vector<Elem> add_, mul_, neg_, inv_, frob_;
};

} // namespace grassmann
