#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace grassmann {

/// Fixed-capacity dynamic bitset over 64-bit words, sized at construction.
/// Used for adjacency rows, clique sets and apartment membership masks.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    /// this &= ~o
    Bitset& and_not(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }
    friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }

    bool operator==(const Bitset& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    /// Index of the first set bit, or size() if none.
    std::size_t find_first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w_[i]));
        return n_;
    }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                fn(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> to_indices() const {
        std::vector<std::size_t> out;
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Seeded RNG handed around explicitly so every randomized check replays.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        std::uniform_int_distribution<std::uint64_t> d(0, bound - 1);
        return d(eng_);
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

/// Visit all k-subsets of {0..n-1} in lexicographic order.
template <typename Fn>
void for_each_combination(unsigned n, unsigned k, Fn&& fn) {
    if (k > n) return;
    std::vector<unsigned> idx(k);
    for (unsigned i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        fn(const_cast<const std::vector<unsigned>&>(idx));
        if (k == 0) return;
        // advance
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && idx[static_cast<unsigned>(i)] == n - k + static_cast<unsigned>(i)) --i;
        if (i < 0) return;
        ++idx[static_cast<unsigned>(i)];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r = r * (n - i) / (i + 1);
    }
    return r;
}

} // namespace grassmann
