#ifndef VCOALG_BITSET_HPP
#define VCOALG_BITSET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace vcoalg {

/// Fixed-universe dynamic bitset for subsets of a finite space's point set.
/// Two bitsets compare equal only if they have the same universe size.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bitset full(std::size_t n) {
        Bitset b(n);
        for (std::size_t i = 0; i < b.w_.size(); ++i) b.w_[i] = ~std::uint64_t{0};
        b.trim();
        return b;
    }

    /// Subset of an n-point universe from the low bits of a mask (n <= 64).
    static Bitset from_mask(std::size_t n, std::uint64_t mask) {
        assert(n <= 64);
        Bitset b(n);
        if (!b.w_.empty()) b.w_[0] = mask;
        b.trim();
        return b;
    }

    std::size_t universe() const { return n_; }

    bool test(std::size_t i) const {
        assert(i < n_);
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v = true) {
        assert(i < n_);
        if (v)
            w_[i >> 6] |= (std::uint64_t{1} << (i & 63));
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool is_subset_of(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    Bitset complement() const {
        Bitset b(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) b.w_[i] = ~w_[i];
        b.trim();
        return b;
    }

    /// Set difference.
    Bitset minus(const Bitset& o) const {
        assert(n_ == o.n_);
        Bitset b(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) b.w_[i] = w_[i] & ~o.w_[i];
        return b;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }
    friend bool operator!=(const Bitset& a, const Bitset& b) { return !(a == b); }

    /// Numeric order on the characteristic vector (bit 0 least significant).
    friend bool operator<(const Bitset& a, const Bitset& b) {
        assert(a.n_ == b.n_);
        for (std::size_t i = a.w_.size(); i-- > 0;) {
            if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
        }
        return false;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (test(i)) out.push_back(static_cast<int>(i));
        return out;
    }

    struct Hash {
        std::size_t operator()(const Bitset& b) const {
            std::size_t h = 0xcbf29ce484222325ull ^ b.n_;
            for (auto w : b.w_) {
                h ^= static_cast<std::size_t>(w);
                h *= 0x100000001b3ull;
            }
            return h;
        }
    };

private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace vcoalg

#endif
