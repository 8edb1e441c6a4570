#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace irkit {

// Dynamic bitset with word-level access. Size is fixed at construction.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }
    std::uint64_t word(std::size_t i) const { return words_[i]; }
    std::uint64_t& word(std::size_t i) { return words_[i]; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    void set_all()
    {
        for (auto& w : words_) w = ~std::uint64_t{0};
        trim();
    }
    void clear()
    {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const
    {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    std::size_t first() const { return next_from(0); }
    // First set bit with index >= i.
    std::size_t next_from(std::size_t i) const
    {
        if (i >= size_) return npos;
        std::size_t wi = i >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return wi * 64 + std::countr_zero(w);
            if (++wi >= words_.size()) return npos;
            w = words_[wi];
        }
    }
    std::size_t next(std::size_t i) const { return next_from(i + 1); }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                f(wi * 64 + std::countr_zero(w));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_vector() const
    {
        std::vector<int> out;
        out.reserve(count());
        for_each([&](std::size_t v) { out.push_back(static_cast<int>(v)); });
        return out;
    }

    bool intersects(const Bitset& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    std::size_t count_and(const Bitset& o) const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    bool is_subset_of(const Bitset& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    Bitset& operator^=(const Bitset& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }
    // Set difference.
    Bitset& operator-=(const Bitset& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    Bitset operator~() const
    {
        Bitset r(*this);
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }
    friend bool operator==(const Bitset& a, const Bitset& b)
    {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    friend bool operator<(const Bitset& a, const Bitset& b) { return a.words_ < b.words_; }

private:
    void trim()
    {
        if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
    }

    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

} // namespace irkit
