#pragma once

#include <betatau/error.hpp>

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace betatau {

// Finite word over {0,1}, packed MSB-first into 64-bit blocks so that
// equal-length prefixes compare as unsigned integers. Unused bits are zero.
class BinaryWord {
public:
    BinaryWord() = default;

    explicit BinaryWord(std::string_view s)
    {
        reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1')
                throw domain_error("invalid digit '" + std::string(1, c) + "' in word \"" + std::string(s) + "\"");
            push_back(c - '0');
        }
    }

    BinaryWord(std::initializer_list<int> digits)
    {
        for (int d : digits) push_back(d);
    }

    static BinaryWord repeat(int digit, std::size_t n)
    {
        BinaryWord w;
        w.blocks_.assign((n + 63) / 64, digit ? ~std::uint64_t{0} : 0);
        w.size_ = n;
        w.trim();
        return w;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    int operator[](std::size_t i) const noexcept
    {
        return static_cast<int>((blocks_[i >> 6] >> (63 - (i & 63))) & 1u);
    }

    int front() const { return (*this)[0]; }
    int back() const { return (*this)[size_ - 1]; }

    void set(std::size_t i, int d) noexcept
    {
        std::uint64_t mask = std::uint64_t{1} << (63 - (i & 63));
        if (d) blocks_[i >> 6] |= mask;
        else blocks_[i >> 6] &= ~mask;
    }

    void reserve(std::size_t n) { blocks_.reserve((n + 63) / 64); }

    void push_back(int d)
    {
        if ((size_ & 63) == 0) blocks_.push_back(0);
        ++size_;
        set(size_ - 1, d);
    }

    void pop_back()
    {
        set(size_ - 1, 0);
        --size_;
        if ((size_ & 63) == 0) blocks_.pop_back();
    }

    void append(const BinaryWord& w)
    {
        if ((size_ & 63) == 0) {
            blocks_.insert(blocks_.end(), w.blocks_.begin(), w.blocks_.end());
            size_ += w.size_;
            return;
        }
        reserve(size_ + w.size_);
        for (std::size_t i = 0; i < w.size_; ++i) push_back(w[i]);
    }

    BinaryWord substr(std::size_t pos, std::size_t len) const
    {
        BinaryWord w;
        w.reserve(len);
        for (std::size_t i = 0; i < len; ++i) w.push_back((*this)[pos + i]);
        return w;
    }

    std::size_t count(int a) const noexcept
    {
        std::size_t ones = 0;
        for (auto b : blocks_) ones += static_cast<std::size_t>(std::popcount(b));
        return a ? ones : size_ - ones;
    }

    std::string str() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if ((*this)[i]) s[i] = '1';
        return s;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = std::hash<std::size_t>{}(size_);
        for (auto b : blocks_) h ^= std::hash<std::uint64_t>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

    friend bool operator==(const BinaryWord& a, const BinaryWord& b) noexcept
    {
        return a.size_ == b.size_ && a.blocks_ == b.blocks_;
    }

    // Lexicographic order; a proper prefix precedes its extensions.
    friend std::strong_ordering operator<=>(const BinaryWord& a, const BinaryWord& b) noexcept
    {
        std::size_t n = a.size_ < b.size_ ? a.size_ : b.size_;
        std::size_t full = n >> 6;
        for (std::size_t k = 0; k < full; ++k)
            if (a.blocks_[k] != b.blocks_[k]) return a.blocks_[k] <=> b.blocks_[k];
        if (std::size_t rem = n & 63) {
            std::uint64_t mask = ~std::uint64_t{0} << (64 - rem);
            std::uint64_t x = a.blocks_[full] & mask, y = b.blocks_[full] & mask;
            if (x != y) return x <=> y;
        }
        return a.size_ <=> b.size_;
    }

    friend BinaryWord operator+(BinaryWord a, const BinaryWord& b)
    {
        a.append(b);
        return a;
    }

    friend std::ostream& operator<<(std::ostream& os, const BinaryWord& w) { return os << w.str(); }

private:
    void trim() noexcept
    {
        if (std::size_t rem = size_ & 63) blocks_.back() &= ~std::uint64_t{0} << (64 - rem);
    }

    std::vector<std::uint64_t> blocks_;
    std::size_t size_ = 0;
};

inline BinaryWord operator""_w(const char* s, std::size_t n) { return BinaryWord(std::string_view(s, n)); }

} // namespace betatau

template <>
struct std::hash<betatau::BinaryWord> {
    std::size_t operator()(const betatau::BinaryWord& w) const noexcept { return w.hash(); }
};
