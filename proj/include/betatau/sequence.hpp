#pragma once

#include <betatau/binary_word.hpp>

#include <compare>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

namespace betatau {

enum class Order { LT, EQ, GT };

inline const char* to_string(Order o)
{
    switch (o) {
    case Order::LT: return "LT";
    case Order::EQ: return "EQ";
    case Order::GT: return "GT";
    }
    return "?";
}

// pre · per^∞, kept normalized: per primitive, pre minimal.
class EventuallyPeriodicSeq {
public:
    EventuallyPeriodicSeq() : per_(BinaryWord{0}) {}

    EventuallyPeriodicSeq(BinaryWord pre, BinaryWord per) : pre_(std::move(pre)), per_(std::move(per))
    {
        if (per_.empty()) throw domain_error("empty period");
        normalize();
    }

    static EventuallyPeriodicSeq periodic(BinaryWord per) { return {BinaryWord{}, std::move(per)}; }
    static EventuallyPeriodicSeq finite(BinaryWord pre) { return {std::move(pre), BinaryWord{0}}; }

    // "1100(10)" is 1100(10)^∞, "(10)" is (10)^∞, "110" is 110·0^∞.
    static EventuallyPeriodicSeq parse(std::string_view lit)
    {
        auto open = lit.find('(');
        if (open == std::string_view::npos) {
            if (lit.empty()) throw domain_error("empty sequence literal");
            return finite(BinaryWord(lit));
        }
        if (lit.back() != ')' || lit.find('(', open + 1) != std::string_view::npos ||
            lit.find(')') != lit.size() - 1)
            throw domain_error("malformed sequence literal \"" + std::string(lit) + "\"");
        auto per = lit.substr(open + 1, lit.size() - open - 2);
        if (per.empty()) throw domain_error("empty period in sequence literal \"" + std::string(lit) + "\"");
        return {BinaryWord(lit.substr(0, open)), BinaryWord(per)};
    }

    const BinaryWord& preperiod() const noexcept { return pre_; }
    const BinaryWord& period() const noexcept { return per_; }

    bool ends_in_zeros() const noexcept { return per_.size() == 1 && per_[0] == 0; }

    int digit(std::size_t i) const noexcept
    {
        return i < pre_.size() ? pre_[i] : per_[(i - pre_.size()) % per_.size()];
    }

    BinaryWord prefix(std::size_t n) const
    {
        BinaryWord w;
        w.reserve(n);
        for (std::size_t i = 0; i < n; ++i) w.push_back(digit(i));
        return w;
    }

    EventuallyPeriodicSeq shift(std::size_t n) const
    {
        if (n <= pre_.size()) return {pre_.substr(n, pre_.size() - n), per_};
        std::size_t k = (n - pre_.size()) % per_.size();
        return periodic(per_.substr(k, per_.size() - k) + per_.substr(0, k));
    }

    EventuallyPeriodicSeq prepend(const BinaryWord& w) const { return {w + pre_, per_}; }

    std::string str() const
    {
        if (ends_in_zeros() && !pre_.empty()) return pre_.str();
        return pre_.str() + "(" + per_.str() + ")";
    }

    friend bool operator==(const EventuallyPeriodicSeq&, const EventuallyPeriodicSeq&) = default;

    friend std::ostream& operator<<(std::ostream& os, const EventuallyPeriodicSeq& s) { return os << s.str(); }

private:
    void normalize()
    {
        std::size_t m = per_.size();
        for (std::size_t d = 1; d < m; ++d) {
            if (m % d) continue;
            bool power = true;
            for (std::size_t i = d; i < m && power; ++i) power = per_[i] == per_[i - d];
            if (power) {
                per_ = per_.substr(0, d);
                break;
            }
        }
        while (!pre_.empty() && pre_.back() == per_.back()) {
            pre_.pop_back();
            per_ = per_.substr(per_.size() - 1, 1) + per_.substr(0, per_.size() - 1);
        }
    }

    BinaryWord pre_;
    BinaryWord per_;
};

inline Order lex_compare(const EventuallyPeriodicSeq& c, const EventuallyPeriodicSeq& d)
{
    if (c == d) return Order::EQ;
    std::size_t n = c.preperiod().size() + d.preperiod().size() + std::lcm(c.period().size(), d.period().size()) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        int a = c.digit(i), b = d.digit(i);
        if (a != b) return a < b ? Order::LT : Order::GT;
    }
    return Order::EQ;
}

inline bool shift_dominated(const EventuallyPeriodicSeq& c)
{
    std::size_t n = c.preperiod().size() + c.period().size();
    for (std::size_t k = 1; k < n; ++k)
        if (lex_compare(c.shift(k), c) == Order::GT) return false;
    return true;
}

inline std::strong_ordering operator<=>(const EventuallyPeriodicSeq& c, const EventuallyPeriodicSeq& d)
{
    switch (lex_compare(c, d)) {
    case Order::LT: return std::strong_ordering::less;
    case Order::GT: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
    }
}

} // namespace betatau
