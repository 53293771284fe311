#pragma once

#include <betatau/binary_word.hpp>
#include <betatau/sequence.hpp>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace betatau {

using WideInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

inline constexpr int default_max_farey_level = 20;
inline constexpr std::size_t default_max_lambda_len = 24;
inline constexpr std::size_t max_thue_morse_len = std::size_t{1} << 26;

namespace detail {

inline void require_nonempty(const BinaryWord& w)
{
    if (w.empty()) throw domain_error("empty word has no rotation");
}

// Booth's least-rotation scan; `flip` selects the largest rotation instead.
inline std::size_t extreme_rotation_index(const BinaryWord& w, bool flip)
{
    std::size_t n = w.size();
    auto at = [&](std::size_t i) { return w[i % n] ^ static_cast<int>(flip); };
    std::vector<long> f(2 * n, -1);
    std::size_t k = 0;
    for (std::size_t j = 1; j < 2 * n; ++j) {
        int sj = at(j);
        long i = f[j - k - 1];
        while (i != -1 && sj != at(k + i + 1)) {
            if (sj < at(k + i + 1)) k = j - i - 1;
            i = f[i];
        }
        if (sj != at(k + i + 1)) {
            if (sj < at(k)) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k;
}

inline BinaryWord rotate(const BinaryWord& w, std::size_t k)
{
    return w.substr(k, w.size() - k) + w.substr(0, k);
}

} // namespace detail

inline BinaryWord largest_rotation(const BinaryWord& w)
{
    detail::require_nonempty(w);
    return detail::rotate(w, detail::extreme_rotation_index(w, true));
}

inline BinaryWord smallest_rotation(const BinaryWord& w)
{
    detail::require_nonempty(w);
    return detail::rotate(w, detail::extreme_rotation_index(w, false));
}

inline bool is_lyndon(const BinaryWord& w)
{
    detail::require_nonempty(w);
    // Duval: w is Lyndon iff the scan consumes it whole with period |w|.
    std::size_t n = w.size(), k = 0, j = 1;
    while (j < n && w[k] <= w[j]) {
        k = w[k] < w[j] ? 0 : k + 1;
        ++j;
    }
    return j == n && k == 0;
}

inline BinaryWord reflect(const BinaryWord& w)
{
    BinaryWord r;
    r.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) r.push_back(1 - w[i]);
    return r;
}

inline BinaryWord reversed(const BinaryWord& w)
{
    BinaryWord r;
    r.reserve(w.size());
    for (std::size_t i = w.size(); i-- > 0;) r.push_back(w[i]);
    return r;
}

inline BinaryWord word_minus(BinaryWord w)
{
    if (w.empty() || w.back() != 1) throw domain_error("w- requires a word ending in 1: \"" + w.str() + "\"");
    w.set(w.size() - 1, 0);
    return w;
}

inline BinaryWord word_plus(BinaryWord w)
{
    if (w.empty() || w.back() != 0) throw domain_error("w+ requires a word ending in 0: \"" + w.str() + "\"");
    w.set(w.size() - 1, 1);
    return w;
}

struct FareyLevel {
    int level = 0;
    std::vector<BinaryWord> words;
};

inline FareyLevel farey_level(int n, int max_level = default_max_farey_level)
{
    if (n < 0) throw domain_error("Farey level must be nonnegative");
    if (n > max_level)
        throw resource_error("Farey level " + std::to_string(n) + " exceeds cap " + std::to_string(max_level));
    std::vector<BinaryWord> cur{BinaryWord("0"), BinaryWord("1")};
    for (int k = 0; k < n; ++k) {
        std::vector<BinaryWord> next;
        next.reserve(2 * cur.size() - 1);
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            next.push_back(cur[j]);
            next.push_back(cur[j] + cur[j + 1]);
        }
        next.push_back(cur.back());
        cur = std::move(next);
    }
    return {n, std::move(cur)};
}

// All Farey words of length <= max_len in lexicographic order (Stern-Brocot descent).
inline std::vector<BinaryWord> farey_words(std::size_t max_len, bool include_degenerate = false)
{
    std::vector<BinaryWord> out;
    auto descend = [&](auto&& self, const BinaryWord& a, const BinaryWord& b) -> void {
        if (a.size() + b.size() > max_len) return;
        BinaryWord m = a + b;
        self(self, a, m);
        out.push_back(m);
        self(self, m, b);
    };
    BinaryWord zero("0"), one("1");
    if (include_degenerate && max_len >= 1) out.push_back(zero);
    descend(descend, zero, one);
    if (include_degenerate && max_len >= 1) out.push_back(one);
    return out;
}

struct FareyForm {
    bool farey = false;
    int form = 0;  // 1..4 for (i)..(iv); 0 for the degenerate words and non-Farey input
    std::size_t p = 0;
    BinaryWord inner;  // forms (iii)/(iv) only
};

namespace detail {

// Split w into maximal runs "lead·other^k" starting at each occurrence of `lead`.
inline std::optional<std::vector<std::size_t>> run_lengths(const BinaryWord& w, int lead)
{
    std::vector<std::size_t> ks;
    std::size_t i = 0, n = w.size();
    if (lead == 0) {
        // blocks 0 1^k
        while (i < n) {
            if (w[i] != 0) return std::nullopt;
            ++i;
            std::size_t k = 0;
            while (i < n && w[i] == 1) ++i, ++k;
            ks.push_back(k);
        }
    } else {
        // blocks 0^k 1
        while (i < n) {
            std::size_t k = 0;
            while (i < n && w[i] == 0) ++i, ++k;
            if (i == n) return std::nullopt;
            ++i;
            ks.push_back(k);
        }
    }
    return ks;
}

} // namespace detail

inline FareyForm is_farey(const BinaryWord& w)
{
    detail::require_nonempty(w);
    FareyForm res;
    if (w.size() == 1) {
        res.farey = true;
        return res;
    }
    if (w.front() != 0 || w.back() != 1) return res;

    if (w[1] == 1) {
        // (i) 01^p or (iii) 01^p 01^{p+t1} ... 01^{p+1}
        auto ks = detail::run_lengths(w, 0);
        if (!ks) return res;
        if (ks->size() == 1) return {true, 1, (*ks)[0], {}};
        std::size_t p = ks->front();
        if (p < 1 || ks->back() != p + 1) return res;
        BinaryWord inner("0");
        for (std::size_t j = 1; j + 1 < ks->size(); ++j) {
            if ((*ks)[j] != p && (*ks)[j] != p + 1) return res;
            inner.push_back(static_cast<int>((*ks)[j] - p));
        }
        inner.push_back(1);
        if (!is_farey(inner).farey) return res;
        return {true, 3, p, inner};
    }

    // (ii) 0^p 1 or (iv) 0^{p+1} 1 0^{p+t1} 1 ... 0^p 1
    auto ks = detail::run_lengths(w, 1);
    if (!ks) return res;
    if (ks->size() == 1) return {true, 2, (*ks)[0], {}};
    std::size_t p = ks->back();
    if (p < 1 || ks->front() != p + 1) return res;
    BinaryWord inner("0");
    for (std::size_t j = 1; j + 1 < ks->size(); ++j) {
        if ((*ks)[j] != p && (*ks)[j] != p + 1) return res;
        inner.push_back(static_cast<int>((*ks)[j] - p));
    }
    inner.push_back(1);
    if (!is_farey(inner).farey) return res;
    return {true, 4, p, inner};
}

inline bool is_nondegenerate_farey(const BinaryWord& w) { return w.size() >= 2 && is_farey(w).farey; }

inline Rational farey_frequency(const BinaryWord& s)
{
    if (s.empty() || !is_farey(s).farey) throw domain_error("not a Farey word: \"" + s.str() + "\"");
    return Rational(static_cast<std::int64_t>(s.count(1)), static_cast<std::int64_t>(s.size()));
}

// The four vertex labels of the substitution digraph for s.
struct SubstitutionBlocks {
    BinaryWord s, s_minus, a, a_plus;

    explicit SubstitutionBlocks(const BinaryWord& w) : s(w)
    {
        if (w.size() < 2 || !is_lyndon(w))
            throw domain_error("substitution requires a Lyndon word of length >= 2: \"" + w.str() + "\"");
        s_minus = word_minus(w);
        a = largest_rotation(w);
        a_plus = word_plus(a);
    }

    // Block emitted for digit `cur` following digit `prev`.
    const BinaryWord& block(int prev, int cur) const
    {
        if (prev == 0) return cur == 0 ? a : a_plus;
        return cur == 0 ? s_minus : s;
    }

    // Inverse labelling: blocks A+, s decode to 1; s-, A decode to 0.
    std::optional<int> decode(const BinaryWord& b) const
    {
        if (b == a_plus || b == s) return 1;
        if (b == s_minus || b == a) return 0;
        return std::nullopt;
    }
};

namespace detail {

inline void emit(const SubstitutionBlocks& sb, const BinaryWord& r, int prev, BinaryWord& out)
{
    for (std::size_t i = 0; i < r.size(); ++i) {
        out.append(sb.block(prev, r[i]));
        prev = r[i];
    }
}

} // namespace detail

inline BinaryWord substitute(const SubstitutionBlocks& sb, const BinaryWord& r)
{
    if (r.empty()) throw domain_error("substitution needs a nonempty word");
    BinaryWord out;
    out.reserve(sb.s.size() * r.size());
    detail::emit(sb, r, 1 - r[0], out);
    return out;
}

inline EventuallyPeriodicSeq substitute(const SubstitutionBlocks& sb, const EventuallyPeriodicSeq& r)
{
    const auto& u = r.preperiod();
    const auto& v = r.period();
    BinaryWord head = substitute(sb, u + v);
    BinaryWord tail;
    tail.reserve(sb.s.size() * v.size());
    detail::emit(sb, v, v.back(), tail);
    return {std::move(head), std::move(tail)};
}

inline BinaryWord substitute(const BinaryWord& s, const BinaryWord& r) { return substitute(SubstitutionBlocks(s), r); }

inline EventuallyPeriodicSeq substitute(const BinaryWord& s, const EventuallyPeriodicSeq& r)
{
    return substitute(SubstitutionBlocks(s), r);
}

// Inverse of substitute on a block-aligned word; nullopt when some block is foreign
// or the blocks are not a valid path of the digraph.
inline std::optional<BinaryWord> desubstitute(const SubstitutionBlocks& sb, const BinaryWord& w)
{
    std::size_t m = sb.s.size();
    if (w.empty() || w.size() % m) return std::nullopt;
    BinaryWord r;
    int prev = -1;
    for (std::size_t j = 0; j < w.size() / m; ++j) {
        BinaryWord b = w.substr(j * m, m);
        auto d = sb.decode(b);
        if (!d) return std::nullopt;
        int p = prev < 0 ? 1 - *d : prev;
        if (sb.block(p, *d) != b) return std::nullopt;
        r.push_back(*d);
        prev = *d;
    }
    return r;
}

inline std::optional<EventuallyPeriodicSeq> desubstitute(const SubstitutionBlocks& sb, const EventuallyPeriodicSeq& c)
{
    std::size_t m = sb.s.size();
    std::size_t pre = (c.preperiod().size() + m - 1) / m * m;
    std::size_t per = std::lcm(c.period().size(), m);
    BinaryWord all = c.prefix(pre + 2 * per);
    auto r = desubstitute(sb, all);
    if (!r) return std::nullopt;
    std::size_t hp = pre / m, hq = per / m;
    EventuallyPeriodicSeq out(r->substr(0, hp), r->substr(hp, hq));
    if (substitute(sb, out) != c) return std::nullopt;
    return out;
}

struct LambdaWord {
    BinaryWord product;
    std::vector<BinaryWord> factors;

    friend bool operator==(const LambdaWord&, const LambdaWord&) = default;
};

inline LambdaWord lambda_product(const std::vector<BinaryWord>& factors)
{
    if (factors.empty()) throw domain_error("a Lambda product needs at least one factor");
    for (const auto& f : factors)
        if (!is_nondegenerate_farey(f)) throw domain_error("factor \"" + f.str() + "\" is not a non-degenerate Farey word");
    BinaryWord p = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) p = substitute(p, factors[i]);
    return {std::move(p), factors};
}

inline LambdaWord lambda_product(std::initializer_list<const char*> factors)
{
    std::vector<BinaryWord> fs;
    for (const char* f : factors) fs.emplace_back(f);
    return lambda_product(fs);
}

inline BinaryWord conjugate(const BinaryWord& s)
{
    detail::require_nonempty(s);
    return reflect(largest_rotation(s));
}

inline LambdaWord conjugate(const LambdaWord& S)
{
    std::vector<BinaryWord> fs;
    for (const auto& f : S.factors) fs.push_back(conjugate(f));
    return lambda_product(fs);
}

inline BinaryWord thue_morse_prefix(std::size_t n)
{
    if (n > max_thue_morse_len) throw resource_error("Thue-Morse prefix length exceeds cap");
    BinaryWord w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) w.push_back(std::popcount(i) & 1);
    return w;
}

inline int thue_morse(std::size_t i) { return std::popcount(i) & 1; }

inline WideInt count_ordered_factorizations(std::uint64_t m)
{
    if (m < 1 || m > 1000000) throw domain_error("m must lie in [1, 10^6]");
    std::unordered_map<std::uint64_t, WideInt> memo;
    auto f = [&](auto&& self, std::uint64_t k) -> WideInt {
        if (k == 1) return 1;
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        WideInt total = 0;
        for (std::uint64_t d = 2; d * d <= k; ++d) {
            if (k % d) continue;
            total += self(self, k / d);
            if (d * d != k) total += self(self, d);
        }
        total += 1;  // d = k
        memo.emplace(k, total);
        return total;
    };
    return f(f, m);
}

// f_1..f_M by sieve; index 0 unused.
inline std::vector<WideInt> ordered_factorization_table(std::size_t M)
{
    std::vector<WideInt> f(M + 1, 0);
    if (M >= 1) f[1] = 1;
    for (std::size_t e = 1; e <= M; ++e)
        for (std::size_t n = 2 * e; n <= M; n += e) f[n] += f[e];
    return f;
}

inline std::vector<LambdaWord> lambda_enumerate(std::size_t max_len, std::size_t cap = default_max_lambda_len,
                                                std::vector<std::pair<LambdaWord, LambdaWord>>* duplicates = nullptr)
{
    if (max_len < 1) throw domain_error("max_len must be positive");
    if (max_len > cap)
        throw resource_error("lambda_enumerate length " + std::to_string(max_len) + " exceeds cap " + std::to_string(cap));
    auto farey = farey_words(max_len);
    std::stable_sort(farey.begin(), farey.end(),
                     [](const BinaryWord& a, const BinaryWord& b) { return a.size() < b.size(); });

    std::map<std::pair<std::size_t, BinaryWord>, LambdaWord> found;
    std::vector<BinaryWord> chain;
    auto extend = [&](auto&& self, const BinaryWord& prod) -> void {
        for (const auto& f : farey) {
            std::size_t len = prod.empty() ? f.size() : prod.size() * f.size();
            if (len > max_len) break;
            BinaryWord next = prod.empty() ? f : substitute(prod, f);
            chain.push_back(f);
            LambdaWord lw{next, chain};
            auto key = std::make_pair(next.size(), next);
            auto [it, fresh] = found.emplace(key, lw);
            if (!fresh && duplicates) duplicates->emplace_back(it->second, lw);
            self(self, next);
            chain.pop_back();
        }
    };
    extend(extend, BinaryWord{});

    std::vector<LambdaWord> out;
    out.reserve(found.size());
    for (auto& [k, v] : found) out.push_back(std::move(v));
    return out;
}

} // namespace betatau
