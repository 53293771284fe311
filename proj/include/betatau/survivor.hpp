#pragma once

#include <betatau/expansions.hpp>
#include <betatau/words.hpp>

#include <cmath>
#include <map>
#include <tuple>
#include <unordered_set>
#include <vector>

namespace betatau {

// Tracks, for a boundary sequence b, the suffixes of the word read so far
// that still equal a prefix of b. The active set is the border chain of the
// longest one, so the longest match length is a complete state.
class BoundaryMatcher {
public:
    // lower: suffixes must stay >= b; upper: suffixes must stay <= b.
    // Matches reaching `limit` digits can no longer be compared.
    BoundaryMatcher(std::vector<int> digits, std::size_t limit, bool lower)
        : b_(std::move(digits)), limit_(std::min(limit, b_.size())), lower_(lower), fail_(limit_ + 1, 0)
    {
        for (std::size_t q = 2; q <= limit_; ++q) {
            std::size_t k = fail_[q - 1];
            while (k > 0 && b_[k] != b_[q - 1]) k = fail_[k];
            if (b_[k] == b_[q - 1]) ++k;
            fail_[q] = k;
        }
        table_.resize(2 * (limit_ + 1));
        for (std::size_t i = 0; i <= limit_; ++i)
            for (int a = 0; a < 2; ++a) table_[2 * i + a] = compute(i, a);
    }

    struct Step {
        int next = 0;
        bool reject = false;
        bool undecided = false;
    };

    const Step& step(std::size_t i, int a) const { return table_[2 * i + a]; }

private:
    Step compute(std::size_t i, int a) const
    {
        Step s;
        bool have = false;
        for (std::size_t l = i;; l = fail_[l]) {
            if (l == limit_) {
                s.undecided = true;
            } else {
                int d = b_[l];
                if (a != d) {
                    if ((lower_ && a < d) || (!lower_ && a > d)) {
                        s.reject = true;
                        return s;
                    }
                } else if (!have) {
                    s.next = static_cast<int>(l + 1);
                    have = true;
                }
            }
            if (l == 0) break;
        }
        return s;
    }

    std::vector<int> b_;
    std::size_t limit_;
    bool lower_;
    std::vector<std::size_t> fail_;
    std::vector<Step> table_;
};

namespace detail {

struct PairState {
    int lo, hi;
    bool undecided;
    auto operator<=>(const PairState&) const = default;
};

// Counts of length-k words, k = 0..n, avoiding both boundary violations.
// Index 0 of each pair: all words; index 1: words with no undecided comparison.
inline std::vector<std::pair<WideInt, WideInt>> count_words(const BoundaryMatcher& lo, const BoundaryMatcher& hi,
                                                            std::size_t n,
                                                            std::map<PairState, WideInt>* final_states = nullptr)
{
    std::map<PairState, WideInt> cur{{PairState{0, 0, false}, WideInt(1)}};
    std::vector<std::pair<WideInt, WideInt>> out{{1, 1}};
    for (std::size_t k = 1; k <= n; ++k) {
        std::map<PairState, WideInt> next;
        for (const auto& [st, c] : cur) {
            for (int a = 0; a < 2; ++a) {
                const auto& sl = lo.step(st.lo, a);
                if (sl.reject) continue;
                const auto& sh = hi.step(st.hi, a);
                if (sh.reject) continue;
                next[PairState{sl.next, sh.next, st.undecided || sl.undecided || sh.undecided}] += c;
            }
        }
        cur = std::move(next);
        WideInt all = 0, sure = 0;
        for (const auto& [st, c] : cur) {
            all += c;
            if (!st.undecided) sure += c;
        }
        out.emplace_back(all, sure);
    }
    if (final_states) *final_states = std::move(cur);
    return out;
}

inline double log_count(const WideInt& c) { return std::log(c.convert_to<double>()); }

// Growth of log c_k between k = n/2 and n; zero when the set of words is empty.
inline double growth_entropy(const WideInt& c_half, const WideInt& c_n, std::size_t half, std::size_t n)
{
    if (c_n <= 0 || c_half <= 0 || n == half) return 0.0;
    return (log_count(c_n) - log_count(c_half)) / static_cast<double>(n - half);
}

} // namespace detail

struct CountProfile {
    HighPrecReal beta, t;
    std::size_t n = 0;
    std::size_t digits_used = 0;
    WideInt count;        // upper count: undecided comparisons admitted
    WideInt count_lower;  // undecided comparisons excluded
    std::vector<WideInt> counts_by_length;
    double entropy_naive = 0;     // log(count)/n
    double entropy_estimate = 0;  // (log c_n - log c_{n/2}) / (n - n/2)
    double dim_estimate = 0;      // entropy_estimate / log β
    double dim_lower = 0, dim_upper = 0;
};

inline CountProfile count_admissible(const Base& beta, const HighPrecReal& t, std::size_t n, std::size_t N)
{
    detail::check_beta(beta.value);
    if (t.sign() < 0 || t >= 1L) throw domain_error("t must lie in [0, 1)");
    if (n < 1 || n > 64) throw domain_error("n must lie in [1, 64]");
    if (N < n) throw domain_error("N must be at least n");

    DeltaView d = DeltaView::of(beta, N);
    std::size_t n_hi = d.exact ? N : std::min(N, d.numeric.reliable);
    std::vector<int> hi_digits(N);
    for (std::size_t i = 0; i < N; ++i) hi_digits[i] = d.digit(i);

    std::size_t n_lo = N;
    std::vector<int> lo_digits(N, 0);
    if (!t.is_zero()) {
        auto g = greedy(t, beta.value, N);
        n_lo = std::min(N, g.reliable);
        for (std::size_t i = 0; i < N; ++i) lo_digits[i] = g.digits[i];
    }
    std::size_t used = std::min(n_lo, n_hi);
    if (used < n)
        throw precision_error("expansion digits unreliable beyond index " + std::to_string(used) +
                              "; raise the precision or pass an exact base");

    BoundaryMatcher lo(lo_digits, n_lo, true), hi(hi_digits, n_hi, false);
    auto counts = detail::count_words(lo, hi, n);

    CountProfile p{beta.value, t, n, used, counts[n].first, counts[n].second, {}, 0, 0, 0, 0, 0};
    for (auto& c : counts) p.counts_by_length.push_back(c.first);
    double lb = std::log(beta.value.to_double());
    std::size_t half = n / 2;
    if (p.count > 0) p.entropy_naive = detail::log_count(p.count) / static_cast<double>(n);
    double up = detail::growth_entropy(counts[half].first, counts[n].first, half, n);
    double low = detail::growth_entropy(counts[half].second, counts[n].second, half, n);
    p.entropy_estimate = up;
    p.dim_estimate = up / lb;
    p.dim_lower = std::min(up, low) / lb;
    p.dim_upper = std::max(up, low) / lb;
    return p;
}

inline CountProfile count_admissible(const HighPrecReal& beta, const HighPrecReal& t, std::size_t n, std::size_t N)
{
    return count_admissible(Base::numeric(beta), t, n, N);
}

// Length-n words of Γ(S) = {x : S^∞ ≼ σ^k(x) ≼ L(S)^∞ ∀k}. A word counts when it
// extends by 4|S|+8 further digits, which is exact here because both
// boundaries are periodic with period |S|.
inline WideInt gamma_count(const BinaryWord& S, std::size_t n)
{
    if (S.empty() || S.size() > 12) throw domain_error("gamma_count needs 1 <= |S| <= 12");
    if (n < 1 || n > 64) throw domain_error("n must lie in [1, 64]");
    std::size_t look = 4 * S.size() + 8;
    std::size_t len = n + look + 1;
    BinaryWord a = largest_rotation(S);
    std::vector<int> lo_d(len), hi_d(len);
    for (std::size_t i = 0; i < len; ++i) lo_d[i] = S[i % S.size()], hi_d[i] = a[i % a.size()];
    BoundaryMatcher lo(lo_d, len, true), hi(hi_d, len, false);

    std::map<detail::PairState, WideInt> states;
    detail::count_words(lo, hi, n, &states);

    std::map<std::pair<detail::PairState, std::size_t>, bool> memo;
    auto live = [&](auto&& self, const detail::PairState& st, std::size_t steps) -> bool {
        if (steps == 0) return true;
        auto key = std::make_pair(st, steps);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool ok = false;
        for (int x = 0; x < 2 && !ok; ++x) {
            const auto& sl = lo.step(st.lo, x);
            const auto& sh = hi.step(st.hi, x);
            if (sl.reject || sh.reject) continue;
            ok = self(self, detail::PairState{sl.next, sh.next, false}, steps - 1);
        }
        memo[key] = ok;
        return ok;
    };
    WideInt total = 0;
    for (const auto& [st, c] : states)
        if (live(live, st, look)) total += c;
    return total;
}

struct SubshiftBlocks {
    BinaryWord first, second;  // S⁻ A^{N+1} A_1…A_j and S⁻ A^{N+2} A_1…A_j
};

inline SubshiftBlocks lower_bound_blocks(const BinaryWord& S, std::size_t N)
{
    if (N < 1) throw domain_error("N must be at least 1");
    BinaryWord a = largest_rotation(S);
    std::size_t m = S.size(), j = 0;
    // S = A_{j+1} … A_m A_1 … A_j
    for (; j < m; ++j)
        if (a.substr(j, m - j) + a.substr(0, j) == S) break;
    if (j == m) throw domain_error("S is not a rotation of L(S)");
    BinaryWord tail = a.substr(0, j);
    BinaryWord b1 = word_minus(S);
    for (std::size_t k = 0; k < N + 1; ++k) b1.append(a);
    BinaryWord b2 = b1 + a;
    return {b1 + tail, b2 + tail};
}

// Number of distinct length-n factors of {B1, B2}^ℕ.
inline WideInt lower_bound_subshift(const BinaryWord& S, std::size_t N, std::size_t n)
{
    auto blocks = lower_bound_blocks(S, N);
    const BinaryWord* bs[2] = {&blocks.first, &blocks.second};
    double paths = std::pow(2.0, static_cast<double>(n) / static_cast<double>(blocks.first.size()) + 2) *
                   static_cast<double>(blocks.second.size());
    if (paths > 2e7) throw resource_error("lower_bound_subshift enumeration too large; reduce n");
    std::unordered_set<BinaryWord> seen;
    auto grow = [&](auto&& self, BinaryWord w) -> void {
        if (w.size() >= n) {
            seen.insert(w.substr(0, n));
            return;
        }
        for (auto* b : bs) self(self, w + *b);
    };
    for (auto* b : bs)
        for (std::size_t off = 0; off < b->size(); ++off) grow(grow, b->substr(off, b->size() - off));
    return WideInt(seen.size());
}

} // namespace betatau
