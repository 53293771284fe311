#include <betatau/critical.hpp>
#include <betatau/survivor.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace betatau;

namespace {

HighPrecReal R(const char* s) { return HighPrecReal::parse(s); }

// Every suffix of w must be >= the same-length prefix of lo and <= that of hi.
bool admissible(const std::vector<int>& w, const std::vector<int>& lo, const std::vector<int>& hi)
{
    for (std::size_t k = 0; k < w.size(); ++k) {
        int cl = 0, ch = 0;
        for (std::size_t i = k; i < w.size() && (cl == 0 || ch == 0); ++i) {
            if (cl == 0 && w[i] != lo[i - k]) cl = w[i] < lo[i - k] ? -1 : 1;
            if (ch == 0 && w[i] != hi[i - k]) ch = w[i] < hi[i - k] ? -1 : 1;
        }
        if (cl < 0 || ch > 0) return false;
    }
    return true;
}

std::size_t brute_count(const std::vector<int>& lo, const std::vector<int>& hi, std::size_t n)
{
    std::size_t c = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        std::vector<int> w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<int>((x >> (n - 1 - i)) & 1);
        c += admissible(w, lo, hi);
    }
    return c;
}

// Distinct length-n prefixes of admissible words of length n + extra, by pruned DFS.
// Each start position k keeps its comparison state against lo and hi.
std::size_t brute_gamma(const BinaryWord& S, std::size_t n, std::size_t extra)
{
    BinaryWord a = largest_rotation(S);
    std::size_t len = n + extra;
    std::vector<int> lo(len), hi(len);
    for (std::size_t i = 0; i < len; ++i) lo[i] = S[i % S.size()], hi[i] = a[i % a.size()];
    std::set<std::vector<int>> prefixes;
    std::vector<int> w;
    std::vector<std::pair<int, int>> cmp;
    auto dfs = [&](auto&& self) -> void {
        if (w.size() == len) {
            prefixes.insert(std::vector<int>(w.begin(), w.begin() + static_cast<long>(n)));
            return;
        }
        for (int d = 0; d < 2; ++d) {
            auto saved = cmp;
            cmp.emplace_back(0, 0);
            std::size_t i = w.size();
            bool ok = true;
            for (std::size_t k = 0; k <= i && ok; ++k) {
                auto& [cl, ch] = cmp[k];
                if (cl == 0 && d != lo[i - k]) cl = d < lo[i - k] ? -1 : 1;
                if (ch == 0 && d != hi[i - k]) ch = d < hi[i - k] ? -1 : 1;
                ok = cl >= 0 && ch <= 0;
            }
            if (ok) {
                w.push_back(d);
                self(self);
                w.pop_back();
            }
            cmp = std::move(saved);
        }
    };
    dfs(dfs);
    return prefixes.size();
}

} // namespace

TEST(CountAdmissible, MatchesBruteForce)
{
    for (const char* b : {"1.3", "1.61", "1.7", "1.85", "1.99"}) {
        HighPrecReal beta = R(b);
        for (const char* t : {"0", "0.1", "0.25", "0.3"}) {
            HighPrecReal tt = R(t);
            auto q = quasi_greedy(beta, 64);
            std::vector<int> hi(64), lo(64, 0);
            for (std::size_t i = 0; i < 64; ++i) hi[i] = q.digits[i];
            if (!tt.is_zero()) {
                auto g = greedy(tt, beta, 64);
                for (std::size_t i = 0; i < 64; ++i) lo[i] = g.digits[i];
            }
            for (std::size_t n : {1u, 5u, 10u, 14u}) {
                auto p = count_admissible(beta, tt, n, 64);
                EXPECT_EQ(p.count, WideInt(brute_count(lo, hi, n))) << b << " " << t << " " << n;
                EXPECT_EQ(p.count, p.count_lower);
            }
        }
    }
}

TEST(CountAdmissible, FullShiftAtTwo)
{
    auto p = count_admissible(R("2"), R("0"), 40, 128);
    EXPECT_EQ(p.count, WideInt(1) << 40);
    EXPECT_NEAR(p.dim_estimate, 1.0, 1e-9);
}

TEST(CountAdmissible, MonotoneInT)
{
    for (const char* b : {"1.5", "1.7", "1.9"}) {
        WideInt prev = -1;
        for (int k = 0; k <= 10; ++k) {
            HighPrecReal t = R("0.05") * static_cast<long>(k);
            auto c = count_admissible(R(b), t, 24, 128).count;
            if (prev >= 0) EXPECT_LE(c, prev) << b << " k=" << k;
            prev = c;
        }
    }
}

TEST(CountAdmissible, Submultiplicative)
{
    for (const char* b : {"1.3", "1.7", "1.95"}) {
        auto p = count_admissible(R(b), R("0"), 40, 128);
        const auto& c = p.counts_by_length;
        for (std::size_t a = 1; a < 40; a += 3)
            for (std::size_t d = 1; a + d <= 40; d += 5) EXPECT_LE(c[a + d], c[a] * c[d]) << b;
    }
}

TEST(CountAdmissible, ThresholdAtTau)
{
    HighPrecReal beta = R("1.7");
    HighPrecReal t = tau(beta).tau;
    auto below = count_admissible(beta, t * R("0.5"), 40, 256);
    auto above = count_admissible(beta, t * R("1.1"), 40, 256);
    EXPECT_GE(below.dim_lower, 0.1);
    EXPECT_LE(above.dim_upper, 0.05);
    EXPECT_GE(below.dim_estimate, -1e-9);
    EXPECT_LE(below.dim_estimate, 1 + 1e-9);
}

TEST(CountAdmissible, Errors)
{
    EXPECT_THROW(count_admissible(R("1.7"), R("0.1"), 65, 256), domain_error);
    EXPECT_THROW(count_admissible(R("1.7"), R("0.1"), 40, 20), domain_error);
    EXPECT_THROW(count_admissible(R("1.7"), R("1"), 10, 64), domain_error);
    EXPECT_THROW(count_admissible(R("2.5"), R("0.1"), 10, 64), domain_error);
    // at β = 2, 64 bits certify fewer than 64 digits of δ
    EXPECT_THROW(count_admissible(HighPrecReal(2L, 64), HighPrecReal(0.1, 64), 64, 64), precision_error);
}

TEST(Gamma, MatchesBruteForce)
{
    for (const char* s : {"01", "001", "011", "0011", "0001", "00101", "0010111"})
        for (std::size_t n : {4u, 8u, 12u}) {
            BinaryWord S(s);
            // a shorter lookahead already gives the stable count for periodic boundaries
            EXPECT_EQ(gamma_count(S, n), WideInt(brute_gamma(S, n, 2 * S.size() + 2))) << s << " " << n;
        }
}

TEST(Gamma, FareyCounts)
{
    for (std::size_t n : {2u, 10u, 30u, 64u}) EXPECT_EQ(gamma_count("01"_w, n), 2);
    EXPECT_EQ(gamma_count("001"_w, 30), 3);
    EXPECT_EQ(gamma_count("011"_w, 30), 3);
    for (auto& s : farey_words(8)) EXPECT_EQ(gamma_count(s, 48), WideInt(s.size())) << s;
}

TEST(Gamma, NonLambdaWitnessGrows)
{
    EXPECT_GE(gamma_count("0010111"_w, 20), WideInt(1) << 6);
    for (std::size_t n = 12; n <= 60; n += 12)
        EXPECT_GE(gamma_count("0010111"_w, n), WideInt(1) << (n / 3 - 2)) << n;
}

TEST(Gamma, ProductWordGrowsLinearly)
{
    // (10)^k (1100)^∞ lies in Γ(0011) for every k
    WideInt prev = 0;
    for (std::size_t n = 8; n <= 64; n += 8) {
        auto c = gamma_count("0011"_w, n);
        EXPECT_GT(c, prev);
        EXPECT_LE(c, WideInt(4 * n));
        prev = c;
    }
}

TEST(Subshift, BlocksAndCount)
{
    auto b = lower_bound_blocks("01"_w, 3);
    EXPECT_EQ(b.first, "00"_w + BinaryWord("10101010") + "1"_w);
    EXPECT_EQ(b.second, "00"_w + BinaryWord("1010101010") + "1"_w);
    std::size_t L1 = b.first.size(), L2 = b.second.size();
    std::size_t n = L1 * L2;
    EXPECT_GE(lower_bound_subshift("01"_w, 3, n), WideInt(1) << (n / L2));
    EXPECT_THROW(lower_bound_subshift("01"_w, 3, 40 * n), resource_error);
    auto small = lower_bound_blocks("01"_w, 1);
    std::size_t m = small.first.size() * small.second.size();
    EXPECT_GE(lower_bound_subshift("01"_w, 1, m), WideInt(1) << (m / small.second.size()));
    for (const char* s : {"001", "011", "0011"}) {
        auto bl = lower_bound_blocks(BinaryWord(s), 1);
        std::size_t k = 3 * bl.second.size();
        EXPECT_GE(lower_bound_subshift(BinaryWord(s), 1, k), WideInt(1) << 3) << s;
    }
}
