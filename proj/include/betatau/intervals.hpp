#pragma once

#include <betatau/expansions.hpp>
#include <betatau/parallel.hpp>
#include <betatau/words.hpp>

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace betatau {

// δ(β_ℓ^S) = L(S)^∞
inline EventuallyPeriodicSeq left_sequence(const BinaryWord& S)
{
    return EventuallyPeriodicSeq::periodic(largest_rotation(S));
}

// δ(β_*^S) = L(S)^+ S^- L(S)^∞
inline EventuallyPeriodicSeq star_sequence(const BinaryWord& S)
{
    BinaryWord a = largest_rotation(S);
    return {word_plus(a) + word_minus(S), a};
}

// δ(β_r^S) = L(S)^+ S^∞
inline EventuallyPeriodicSeq right_sequence(const BinaryWord& S)
{
    return {word_plus(largest_rotation(S)), S};
}

struct IntervalRecord {
    LambdaWord word;
    Base beta_left, beta_star, beta_right;
    std::array<HighPrecReal, 3> residuals;
};

inline IntervalRecord lyndon_interval(const LambdaWord& S, mpfr_prec_t prec = default_precision)
{
    if (!(lambda_product(S.factors).product == S.product))
        throw domain_error("word \"" + S.product.str() + "\" does not match its factorization");
    HighPrecReal one(1L, prec);
    std::array<EventuallyPeriodicSeq, 3> seqs{left_sequence(S.product), star_sequence(S.product),
                                             right_sequence(S.product)};
    std::array<SolveResult, 3> sol{solve_base_checked(seqs[0], one), solve_base_checked(seqs[1], one),
                                  solve_base_checked(seqs[2], one)};
    return {S,
            {sol[0].beta, seqs[0]},
            {sol[1].beta, seqs[1]},
            {sol[2].beta, seqs[2]},
            {sol[0].residual, sol[1].residual, sol[2].residual}};
}

inline IntervalRecord lyndon_interval(const BinaryWord& farey, mpfr_prec_t prec = default_precision)
{
    return lyndon_interval(lambda_product({farey}), prec);
}

inline std::vector<IntervalRecord> interval_table(std::size_t max_len, mpfr_prec_t prec = default_precision)
{
    auto words = lambda_enumerate(max_len);
    std::vector<std::optional<IntervalRecord>> slots(words.size());
    parallel_for(words.size(), [&](std::size_t i) { slots[i] = lyndon_interval(words[i], prec); });
    std::vector<IntervalRecord> out;
    out.reserve(slots.size());
    for (auto& r : slots) out.push_back(std::move(*r));
    std::sort(out.begin(), out.end(),
              [](const IntervalRecord& a, const IntervalRecord& b) { return a.beta_left.value < b.beta_left.value; });
    return out;
}

struct RenormResult {
    std::optional<Base> exact;
    BinaryWord digits;  // prefix of Φ_S(δ(β̂)) when only numeric digits are known
    HighPrecReal lo, hi;
};

// Ψ_S(β̂) = δ^{-1}(Φ_S(δ(β̂))).
inline RenormResult renormalize(const LambdaWord& S, const Base& beta_hat, std::size_t n = 0)
{
    mpfr_prec_t prec = beta_hat.precision();
    SubstitutionBlocks sb(S.product);
    if (beta_hat.delta) {
        auto img = substitute(sb, *beta_hat.delta);
        Base b{solve_base(img, prec), img};
        return {b, {}, b.value, b.value};
    }
    if (n == 0) n = default_digit_budget(beta_hat.value);
    auto d = quasi_greedy(beta_hat.value, n);
    if (d.reliable == 0) throw precision_error("no reliable digits of delta(beta_hat)");
    BinaryWord pre = d.digits.substr(0, d.reliable);
    BinaryWord img = substitute(sb, pre);
    // δ(β̂) lies between pre·0^∞ and pre·1^∞, and Φ_S is increasing.
    auto lo_seq = substitute(sb, EventuallyPeriodicSeq(pre, BinaryWord("0")));
    auto hi_seq = substitute(sb, EventuallyPeriodicSeq(pre, BinaryWord("1")));
    return {std::nullopt, img, solve_base(lo_seq, prec), solve_base(hi_seq, prec)};
}

enum class Regime { BifurcationE, BasicInterval, RelativeBifurcation, InfiniteChain, Unresolved };

inline const char* to_string(Regime k)
{
    switch (k) {
    case Regime::BifurcationE: return "BifurcationE";
    case Regime::BasicInterval: return "BasicInterval";
    case Regime::RelativeBifurcation: return "RelativeBifurcation";
    case Regime::InfiniteChain: return "InfiniteChain";
    case Regime::Unresolved: return "Unresolved";
    }
    return "?";
}

struct ClassificationResult {
    Regime kind = Regime::Unresolved;
    std::vector<BinaryWord> chain;
    std::optional<LambdaWord> terminal_word;
    int depth_reached = 0;
    bool precision_flag = false;
    // word whose interval comparison could not be decided (Unresolved only)
    std::optional<BinaryWord> pending;
};

struct ClassifyOptions {
    int max_depth = 8;
    std::size_t max_factor_len = 16;
    std::size_t max_product_len = std::size_t{1} << 14;
    std::size_t digits = 0;  // numeric δ digits; 0 picks a budget from the precision
};

namespace detail {

struct ChildSearch {
    enum { Found, None, Undecided } status;
    BinaryWord factor, product;
};

// Stern-Brocot descent over Farey r for the interval J^{S•r} containing δ;
// children are ordered like r, so each comparison halves the search.
inline ChildSearch find_child(const DeltaView& d, const std::optional<SubstitutionBlocks>& parent,
                              const ClassifyOptions& opt)
{
    BinaryWord a("0"), b("1");
    for (;;) {
        BinaryWord r = a + b;
        if (r.size() > opt.max_factor_len) return {ChildSearch::None, {}, {}};
        if (parent && parent->s.size() * r.size() > opt.max_product_len) return {ChildSearch::None, {}, {}};
        BinaryWord w = parent ? substitute(*parent, r) : r;
        Cmp lc = d.compare(left_sequence(w));
        if (lc == Cmp::Undecided) return {ChildSearch::Undecided, r, w};
        if (lc == Cmp::LT) {
            b = r;
            continue;
        }
        Cmp rc = d.compare(right_sequence(w));
        if (rc == Cmp::Undecided) return {ChildSearch::Undecided, r, w};
        if (rc == Cmp::GT) {
            a = r;
            continue;
        }
        return {ChildSearch::Found, r, w};
    }
}

} // namespace detail

inline ClassificationResult classify(const DeltaView& d, const ClassifyOptions& opt = {})
{
    if (opt.max_depth < 1) throw domain_error("max_depth must be at least 1");
    ClassificationResult res;
    std::optional<SubstitutionBlocks> parent;
    auto finish = [&](Regime k) {
        res.kind = k;
        if (parent) res.terminal_word = LambdaWord{parent->s, res.chain};
        if (k == Regime::Unresolved) res.precision_flag = true;
        return res;
    };
    for (int depth = 1;; ++depth) {
        auto found = detail::find_child(d, parent, opt);
        if (found.status == detail::ChildSearch::Undecided) {
            res.pending = found.product;
            return finish(Regime::Unresolved);
        }
        if (found.status == detail::ChildSearch::None)
            return finish(parent ? Regime::RelativeBifurcation : Regime::BifurcationE);
        res.chain.push_back(found.factor);
        res.depth_reached = depth;
        parent.emplace(found.product);
        Cmp sc = d.compare(star_sequence(found.product));
        if (sc == Cmp::Undecided) {
            res.pending = found.product;
            return finish(Regime::Unresolved);
        }
        if (sc != Cmp::GT) return finish(Regime::BasicInterval);
        if (depth == opt.max_depth) return finish(Regime::InfiniteChain);
    }
}

inline ClassificationResult classify(const Base& beta, const ClassifyOptions& opt = {})
{
    detail::check_beta(beta.value);
    std::size_t n = opt.digits ? opt.digits : default_digit_budget(beta.value);
    return classify(DeltaView::of(beta, n), opt);
}

inline ClassificationResult classify(const HighPrecReal& beta, int max_depth = 8, std::size_t max_factor_len = 16)
{
    ClassifyOptions opt;
    opt.max_depth = max_depth;
    opt.max_factor_len = max_factor_len;
    return classify(Base::numeric(beta), opt);
}

} // namespace betatau
