#pragma once

#include <betatau/intervals.hpp>

#include <algorithm>
#include <set>
#include <optional>
#include <string>
#include <vector>

namespace betatau {

struct TauResult {
    Base beta;
    HighPrecReal tau, tau_lo, tau_hi, error_bound;
    ClassificationResult regime;
    std::optional<EventuallyPeriodicSeq> witness;
    BinaryWord witness_digits;  // truncated β-expansion of τ when no exact witness exists

    // Truncated witnesses print their first 48 digits.
    std::string witness_str() const
    {
        if (witness) return witness->str();
        return witness_digits.substr(0, std::min<std::size_t>(48, witness_digits.size())).str() + "...";
    }
};

namespace detail {

inline HighPrecReal exact_slack(mpfr_prec_t prec) { return exp2i(-static_cast<long>(prec) + 8, prec); }

// Values of τ that can occur for β in or next to J^W.
inline std::pair<HighPrecReal, HighPrecReal> word_bracket(const BinaryWord& W, const HighPrecReal& beta)
{
    BinaryWord a = largest_rotation(W);
    BinaryWord wm = word_minus(W);
    HighPrecReal v[4] = {seq_value({wm, a}, beta), word_value(W, beta),
                         seq_value(EventuallyPeriodicSeq::periodic(W), beta),
                         seq_value({wm + word_plus(a), W}, beta)};
    HighPrecReal lo = v[0], hi = v[0];
    for (auto& x : v) lo = min(lo, x), hi = max(hi, x);
    return {lo, hi};
}

inline void set_point(TauResult& r, HighPrecReal tau)
{
    r.error_bound = exact_slack(tau.precision());
    r.tau_lo = tau - r.error_bound;
    r.tau_hi = tau + r.error_bound;
    r.tau = std::move(tau);
}

inline void set_bracket(TauResult& r, HighPrecReal tau, HighPrecReal lo, HighPrecReal hi)
{
    HighPrecReal slack = exact_slack(tau.precision());
    r.tau_lo = lo - slack;
    r.tau_hi = hi + slack;
    r.tau = std::move(tau);
    r.error_bound = max(r.tau - r.tau_lo, r.tau_hi - r.tau);
}

inline void chain_bracket(TauResult& r, const BinaryWord& S)
{
    const HighPrecReal& beta = r.beta.value;
    BinaryWord a = largest_rotation(S);
    HighPrecReal point = word_value(S, beta);
    HighPrecReal lo = seq_value({word_minus(S), a}, beta);
    HighPrecReal hi = max(point, seq_value({word_minus(S) + word_plus(a), S}, beta));
    r.witness = EventuallyPeriodicSeq::finite(S);
    set_bracket(r, point, lo, hi);
}

// τ on E^S: (Φ_S(0 δ̂_2 δ̂_3 …))_β where δ̂ is δ(β) read back through the blocks of S.
inline void relative_tau(TauResult& r, const DeltaView& d, const BinaryWord& S)
{
    const HighPrecReal& beta = r.beta.value;
    SubstitutionBlocks sb(S);
    if (d.exact) {
        if (auto hat = desubstitute(sb, *d.exact)) {
            auto w = substitute(sb, hat->shift(1).prepend(BinaryWord("0")));
            r.witness = w;
            set_point(r, seq_value(w, beta));
            return;
        }
    }
    std::size_t m = S.size();
    std::size_t avail = d.exact ? 4 * default_digit_budget(beta) : d.numeric.reliable;
    BinaryWord hat;
    int prev = -1;
    for (std::size_t j = 0; (j + 1) * m <= avail; ++j) {
        BinaryWord blk;
        for (std::size_t i = 0; i < m; ++i) blk.push_back(d.digit(j * m + i));
        auto dig = sb.decode(blk);
        if (!dig || sb.block(prev < 0 ? 1 - *dig : prev, *dig) != blk) break;
        hat.push_back(*dig);
        prev = *dig;
    }
    if (hat.empty()) {
        chain_bracket(r, S);
        return;
    }
    BinaryWord u("0");
    for (std::size_t i = 1; i < hat.size(); ++i) u.push_back(hat[i]);
    r.witness_digits = substitute(sb, u);
    HighPrecReal lo = word_value(r.witness_digits, beta);
    HighPrecReal tail = pow(beta, -static_cast<long>(r.witness_digits.size())) / (beta - 1L);
    set_bracket(r, lo, lo, lo + tail);
}

} // namespace detail

inline TauResult tau(const Base& beta, const ClassifyOptions& opt = {})
{
    detail::check_beta(beta.value);
    std::size_t n = opt.digits ? opt.digits : default_digit_budget(beta.value);
    DeltaView d = DeltaView::of(beta, n);
    TauResult r{beta, HighPrecReal(beta.precision()), HighPrecReal(beta.precision()), HighPrecReal(beta.precision()),
                HighPrecReal(beta.precision()), classify(d, opt), std::nullopt, {}};
    const HighPrecReal& b = beta.value;
    switch (r.regime.kind) {
    case Regime::BasicInterval: {
        const BinaryWord& S = r.regime.terminal_word->product;
        r.witness = EventuallyPeriodicSeq(word_minus(S), largest_rotation(S));
        detail::set_point(r, seq_value(*r.witness, b));
        break;
    }
    case Regime::BifurcationE: {
        if (d.exact) {
            r.witness = d.exact->shift(1).prepend(BinaryWord("0"));
        } else {
            r.witness_digits.push_back(0);
            for (std::size_t i = 1; i < d.numeric.reliable; ++i) r.witness_digits.push_back(d.numeric.digits[i]);
        }
        detail::set_point(r, 1L - 1L / b);
        break;
    }
    case Regime::RelativeBifurcation:
        detail::relative_tau(r, d, r.regime.terminal_word->product);
        break;
    case Regime::InfiniteChain:
        detail::chain_bracket(r, r.regime.terminal_word->product);
        break;
    case Regime::Unresolved: {
        auto [lo, hi] = detail::word_bracket(*r.regime.pending, b);
        detail::set_bracket(r, (lo + hi) / 2L, lo, hi);
        break;
    }
    }
    return r;
}

inline TauResult tau(const HighPrecReal& beta, int max_depth = 8, std::size_t max_factor_len = 16)
{
    ClassifyOptions opt;
    opt.max_depth = max_depth;
    opt.max_factor_len = max_factor_len;
    return tau(Base::numeric(beta), opt);
}

inline HighPrecReal tau_basic(const LambdaWord& S, const HighPrecReal& beta)
{
    auto rec = lyndon_interval(S, beta.precision());
    HighPrecReal tol = near_tie_tolerance(beta.precision());
    if (beta < rec.beta_left.value - tol || beta > rec.beta_star.value + tol)
        throw domain_error("beta outside the basic interval of \"" + S.product.str() + "\"");
    return seq_value({word_minus(S.product), largest_rotation(S.product)}, beta);
}

struct JumpRecord {
    Base beta_right;
    HighPrecReal tau_at, right_limit;
};

inline JumpRecord tau_jump(const LambdaWord& S, mpfr_prec_t prec = default_precision)
{
    if (!(lambda_product(S.factors).product == S.product))
        throw domain_error("word \"" + S.product.str() + "\" does not match its factorization");
    auto seq = right_sequence(S.product);
    Base br{solve_base(seq, prec), seq};
    return {br, word_value(S.product, br.value), seq_value(EventuallyPeriodicSeq::periodic(S.product), br.value)};
}

struct ThueMorseRecord {
    BinaryWord word;
    HighPrecReal beta_inf, beta_error;
    HighPrecReal tau, tau_error;
    HighPrecReal chain_value, chain_error;  // (S_k 0^∞)_β for s, 01, 01, … and its distance bound to τ
};

// θ_1 c θ_2 θ_3 c θ_4 … for s = 0c1, truncated after `blocks` groups.
inline BinaryWord thue_morse_expansion(const BinaryWord& s, std::size_t blocks)
{
    BinaryWord c = s.substr(1, s.size() - 2);
    BinaryWord w;
    w.reserve(blocks * s.size());
    for (std::size_t k = 0; k < blocks; ++k) {
        w.push_back(thue_morse(2 * k + 1));
        w.append(c);
        w.push_back(thue_morse(2 * k + 2));
    }
    return w;
}

inline HighPrecReal thue_morse_tau_closed_form(const BinaryWord& s, const HighPrecReal& beta)
{
    long m = static_cast<long>(s.size());
    HighPrecReal sum(beta.precision());
    for (long j = 2; j <= m; ++j)
        if (s[j - 1]) sum = sum + pow(beta, m - j);
    HighPrecReal bm = pow(beta, m);
    return (sum * 2L + pow(beta, m - 1) - bm) / (bm - 1L);
}

inline ThueMorseRecord thue_morse_base(const BinaryWord& s, mpfr_prec_t prec = default_precision, int chain_k = 10)
{
    if (!is_nondegenerate_farey(s)) throw domain_error("\"" + s.str() + "\" is not a non-degenerate Farey word");
    // digits needed so that β^{-N} is far below 2^{-p} for every β above 1.4
    std::size_t digits = static_cast<std::size_t>(static_cast<double>(prec) / std::log2(1.4)) + 64;
    BinaryWord w = thue_morse_expansion(s, digits / s.size() + 1);
    HighPrecReal one(1L, prec);
    auto lo_val = [&](const HighPrecReal& b) { return word_value(w, b); };
    auto hi_val = [&](const HighPrecReal& b) {
        return word_value(w, b) + pow(b, -static_cast<long>(w.size())) / (b - 1L);
    };
    HighPrecReal b_lo = bisect_decreasing(lo_val, one, prec).beta;
    HighPrecReal b_hi = bisect_decreasing(hi_val, one, prec).beta;
    HighPrecReal beta = (b_lo + b_hi) / 2L;
    HighPrecReal slack = detail::exact_slack(prec);
    HighPrecReal berr = (b_hi - b_lo) / 2L + slack;

    HighPrecReal t0 = thue_morse_tau_closed_form(s, b_lo), t1 = thue_morse_tau_closed_form(s, b_hi);
    HighPrecReal tau = thue_morse_tau_closed_form(s, beta);
    HighPrecReal terr = max(abs(t0 - tau), abs(t1 - tau)) + slack;

    std::vector<BinaryWord> factors{s};
    for (int i = 1; i < chain_k; ++i) factors.emplace_back("01");
    BinaryWord sk = lambda_product(factors).product;
    BinaryWord sk1 = substitute(sk, BinaryWord("01"));
    HighPrecReal vk = word_value(sk, beta), vk1 = word_value(sk1, beta);
    HighPrecReal cerr = abs(vk - vk1) + pow(beta, -static_cast<long>(sk.size())) / (beta - 1L);
    return {s, beta, berr, tau, terr, vk, cerr};
}

inline const std::vector<BinaryWord>& table1_words()
{
    static const std::vector<BinaryWord> words{BinaryWord("0001"), BinaryWord("001"),   BinaryWord("00101"),
                                               BinaryWord("01"),   BinaryWord("01011"), BinaryWord("011"),
                                               BinaryWord("0111")};
    return words;
}

struct CurveRow {
    TauResult result;
    std::optional<BinaryWord> near_jump;  // S when β is within 10·step of a detected β_r^S
    std::optional<HighPrecReal> jump_at;
};

inline std::vector<CurveRow> tau_curve(const HighPrecReal& beta_lo, const HighPrecReal& beta_hi,
                                       const HighPrecReal& step, const ClassifyOptions& opt = {})
{
    if (!(beta_lo > 1L) || !(beta_lo < beta_hi) || beta_hi > 2L) throw domain_error("need 1 < from < to <= 2");
    if (step.sign() <= 0) throw domain_error("step must be positive");
    mpfr_prec_t prec = std::max({beta_lo.precision(), beta_hi.precision(), step.precision()});
    double span = ((beta_hi - beta_lo) / step).to_double();
    std::size_t count = static_cast<std::size_t>(span + 1e-9) + 1;
    HighPrecReal guard = step * exp2i(-30, prec);

    std::vector<std::optional<TauResult>> slots(count);
    parallel_for(count, [&](std::size_t i) {
        HighPrecReal b = beta_lo + step * static_cast<long>(i);
        if (b > beta_hi && b - beta_hi < guard) b = beta_hi;
        slots[i] = tau(Base::numeric(b.with_precision(prec)), opt);
    });

    std::vector<CurveRow> rows;
    rows.reserve(count);
    std::set<BinaryWord> jumps;
    for (auto& s : slots) {
        const auto& reg = s->regime;
        if (!reg.chain.empty()) {
            std::vector<BinaryWord> prefix;
            for (const auto& f : reg.chain) {
                prefix.push_back(f);
                jumps.insert(lambda_product(prefix).product);
            }
        }
        rows.push_back({std::move(*s), std::nullopt, std::nullopt});
    }
    std::vector<std::pair<BinaryWord, HighPrecReal>> located;
    for (const auto& S : jumps) located.emplace_back(S, solve_base(right_sequence(S), prec));
    HighPrecReal radius = step * 10L;
    for (auto& row : rows) {
        std::optional<HighPrecReal> best;
        for (auto& [S, br] : located) {
            HighPrecReal dist = abs(row.result.beta.value - br);
            if (dist <= radius && (!best || dist < *best)) {
                best = dist;
                row.near_jump = S;
                row.jump_at = br;
            }
        }
    }
    return rows;
}

} // namespace betatau
