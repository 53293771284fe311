#pragma once

#include <betatau/real.hpp>
#include <betatau/sequence.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace betatau {

// Σ w_i x^i for i = 1..|w|, by Horner.
inline HighPrecReal word_poly(const BinaryWord& w, const HighPrecReal& x)
{
    HighPrecReal acc(x.precision());
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i]) acc = acc + 1L;
        acc = acc * x;
    }
    return acc;
}

inline HighPrecReal seq_value(const EventuallyPeriodicSeq& c, const HighPrecReal& beta)
{
    if (beta <= 1L) throw domain_error("seq_value needs beta > 1");
    HighPrecReal x = 1L / beta;
    HighPrecReal head = word_poly(c.preperiod(), x);
    if (c.ends_in_zeros()) return head;
    HighPrecReal q = word_poly(c.period(), x);
    HighPrecReal xm = pow(x, static_cast<long>(c.period().size()));
    return head + pow(x, static_cast<long>(c.preperiod().size())) * q / (1L - xm);
}

// Value of the finite word w·0^∞.
inline HighPrecReal word_value(const BinaryWord& w, const HighPrecReal& beta) { return word_poly(w, 1L / beta); }

struct SolveResult {
    HighPrecReal beta;
    HighPrecReal residual;
};

// Unique root in (1, 2] of β ↦ value(β) - target for a strictly decreasing
// value map, by bisection at a few guard bits above the requested precision.
template <class F>
SolveResult bisect_decreasing(F&& value, const HighPrecReal& target, mpfr_prec_t prec)
{
    mpfr_prec_t work = prec + 32;
    HighPrecReal lo = HighPrecReal(1L, work) + exp2i(-20, work);
    HighPrecReal hi(2L, work);
    HighPrecReal tgt = target.with_precision(work);
    HighPrecReal f_hi = value(hi) - tgt;
    if (f_hi.is_zero()) return {hi.with_precision(prec), f_hi.with_precision(prec)};
    HighPrecReal f_lo = value(lo) - tgt;
    if (f_lo.sign() < 0 || f_hi.sign() > 0) throw domain_error("no root in range");
    HighPrecReal width = exp2i(-static_cast<long>(prec) - 24, work);
    for (int it = 0; it < prec + 64 && hi - lo > width; ++it) {
        HighPrecReal mid = (lo + hi) / 2L;
        HighPrecReal f = value(mid) - tgt;
        if (f.is_zero()) {
            lo = hi = mid;
            break;
        }
        (f.sign() > 0 ? lo : hi) = mid;
    }
    HighPrecReal root = ((lo + hi) / 2L).with_precision(prec);
    return {root, value(root) - target.with_precision(prec)};
}

inline SolveResult solve_base_checked(const EventuallyPeriodicSeq& c, const HighPrecReal& target)
{
    if (c.digit(0) != 1) throw domain_error("solve_base needs a sequence beginning with 1");
    if (target.sign() <= 0) throw domain_error("solve_base target must be positive");
    return bisect_decreasing([&](const HighPrecReal& b) { return seq_value(c, b); }, target, target.precision());
}

inline HighPrecReal solve_base(const EventuallyPeriodicSeq& c, mpfr_prec_t prec = default_precision)
{
    return solve_base_checked(c, HighPrecReal(1L, prec)).beta;
}

inline HighPrecReal solve_base(const EventuallyPeriodicSeq& c, const HighPrecReal& target)
{
    return solve_base_checked(c, target).beta;
}

// Digits of an expansion computed in floating point. Digits with index
// < reliable (0-based count) are certified; tie_at is the 1-based index of
// the first near-tie, resolved by the defining convention.
struct ExpansionDigits {
    BinaryWord digits;
    std::size_t reliable = 0;
    std::optional<std::size_t> tie_at;

    bool flagged() const noexcept { return tie_at.has_value() || reliable < digits.size(); }
};

namespace detail {

// One orbit of x ↦ βx - d with threshold at 1; `greedy` decides ties toward 1.
inline ExpansionDigits expand(HighPrecReal x, const HighPrecReal& beta, std::size_t n, bool greedy)
{
    mpfr_prec_t prec = std::max(x.precision(), beta.precision());
    x = x.with_precision(prec);
    HighPrecReal tie_tol = near_tie_tolerance(prec);
    // accumulated rounding error after i steps is below 2^{-p+4} β^i/(β-1)
    HighPrecReal err = exp2i(-static_cast<long>(prec) + 4, prec) / (beta - 1L);
    ExpansionDigits out;
    out.digits.reserve(n);
    out.reliable = n;
    for (std::size_t i = 1; i <= n; ++i) {
        HighPrecReal y = beta * x;
        err = err * beta;
        HighPrecReal gap = abs(y - 1L);
        bool tie = gap < max(tie_tol, err);
        int d;
        if (tie) {
            d = greedy ? 1 : 0;
            if (!out.tie_at) {
                out.tie_at = i;
                out.reliable = i - 1;
            }
        } else {
            d = greedy ? (y >= 1L) : (y > 1L);
        }
        out.digits.push_back(d);
        x = d ? y - 1L : y;
    }
    return out;
}

inline void check_beta(const HighPrecReal& beta)
{
    if (beta <= 1L || beta > 2L) throw domain_error("beta must lie in (1, 2]");
}

} // namespace detail

inline ExpansionDigits quasi_greedy(const HighPrecReal& beta, std::size_t n)
{
    detail::check_beta(beta);
    return detail::expand(HighPrecReal(1L, beta.precision()), beta, n, false);
}

inline ExpansionDigits greedy(const HighPrecReal& t, const HighPrecReal& beta, std::size_t n)
{
    detail::check_beta(beta);
    if (t.sign() < 0 || t >= 1L) throw domain_error("t must lie in [0, 1)");
    return detail::expand(t, beta, n, true);
}

// A base together with its quasi-greedy expansion of 1 when that is known
// exactly (the base was solved from a defining sequence).
struct Base {
    HighPrecReal value;
    std::optional<EventuallyPeriodicSeq> delta;

    static Base numeric(HighPrecReal v) { return {std::move(v), std::nullopt}; }

    // δ^{-1}(c); c must be a valid quasi-greedy expansion.
    static Base from_delta(const EventuallyPeriodicSeq& c, mpfr_prec_t prec = default_precision)
    {
        if (c.ends_in_zeros() || !shift_dominated(c) || c.digit(0) != 1)
            throw domain_error("\"" + c.str() + "\" is not a quasi-greedy expansion of 1");
        return {solve_base(c, prec), c};
    }

    mpfr_prec_t precision() const { return value.precision(); }
};

enum class Cmp { LT, EQ, GT, Undecided };

inline Cmp to_cmp(Order o) { return o == Order::LT ? Cmp::LT : o == Order::GT ? Cmp::GT : Cmp::EQ; }

// δ(β) as seen by the classifier: exact when known, else certified digits.
struct DeltaView {
    std::optional<EventuallyPeriodicSeq> exact;
    ExpansionDigits numeric;

    static DeltaView of(const Base& b, std::size_t n)
    {
        DeltaView v;
        if (b.delta) v.exact = b.delta;
        else v.numeric = quasi_greedy(b.value, n);
        return v;
    }

    std::size_t available() const { return exact ? static_cast<std::size_t>(-1) : numeric.reliable; }

    int digit(std::size_t i) const { return exact ? exact->digit(i) : numeric.digits[i]; }

    Cmp compare(const EventuallyPeriodicSeq& e) const
    {
        if (exact) return to_cmp(lex_compare(*exact, e));
        for (std::size_t i = 0; i < numeric.reliable; ++i) {
            int a = numeric.digits[i], b = e.digit(i);
            if (a != b) return a < b ? Cmp::LT : Cmp::GT;
        }
        return Cmp::Undecided;
    }
};

inline std::size_t default_digit_budget(const HighPrecReal& beta)
{
    // enough digits to exhaust p bits of information at this base
    double lb = std::log2(std::max(beta.to_double(), 1.0 + 1e-9));
    double n = static_cast<double>(beta.precision()) / lb + 16;
    return static_cast<std::size_t>(std::min(n, 8192.0));
}

} // namespace betatau
