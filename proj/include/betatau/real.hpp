#pragma once

#include <betatau/error.hpp>

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <string>
#include <utility>

namespace betatau {

inline constexpr mpfr_prec_t default_precision = 256;

// MPFR value that carries its own precision; binary operations round to
// the larger of the operand precisions. There is no global precision state.
class HighPrecReal {
public:
    explicit HighPrecReal(mpfr_prec_t prec = default_precision) { mpfr_init2(v_, prec), mpfr_set_zero(v_, 1); }

    HighPrecReal(double x, mpfr_prec_t prec) : HighPrecReal(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    HighPrecReal(long x, mpfr_prec_t prec) : HighPrecReal(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
    HighPrecReal(int x, mpfr_prec_t prec) : HighPrecReal(static_cast<long>(x), prec) {}

    static HighPrecReal parse(const std::string& s, mpfr_prec_t prec = default_precision)
    {
        HighPrecReal r(prec);
        if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw domain_error("malformed number \"" + s + "\"");
        return r;
    }

    HighPrecReal(const HighPrecReal& o) : HighPrecReal(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    HighPrecReal(HighPrecReal&& o) noexcept : HighPrecReal(mpfr_prec_t{MPFR_PREC_MIN}) { mpfr_swap(v_, o.v_); }
    HighPrecReal& operator=(const HighPrecReal& o)
    {
        if (this != &o) {
            mpfr_set_prec(v_, o.precision());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    HighPrecReal& operator=(HighPrecReal&& o) noexcept
    {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~HighPrecReal() { mpfr_clear(v_); }

    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

    HighPrecReal with_precision(mpfr_prec_t prec) const
    {
        HighPrecReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string(int digits = 15) const
    {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Rg", digits, v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_ptr get() noexcept { return v_; }

    bool is_zero() const noexcept { return mpfr_zero_p(v_); }
    int sign() const noexcept { return mpfr_sgn(v_); }

    friend HighPrecReal operator+(const HighPrecReal& a, const HighPrecReal& b) { return binary(a, b, mpfr_add); }
    friend HighPrecReal operator-(const HighPrecReal& a, const HighPrecReal& b) { return binary(a, b, mpfr_sub); }
    friend HighPrecReal operator*(const HighPrecReal& a, const HighPrecReal& b) { return binary(a, b, mpfr_mul); }
    friend HighPrecReal operator/(const HighPrecReal& a, const HighPrecReal& b) { return binary(a, b, mpfr_div); }

    friend HighPrecReal operator+(const HighPrecReal& a, long b) { return scalar(a, b, mpfr_add_si); }
    friend HighPrecReal operator-(const HighPrecReal& a, long b) { return scalar(a, b, mpfr_sub_si); }
    friend HighPrecReal operator*(const HighPrecReal& a, long b) { return scalar(a, b, mpfr_mul_si); }
    friend HighPrecReal operator/(const HighPrecReal& a, long b) { return scalar(a, b, mpfr_div_si); }
    friend HighPrecReal operator+(long a, const HighPrecReal& b) { return b + a; }
    friend HighPrecReal operator*(long a, const HighPrecReal& b) { return b * a; }
    friend HighPrecReal operator-(long a, const HighPrecReal& b)
    {
        HighPrecReal r(b.precision());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend HighPrecReal operator/(long a, const HighPrecReal& b)
    {
        HighPrecReal r(b.precision());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend HighPrecReal operator-(const HighPrecReal& a)
    {
        HighPrecReal r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    HighPrecReal& operator+=(const HighPrecReal& b) { return *this = *this + b; }
    HighPrecReal& operator-=(const HighPrecReal& b) { return *this = *this - b; }
    HighPrecReal& operator*=(const HighPrecReal& b) { return *this = *this * b; }
    HighPrecReal& operator/=(const HighPrecReal& b) { return *this = *this / b; }

    friend bool operator==(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_equal_p(a.v_, b.v_); }
    friend bool operator<(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_less_p(a.v_, b.v_); }
    friend bool operator>(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_greater_p(a.v_, b.v_); }
    friend bool operator<=(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_lessequal_p(a.v_, b.v_); }
    friend bool operator>=(const HighPrecReal& a, const HighPrecReal& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
    friend bool operator<(const HighPrecReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const HighPrecReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const HighPrecReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const HighPrecReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const HighPrecReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

    friend std::ostream& operator<<(std::ostream& os, const HighPrecReal& x) { return os << x.to_string(); }

private:
    using binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using siop = int (*)(mpfr_ptr, mpfr_srcptr, long, mpfr_rnd_t);

    static HighPrecReal binary(const HighPrecReal& a, const HighPrecReal& b, binop op)
    {
        HighPrecReal r(std::max(a.precision(), b.precision()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static HighPrecReal scalar(const HighPrecReal& a, long b, siop op)
    {
        HighPrecReal r(a.precision());
        op(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

inline HighPrecReal abs(const HighPrecReal& x)
{
    HighPrecReal r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline HighPrecReal sqrt(const HighPrecReal& x)
{
    HighPrecReal r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline HighPrecReal log(const HighPrecReal& x)
{
    HighPrecReal r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

inline HighPrecReal pow(const HighPrecReal& x, long n)
{
    HighPrecReal r(x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}

// 2^e at the given precision.
inline HighPrecReal exp2i(long e, mpfr_prec_t prec)
{
    HighPrecReal r(1L, prec);
    mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
    return r;
}

inline HighPrecReal max(const HighPrecReal& a, const HighPrecReal& b) { return a < b ? b : a; }
inline HighPrecReal min(const HighPrecReal& a, const HighPrecReal& b) { return b < a ? b : a; }

// Tolerance 2^{-p/2} below which two values are reported as a near-tie.
inline HighPrecReal near_tie_tolerance(mpfr_prec_t prec) { return exp2i(-static_cast<long>(prec / 2), prec); }

inline bool near_tie(const HighPrecReal& a, const HighPrecReal& b)
{
    return abs(a - b) < near_tie_tolerance(std::max(a.precision(), b.precision()));
}

} // namespace betatau
