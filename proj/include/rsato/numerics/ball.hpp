#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>

#include "rsato/errors.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/numerics/rational.hpp"

namespace rsato {

inline constexpr long kDefaultPrecision = 192;

/// Owning wrapper around an mpfr_t. Value semantics; precision travels with the value.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    /// Exact conversion (midpoints are dyadic).
    BigRational to_rational() const {
        BigRational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

private:
    mpfr_t v_;
};

namespace detail {

inline constexpr mpfr_prec_t kRadPrec = 64;

/// Upper bound for the rounding error of a round-to-nearest result m that
/// MPFR reported as inexact (ternary != 0): one ulp at m's precision.
inline void add_rounding_error(Mpfr& rad, const Mpfr& m, int ternary) {
    if (ternary == 0) return;
    Mpfr ulp(kRadPrec);
    if (mpfr_zero_p(m.get())) return;
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(m.get()) - m.prec(), MPFR_RNDU);
    mpfr_add(rad.get(), rad.get(), ulp.get(), MPFR_RNDU);
}

inline Mpfr abs_up(const Mpfr& m) {
    Mpfr r(kRadPrec);
    mpfr_abs(r.get(), m.get(), MPFR_RNDU);
    return r;
}

inline Mpfr abs_down(const Mpfr& m) {
    Mpfr r(kRadPrec);
    mpfr_abs(r.get(), m.get(), MPFR_RNDD);
    return r;
}

} // namespace detail

/// Midpoint-radius enclosure [mid - rad, mid + rad] of a real number.
///
/// The midpoint is an MPFR float at the ball's precision; the radius is a
/// 64-bit MPFR float that is only ever rounded upward. Every operation returns
/// a ball containing the exact result of the operation applied to any points
/// of the operand balls.
class BallReal {
public:
    explicit BallReal(long prec = kDefaultPrecision) : mid_(prec), rad_(detail::kRadPrec) {}

    static BallReal from_long(long v, long prec = kDefaultPrecision) {
        BallReal b(prec);
        int t = mpfr_set_si(b.mid_.get(), v, MPFR_RNDN);
        detail::add_rounding_error(b.rad_, b.mid_, t);
        return b;
    }

    static BallReal from_rational(const BigRational& q, long prec = kDefaultPrecision) {
        BallReal b(prec);
        int t = mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
        detail::add_rounding_error(b.rad_, b.mid_, t);
        return b;
    }

    /// Ball with an explicit midpoint and radius (radius rounded up to 64 bits).
    static BallReal from_parts(const Mpfr& mid, const Mpfr& rad) {
        BallReal b(mid.prec());
        mpfr_set(b.mid_.get(), mid.get(), MPFR_RNDN);
        mpfr_abs(b.rad_.get(), rad.get(), MPFR_RNDU);
        return b;
    }

    /// [lo, hi] → ball enclosing it. Exact inputs, outward result.
    static BallReal from_interval(const BigRational& lo, const BigRational& hi,
                                  long prec = kDefaultPrecision) {
        BallReal b = from_rational((lo + hi) / 2, prec);
        BigRational half = (hi - lo) / 2;
        Mpfr h(detail::kRadPrec);
        mpfr_set_q(h.get(), half.get_mpq_t(), MPFR_RNDU);
        mpfr_add(b.rad_.get(), b.rad_.get(), h.get(), MPFR_RNDU);
        return b;
    }

    long prec() const { return mid_.prec(); }
    const Mpfr& mid() const { return mid_; }
    const Mpfr& rad() const { return rad_; }

    bool is_exact() const { return mpfr_zero_p(rad_.get()) != 0; }
    double mid_double() const { return mpfr_get_d(mid_.get(), MPFR_RNDN); }

    BigRational lower() const { return mid_.to_rational() - rad_.to_rational(); }
    BigRational upper() const { return mid_.to_rational() + rad_.to_rational(); }
    /// Upper bound for |x| over the ball.
    BigRational mag() const { return abs(mid_.to_rational()) + rad_.to_rational(); }

    bool contains(const BigRational& q) const { return lower() <= q && q <= upper(); }
    bool contains(const BallReal& o) const {
        return lower() <= o.lower() && o.upper() <= upper();
    }
    bool overlaps(const BallReal& o) const {
        return lower() <= o.upper() && o.lower() <= upper();
    }
    bool contains_zero() const { return contains(BigRational(0)); }
    bool is_positive() const { return lower() > 0; }
    bool is_negative() const { return upper() < 0; }

    /// Same value re-rounded to a new midpoint precision.
    BallReal rounded_to(long prec) const {
        BallReal r(prec);
        int t = mpfr_set(r.mid_.get(), mid_.get(), MPFR_RNDN);
        mpfr_set(r.rad_.get(), rad_.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_, r.mid_, t);
        return r;
    }

    /// Widens the radius by e (>= 0).
    BallReal widened(const BigRational& e) const {
        BallReal r = *this;
        Mpfr t(detail::kRadPrec);
        mpfr_set_q(t.get(), e.get_mpq_t(), MPFR_RNDU);
        mpfr_abs(t.get(), t.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t.get(), MPFR_RNDU);
        return r;
    }

    friend BallReal operator+(const BallReal& x, const BallReal& y) {
        BallReal r(std::max(x.prec(), y.prec()));
        int t = mpfr_add(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_, r.mid_, t);
        return r;
    }

    friend BallReal operator-(const BallReal& x, const BallReal& y) {
        BallReal r(std::max(x.prec(), y.prec()));
        int t = mpfr_sub(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_, r.mid_, t);
        return r;
    }

    friend BallReal operator-(const BallReal& x) {
        BallReal r = x;
        mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
        return r;
    }

    friend BallReal operator*(const BallReal& x, const BallReal& y) {
        BallReal r(std::max(x.prec(), y.prec()));
        int t = mpfr_mul(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
        // |x||ry| + |y||rx| + rx ry
        Mpfr ax = detail::abs_up(x.mid_), ay = detail::abs_up(y.mid_);
        Mpfr acc(detail::kRadPrec), tmp(detail::kRadPrec);
        mpfr_mul(acc.get(), ax.get(), y.rad_.get(), MPFR_RNDU);
        mpfr_mul(tmp.get(), ay.get(), x.rad_.get(), MPFR_RNDU);
        mpfr_add(acc.get(), acc.get(), tmp.get(), MPFR_RNDU);
        mpfr_mul(tmp.get(), x.rad_.get(), y.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), acc.get(), tmp.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_, r.mid_, t);
        return r;
    }

    friend BallReal operator/(const BallReal& x, const BallReal& y) {
        // denominator lower bound |my| - ry must be positive
        Mpfr den = detail::abs_down(y.mid_);
        mpfr_sub(den.get(), den.get(), y.rad_.get(), MPFR_RNDD);
        if (mpfr_sgn(den.get()) <= 0) throw DomainError("division by a ball containing zero");
        BallReal r(std::max(x.prec(), y.prec()));
        int t = mpfr_div(r.mid_.get(), x.mid_.get(), y.mid_.get(), MPFR_RNDN);
        // |x/y - mx/my| <= (rx + |mx/my| ry) / (|my| - ry)
        Mpfr q = detail::abs_up(r.mid_);
        detail::add_rounding_error(q, r.mid_, t);
        Mpfr num(detail::kRadPrec);
        mpfr_mul(num.get(), q.get(), y.rad_.get(), MPFR_RNDU);
        mpfr_add(num.get(), num.get(), x.rad_.get(), MPFR_RNDU);
        mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
        detail::add_rounding_error(r.rad_, r.mid_, t);
        return r;
    }

    BallReal& operator+=(const BallReal& o) { return *this = *this + o; }
    BallReal& operator-=(const BallReal& o) { return *this = *this - o; }
    BallReal& operator*=(const BallReal& o) { return *this = *this * o; }
    BallReal& operator/=(const BallReal& o) { return *this = *this / o; }

    friend BallReal operator*(const BallReal& x, const BigRational& q) {
        return x * from_rational(q, x.prec());
    }
    friend BallReal operator*(const BigRational& q, const BallReal& x) { return x * q; }
    friend BallReal operator+(const BallReal& x, const BigRational& q) {
        return x + from_rational(q, x.prec());
    }

    /// Midpoint as scientific decimal with the given significant digits.
    std::string mid_string(int digits = 0) const {
        if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 1;
        return format(mid_, digits, 'N');
    }
    /// Radius, rounded up, three significant digits.
    std::string rad_string() const { return format(rad_, 3, 'U'); }

    std::string to_string(int digits = 20) const {
        return "[" + mid_string(digits) + " +/- " + rad_string() + "]";
    }

private:
    static std::string format(const Mpfr& v, int digits, char rnd) {
        char* buf = nullptr;
        std::string fmt = "%.*R";
        fmt += rnd;
        fmt += 'e';
        mpfr_asprintf(&buf, fmt.c_str(), digits - 1, v.get());
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

    Mpfr mid_;
    Mpfr rad_;
};

/// Positive square root. Throws DomainError (naming `what`) unless the
/// whole ball is positive.
inline BallReal ball_sqrt(const BallReal& x, std::string_view what = "value") {
    Mpfr lo(detail::kRadPrec);
    mpfr_sub(lo.get(), x.mid().get(), x.rad().get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0)
        throw DomainError("square root of a ball that is not strictly positive: " +
                          std::string(what) + " = " + x.to_string());
    Mpfr m(x.prec());
    int t = mpfr_sqrt(m.get(), x.mid().get(), MPFR_RNDN);
    // |sqrt(y) - sqrt(mid)| <= r / (sqrt(mid - r) + sqrt(mid))
    Mpfr s1(detail::kRadPrec), s2(detail::kRadPrec), den(detail::kRadPrec), rad(detail::kRadPrec);
    mpfr_sqrt(s1.get(), lo.get(), MPFR_RNDD);
    mpfr_set(s2.get(), x.mid().get(), MPFR_RNDD);
    mpfr_sqrt(s2.get(), s2.get(), MPFR_RNDD);
    mpfr_add(den.get(), s1.get(), s2.get(), MPFR_RNDD);
    mpfr_div(rad.get(), x.rad().get(), den.get(), MPFR_RNDU);
    detail::add_rounding_error(rad, m, t);
    return BallReal::from_parts(m, rad);
}

/// exp over a ball: |exp(y) - exp(mid)| <= exp(mid + r) * r.
inline BallReal ball_exp(const BallReal& x) {
    Mpfr m(x.prec());
    int t = mpfr_exp(m.get(), x.mid().get(), MPFR_RNDN);
    Mpfr rad(detail::kRadPrec);
    if (!x.is_exact()) {
        Mpfr top(detail::kRadPrec);
        mpfr_add(top.get(), x.mid().get(), x.rad().get(), MPFR_RNDU);
        mpfr_exp(top.get(), top.get(), MPFR_RNDU);
        mpfr_mul(rad.get(), top.get(), x.rad().get(), MPFR_RNDU);
    }
    detail::add_rounding_error(rad, m, t);
    return BallReal::from_parts(m, rad);
}

/// cos and sin are 1-Lipschitz.
inline BallReal ball_cos(const BallReal& x) {
    Mpfr m(x.prec());
    int t = mpfr_cos(m.get(), x.mid().get(), MPFR_RNDN);
    Mpfr rad = x.rad();
    detail::add_rounding_error(rad, m, t);
    return BallReal::from_parts(m, rad);
}

inline BallReal ball_sin(const BallReal& x) {
    Mpfr m(x.prec());
    int t = mpfr_sin(m.get(), x.mid().get(), MPFR_RNDN);
    Mpfr rad = x.rad();
    detail::add_rounding_error(rad, m, t);
    return BallReal::from_parts(m, rad);
}

inline BallReal ball_pow(BallReal base, unsigned long e) {
    BallReal r = BallReal::from_long(1, base.prec());
    while (e > 0) {
        if (e & 1UL) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

/// Rectangular complex enclosure re + i*im.
class BallComplex {
public:
    explicit BallComplex(long prec = kDefaultPrecision) : re_(prec), im_(prec) {}
    BallComplex(BallReal re, BallReal im) : re_(std::move(re)), im_(std::move(im)) {}
    explicit BallComplex(const BallReal& re) : re_(re), im_(re.prec()) {}

    static BallComplex from_rational(const BigRational& q, long prec = kDefaultPrecision) {
        return BallComplex(BallReal::from_rational(q, prec), BallReal(prec));
    }

    const BallReal& re() const { return re_; }
    const BallReal& im() const { return im_; }
    long prec() const { return std::max(re_.prec(), im_.prec()); }

    bool is_exact_zero() const {
        return re_.is_exact() && im_.is_exact() && re_.contains_zero() && im_.contains_zero();
    }

    BallComplex conj() const { return BallComplex(re_, -im_); }
    /// |z|^2 as a real ball.
    BallReal norm() const { return re_ * re_ + im_ * im_; }

    friend BallComplex operator+(const BallComplex& x, const BallComplex& y) {
        return BallComplex(x.re_ + y.re_, x.im_ + y.im_);
    }
    friend BallComplex operator-(const BallComplex& x, const BallComplex& y) {
        return BallComplex(x.re_ - y.re_, x.im_ - y.im_);
    }
    friend BallComplex operator-(const BallComplex& x) { return BallComplex(-x.re_, -x.im_); }
    friend BallComplex operator*(const BallComplex& x, const BallComplex& y) {
        return BallComplex(x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_);
    }
    friend BallComplex operator*(const BallComplex& x, const BallReal& y) {
        return BallComplex(x.re_ * y, x.im_ * y);
    }
    friend BallComplex operator*(const BallComplex& x, const BigRational& q) {
        return BallComplex(x.re_ * q, x.im_ * q);
    }
    friend BallComplex operator/(const BallComplex& x, const BallComplex& y) {
        BallReal n = y.norm();
        if (!n.is_positive()) throw DomainError("complex division by a ball containing zero");
        BallComplex num = x * y.conj();
        return BallComplex(num.re_ / n, num.im_ / n);
    }
    BallComplex& operator+=(const BallComplex& o) { return *this = *this + o; }
    BallComplex& operator-=(const BallComplex& o) { return *this = *this - o; }
    BallComplex& operator*=(const BallComplex& o) { return *this = *this * o; }
    BallComplex& operator/=(const BallComplex& o) { return *this = *this / o; }

    /// Widens both parts by e (a bound on the modulus of an additive error).
    BallComplex widened(const BigRational& e) const {
        return BallComplex(re_.widened(e), im_.widened(e));
    }

    std::string to_string(int digits = 20) const {
        return "(" + re_.to_string(digits) + " + i*" + im_.to_string(digits) + ")";
    }

private:
    BallReal re_;
    BallReal im_;
};

inline BallComplex ball_pow(BallComplex base, unsigned long e) {
    BallComplex r(BallReal::from_long(1, base.prec()));
    while (e > 0) {
        if (e & 1UL) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

/// a + b*sqrt(d) under the positive square root. Requires d > 0 unless b = 0.
inline BallReal quad_eval(const QuadExt& x, long prec = kDefaultPrecision) {
    if (x.is_rational()) return BallReal::from_rational(x.a(), prec);
    if (x.d() < 0) throw DomainError("quad_eval of non-real " + x.to_string() + "; use quad_eval_complex");
    BallReal root = ball_sqrt(BallReal::from_long(x.d(), prec), "sqrt(d)");
    return BallReal::from_rational(x.a(), prec) + root * x.b();
}

/// a + b*sqrt(d) with sqrt(d) = i*sqrt(|d|) for d < 0.
inline BallComplex quad_eval_complex(const QuadExt& x, long prec = kDefaultPrecision) {
    if (x.is_rational() || x.d() > 0) return BallComplex(quad_eval(x, prec));
    BallReal root = ball_sqrt(BallReal::from_long(-x.d(), prec), "sqrt(-d)");
    return BallComplex(BallReal::from_rational(x.a(), prec), root * x.b());
}

/// Upper bound on |x - y| over all points of both balls.
inline BigRational separation_bound(const BallReal& x, const BallReal& y) {
    return abs(x.mid().to_rational() - y.mid().to_rational()) + x.rad().to_rational() +
           y.rad().to_rational();
}

/// Largest integer k with bound <= 10^-k (0 if bound >= 1).
inline long decimal_digits_below(const BigRational& bound) {
    if (bound <= 0) return 1000000;
    if (bound >= 1) return 0;
    // 10^k <= 1/bound; find the largest such k exactly.
    BigRational inv = 1 / bound;
    BigInt fl = inv.get_num() / inv.get_den();
    long k = static_cast<long>(mpz_sizeinbase(fl.get_mpz_t(), 10));
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    while (k > 0 && BigRational(p) > inv) {
        --k;
        p /= 10;
    }
    return k;
}

} // namespace rsato
