#pragma once

#include <algorithm>
#include <concepts>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/numerics/rational.hpp"

namespace rsato {

/// Per-field glue for FractionalQSeries. Three fields are supported:
/// BigRational, QuadExt and BallComplex.
template <class T>
struct CoeffTraits;

template <>
struct CoeffTraits<BigRational> {
    static BigRational zero() { return 0; }
    static BigRational one() { return 1; }
    static bool is_zero(const BigRational& c) { return c == 0; }
    static bool is_one(const BigRational& c) { return c == 1; }
    static BigRational scale(const BigRational& c, const BigRational& s) { return c * s; }
    static std::string to_string(const BigRational& c) { return rsato::to_string(c); }
};

template <>
struct CoeffTraits<QuadExt> {
    static QuadExt zero() { return QuadExt(); }
    static QuadExt one() { return QuadExt(1); }
    static bool is_zero(const QuadExt& c) { return c.is_zero(); }
    static bool is_one(const QuadExt& c) { return c.is_rational() && c.a() == 1; }
    static QuadExt scale(const QuadExt& c, const BigRational& s) { return c * QuadExt(s); }
    static std::string to_string(const QuadExt& c) { return "(" + c.to_string() + ")"; }
};

template <>
struct CoeffTraits<BallComplex> {
    static BallComplex zero() { return BallComplex(kDefaultPrecision); }
    static BallComplex one() { return BallComplex(BallReal::from_long(1)); }
    static bool is_zero(const BallComplex& c) { return c.is_exact_zero(); }
    static bool is_one(const BallComplex& c) {
        return c.re().is_exact() && c.re().contains(BigRational(1)) && c.im().is_exact() &&
               c.im().contains_zero();
    }
    static BallComplex scale(const BallComplex& c, const BigRational& s) { return c * s; }
    static std::string to_string(const BallComplex& c) { return c.to_string(10); }
};

template <class T>
concept SeriesCoefficient = requires(T a, T b) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { CoeffTraits<T>::zero() } -> std::convertible_to<T>;
};

/// Truncated series  sum_k c_k q^(lead + k/m) + O(q^(lead + K/m)).
///
/// `lead` is an exact rational, m is the ramification and K = coeffs().size()
/// is the number of known coefficients. The first stored coefficient is
/// nonzero unless every known coefficient is zero.
template <SeriesCoefficient T>
class FractionalQSeries {
public:
    using Traits = CoeffTraits<T>;

    FractionalQSeries() = default;

    FractionalQSeries(BigRational lead, long ramification, std::vector<T> coeffs)
        : lead_(std::move(lead)), ram_(ramification), c_(std::move(coeffs)) {
        if (ram_ <= 0) throw DomainError("ramification must be positive");
        normalize();
    }

    /// c + O(q^order) (with m = 1).
    static FractionalQSeries constant(const T& c, long order) {
        std::vector<T> v(static_cast<std::size_t>(std::max(order, 0L)), Traits::zero());
        if (!v.empty()) v[0] = c;
        return FractionalQSeries(BigRational(0), 1, std::move(v));
    }

    const BigRational& lead_exp() const { return lead_; }
    long ramification() const { return ram_; }
    const std::vector<T>& coeffs() const { return c_; }
    long order() const { return static_cast<long>(c_.size()); }
    /// Exponent below which all coefficients are known.
    BigRational precision() const { return lead_ + BigRational(order(), ram_); }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const T& c) { return Traits::is_zero(c); });
    }

    /// Coefficient of q^e; zero off the grid or below the lead exponent.
    T coeff(const BigRational& e) const {
        if (e >= precision()) throw DomainError("coefficient of q^" + rsato::to_string(e) +
                                                " is beyond the known order");
        if (e < lead_) return Traits::zero();
        BigRational idx = (e - lead_) * ram_;
        if (idx.get_den() != 1) return Traits::zero();
        return c_[idx.get_num().get_ui()];
    }

    /// Same series on the finer grid of ramification m (a multiple of the current one).
    FractionalQSeries regrid(long m) const {
        if (m % ram_ != 0) throw DomainError("regrid to a non-multiple ramification");
        long f = m / ram_;
        if (f == 1) return *this;
        std::vector<T> v(c_.size() * static_cast<std::size_t>(f), Traits::zero());
        for (std::size_t i = 0; i < c_.size(); ++i) v[i * static_cast<std::size_t>(f)] = c_[i];
        FractionalQSeries r;
        r.lead_ = lead_;
        r.ram_ = m;
        r.c_ = std::move(v);
        return r;
    }

    /// Keeps only the first k coefficients.
    FractionalQSeries truncated(long k) const {
        if (k >= order()) return *this;
        FractionalQSeries r = *this;
        r.c_.resize(static_cast<std::size_t>(std::max(k, 0L)), Traits::zero());
        return r;
    }

    /// Largest coarsening of the grid that loses no nonzero coefficient.
    /// The known order is rounded down onto the coarser grid.
    FractionalQSeries reduced() const {
        long g = ram_;
        for (std::size_t i = 0; i < c_.size() && g > 1; ++i)
            if (!Traits::is_zero(c_[i])) g = std::gcd(g, static_cast<long>(i));
        if (g <= 1) return *this;
        FractionalQSeries r;
        r.lead_ = lead_;
        r.ram_ = ram_ / g;
        for (std::size_t i = 0; i < c_.size(); i += static_cast<std::size_t>(g)) r.c_.push_back(c_[i]);
        r.c_.resize(c_.size() / static_cast<std::size_t>(g), Traits::zero());
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using U = std::decay_t<decltype(f(c_.front()))>;
        std::vector<U> v;
        v.reserve(c_.size());
        for (const T& c : c_) v.push_back(f(c));
        return FractionalQSeries<U>(lead_, ram_, std::move(v));
    }

    std::string to_string() const {
        std::string s = "q^{" + rsato::to_string(lead_) + "}·(";
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (Traits::is_zero(c_[i])) continue;
            if (!first) s += " + ";
            first = false;
            s += Traits::to_string(c_[i]);
            if (i > 0) {
                BigRational e(static_cast<long>(i), ram_);
                e.canonicalize();
                s += " q";
                if (e != 1) s += "^{" + rsato::to_string(e) + "}";
            }
        }
        if (first) s += "0";
        s += ") + O(q^{" + rsato::to_string(precision()) + "})";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const FractionalQSeries& s) {
        return os << s.to_string();
    }

    friend bool operator==(const FractionalQSeries& a, const FractionalQSeries& b)
        requires std::equality_comparable<T>
    {
        return a.lead_ == b.lead_ && a.ram_ == b.ram_ && a.c_ == b.c_;
    }

private:
    void normalize() {
        std::size_t k = 0;
        while (k < c_.size() && Traits::is_zero(c_[k])) ++k;
        if (k == 0 || k == c_.size()) return; // already normalized, or identically zero
        c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(k));
        lead_ += BigRational(static_cast<long>(k), ram_);
        lead_.canonicalize();
    }

    template <SeriesCoefficient U>
    friend class FractionalQSeries;

    BigRational lead_{0};
    long ram_ = 1;
    std::vector<T> c_;
};

using RationalSeries = FractionalQSeries<BigRational>;
using QuadSeries = FractionalQSeries<QuadExt>;
using BallSeries = FractionalQSeries<BallComplex>;

namespace detail {

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

inline long to_long(const BigRational& q) {
    if (q.get_den() != 1) throw DomainError("expected an integer, got " + to_string(q));
    return q.get_num().get_si();
}

} // namespace detail

template <SeriesCoefficient T>
FractionalQSeries<T> operator+(const FractionalQSeries<T>& a, const FractionalQSeries<T>& b) {
    using Traits = CoeffTraits<T>;
    BigRational diff = a.lead_exp() - b.lead_exp();
    long m = detail::lcm_long(detail::lcm_long(a.ramification(), b.ramification()),
                              diff.get_den().get_si());
    FractionalQSeries<T> A = a.regrid(m), B = b.regrid(m);
    BigRational lead = std::min(A.lead_exp(), B.lead_exp());
    BigRational prec = std::min(A.precision(), B.precision());
    long K = std::max(0L, detail::to_long((prec - lead) * m));
    std::vector<T> v(static_cast<std::size_t>(K), Traits::zero());
    for (const auto* s : {&A, &B}) {
        long off = detail::to_long((s->lead_exp() - lead) * m);
        for (long i = 0; i < s->order() && off + i < K; ++i)
            v[static_cast<std::size_t>(off + i)] = v[static_cast<std::size_t>(off + i)] + s->coeffs()[static_cast<std::size_t>(i)];
    }
    return FractionalQSeries<T>(lead, m, std::move(v));
}

template <SeriesCoefficient T>
FractionalQSeries<T> operator-(const FractionalQSeries<T>& a) {
    return a.map([](const T& c) -> T { return CoeffTraits<T>::zero() - c; });
}

template <SeriesCoefficient T>
FractionalQSeries<T> operator-(const FractionalQSeries<T>& a, const FractionalQSeries<T>& b) {
    return a + (-b);
}

/// Schoolbook product. The multiplication kernel is this function alone.
template <SeriesCoefficient T>
FractionalQSeries<T> operator*(const FractionalQSeries<T>& a, const FractionalQSeries<T>& b) {
    using Traits = CoeffTraits<T>;
    long m = detail::lcm_long(a.ramification(), b.ramification());
    FractionalQSeries<T> A = a.regrid(m), B = b.regrid(m);
    long K = std::min(A.order(), B.order());
    std::vector<T> v(static_cast<std::size_t>(K), Traits::zero());
    const auto& ac = A.coeffs();
    const auto& bc = B.coeffs();
    for (long i = 0; i < K; ++i) {
        if (Traits::is_zero(ac[static_cast<std::size_t>(i)])) continue;
        for (long j = 0; i + j < K; ++j)
            v[static_cast<std::size_t>(i + j)] =
                v[static_cast<std::size_t>(i + j)] + ac[static_cast<std::size_t>(i)] * bc[static_cast<std::size_t>(j)];
    }
    return FractionalQSeries<T>(A.lead_exp() + B.lead_exp(), m, std::move(v));
}

template <SeriesCoefficient T>
FractionalQSeries<T> operator*(const T& s, const FractionalQSeries<T>& a) {
    return a.map([&](const T& c) -> T { return s * c; });
}

/// Multiplicative inverse; the leading coefficient must be invertible.
template <SeriesCoefficient T>
FractionalQSeries<T> series_inv(const FractionalQSeries<T>& s) {
    using Traits = CoeffTraits<T>;
    if (s.order() == 0 || s.is_zero()) throw DomainError("inverse of a zero series");
    const auto& c = s.coeffs();
    const std::size_t K = c.size();
    std::vector<T> r(K, Traits::zero());
    T c0inv = Traits::one() / c[0];
    r[0] = c0inv;
    for (std::size_t n = 1; n < K; ++n) {
        T acc = Traits::zero();
        for (std::size_t k = 1; k <= n; ++k) {
            if (Traits::is_zero(c[k])) continue;
            acc = acc + c[k] * r[n - k];
        }
        r[n] = Traits::zero() - acc * c0inv;
    }
    return FractionalQSeries<T>(-s.lead_exp(), s.ramification(), std::move(r));
}

template <SeriesCoefficient T>
FractionalQSeries<T> operator/(const FractionalQSeries<T>& a, const FractionalQSeries<T>& b) {
    return a * series_inv(b);
}

/// s^k for any integer k (negative powers go through series_inv).
template <SeriesCoefficient T>
FractionalQSeries<T> series_pow(const FractionalQSeries<T>& s, long k) {
    using Traits = CoeffTraits<T>;
    if (k < 0) return series_inv(series_pow(s, -k));
    FractionalQSeries<T> result(BigRational(0), s.ramification(),
                                std::vector<T>(static_cast<std::size_t>(s.order()), Traits::zero()));
    if (s.order() > 0) {
        std::vector<T> one(static_cast<std::size_t>(s.order()), Traits::zero());
        one[0] = Traits::one();
        result = FractionalQSeries<T>(BigRational(0), s.ramification(), std::move(one));
    }
    FractionalQSeries<T> base = s;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

/// Square root with constant term +1; requires lead exponent 0 and c_0 = 1.
template <SeriesCoefficient T>
FractionalQSeries<T> series_sqrt(const FractionalQSeries<T>& s) {
    using Traits = CoeffTraits<T>;
    if (s.order() == 0) return s;
    if (s.lead_exp() != 0 || !Traits::is_one(s.coeffs()[0]))
        throw DomainError("series_sqrt needs a series of the form 1 + O(q^{1/m})");
    const auto& c = s.coeffs();
    const std::size_t K = c.size();
    std::vector<T> t(K, Traits::zero());
    t[0] = Traits::one();
    const T two = Traits::one() + Traits::one();
    for (std::size_t n = 1; n < K; ++n) {
        T acc = c[n];
        for (std::size_t i = 1; i < n; ++i) acc = acc - t[i] * t[n - i];
        t[n] = acc / two;
    }
    return FractionalQSeries<T>(BigRational(0), s.ramification(), std::move(t));
}

/// q d/dq.
template <SeriesCoefficient T>
FractionalQSeries<T> q_theta(const FractionalQSeries<T>& s) {
    std::vector<T> v = s.coeffs();
    for (std::size_t i = 0; i < v.size(); ++i) {
        BigRational e = s.lead_exp() + BigRational(static_cast<long>(i), s.ramification());
        v[i] = CoeffTraits<T>::scale(v[i], e);
    }
    return FractionalQSeries<T>(s.lead_exp(), s.ramification(), std::move(v));
}

/// (log s)_q = q s'/s.
template <SeriesCoefficient T>
FractionalQSeries<T> q_log_derivative(const FractionalQSeries<T>& s) {
    if (s.order() == 0 || s.is_zero()) throw DomainError("log derivative of a zero series");
    return q_theta(s) * series_inv(s);
}

/// s(q^n): exponents scale by n, and so does the known order.
template <SeriesCoefficient T>
FractionalQSeries<T> substitute_qn(const FractionalQSeries<T>& s, long n) {
    if (n <= 0) throw DomainError("substitute_qn needs n >= 1");
    std::vector<T> v(s.coeffs().size() * static_cast<std::size_t>(n), CoeffTraits<T>::zero());
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) v[i * static_cast<std::size_t>(n)] = s.coeffs()[i];
    return FractionalQSeries<T>(s.lead_exp() * n, s.ramification(), std::move(v));
}

/// zeta_n^k for n in {2, 3}.
inline QuadExt root_of_unity_power(long n, long k) {
    long r = ((k % n) + n) % n;
    if (n == 2) return QuadExt(r == 0 ? 1 : -1);
    if (n == 3) {
        if (r == 0) return QuadExt(1);
        return r == 1 ? zeta3() : zeta3() * zeta3();
    }
    throw Unsupported("roots of unity of order " + std::to_string(n) + " are not supported");
}

/// s evaluated at (tau + beta)/n: the coefficient of q^{k/n} is scaled by
/// zeta_n^{k*beta}. Needs integer exponents; n must be 2 or 3.
inline QuadSeries substitute_root(const RationalSeries& s, long n, long beta) {
    if (n != 2 && n != 3)
        throw Unsupported("substitute_root supports n in {2, 3}, got " + std::to_string(n));
    if (s.ramification() != 1 || s.lead_exp().get_den() != 1)
        throw Unsupported("substitute_root needs a series in integer powers of q");
    long lead = s.lead_exp().get_num().get_si();
    std::vector<QuadExt> v;
    v.reserve(s.coeffs().size());
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        long e = lead + static_cast<long>(i);
        v.push_back(QuadExt(s.coeffs()[i]) * root_of_unity_power(n, e * beta));
    }
    return QuadSeries(BigRational(lead, n), n, std::move(v));
}

inline QuadSeries to_quad(const RationalSeries& s) {
    return s.map([](const BigRational& c) { return QuadExt(c); });
}

/// Rational part of a QuadExt series; throws VerificationFailure if any
/// coefficient has a nonzero irrational component.
inline RationalSeries rational_part(const QuadSeries& s) {
    for (std::size_t i = 0; i < s.coeffs().size(); ++i)
        if (!s.coeffs()[i].is_rational())
            throw VerificationFailure("irrational coefficient " + s.coeffs()[i].to_string() +
                                      " at q^" +
                                      to_string(s.lead_exp() + BigRational(static_cast<long>(i), s.ramification())));
    return s.map([](const QuadExt& c) -> BigRational { return c.a(); });
}

/// Same series with integer exponents only. Throws VerificationFailure when a
/// fractional exponent carries a nonzero coefficient.
template <SeriesCoefficient T>
FractionalQSeries<T> to_integral_exponents(const FractionalQSeries<T>& s) {
    FractionalQSeries<T> r = s.reduced();
    if (r.ramification() != 1 || r.lead_exp().get_den() != 1) {
        if (r.is_zero()) {
            // all-zero series: rebase onto integer exponents
            BigRational lo = BigRational(BigInt(r.lead_exp().get_num() / r.lead_exp().get_den()) + 1);
            long k = std::max(0L, detail::to_long(BigRational(BigInt(r.precision().get_num() / r.precision().get_den()))) - (lo.get_num().get_si()));
            return FractionalQSeries<T>(lo, 1, std::vector<T>(static_cast<std::size_t>(k), CoeffTraits<T>::zero()));
        }
        throw VerificationFailure("series has nonzero coefficients at fractional exponents: " +
                                  s.to_string());
    }
    return r;
}

} // namespace rsato
