#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/qseries/poly.hpp"
#include "rsato/qseries/series.hpp"

namespace rsato {

/// prod_i eta(a_i tau)^{e_i}, the whole product raised to outer_power.
struct EtaQuotientSpec {
    struct Factor {
        long scale;    // a
        long exponent; // e
        friend bool operator==(const Factor&, const Factor&) = default;
    };
    std::vector<Factor> factors;
    long outer_power = 1;

    /// (sum a*e)/24 * outer_power.
    BigRational lead_exponent() const {
        BigInt s = 0;
        for (const auto& f : factors) s += BigInt(f.scale) * f.exponent;
        return make_rational(s * outer_power, 24);
    }

    /// "(eta3 eta13 / (eta1 eta39))^1" style text.
    std::string to_string() const {
        std::string num, den;
        for (const auto& f : factors) {
            std::string part = "eta" + std::to_string(f.scale);
            long e = f.exponent < 0 ? -f.exponent : f.exponent;
            if (e != 1) part += "^" + std::to_string(e);
            std::string& side = f.exponent > 0 ? num : den;
            if (f.exponent == 0) continue;
            if (!side.empty()) side += " ";
            side += part;
        }
        std::string s = num.empty() ? "1" : num;
        if (!den.empty()) s += " / (" + den + ")";
        return "(" + s + ")^" + std::to_string(outer_power);
    }

    friend bool operator==(const EtaQuotientSpec&, const EtaQuotientSpec&) = default;
};

/// prod_{n>=1} (1 - q^{a n}) through K coefficients, by Euler's pentagonal
/// number theorem.
inline RationalSeries euler_product(long a, long K) {
    std::vector<BigRational> v(static_cast<std::size_t>(std::max(K, 0L)), BigRational(0));
    if (K > 0) v[0] = 1;
    for (long k = 1;; ++k) {
        const long e1 = a * (k * (3 * k - 1) / 2);
        const long e2 = a * (k * (3 * k + 1) / 2);
        if (e1 >= K) break;
        const long sign = (k % 2 == 0) ? 1 : -1;
        v[static_cast<std::size_t>(e1)] = sign;
        if (e2 < K) v[static_cast<std::size_t>(e2)] = sign;
    }
    return RationalSeries(BigRational(0), 1, std::move(v));
}

/// Expansion of the eta quotient through K coefficients past the leading term.
inline RationalSeries eta_quotient(const EtaQuotientSpec& spec, long K) {
    if (K < 1) throw DomainError("eta_quotient needs K >= 1");
    RationalSeries body = RationalSeries::constant(BigRational(1), K);
    for (const auto& f : spec.factors) {
        if (f.scale <= 0) throw DomainError("eta scale must be positive");
        if (f.exponent == 0) continue;
        body = body * series_pow(euler_product(f.scale, K), f.exponent);
    }
    body = series_pow(body, spec.outer_power);
    return RationalSeries(spec.lead_exponent(), 1, body.coeffs());
}

namespace detail {

inline void require_uniformizer(const RationalSeries& x) {
    if (x.ramification() != 1 || x.lead_exp() != 1 || x.order() == 0 || x.coeffs()[0] != 1)
        throw DomainError("expected x = q + O(q^2), got " + x.to_string());
}

/// Dense coefficients of q^0 .. q^{N-1} of a series in integer powers with
/// nonnegative exponents; N = the known order measured from q^0.
inline std::vector<BigRational> dense_from_zero(const RationalSeries& s) {
    RationalSeries r = to_integral_exponents(s);
    if (r.lead_exp() < 0 && !r.is_zero())
        throw DomainError("series has a pole at q = 0: " + s.to_string());
    BigRational p = r.precision();
    long N = std::max(0L, static_cast<long>(p.get_num().get_si() / p.get_den().get_si()));
    if (p.get_den() != 1) throw DomainError("non-integral precision");
    std::vector<BigRational> v(static_cast<std::size_t>(N), BigRational(0));
    long lead = r.lead_exp().get_num().get_si();
    for (long i = 0; i < r.order(); ++i)
        if (lead + i >= 0 && lead + i < N) v[static_cast<std::size_t>(lead + i)] = r.coeffs()[static_cast<std::size_t>(i)];
    return v;
}

} // namespace detail

/// Coefficients b_k of s = sum_k b_k x^k for every k the series determines.
inline std::vector<BigRational> expand_in_x(const RationalSeries& s, const RationalSeries& x) {
    detail::require_uniformizer(x);
    std::vector<BigRational> r = detail::dense_from_zero(s);
    const std::size_t N = std::min(r.size(), static_cast<std::size_t>(x.order()) + 1);
    r.resize(N);
    std::vector<BigRational> xs(x.coeffs().begin(), x.coeffs().end()); // xs[i] = [q^{i+1}] x
    xs.resize(N, BigRational(0));
    std::vector<BigRational> out(N, BigRational(0));
    std::vector<BigRational> pw(N, BigRational(0)); // x^k as dense coefficients
    if (N > 0) pw[0] = 1;
    for (std::size_t k = 0; k < N; ++k) {
        BigRational c = r[k];
        out[k] = c;
        if (c != 0)
            for (std::size_t i = k; i < N; ++i) r[i] -= c * pw[i];
        // pw <- pw * x
        std::vector<BigRational> next(N, BigRational(0));
        for (std::size_t i = k; i < N; ++i) {
            if (pw[i] == 0) continue;
            for (std::size_t j = 0; i + j + 1 < N; ++j) next[i + j + 1] += pw[i] * xs[j];
        }
        pw = std::move(next);
    }
    return out;
}

/// The unique P with deg P <= maxdeg and P(x) = s through the available
/// order. At least `guard` coefficients past maxdeg must be known, and all of
/// them must cancel; otherwise NotPolynomial reports the first bad exponent.
inline Poly express_in_x(const RationalSeries& s, const RationalSeries& x, int maxdeg, int guard = 8) {
    if (maxdeg < 0) throw DomainError("express_in_x needs maxdeg >= 0");
    std::vector<BigRational> b = expand_in_x(s, x);
    if (static_cast<long>(b.size()) < maxdeg + 1 + guard)
        throw DomainError("express_in_x: only " + std::to_string(b.size()) +
                          " coefficients known, need " + std::to_string(maxdeg + 1 + guard));
    for (std::size_t k = static_cast<std::size_t>(maxdeg) + 1; k < b.size(); ++k)
        if (b[k] != 0) throw NotPolynomial(maxdeg, static_cast<long>(k));
    b.resize(static_cast<std::size_t>(maxdeg) + 1);
    return Poly(std::move(b));
}

/// P(x) as a q-series, truncated to the order of x.
inline RationalSeries compose(const Poly& p, const RationalSeries& x) {
    const long K = x.order() + (x.lead_exp() > 0 ? x.lead_exp().get_num().get_si() : 0);
    RationalSeries acc = RationalSeries::constant(BigRational(0), K);
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * x + RationalSeries::constant(p.coeff(i), K);
    return acc;
}

} // namespace rsato
