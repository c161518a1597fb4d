#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/numerics/rational.hpp"
#include "rsato/qseries/eta.hpp"
#include "rsato/qseries/poly.hpp"
#include "rsato/qseries/series.hpp"
#include "rsato/registry/group.hpp"

namespace rsato {

/// sum_j P_j(n) A_{n-j} = 0 for n >= span, seeded with A_0 .. A_{span-1}.
struct Recurrence {
    std::vector<Poly> terms; // P_0 .. P_J as polynomials in n
    std::vector<BigRational> initials;

    int span() const { return static_cast<int>(terms.size()) - 1; }

    /// "2n^3 A(n) + (2 - 8n + 12n^2 - 8n^3) A(n-1) + ... = 0"
    std::string to_string() const {
        std::string out;
        for (int j = 0; j <= span(); ++j) {
            const Poly& p = terms[static_cast<std::size_t>(j)];
            if (p.is_zero()) continue;
            if (!out.empty()) out += " + ";
            int nz = 0;
            for (const auto& c : p.coeffs()) nz += c != 0;
            std::string body = p.to_string("n");
            out += nz == 1 ? body : "(" + body + ")";
            out += j == 0 ? " A(n)" : " A(n-" + std::to_string(j) + ")";
        }
        return out + " = 0";
    }

    friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

/// x = 1/t as a q-series known through q^order (exclusive).
inline RationalSeries hauptmodul_x(const GroupRecord& g, long order) {
    if (order < 2) throw DomainError("hauptmodul_x needs order >= 2");
    return eta_quotient(g.x_spec(), order - 1);
}

/// z = (log x)_q / sqrt(w(x)), known through q^{order-1}.
inline RationalSeries build_z(const GroupRecord& g, long order) {
    RationalSeries x = hauptmodul_x(g, order + 1);
    return q_log_derivative(x) / series_sqrt(compose(g.w, x));
}

namespace detail {

/// x d/dx on q-series via the chain rule: f_x = f_q * x / x_q.
struct XDerivative {
    RationalSeries ratio; // x / x_q, lead exponent 0

    explicit XDerivative(const RationalSeries& x) : ratio(x / q_theta(x)) {}
    RationalSeries operator()(const RationalSeries& f) const { return q_theta(f) * ratio; }
};

} // namespace detail

/// (2 z z_qq - 3 z_q^2) / z^4 with subscripts meaning q d/dq.
inline RationalSeries r_series(const RationalSeries& z) {
    RationalSeries z1 = q_theta(z);
    RationalSeries z2 = q_theta(z1);
    RationalSeries num = RationalSeries::constant(BigRational(2), z.order()) * z * z2 -
                         RationalSeries::constant(BigRational(3), z.order()) * z1 * z1;
    return num * series_pow(z, -4);
}

/// Recognizes (2 z z_qq - 3 z_q^2)/z^4 as a polynomial in x. The degree is
/// the position of the last nonzero x-coefficient, and at least `guard`
/// vanishing coefficients past it are required as evidence.
inline Poly extract_R(const GroupRecord& g, long order, int guard = 16) {
    RationalSeries x = hauptmodul_x(g, order + 1);
    RationalSeries z = build_z(g, order);
    RationalSeries r = r_series(z);
    std::vector<BigRational> b = expand_in_x(r, x);
    int deg = static_cast<int>(b.size()) - 1;
    while (deg >= 0 && b[static_cast<std::size_t>(deg)] == 0) --deg;
    if (static_cast<int>(b.size()) - (deg + 1) < guard)
        throw DomainError("extract_R: order " + std::to_string(order) + " leaves fewer than " +
                          std::to_string(guard) + " vanishing coefficients past the degree");
    return express_in_x(r, x, std::max(deg, 0), guard);
}

/// Left side of 2w z_xxx + 3w_x z_xx + (w_xx - 2R) z_x - R_x z with
/// f_x = x df/dx, evaluated on the q-expansions of z and x.
inline RationalSeries ode_residual(const Poly& w, const Poly& R, const RationalSeries& z, const RationalSeries& x) {
    if (z.is_zero()) return z;
    detail::XDerivative D(x);
    RationalSeries z1 = D(z), z2 = D(z1), z3 = D(z2);
    auto lift = [&](const Poly& p) { return compose(p, x); };
    RationalSeries two = RationalSeries::constant(BigRational(2), x.order() + 1);
    RationalSeries three = RationalSeries::constant(BigRational(3), x.order() + 1);
    return two * lift(w) * z3 + three * lift(w.theta()) * z2 + (lift(w.theta().theta()) - two * lift(R)) * z1 -
           lift(R.theta()) * z;
}

inline RationalSeries ode_residual(const GroupRecord& g, long order) {
    return ode_residual(g.w, g.R, build_z(g, order), hauptmodul_x(g, order + 1));
}

/// The same differential operator applied to a polynomial in x, exactly.
inline Poly apply_ode(const Poly& w, const Poly& R, const Poly& z) {
    Poly z1 = z.theta(), z2 = z1.theta(), z3 = z2.theta();
    return Poly({2}) * w * z3 + Poly({3}) * w.theta() * z2 + (w.theta().theta() - Poly({2}) * R) * z1 -
           R.theta() * z;
}

/// Closed-form recurrence from substituting z = sum A_n x^n:
/// P_j(n) = w_j (2k^3 + 3jk^2 + j^2 k) - r_j (2k + j), k = n - j,
/// scaled so that P_0 = 2n^3.
inline Recurrence derive_recurrence(const Poly& w, const Poly& R) {
    if (w.coeff(0) == 0) throw DomainError("derive_recurrence needs w(0) != 0");
    if (R.coeff(0) != 0) throw DomainError("derive_recurrence needs R(0) = 0");
    const int J = std::max(w.degree(), R.degree());
    Recurrence rec;
    for (int j = 0; j <= J; ++j) {
        Poly k({-j, 1}); // n - j
        Poly k2 = k * k, k3 = k2 * k;
        Poly cubic = Poly({2}) * k3 + Poly({3L * j}) * k2 + Poly({static_cast<long>(j) * j}) * k;
        Poly linear = Poly({2}) * k + Poly({j});
        rec.terms.push_back(w.coeff(j) * cubic - R.coeff(j) * linear);
    }
    BigRational scale = BigRational(2) / rec.terms[0].coeff(3);
    for (Poly& p : rec.terms) p = scale * p;
    return rec;
}

/// A_0 .. A_{count-1} read off z = sum A_n x^n by series reversion.
inline std::vector<BigRational> initial_coefficients(const GroupRecord& g, long count) {
    if (count < 1) return {};
    const long order = count + 1;
    std::vector<BigRational> a = expand_in_x(build_z(g, order), hauptmodul_x(g, order + 1));
    if (static_cast<long>(a.size()) < count)
        throw DomainError("initial_coefficients: only " + std::to_string(a.size()) + " coefficients available");
    a.resize(static_cast<std::size_t>(count));
    return a;
}

/// Recurrence plus the first `span` values of the series.
inline Recurrence recurrence_for(const GroupRecord& g) {
    Recurrence rec = derive_recurrence(g.w, g.R);
    rec.initials = initial_coefficients(g, std::max(1, rec.span()));
    return rec;
}

/// Yields A_0, A_1, ... in exact arithmetic. Seeded values are returned as
/// given; later ones come from the recurrence with A_m = 0 for m < 0, which
/// holds for every n >= 1 because P_0(n) = 2n^3 never vanishes there.
class AnStream {
public:
    explicit AnStream(Recurrence rec) : rec_(std::move(rec)) {
        if (rec_.initials.empty()) throw DomainError("a_n_stream needs A_0");
        if (rec_.terms.empty()) throw DomainError("a_n_stream needs a nonempty recurrence");
    }

    long index() const { return static_cast<long>(history_.size()); }

    BigRational next() {
        const long n = index();
        BigRational a;
        if (n < static_cast<long>(rec_.initials.size())) {
            a = rec_.initials[static_cast<std::size_t>(n)];
        } else {
            BigRational nn(n);
            BigRational p0 = rec_.terms[0](nn);
            if (p0 == 0) throw DomainError("P_0(" + std::to_string(n) + ") = 0");
            BigRational acc = 0;
            for (int j = 1; j <= rec_.span() && j <= n; ++j) {
                const BigRational& prev = history_[static_cast<std::size_t>(n - j)];
                if (prev != 0) acc += rec_.terms[static_cast<std::size_t>(j)](nn) * prev;
            }
            a = -acc / p0;
        }
        history_.push_back(a);
        return a;
    }

    /// The next `count` values.
    std::vector<BigRational> take(long count) {
        std::vector<BigRational> out;
        for (long i = 0; i < count; ++i) out.push_back(next());
        return out;
    }

private:
    Recurrence rec_;
    std::vector<BigRational> history_;
};

inline AnStream a_n_stream(Recurrence rec) { return AnStream(std::move(rec)); }

} // namespace rsato
