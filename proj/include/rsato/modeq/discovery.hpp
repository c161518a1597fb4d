#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/modeq/modular_equation.hpp"
#include "rsato/numerics/linalg.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/odeops/ode.hpp"
#include "rsato/qseries/eta.hpp"
#include "rsato/qseries/series.hpp"
#include "rsato/registry/group.hpp"

namespace rsato {

/// n * prod_{p | n} (1 + 1/p).
inline long psi_degree(long n) {
    if (n < 2) throw DomainError("psi_degree needs n >= 2");
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result = result / p * (p + 1);
    }
    if (m > 1) result = result / m * (m + 1);
    return result;
}

namespace detail {

/// Dense coefficients of q^0 .. q^{N-1}.
inline std::vector<BigInt> dense_integers(const RationalSeries& s, long N) {
    std::vector<BigRational> d = dense_from_zero(s);
    if (static_cast<long>(d.size()) < N) throw DomainError("series known to fewer than " + std::to_string(N) + " terms");
    std::vector<BigInt> out;
    for (long i = 0; i < N; ++i) {
        const BigRational& c = d[static_cast<std::size_t>(i)];
        if (c.get_den() != 1) throw Unsupported("modular equation search needs integral q-expansions");
        out.push_back(c.get_num());
    }
    return out;
}

inline std::vector<BigInt> dense_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    const std::size_t N = a.size();
    std::vector<BigInt> r(N, BigInt(0));
    for (std::size_t i = 0; i < N; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < N; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline std::vector<std::vector<BigInt>> dense_powers(const std::vector<BigInt>& x, long D) {
    std::vector<std::vector<BigInt>> p;
    std::vector<BigInt> one(x.size(), BigInt(0));
    if (!one.empty()) one[0] = 1;
    p.push_back(one);
    for (long k = 1; k <= D; ++k) p.push_back(dense_mul(p.back(), x));
    return p;
}

/// Kernel of the map c -> sum c_ij x^i y^j mod q^order.
inline std::vector<std::vector<BigInt>> relation_kernel(const GroupRecord& g, long D, long order) {
    RationalSeries x = hauptmodul_x(g, order + 1);
    RationalSeries y = substitute_qn(x, g.meq_n);
    auto xp = dense_powers(dense_integers(x, order), D);
    auto yp = dense_powers(dense_integers(y, order), D);
    const std::size_t cols = static_cast<std::size_t>((D + 1) * (D + 1));
    IntMatrix m(static_cast<std::size_t>(order), std::vector<BigInt>(cols, BigInt(0)));
    for (long i = 0; i <= D; ++i)
        for (long j = 0; j <= D; ++j) {
            std::vector<BigInt> prod = dense_mul(xp[static_cast<std::size_t>(i)], yp[static_cast<std::size_t>(j)]);
            for (long e = 0; e < order; ++e) m[static_cast<std::size_t>(e)][static_cast<std::size_t>(i * (D + 1) + j)] = prod[static_cast<std::size_t>(e)];
        }
    return exact_nullspace(std::move(m));
}

} // namespace detail

/// Smallest order accepted by find_modular_equation for degree n.
inline long min_modeq_order(long n) {
    long D = psi_degree(n);
    return (D + 1) * (D + 1) + 16;
}

/// Discovers Psi_n from the q-expansions of x(tau) and x(n tau) by an exact
/// kernel computation. The kernel must be one-dimensional; it is scaled to a
/// primitive integer vector with c_{0,psi(n)} = 1. Symmetry is checked, not
/// imposed.
inline ModularEquation find_modular_equation(const GroupRecord& g, long order = 0, int retries = 3) {
    const long D = psi_degree(g.meq_n);
    if (order == 0) order = min_modeq_order(g.meq_n) + 8;
    if (order < min_modeq_order(g.meq_n))
        throw DomainError("find_modular_equation needs order >= " + std::to_string(min_modeq_order(g.meq_n)));
    for (int attempt = 0;; ++attempt) {
        auto kernel = detail::relation_kernel(g, D, order);
        if (kernel.empty()) throw VerificationFailure(g.label + ": no modular equation found (order too low or degree wrong)");
        if (kernel.size() > 1) {
            if (attempt >= retries)
                throw VerificationFailure(g.label + ": relation space has dimension " + std::to_string(kernel.size()) +
                                          " at order " + std::to_string(order));
            order *= 2;
            continue;
        }
        std::vector<BigInt>& v = kernel[0];
        const std::size_t lead = static_cast<std::size_t>(D); // (i, j) = (0, D)
        if (v[lead] == 0) throw VerificationFailure(g.label + ": relation is not monic in Y");
        if (v[lead] < 0)
            for (auto& c : v) c = -c;
        if (v[lead] != 1) throw VerificationFailure(g.label + ": Y^psi coefficient is " + v[lead].get_str() + ", not 1");
        std::vector<std::vector<BigInt>> c(static_cast<std::size_t>(D + 1), std::vector<BigInt>(static_cast<std::size_t>(D + 1)));
        for (long i = 0; i <= D; ++i)
            for (long j = 0; j <= D; ++j) c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(i * (D + 1) + j)];
        ModularEquation psi(g.meq_n, std::move(c));
        if (!psi.is_symmetric()) throw VerificationFailure(g.label + ": discovered relation is not symmetric: " + psi.to_string());
        return psi;
    }
}

/// Psi(x, y) as a q-series.
template <SeriesCoefficient T>
FractionalQSeries<T> annihilation_residual(const ModularEquation& psi, const FractionalQSeries<T>& x,
                                           const FractionalQSeries<T>& y) {
    using S = FractionalQSeries<T>;
    const long K = std::max(x.order(), y.order()) + 1;
    auto constant = [&](const BigInt& c) { return S::constant(T(BigRational(c)), K); };
    S acc = constant(0);
    for (int j = psi.degree_y(); j >= 0; --j) {
        S row = constant(0);
        for (int i = psi.degree_x(); i >= 0; --i) row = row * x + constant(psi.coeff(i, j));
        acc = acc * y + row;
    }
    return acc;
}

/// Psi(x(tau), x(n tau)) through q^order; zero for a correct Psi.
inline RationalSeries verify_annihilation(const ModularEquation& psi, const GroupRecord& g, long order) {
    RationalSeries x = hauptmodul_x(g, order + 1);
    return annihilation_residual(psi, x, substitute_qn(x, psi.n()));
}

/// Elementary symmetric functions of the conjugates of x and the modular
/// equation reassembled from them.
struct SymmetricCheck {
    std::vector<Poly> e; // e_1 .. e_psi as polynomials in x
    ModularEquation psi;
};

/// Builds the conjugates x(n tau) and x((tau + beta)/n), forms their
/// elementary symmetric functions, verifies that the irrational and
/// fractional-exponent parts cancel, and recognizes each as a polynomial in x.
inline SymmetricCheck symmetric_function_check(const GroupRecord& g, long order = 40) {
    const long n = g.meq_n;
    if (n != 2 && n != 3) throw Unsupported("symmetric_function_check supports n in {2, 3}");
    const long D = psi_degree(n);
    RationalSeries x = hauptmodul_x(g, n * (order + D) + 1);
    std::vector<QuadSeries> conj;
    conj.push_back(to_quad(substitute_qn(x, n)));
    for (long beta = 0; beta < n; ++beta) conj.push_back(substitute_root(x, n, beta));
    if (static_cast<long>(conj.size()) != D) throw Error("conjugate count does not match psi(n)");

    const long K = n * (order + D) + 1;
    std::vector<QuadSeries> e(static_cast<std::size_t>(D + 1), QuadSeries::constant(QuadExt(0), K));
    e[0] = QuadSeries::constant(QuadExt(1), K);
    for (const QuadSeries& r : conj)
        for (long k = D; k >= 1; --k) e[static_cast<std::size_t>(k)] = e[static_cast<std::size_t>(k)] + r * e[static_cast<std::size_t>(k - 1)];

    RationalSeries xr = hauptmodul_x(g, order + D + 1);
    SymmetricCheck out;
    std::vector<Poly> rows(static_cast<std::size_t>(D + 1));
    rows[static_cast<std::size_t>(D)] = Poly({1});
    for (long k = 1; k <= D; ++k) {
        RationalSeries ek;
        try {
            ek = to_integral_exponents(rational_part(e[static_cast<std::size_t>(k)]));
        } catch (const VerificationFailure& err) {
            throw VerificationFailure(g.label + ": e_" + std::to_string(k) + " is not Galois-stable: " + err.what());
        }
        Poly p = express_in_x(ek, xr, static_cast<int>(D));
        out.e.push_back(p);
        rows[static_cast<std::size_t>(D - k)] = (k % 2 == 0 ? BigRational(1) : BigRational(-1)) * p;
    }
    out.psi = ModularEquation(n, rows);
    return out;
}

namespace detail {

inline std::vector<BigInt> divisors(BigInt n) {
    n = abs(n);
    std::vector<BigInt> out;
    for (BigInt d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

/// Primitive integral multiple of p with positive leading coefficient.
inline Poly primitive(const Poly& p) {
    BigInt den = 1, g = 0;
    for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
    for (const auto& c : p.coeffs()) g = gcd(g, BigRational(c * BigRational(den)).get_num());
    BigRational s = BigRational(den) / BigRational(g);
    if (p.coeffs().back() < 0) s = -s;
    return s * p;
}

inline std::vector<std::complex<long double>> numeric_roots(const Poly& p) {
    const int n = p.degree();
    std::vector<std::complex<long double>> a;
    long double lc = p.coeffs().back().get_d();
    for (int i = 0; i <= n; ++i) a.emplace_back(p.coeff(i).get_d() / lc);
    std::vector<std::complex<long double>> z(static_cast<std::size_t>(n));
    const std::complex<long double> seed(0.4L, 0.9L);
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, i);
    for (int it = 0; it < 2000; ++it) {
        long double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<long double> num = a[static_cast<std::size_t>(n)];
            for (int k = n - 1; k >= 0; --k) num = num * z[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(k)];
            std::complex<long double> den = 1;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            std::complex<long double> step = num / den;
            z[static_cast<std::size_t>(i)] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-18L) break;
    }
    return z;
}

inline BigInt round_to_int(long double v) {
    return BigInt(static_cast<long>(std::llround(v)));
}

} // namespace detail

/// Roots of Psi(X, X) = 0 with multiplicity: 0, then rational roots, then
/// conjugate pairs from quadratic factors (+sqrt first). Every factor is
/// confirmed by exact division.
inline std::vector<QuadExt> diagonal_roots(const ModularEquation& psi) {
    Poly p = psi.diagonal();
    if (p.is_zero()) throw DomainError("Psi(X, X) is identically zero");
    std::vector<QuadExt> roots;
    while (p.coeff(0) == 0) {
        roots.emplace_back(0);
        p = p.divmod(Poly({0, 1})).first;
    }
    p = detail::primitive(p);

    // Rational roots a/b with a | p(0), b | lc(p).
    bool found = true;
    while (found && p.degree() >= 1) {
        found = false;
        for (const BigInt& a : detail::divisors(p.coeff(0).get_num())) {
            for (const BigInt& b : detail::divisors(p.coeffs().back().get_num())) {
                for (int s : {1, -1}) {
                    BigRational r = make_rational(BigInt(s) * a, b);
                    if (p(r) != 0) continue;
                    roots.emplace_back(r);
                    p = detail::primitive(p.divmod(Poly(std::vector<BigRational>{-r, BigRational(1)})).first);
                    found = true;
                    break;
                }
                if (found) break;
            }
            if (found) break;
        }
    }

    // Quadratic factors a X^2 + b X + c located numerically, confirmed exactly.
    while (p.degree() >= 2) {
        auto z = detail::numeric_roots(p);
        bool split = false;
        for (std::size_t i = 0; i < z.size() && !split; ++i)
            for (std::size_t j = i + 1; j < z.size() && !split; ++j)
                for (const BigInt& a : detail::divisors(p.coeffs().back().get_num())) {
                    long double ad = a.get_d();
                    std::complex<long double> sum = z[i] + z[j], prod = z[i] * z[j];
                    if (std::abs(sum.imag()) > 1e-6L || std::abs(prod.imag()) > 1e-6L) break;
                    Poly q(std::vector<BigRational>{BigRational(detail::round_to_int(ad * prod.real())),
                                                    BigRational(detail::round_to_int(-ad * sum.real())), BigRational(a)});
                    auto [quot, rem] = p.divmod(q);
                    if (!rem.is_zero()) continue;
                    BigInt A = a, B = q.coeff(1).get_num(), C = q.coeff(0).get_num();
                    BigInt disc = B * B - 4 * A * C;
                    auto [d, f] = squarefree_decompose(disc);
                    if (d == 1) throw Error("quadratic factor with rational roots survived root search");
                    BigRational re = make_rational(-B, 2 * A), im = make_rational(f, 2 * A);
                    roots.emplace_back(re, im, d.get_si());
                    roots.emplace_back(re, -im, d.get_si());
                    p = detail::primitive(quot);
                    split = true;
                    break;
                }
        if (!split) throw Unsupported("Psi(X, X) has a factor that does not split into quadratics: " + p.to_string("X"));
    }
    if (p.degree() == 1) throw Error("linear factor survived rational root search");
    return roots;
}

/// Psi(x0, x0) == 0 exactly.
inline bool is_diagonal_root(const ModularEquation& psi, const QuadExt& x0) { return psi.eval(x0, x0).is_zero(); }

} // namespace rsato
