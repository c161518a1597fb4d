#pragma once

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/modeq/modular_equation.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/numerics/rational.hpp"
#include "rsato/qseries/eta.hpp"
#include "rsato/qseries/poly.hpp"
#include "rsato/registry/radical.hpp"

namespace rsato {

/// Row-major 2x2 matrix (a b; c d).
template <class T>
struct Mat2 {
    T a, b, c, d;
    T det() const { return a * d - b * c; }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

using IntMat2 = Mat2<long>;
using RatMat2 = Mat2<BigRational>;

inline RatMat2 to_rational(const IntMat2& m) { return {BigRational(m.a), BigRational(m.b), BigRational(m.c), BigRational(m.d)}; }

inline RatMat2 operator*(const RatMat2& x, const RatMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline RatMat2 inverse(const RatMat2& m) {
    BigRational det = m.det();
    if (det == 0) throw DomainError("singular matrix");
    return {m.d / det, -m.b / det, -m.c / det, m.a / det};
}

/// Moebius action on a quadratic number: (a tau + b)/(c tau + d).
inline QuadExt mobius(const RatMat2& m, const QuadExt& tau) {
    return (QuadExt(m.a) * tau + QuadExt(m.b)) / (QuadExt(m.c) * tau + QuadExt(m.d));
}

/// CM point and the matrices relating it to its image under the modular
/// correspondence: gamma tau0 = A tau0 with gamma an Atkin-Lehner element of
/// determinant e and A = (alpha beta; 0 delta), alpha*delta = n.
struct CMData {
    QuadExt tau0;
    IntMat2 gamma{};
    IntMat2 A{};

    /// M = gamma^{-1} A; its bottom row is (c', d').
    RatMat2 M() const { return inverse(to_rational(gamma)) * to_rational(A); }
    BigRational c_prime() const { return M().c; }
    BigRational d_prime() const { return M().d; }

    /// (p, d, r) with tau0 = (p + sqrt(d))/r, r > 0.
    std::array<long, 3> pdr() const {
        // tau0 = a + b sqrt(d) with b = 1/r, a = p/r.
        BigRational r = 1 / tau0.b();
        BigRational p = tau0.a() * r;
        return {p.get_num().get_si(), tau0.d(), r.get_num().get_si()};
    }

    /// gamma tau0 == A tau0, checked exactly in Q(sqrt(d)).
    bool verify_fixed_point() const {
        return mobius(to_rational(gamma), tau0) == mobius(to_rational(A), tau0);
    }

    friend bool operator==(const CMData&, const CMData&) = default;
};

/// One moonshine group with all of its data and expected values.
struct GroupRecord {
    std::string label;
    long level = 0;
    EtaQuotientSpec eta; // t_Gamma; the uniformizer is x = 1/t_Gamma
    Poly w;
    Poly R;
    long meq_n = 0;
    CMData cm;

    std::optional<ModularEquation> expected_psi;
    std::vector<Poly> expected_recurrence; // P_j(n), j = 0..J
    std::vector<BigRational> expected_initials;
    std::optional<RadicalExpr> expected_B;
    std::optional<RadicalExpr> expected_C;
    std::optional<QuadExt> expected_x0;
    std::vector<std::string> notes; // provenance of corrected or ambiguous entries

    /// Spec of x = 1/t_Gamma.
    EtaQuotientSpec x_spec() const {
        EtaQuotientSpec s = eta;
        s.outer_power = -s.outer_power;
        return s;
    }

    /// Atkin-Lehner indices named by the label: "N+e1,e2" or "N+" (all e || N).
    std::vector<long> atkin_lehner() const;

    friend bool operator==(const GroupRecord& a, const GroupRecord& b) {
        return a.label == b.label && a.level == b.level && a.eta == b.eta && a.w == b.w && a.R == b.R &&
               a.meq_n == b.meq_n && a.cm == b.cm && a.expected_psi == b.expected_psi &&
               a.expected_recurrence == b.expected_recurrence && a.expected_initials == b.expected_initials &&
               a.expected_B == b.expected_B && a.expected_C == b.expected_C && a.expected_x0 == b.expected_x0 &&
               a.notes == b.notes;
    }
};

namespace detail {

inline bool exact_divisor(long e, long N) { return e > 0 && N % e == 0 && std::gcd(e, N / e) == 1; }

} // namespace detail

inline std::vector<long> GroupRecord::atkin_lehner() const {
    std::size_t plus = label.find('+');
    if (plus == std::string::npos) throw InvariantViolation(label, "label", "expected N+e form");
    std::vector<long> es;
    std::string rest = label.substr(plus + 1);
    if (rest.empty()) {
        for (long e = 2; e <= level; ++e)
            if (detail::exact_divisor(e, level)) es.push_back(e);
        return es;
    }
    std::size_t start = 0;
    while (start <= rest.size()) {
        std::size_t comma = rest.find(',', start);
        std::string tok = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            std::size_t used = 0;
            long e = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            es.push_back(e);
        } catch (const std::logic_error&) {
            throw InvariantViolation(label, "label", "bad Atkin-Lehner index '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return es;
}

/// Checks every structural invariant; throws InvariantViolation naming the
/// group and the offending field.
inline void validate(const GroupRecord& g) {
    auto fail = [&](const std::string& field, const std::string& detail) {
        throw InvariantViolation(g.label.empty() ? "<unnamed>" : g.label, field, detail);
    };
    if (g.label.empty()) fail("label", "empty");
    if (g.level <= 0) fail("level", "must be positive");
    std::size_t plus = g.label.find('+');
    if (plus == std::string::npos || g.label.substr(0, plus) != std::to_string(g.level))
        fail("label", "must start with the level followed by '+'");
    std::vector<long> es = g.atkin_lehner();
    if (es.empty()) fail("label", "no Atkin-Lehner involution");
    for (long e : es)
        if (!detail::exact_divisor(e, g.level)) fail("label", std::to_string(e) + " is not an exact divisor of the level");

    if (g.meq_n != 2 && g.meq_n != 3) fail("meq_n", "only n = 2 and n = 3 are supported");
    if (std::gcd(g.meq_n, g.level) != 1) fail("meq_n", "gcd(n, N) must be 1");

    if (g.w.coeff(0) != 1) fail("w", "w(0) must be 1");
    if (g.R.coeff(0) != 0) fail("R", "R(0) must be 0");

    if (g.eta.factors.empty()) fail("eta", "empty eta quotient");
    for (const auto& f : g.eta.factors) {
        if (f.scale <= 0) fail("eta", "scales must be positive");
        if (g.level % f.scale != 0) fail("eta", "scale " + std::to_string(f.scale) + " does not divide the level");
    }
    if (g.eta.lead_exponent() != -1)
        fail("eta", "t must be 1/q + O(1); leading exponent is " + to_string(g.eta.lead_exponent()));

    const CMData& cm = g.cm;
    if (cm.tau0.d() >= 0 || cm.tau0.b() <= 0) fail("cm.tau0", "must lie in the upper half plane");
    long e = cm.gamma.det();
    if (std::find(es.begin(), es.end(), e) == es.end())
        fail("cm.gamma", "determinant " + std::to_string(e) + " is not an Atkin-Lehner index of the group");
    if (cm.gamma.a % e != 0 || cm.gamma.d % e != 0 || cm.gamma.c % g.level != 0)
        fail("cm.gamma", "not of the Atkin-Lehner shape (e*a, b; N*c, e*d)");
    if (cm.A.c != 0) fail("cm.A", "must be upper triangular");
    if (cm.A.a * cm.A.d != g.meq_n) fail("cm.A", "alpha*delta must equal n");
    if (cm.A.a <= 0 || cm.A.d <= 0) fail("cm.A", "alpha and delta must be positive");
    if (cm.c_prime() == 0) fail("cm.M", "c' must be nonzero");
    if (!cm.verify_fixed_point()) fail("cm", "gamma*tau0 != A*tau0");

    if (g.expected_psi && g.expected_psi->n() != g.meq_n) fail("psi", "degree n does not match meq_n");
    if (!g.expected_recurrence.empty() && g.expected_initials.size() + 1 < g.expected_recurrence.size())
        fail("initials", "fewer initial values than the recurrence span");
    if (!g.expected_initials.empty() && g.expected_initials[0] != 1) fail("initials", "A_0 must be 1");
}

} // namespace rsato
