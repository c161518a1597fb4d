#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/modeq/discovery.hpp"
#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/pi.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/registry/group.hpp"
#include "rsato/registry/radical.hpp"

namespace rsato {

/// Number of precision doublings tried when a comparison is inconclusive.
inline constexpr int kPrecisionEscalations = 4;

/// Everything that enters 1/pi = sum A_n (B n + C) x0^n for one group.
struct SeriesConstants {
    std::string label;
    long prec = kDefaultPrecision;
    ModularEquation psi;
    QuadExt x0_exact;
    BallReal x0_ball;
    QuadExt y1;
    QuadExt y2;
    BallReal W;
    BallReal dW;
    BallReal B;
    BallReal C;
    BallComplex B_complex;
    BallComplex C_complex;
};

/// Comparison of computed B, C against the closed forms of the registry.
struct TableVerdict {
    bool has_entry = false;
    bool B_agrees = false;
    bool C_agrees = false;
    BallReal B_table;
    BallReal C_table;
    BigRational tolerance;

    bool agrees() const { return has_entry && B_agrees && C_agrees; }
};

/// Checks gamma tau0 = A tau0 exactly, that M = gamma^{-1} A has det n/e
/// and that c' != 0. Throws VerificationFailure naming the failed identity.
inline void verify_fixed_point(const GroupRecord& g) {
    const CMData& cm = g.cm;
    RatMat2 G = to_rational(cm.gamma), A = to_rational(cm.A);
    QuadExt lhs_num = QuadExt(G.a) * cm.tau0 + QuadExt(G.b), lhs_den = QuadExt(G.c) * cm.tau0 + QuadExt(G.d);
    QuadExt rhs_num = QuadExt(A.a) * cm.tau0 + QuadExt(A.b), rhs_den = QuadExt(A.c) * cm.tau0 + QuadExt(A.d);
    if (lhs_num * rhs_den != rhs_num * lhs_den)
        throw VerificationFailure(g.label + ": gamma*tau0 != A*tau0 (cross-multiplied)");
    RatMat2 M = cm.M();
    if (G * M != A) throw VerificationFailure(g.label + ": gamma * M != A");
    if (M.det() * G.det() != A.det()) throw VerificationFailure(g.label + ": det M != n / det gamma");
    if (A.det() != g.meq_n) throw VerificationFailure(g.label + ": det A != n");
    if (M.c == 0) throw VerificationFailure(g.label + ": c' = 0");
}

/// Upper bound of |z| over a complex ball.
inline BigRational complex_mag(const BallComplex& z) { return z.re().mag() + z.im().mag(); }

/// x(tau) = q prod_a prod_k (1 - q^{ak})^{E_a} at q = exp(2 pi i tau), with
/// the truncated tail folded into the radius:
/// |log prod_{k>K} (1 - q^{ak})| <= |q|^{a(K+1)} / (1 - |q|)^2.
inline BallComplex eval_x_at(const GroupRecord& g, const QuadExt& tau, long prec) {
    if (tau.d() >= 0 || tau.b() <= 0) throw DomainError("tau must lie in the upper half plane");
    const long wp = prec + 32;
    BallReal two_pi = ref_pi(wp) * BigRational(2);
    BallComplex t = quad_eval_complex(tau, wp);
    BallReal modulus = ball_exp(-(two_pi * t.im()));
    BallReal angle = two_pi * t.re();
    BallComplex q(modulus * ball_cos(angle), modulus * ball_sin(angle));

    const BigRational qmag = modulus.upper();
    if (qmag >= make_rational(1, 2)) throw Unsupported("|q| >= 1/2 at tau; the product converges too slowly");
    const BigRational target = BigRational(1) / (BigRational(BigInt(1) << static_cast<unsigned long>(wp + 8)));
    const EtaQuotientSpec spec = g.x_spec();

    BallComplex x = q;
    BigRational log_err = 0;
    for (const auto& f : spec.factors) {
        const long E = f.exponent * spec.outer_power;
        if (E == 0) continue;
        BallComplex qa = ball_pow(q, static_cast<unsigned long>(f.scale));
        BallComplex power = qa;
        BallComplex prod(BallReal::from_long(1, wp));
        BigRational mag_a = 1;
        for (long i = 0; i < f.scale; ++i) mag_a *= qmag;
        BigRational tail = mag_a; // |q|^{a(K+1)} for the current K
        const BigRational denom = (1 - qmag) * (1 - qmag);
        while (true) {
            prod = prod * (BallComplex(BallReal::from_long(1, wp)) - power);
            power = power * qa;
            tail *= mag_a;
            if (tail / denom < target) break;
        }
        log_err += abs(BigRational(E)) * tail / denom;
        BallComplex pe = ball_pow(prod, static_cast<unsigned long>(E > 0 ? E : -E));
        x = E > 0 ? x * pe : x / pe;
    }
    // |exp(L) - 1| <= 2|L| for |L| <= 1.
    return x.widened(2 * log_err * complex_mag(x));
}

/// Result of matching the numeric x(tau0) against the exact diagonal roots.
struct X0Selection {
    QuadExt exact;
    BallReal ball;
    BallComplex numeric;
    long prec = kDefaultPrecision;
};

/// Picks the unique root of Psi(X, X) whose enclosure meets the numeric
/// value of x(tau0), doubling the precision while the match is ambiguous.
inline X0Selection select_x0(const GroupRecord& g, const ModularEquation& psi, long prec = kDefaultPrecision) {
    std::vector<QuadExt> roots = diagonal_roots(psi);
    std::vector<QuadExt> distinct;
    for (const QuadExt& r : roots)
        if (std::none_of(distinct.begin(), distinct.end(), [&](const QuadExt& d) { return same_number(d, r); }))
            distinct.push_back(r);
    long p = prec;
    for (int attempt = 0; attempt <= kPrecisionEscalations; ++attempt, p *= 2) {
        BallComplex num = eval_x_at(g, g.cm.tau0, p);
        std::vector<QuadExt> hits;
        for (const QuadExt& r : distinct) {
            BallComplex e = quad_eval_complex(r, p);
            if (e.re().overlaps(num.re()) && e.im().overlaps(num.im())) hits.push_back(r);
        }
        if (hits.size() == 1) {
            if (!num.im().contains_zero()) throw VerificationFailure(g.label + ": x(tau0) is not real: " + num.to_string());
            return {hits[0], quad_eval(hits[0], p), num, p};
        }
        if (hits.empty() && num.re().rad().to_rational() < BigRational(1, 1000000))
            throw VerificationFailure(g.label + ": x(tau0) = " + num.to_string(30) + " is not a root of Psi(X, X)");
    }
    throw VerificationFailure(g.label + ": could not isolate x(tau0) among the diagonal roots");
}

/// y'(x0) and y''(x0) for the branch y(x) through (x0, x0) of Psi(x, y) = 0.
inline std::pair<QuadExt, QuadExt> implicit_derivatives(const ModularEquation& psi, const QuadExt& x0) {
    auto at = [&](int a, int b) { return psi.partial(a, b).eval(x0, x0); };
    QuadExt py = at(0, 1);
    if (py.is_zero()) throw VerificationFailure("singular diagonal point: Psi_Y(x0, x0) = 0");
    QuadExt y1 = -at(1, 0) / py;
    QuadExt y2 = -(at(2, 0) + QuadExt(2) * at(1, 1) * y1 + at(0, 2) * y1 * y1) / py;
    return {y1, y2};
}

/// W = +sqrt(w(x0)) and dW/dx = w'(x0) / (2W).
inline std::pair<BallReal, BallReal> compute_W(const GroupRecord& g, const QuadExt& x0, long prec = kDefaultPrecision) {
    QuadExt wx = g.w(x0);
    if (wx.sign() <= 0) throw DomainError(g.label + ": w(x0) = " + wx.to_string() + " is not positive");
    BallReal W = ball_sqrt(quad_eval(wx, prec), "w(x0)");
    BallReal dW = quad_eval(g.w.derivative()(x0), prec) / (W * BigRational(2));
    return {W, dW};
}

/// B = W (1 - y') (c' tau0 + d') / (i c') and
/// C = B (1 + x0 W'/W + x0 y'' / (y' (1 - y'))), evaluated in complex balls.
inline SeriesConstants compute_BC(const GroupRecord& g, long prec = kDefaultPrecision) {
    verify_fixed_point(g);
    SeriesConstants s;
    s.label = g.label;
    s.psi = find_modular_equation(g);
    X0Selection sel = select_x0(g, s.psi, prec);
    s.prec = sel.prec;
    const long p = s.prec;
    s.x0_exact = sel.exact;
    s.x0_ball = sel.ball;
    if (!is_diagonal_root(s.psi, s.x0_exact)) throw VerificationFailure(g.label + ": Psi(x0, x0) != 0");
    if (!(s.x0_ball.mag() < BigRational(1))) throw VerificationFailure(g.label + ": |x0| >= 1, the series diverges");
    std::tie(s.y1, s.y2) = implicit_derivatives(s.psi, s.x0_exact);
    std::tie(s.W, s.dW) = compute_W(g, s.x0_exact, p);

    const BigRational cp = g.cm.c_prime(), dp = g.cm.d_prime();
    BallComplex tau = quad_eval_complex(g.cm.tau0, p);
    BallComplex lin = tau * cp + BallComplex::from_rational(dp, p);
    BallComplex ic(BallReal(p), BallReal::from_rational(cp, p));
    BallReal one_minus_y1 = quad_eval(QuadExt(1) - s.y1, p);
    s.B_complex = lin / ic * (s.W * one_minus_y1);

    BallReal x0 = s.x0_ball;
    BallReal factor = BallReal::from_long(1, p) + x0 * s.dW / s.W +
                      x0 * quad_eval(s.y2, p) / quad_eval(s.y1 * (QuadExt(1) - s.y1), p);
    s.C_complex = s.B_complex * factor;

    const BigRational imag_tol = BigRational(1) / BigRational(BigInt(1) << static_cast<unsigned long>(p - 8));
    auto require_real = [&](const char* name, const BallComplex& z) {
        if (!z.im().contains_zero() || z.im().mag() > imag_tol)
            throw VerificationFailure(g.label + ": " + name + " is not real: " + z.to_string(30));
    };
    require_real("B", s.B_complex);
    require_real("C", s.C_complex);
    s.B = s.B_complex.re();
    s.C = s.C_complex.re();
    if (!s.B.is_positive()) throw VerificationFailure(g.label + ": B = " + s.B.to_string() + " is not positive");
    return s;
}

/// Balls agree when |mid difference| + both radii <= tol.
inline bool balls_agree(const BallReal& a, const BallReal& b, const BigRational& tol) {
    return separation_bound(a, b) <= tol;
}

inline TableVerdict compare_with_table(const GroupRecord& g, const SeriesConstants& s,
                                       const BigRational& tol = BigRational(1, BigInt("10000000000000000000000000"))) {
    TableVerdict v;
    v.tolerance = tol;
    if (!g.expected_B || !g.expected_C) return v;
    v.has_entry = true;
    v.B_table = eval_radical(*g.expected_B, s.prec);
    v.C_table = eval_radical(*g.expected_C, s.prec);
    v.B_agrees = balls_agree(s.B, v.B_table, tol);
    v.C_agrees = balls_agree(s.C, v.C_table, tol);
    return v;
}

} // namespace rsato
