#include <gtest/gtest.h>

#include <random>

#include "rsato/qseries/eta.hpp"
#include "rsato/qseries/poly.hpp"
#include "rsato/qseries/series.hpp"

using namespace rsato;

namespace {

RationalSeries series(long lead, std::initializer_list<long> c) {
    std::vector<BigRational> v;
    for (long x : c) v.emplace_back(x);
    return RationalSeries(BigRational(lead), 1, std::move(v));
}

std::vector<BigRational> ints(std::initializer_list<long> c) {
    std::vector<BigRational> v;
    for (long x : c) v.emplace_back(x);
    return v;
}

EtaQuotientSpec x_39() { return {{{1, 1}, {39, 1}, {3, -1}, {13, -1}}, 1}; }

RationalSeries random_series(std::mt19937_64& rng, long K) {
    std::uniform_int_distribution<long> c(-50, 50);
    std::vector<BigRational> v;
    v.emplace_back(c(rng) == 0 ? 1 : 3);
    for (long i = 1; i < K; ++i) v.emplace_back(make_rational(c(rng), 1 + (c(rng) + 50) % 7));
    return RationalSeries(BigRational(0), 1, std::move(v));
}

} // namespace

TEST(Series, GeometricInverse) {
    RationalSeries inv = series_inv(series(0, {1, -1, 0, 0, 0, 0}));
    EXPECT_EQ(inv.coeffs(), ints({1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(inv.lead_exp(), 0);
}

TEST(Series, LaurentBookkeeping) {
    RationalSeries a = series(-1, {1, 1, 0, 0});
    RationalSeries q = series(1, {1, 0, 0, 0});
    RationalSeries p = a * q;
    EXPECT_EQ(p.lead_exp(), 0);
    EXPECT_EQ(p.coeffs(), ints({1, 1, 0, 0}));
}

TEST(Series, InverseOfZeroThrows) {
    EXPECT_THROW(series_inv(series(0, {0, 0, 0})), DomainError);
    EXPECT_THROW(q_log_derivative(series(0, {0, 0})), DomainError);
}

TEST(Series, AdditionAlignsGrids) {
    RationalSeries half(BigRational(make_rational(1, 2)), 1, ints({1, 0, 0}));
    RationalSeries one = series(1, {1, 0, 0});
    RationalSeries s = half + one;
    EXPECT_EQ(s.ramification(), 2);
    EXPECT_EQ(s.lead_exp(), make_rational(1, 2));
    EXPECT_EQ(s.coeff(make_rational(1, 2)), 1);
    EXPECT_EQ(s.coeff(BigRational(1)), 1);
    EXPECT_EQ(s.coeff(make_rational(3, 2)), 0);
    EXPECT_EQ(s.precision(), make_rational(7, 2));
}

TEST(Series, PrecisionTracksMinimum) {
    RationalSeries a = series(0, {1, 2, 3, 4, 5, 6, 7, 8});
    RationalSeries b = series(0, {1, 1, 1});
    EXPECT_EQ((a * b).order(), 3);
    EXPECT_EQ((a + b).order(), 3);
    EXPECT_THROW((a * b).coeff(BigRational(3)), DomainError);
}

TEST(Series, LogDerivative) {
    RationalSeries q = series(1, {1, 0, 0, 0});
    RationalSeries one = q_log_derivative(q);
    EXPECT_EQ(one.coeffs(), ints({1, 0, 0, 0}));
    RationalSeries pole = series(-1, {1, 3, 1, 2});
    RationalSeries r = q_log_derivative(pole);
    EXPECT_EQ(r.lead_exp(), 0);
    EXPECT_EQ(r.coeffs()[0], -1);
}

TEST(Series, SqrtOfSquare) {
    RationalSeries s = series(0, {1, 1, 0, 0, 0, 0});
    EXPECT_EQ(series_sqrt(s * s).coeffs(), s.coeffs());
    EXPECT_EQ(series_sqrt(series(0, {1, 0, 0})).coeffs(), ints({1, 0, 0}));
    EXPECT_THROW(series_sqrt(series(0, {4, 1})), DomainError);
}

TEST(Series, SubstituteQn) {
    RationalSeries s = series(1, {1, 1});
    RationalSeries t = substitute_qn(s, 2);
    EXPECT_EQ(t.lead_exp(), 2);
    EXPECT_EQ(t.coeff(BigRational(4)), 1);
    EXPECT_EQ(t.coeff(BigRational(3)), 0);
    EXPECT_EQ(t.precision(), BigRational(6));
    RationalSeries c = RationalSeries::constant(BigRational(5), 4);
    EXPECT_EQ(substitute_qn(c, 3).coeff(BigRational(0)), 5);
}

TEST(Series, SubstituteRoot) {
    QuadSeries r = substitute_root(series(1, {1}), 2, 1);
    EXPECT_EQ(r.lead_exp(), make_rational(1, 2));
    EXPECT_EQ(r.coeffs()[0], QuadExt(-1));
    QuadSeries c = substitute_root(RationalSeries::constant(BigRational(7), 3), 3, 2);
    EXPECT_EQ(c.coeff(BigRational(0)), QuadExt(7));
    EXPECT_THROW(substitute_root(series(1, {1}), 5, 1), Unsupported);
}

TEST(Series, RingAxiomsProperty) {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 20; ++t) {
        RationalSeries a = random_series(rng, 12), b = random_series(rng, 10), c = random_series(rng, 14);
        EXPECT_EQ(((a * b) * c).coeffs(), (a * (b * c)).coeffs());
        EXPECT_EQ((a * (b + c)).coeffs(), (a * b + a * c).coeffs());
        RationalSeries one = a * series_inv(a);
        EXPECT_EQ(one.coeffs()[0], 1);
        for (std::size_t i = 1; i < one.coeffs().size(); ++i) EXPECT_EQ(one.coeffs()[i], 0);
        std::vector<BigRational> v = a.coeffs();
        for (auto& x : v) x /= a.coeffs()[0];
        RationalSeries monic(BigRational(0), 1, v);
        RationalSeries sq = series_sqrt(monic);
        EXPECT_EQ((sq * sq).coeffs(), monic.coeffs());
    }
}

TEST(Eta, ThirtyNineExample) {
    RationalSeries x = eta_quotient(x_39(), 8);
    EXPECT_EQ(x.lead_exp(), 1);
    EXPECT_EQ(x.truncated(7).coeffs(), ints({1, -1, -1, 1, -1, 0, 2}));
    EXPECT_EQ(x.order(), 8);
}

TEST(Eta, EmptySpecIsOne) {
    RationalSeries one = eta_quotient(EtaQuotientSpec{{}, 1}, 5);
    EXPECT_EQ(one.coeffs(), ints({1, 0, 0, 0, 0}));
    EXPECT_EQ(one.lead_exp(), 0);
}

TEST(Eta, SingleEta) {
    RationalSeries e = eta_quotient(EtaQuotientSpec{{{1, 1}}, 1}, 6);
    EXPECT_EQ(e.lead_exp(), make_rational(1, 24));
    EXPECT_EQ(e.coeffs(), ints({1, -1, -1, 0, 0, 1}));
}

TEST(Eta, FractionalLeadCancelsUnderPower) {
    // 14+7 before cubing: lead exponent (1 + 7 - 2 - 14)/24 = -1/3, cubed to -1
    EtaQuotientSpec inner{{{1, 1}, {7, 1}, {2, -1}, {14, -1}}, 1};
    RationalSeries s = eta_quotient(inner, 10);
    EXPECT_EQ(s.lead_exp(), make_rational(-1, 3));
    EXPECT_EQ(series_pow(s, 3).lead_exp(), -1);
}

TEST(Eta, StableUnderLongerExpansion) {
    RationalSeries a = eta_quotient(x_39(), 40), b = eta_quotient(x_39(), 56);
    for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(a.coeffs()[i], b.coeffs()[i]);
}

TEST(Eta, ZFromLogDerivative) {
    RationalSeries x = eta_quotient(x_39(), 24);
    RationalSeries lq = q_log_derivative(x);
    Poly w = Poly::product({{1, 1}, {1, 1}, {1, -7, 11, -7, 1}, {1, 1, -1, 1, 1}});
    RationalSeries z = lq * series_inv(series_sqrt(compose(w, x)));
    EXPECT_EQ(z.truncated(5).coeffs(), ints({1, 1, 3, 1, 5}));
}

TEST(Eta, SymmetricFunctionForThirtyNine) {
    RationalSeries x = eta_quotient(x_39(), 40);
    QuadSeries sum = to_quad(substitute_qn(x, 2)) + substitute_root(x, 2, 0) + substitute_root(x, 2, 1);
    RationalSeries rs = to_integral_exponents(rational_part(sum));
    RationalSeries expected = compose(Poly{0, -2, 1}, x);
    for (long k = 0; k < 20; ++k) EXPECT_EQ(rs.coeff(BigRational(k)), expected.coeff(BigRational(k))) << k;
}

TEST(Express, RoundTrip) {
    RationalSeries x = eta_quotient(x_39(), 30);
    Poly p = express_in_x(compose(Poly{0, 3, 1}, x), x, 4);
    EXPECT_EQ(p, (Poly{0, 3, 1}));
    RationalSeries qq = series(1, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    EXPECT_EQ(express_in_x(qq, qq, 1), (Poly{0, 1}));
}

TEST(Express, RejectsNonPolynomial) {
    RationalSeries x = eta_quotient(x_39(), 30);
    RationalSeries s = series_inv(RationalSeries::constant(BigRational(1), 31) - x);
    try {
        express_in_x(s, x, 5);
        FAIL();
    } catch (const NotPolynomial& e) {
        EXPECT_EQ(e.first_failing_exponent, 6);
    }
}

TEST(Poly, Basics) {
    Poly p{0, 2, 17, -48};
    EXPECT_EQ(p.to_string(), "2x + 17x^2 - 48x^3");
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(Poly().degree(), Poly::kZeroDegree);
    auto [q, r] = (Poly{-1, 0, 1}).divmod(Poly{-1, 1});
    EXPECT_EQ(q, (Poly{1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(p(BigRational(1)), BigRational(-29));
}
