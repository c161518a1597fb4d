#include <gtest/gtest.h>

#include <random>

#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/pi.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/numerics/rational.hpp"

using namespace rsato;

namespace {

BigRational dec(const char* s) { return parse_decimal(s); }

BigRational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 100000);
    return make_rational(num(rng), den(rng));
}

} // namespace

TEST(Rational, CanonicalForm) {
    BigRational r = make_rational(6, -4);
    EXPECT_EQ(r.get_num(), -3);
    EXPECT_EQ(r.get_den(), 2);
    EXPECT_EQ(to_string(r), "-3/2");
    EXPECT_EQ(to_string(make_rational(4, 2)), "2");
}

TEST(Rational, ParseForms) {
    EXPECT_EQ(parse_rational("5/2", 1, 1), make_rational(5, 2));
    EXPECT_EQ(parse_rational("-7", 1, 1), BigRational(-7));
    EXPECT_EQ(parse_decimal("0.125"), make_rational(1, 8));
    EXPECT_EQ(parse_decimal("-2.5e-3"), make_rational(-1, 400));
    EXPECT_THROW(parse_rational("1/0", 1, 1), ParseError);
    EXPECT_THROW(parse_rational("abc", 1, 1), ParseError);
}

TEST(Rational, SquarefreeDecomposition) {
    auto [s, f] = squarefree_decompose(BigInt(7501 * 4));
    EXPECT_EQ(s * f * f, BigInt(7501 * 4));
    EXPECT_TRUE(is_squarefree(s.get_si()));
    auto [s2, f2] = squarefree_decompose(BigInt(-12));
    EXPECT_EQ(s2, -3);
    EXPECT_EQ(f2, 2);
}

TEST(Rational, ExactnessProperty) {
    std::mt19937_64 rng(20240607);
    for (int i = 0; i < 500; ++i) {
        BigRational p = random_rational(rng), q = random_rational(rng);
        EXPECT_EQ(BigRational((p + q) - q), p);
        if (q != 0) EXPECT_EQ(BigRational((p * q) / q), p);
    }
}

TEST(QuadExt, Arithmetic) {
    QuadExt x = QuadExt(3) - QuadExt(0, 2, 2); // 3 - 2 sqrt2
    EXPECT_EQ(x.norm(), BigRational(1));
    QuadExt inv = QuadExt(1) / x;
    EXPECT_EQ(inv, QuadExt(3, 2, 2));
    EXPECT_EQ(x * inv, QuadExt(1));
    EXPECT_EQ(x.to_string(), "3 - 2*sqrt(2)");
}

TEST(QuadExt, ExactSign) {
    EXPECT_EQ((QuadExt(-3) + QuadExt::sqrt_of(7)).sign(), -1);
    EXPECT_EQ((QuadExt(3) - QuadExt(0, 2, 2)).sign(), 1);
    EXPECT_EQ(QuadExt(0).sign(), 0);
    EXPECT_THROW(QuadExt::sqrt_of(-3).sign(), DomainError);
}

TEST(QuadExt, FieldMismatchIsTyped) {
    EXPECT_THROW(QuadExt::sqrt_of(2) + QuadExt::sqrt_of(3), FieldMismatch);
    EXPECT_NO_THROW(QuadExt::sqrt_of(2) + QuadExt(make_rational(1, 2)));
    EXPECT_THROW(QuadExt(1, 1, 4), DomainError);
    EXPECT_THROW(QuadExt(1, 1, 1), DomainError);
}

TEST(QuadExt, CubeRootOfUnity) {
    QuadExt z = zeta3();
    EXPECT_EQ(z * z * z, QuadExt(1));
    EXPECT_EQ(QuadExt(1) + z + z * z, QuadExt(0));
}

TEST(QuadExt, ConjugateNormContainment) {
    std::mt19937_64 rng(7);
    for (long d : {2L, 3L, 6L, 7L, 13L, 21L}) {
        for (int i = 0; i < 20; ++i) {
            QuadExt x(random_rational(rng), random_rational(rng), d);
            BallReal prod = quad_eval(x, 128) * quad_eval(x.conj(), 128);
            EXPECT_TRUE(prod.contains(x.norm())) << x.to_string();
        }
    }
}

TEST(QuadEval, Oracles) {
    BallReal a = quad_eval(QuadExt(3, -2, 2), 64);
    EXPECT_TRUE(a.overlaps(BallReal::from_rational(dec("0.17157287525380990239662255158060384286"), 200)));
    EXPECT_LT(a.rad().to_rational(), dec("1e-17"));
    BallReal b = quad_eval(QuadExt(make_rational(-3, 4), make_rational(1, 4), 7), 64);
    EXPECT_TRUE(b.is_negative());
    EXPECT_TRUE(b.overlaps(BallReal::from_rational(dec("-0.08856217223385235237459606159018"), 200)));
    BallReal z = quad_eval(QuadExt(0, 0, 2), 64);
    EXPECT_TRUE(z.is_exact());
    EXPECT_TRUE(z.contains_zero());
}

TEST(Ball, SoundnessProperty) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        BigRational p = random_rational(rng), q = random_rational(rng);
        BallReal bp = BallReal::from_rational(p, 64), bq = BallReal::from_rational(q, 64);
        EXPECT_TRUE((bp + bq).contains(BigRational(p + q)));
        EXPECT_TRUE((bp - bq).contains(BigRational(p - q)));
        EXPECT_TRUE((bp * bq).contains(BigRational(p * q)));
        if (q != 0) EXPECT_TRUE((bp / bq).contains(BigRational(p / q)));
    }
}

TEST(Ball, SqrtOracles) {
    BallReal two = ball_sqrt(BallReal::from_long(4));
    EXPECT_TRUE(two.contains(BigRational(2)));
    EXPECT_THROW(ball_sqrt(BallReal::from_interval(BigRational(-1), BigRational(1)), "w(x0)"),
                 DomainError);
    try {
        ball_sqrt(BallReal::from_long(0), "w(x0)");
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("w(x0)"), std::string::npos);
    }
    BallReal w = BallReal::from_rational(dec("0.139220"), 128);
    BallReal r = ball_sqrt(w);
    EXPECT_TRUE((r * r).overlaps(w));
}

TEST(Ball, ExpCosSin) {
    BallReal one = BallReal::from_long(1, 128);
    BallReal e = ball_exp(one);
    EXPECT_TRUE(e.overlaps(BallReal::from_rational(dec("2.718281828459045235360287471352662497757"), 256)));
    BallReal c = ball_cos(one), s = ball_sin(one);
    EXPECT_TRUE((c * c + s * s).contains(BigRational(1)));
}

TEST(RefPi, Oracles) {
    BallReal p64 = ref_pi(64);
    EXPECT_TRUE(p64.overlaps(BallReal::from_rational(dec("3.14159265358979323846264338327950288"), 256)));
    BallReal p16 = ref_pi(16);
    EXPECT_TRUE(p16.contains(dec("3.14159265358979323846")));
    EXPECT_LE(p16.rad().to_rational(), make_rational(1, 4096));
    BallReal p32 = ref_pi(32), p256 = ref_pi(256);
    EXPECT_TRUE(p32.contains(p256.mid().to_rational()));
    EXPECT_LE(p256.rad().to_rational(), BigRational(1) / BigRational(BigInt(1) << 252));
    EXPECT_THROW(ref_pi(15), DomainError);
}

TEST(RefPi, NestedAcrossPrecisions) {
    BallReal lo = ref_pi(100), hi = ref_pi(400);
    EXPECT_TRUE(lo.contains(hi));
}

TEST(RefPi, IndependentMachinFormulaAgrees) {
    // pi/4 = 4 arctan(1/5) - arctan(1/239) vs pi/4 = arctan(1/2) + arctan(1/3)
    const long prec = 200;
    BallReal a = ref_pi(prec);
    BallReal b = (arctan_inverse(2, prec) + arctan_inverse(3, prec)) * BigRational(4);
    EXPECT_TRUE(a.overlaps(b));
}

TEST(Separation, DigitsBelow) {
    EXPECT_EQ(decimal_digits_below(dec("1e-10")), 10);
    EXPECT_EQ(decimal_digits_below(dec("2e-10")), 9);
    EXPECT_EQ(decimal_digits_below(BigRational(2)), 0);
}
