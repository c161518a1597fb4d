#include <gtest/gtest.h>

#include <map>
#include <string>

#include "rsato/registry/builtin.hpp"
#include "rsato/registry/group_file.hpp"
#include "rsato/registry/radical.hpp"

using namespace rsato;

namespace {

BallReal dec_ball(const char* s, long prec = kDefaultPrecision) { return BallReal::from_rational(parse_decimal(s), prec); }

// Closed forms of B and C evaluated independently at 60 digits.
const std::map<std::string, std::pair<const char*, const char*>> kConstants = {
    {"14+7", {"0.265686516701557057123788184771", "0.0313730334031141142475763695411"}},
    {"14+14", {"0.603595632461275574428118200185", "0.14259185331151895827503743819"}},
    {"15+15", {"0.348159752413052495786949784235", "0.101973630545553623198357818258"}},
    {"16+", {"0.494897427831780981972840747059", "0.090815370097205767551113344706"}},
    {"20+20", {"0.533135948652954107417678066443", "0.184091556040532054300761022483"}},
    {"21+21", {"0.256864656126800839427528857969", "0.0707033139571378189741891248234"}},
    {"22+11", {"0.169872981077806766181384146235", "0.00961894323342029854415243870596"}},
    {"26+26", {"0.366551067085640061947668858726", "0.0907899226276551792185626600774"}},
    {"35+35", {"0.19706590301898763056657283055", "0.0825432546890487785995945207516"}},
    {"39+39", {"0.168955443105566504767505317841", "0.0639799891489442798798743618131"}},
};

bool agrees(const BallReal& got, const char* oracle, const char* tol = "1e-28") {
    return got.overlaps(dec_ball(oracle).widened(parse_decimal(tol)));
}

const char* kMinimal = R"(# 39+39 without expectations
[group]
label = 39+39
level = 39

[eta]
factors = 3:1 13:1 1:-1 39:-1
power = 1

[w]
coeffs = 1 -4 -8 12 4 -22 4 12 -8 -4 1

[R]
coeffs = 0 2 17 -48 -25 194 -45 -168 137 82 -25

[modeq]
n = 2

[cm]
tau0 = (0 + sqrt(-78))/39
gamma = 0 -1 39 0
A = 1 0 0 2
)";

} // namespace

TEST(Registry, TenGroupsInCanonicalOrder) {
    std::vector<std::string> expected = {"14+7",  "14+14", "15+15", "16+",   "20+20",
                                         "21+21", "22+11", "26+26", "35+35", "39+39"};
    EXPECT_EQ(builtin_labels(), expected);
}

TEST(Registry, Group39Shape) {
    const GroupRecord& g = find_group("39+39");
    EXPECT_EQ(g.level, 39);
    EXPECT_EQ(g.meq_n, 2);
    EXPECT_EQ(g.w.degree(), 10);
    EXPECT_EQ(g.R.degree(), 10);
    EXPECT_EQ(g.w, Poly::product({{1, 1}, {1, 1}, {1, -7, 11, -7, 1}, {1, 1, -1, 1, 1}}));
    EXPECT_EQ(g.R, Poly({0, 2, 17, -48, -25, 194, -45, -168, 137, 82, -25}));
    EXPECT_EQ(g.expected_psi->to_string(), "Y^3 + (2X − X^2)Y^2 + (−X + 2X^2)Y + X^3");
    EXPECT_EQ(*g.expected_x0, QuadExt(BigRational(3), BigRational(-2), 2));
}

TEST(Registry, Group26FractionalInitials) {
    const GroupRecord& g = find_group("26+26");
    std::vector<BigRational> expected;
    for (const char* s : {"1", "5/2", "59/8", "497/16", "19539/128", "207051/256", "4623151/1024"})
        expected.push_back(parse_rational(s));
    EXPECT_EQ(g.expected_initials, expected);
    std::vector<BigRational> p7;
    for (const char* s : {"343/4", "-147/2", "21", "-2"}) p7.push_back(parse_rational(s));
    EXPECT_EQ(g.expected_recurrence.back(), Poly(p7));
}

TEST(Registry, UnknownLabel) {
    EXPECT_THROW(find_group("no-such-group"), UnknownGroup);
}

TEST(Registry, AtkinLehnerIndices) {
    EXPECT_EQ(find_group("16+").atkin_lehner(), std::vector<long>{16});
    EXPECT_EQ(find_group("14+7").atkin_lehner(), std::vector<long>{7});
    GroupRecord g = find_group("20+20");
    g.label = "20+";
    EXPECT_EQ(g.atkin_lehner(), (std::vector<long>{4, 5, 20}));
}

TEST(Registry, FixedPointsHoldExactly) {
    for (const GroupRecord& g : load_builtin()) {
        EXPECT_TRUE(g.cm.verify_fixed_point()) << g.label;
        EXPECT_NE(g.cm.c_prime(), 0) << g.label;
        EXPECT_EQ(g.cm.M().det() * g.cm.gamma.det(), g.meq_n) << g.label;
    }
}

TEST(Registry, Group14M) {
    RatMat2 m = find_group("14+7").cm.M();
    EXPECT_EQ(m.a, -1);
    EXPECT_EQ(m.b, make_rational(-5, 7));
    EXPECT_EQ(m.c, 2);
    EXPECT_EQ(m.d, 1);
}

TEST(Registry, ClosedFormsEvaluate) {
    for (const GroupRecord& g : load_builtin()) {
        const auto& [B, C] = kConstants.at(g.label);
        BallReal b = eval_radical(*g.expected_B);
        BallReal c = eval_radical(*g.expected_C);
        EXPECT_TRUE(agrees(b, B)) << g.label << " B = " << b.to_string(30);
        EXPECT_TRUE(agrees(c, C)) << g.label << " C = " << c.to_string(30);
        EXPECT_TRUE(b.is_positive()) << g.label;
    }
}

TEST(Radical, ParsePrintRoundTrip) {
    for (const char* s : {"sqrt(4)", "3/2*sqrt(4 - 3*sqrt(7)/2)", "-(1 + 2)^3", "2*(-2 + sqrt(6))*sqrt(1/3*(5 - 2*sqrt(6)))"}) {
        RadicalExpr e = RadicalExpr::parse(s);
        EXPECT_EQ(RadicalExpr::parse(e.to_string()), e) << s;
    }
    EXPECT_TRUE(eval_radical(RadicalExpr::parse("sqrt(4)")).contains(BallReal::from_long(2)));
    EXPECT_TRUE(eval_radical(RadicalExpr::parse("-(1 + 2)^3")).contains(BallReal::from_long(-27)));
}

TEST(Radical, Errors) {
    EXPECT_THROW(RadicalExpr::parse("sqrt(2"), ParseError);
    EXPECT_THROW(RadicalExpr::parse("2 +"), ParseError);
    EXPECT_THROW(RadicalExpr::parse("2 $ 3"), ParseError);
    try {
        eval_radical(RadicalExpr::parse("sqrt(1 - 2)"));
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("1 - 2"), std::string::npos) << e.what();
    }
}

TEST(GroupFile, RoundTripsEveryBuiltin) {
    for (const GroupRecord& g : load_builtin()) EXPECT_EQ(load_text(serialize(g)), g) << g.label;
}

TEST(GroupFile, Group15KeepsCorrectedEta) {
    const GroupRecord& g = find_group("15+15");
    GroupRecord h = load_text(serialize(g));
    EXPECT_EQ(h.eta, g.eta);
    EXPECT_EQ(h.eta.lead_exponent(), -1);
    EXPECT_FALSE(h.notes.empty());
}

TEST(GroupFile, MinimalRecord) {
    GroupRecord g = load_text(kMinimal);
    const GroupRecord& b = find_group("39+39");
    EXPECT_EQ(g.w, b.w);
    EXPECT_EQ(g.R, b.R);
    EXPECT_EQ(g.cm, b.cm);
    EXPECT_FALSE(g.expected_psi.has_value());
    EXPECT_TRUE(g.expected_initials.empty());
}

TEST(GroupFile, UnknownKeyReportsPosition) {
    std::string text = kMinimal;
    text.replace(text.find("power = 1"), 9, "powr = 1");
    try {
        load_text(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 8);
        EXPECT_EQ(e.column, 1);
        EXPECT_NE(std::string(e.what()).find("powr"), std::string::npos);
    }
}

TEST(GroupFile, BadTokenReportsColumn) {
    std::string text = kMinimal;
    text.replace(text.find("coeffs = 1 -4"), 13, "coeffs = 1 x4");
    try {
        load_text(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line, 11);
        EXPECT_EQ(e.column, 12);
    }
}

TEST(GroupFile, RejectsUnknownSectionAndMissingKey) {
    EXPECT_THROW(load_text(std::string(kMinimal) + "\n[extra]\nk = 1\n"), ParseError);
    std::string text = kMinimal;
    text.erase(text.find("n = 2"), 5);
    EXPECT_THROW(load_text(text), ParseError);
}

TEST(Validate, RejectsNonCoprimeDegree) {
    GroupRecord g = find_group("39+39");
    g.meq_n = 3;
    g.cm.A = {1, 0, 0, 3};
    try {
        validate(g);
        FAIL() << "expected InvariantViolation";
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.field, "meq_n");
    }
}

TEST(Validate, RejectsBadConstantTerms) {
    GroupRecord g = find_group("39+39");
    g.w = g.w + Poly({1});
    EXPECT_THROW(validate(g), InvariantViolation);
    g = find_group("39+39");
    g.R = g.R + Poly({1});
    EXPECT_THROW(validate(g), InvariantViolation);
}

TEST(Validate, RejectsBrokenFixedPoint) {
    GroupRecord g = find_group("39+39");
    g.cm.A = {2, 0, 0, 1};
    try {
        validate(g);
        FAIL() << "expected InvariantViolation";
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.field, "cm");
    }
}

TEST(Validate, RejectsWrongEtaNormalization) {
    GroupRecord g = find_group("15+15");
    g.eta = {{{1, 1}, {5, 1}, {3, -1}, {15, -1}}, 3};
    EXPECT_THROW(validate(g), InvariantViolation);
}
