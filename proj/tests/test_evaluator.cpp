#include <gtest/gtest.h>

#include <map>

#include "rsato/evaluator/evaluator.hpp"

using namespace rsato;

TEST(WorkingPrecision, Formula) {
    EXPECT_EQ(working_precision(30), 166);
    EXPECT_EQ(working_precision(50), 234);
    EXPECT_EQ(working_precision(5), 81);
}

TEST(SumSeries, Group39ThirtyDigits) {
    SummationReport r = sum_series(find_group("39+39"), 30);
    EXPECT_GE(r.digits_agreed, 30);
    EXPECT_LE(r.terms_used, 600);
    EXPECT_TRUE(r.passed());
    EXPECT_TRUE(r.pi_inverse_ref.overlaps(BallReal::from_rational(parse_decimal("0.318309886183790671537767526745")).widened(pow10_neg(29))));
    EXPECT_GT(r.per_term_rate, 0.0);
}

TEST(SumSeries, Group39DigitsFirstReachedAt) {
    // Independently summed at 120 digits: the partial sum first agrees with 1/pi
    // to 10, 30, 50 digits after 153, 497, 844 terms.
    SummationOptions o;
    o.checkpoints = {152, 153, 496, 497, 843, 844};
    SummationReport r = sum_series(find_group("39+39"), 60, o);
    std::vector<Checkpoint> expected = {{152, 9}, {153, 10}, {496, 29}, {497, 30}, {843, 49}, {844, 50}};
    EXPECT_EQ(r.trace, expected);
}

TEST(SumSeries, Group16IsFastest) {
    std::map<std::string, long> terms;
    for (const SummationReport& r : verify_all(30)) terms[r.label] = r.terms_used;
    SummationReport r16 = sum_series(find_group("16+"), 30);
    EXPECT_GE(r16.digits_agreed, 30);
    // 16+ has the smallest |x0|, but a larger growth rate of A_n than 14+14,
    // so it is compared with the slow groups only.
    for (const char* slow : {"15+15", "21+21", "35+35", "39+39"}) EXPECT_LT(r16.terms_used, terms[slow]) << slow;
}

TEST(SumSeries, EveryGroupThirtyDigits) {
    for (const GroupRecord& g : load_builtin()) {
        SummationReport r = sum_series(g, 30);
        EXPECT_GE(r.digits_agreed, 30) << g.label;
        EXPECT_LE(r.terms_used, 3000) << g.label;
    }
}

TEST(SumSeries, FastGroupsFiftyDigits) {
    for (const char* label : {"16+", "14+14", "20+20"}) {
        SummationReport r = sum_series(find_group(label), 50);
        EXPECT_GE(r.digits_agreed, 50) << label;
    }
}

TEST(SumSeries, TargetTooSmall) { EXPECT_THROW(sum_series(find_group("16+"), 4), DomainError); }

TEST(PartialSum, OneTermIsC) {
    for (const GroupRecord& g : load_builtin()) {
        SeriesConstants s = compute_BC(g);
        BallReal one = partial_sum(s, recurrence_for(g), 1);
        EXPECT_TRUE(one.overlaps(s.C)) << g.label;
        EXPECT_LT(separation_bound(one, s.C), pow10_neg(45)) << g.label;
        EXPECT_TRUE(partial_sum(s, recurrence_for(g), 0).contains_zero());
    }
}

TEST(PartialSum, TwoTermsByHand) {
    // 39+39: A_1 = 1, so S_2 = C + (B + C) x0.
    const GroupRecord& g = find_group("39+39");
    SeriesConstants s = compute_BC(g);
    BallReal expected = s.C + (s.B + s.C) * s.x0_ball;
    EXPECT_LT(separation_bound(partial_sum(s, recurrence_for(g), 2), expected), pow10_neg(45));
}

TEST(Properties, MonotoneRefinement) {
    for (const GroupRecord& g : load_builtin()) {
        SummationOptions o;
        o.checkpoints = {50, 150, 300};
        SummationReport r = sum_series(g, 30, o);
        ASSERT_EQ(r.trace.size(), 3u) << g.label;
        EXPECT_LE(r.trace[0].digits, r.trace[1].digits) << g.label;
        EXPECT_LE(r.trace[1].digits, r.trace[2].digits) << g.label;
        EXPECT_LT(r.trace[0].digits, r.trace[2].digits) << g.label;
    }
}

TEST(Properties, OneSidedOrBracketing) {
    // Where the terms strictly alternate in sign, successive partial sums
    // bracket 1/pi; otherwise they increase towards it from below.
    for (const GroupRecord& g : load_builtin()) {
        SeriesConstants s = compute_BC(g);
        const long prec = 256;
        TermStream ts(s, recurrence_for(g), prec);
        BallReal target = BallReal::from_long(1, prec) / ref_pi(prec);
        BallReal sum(prec);
        std::vector<BallReal> terms, sums;
        for (int i = 0; i < 60; ++i) {
            terms.push_back(ts.next());
            sum = sum + terms.back();
            sums.push_back(sum);
        }
        bool alternating = true;
        for (std::size_t i = 20; i + 1 < terms.size(); ++i)
            alternating = alternating && (terms[i].is_positive() != terms[i + 1].is_positive());
        for (std::size_t i = 20; i + 1 < sums.size(); ++i) {
            if (alternating) {
                BallReal a = sums[i] - target, b = sums[i + 1] - target;
                EXPECT_NE(a.is_positive(), b.is_positive()) << g.label << " at " << i;
            } else {
                EXPECT_TRUE(terms[i].is_positive()) << g.label << " at " << i;
                EXPECT_TRUE((target - sums[i]).is_positive()) << g.label << " at " << i;
            }
        }
    }
}

TEST(Properties, Determinism) {
    SummationReport a = sum_series(find_group("22+11"), 25), b = sum_series(find_group("22+11"), 25);
    EXPECT_EQ(a.terms_used, b.terms_used);
    EXPECT_EQ(a.partial_sum.to_string(80), b.partial_sum.to_string(80));
    EXPECT_EQ(a.partial_sum.rad_string(), b.partial_sum.rad_string());
}

TEST(Failures, WrongConstantLosesDigits) {
    const GroupRecord& g = find_group("16+");
    SeriesConstants s = compute_BC(g, working_precision(30));
    s.C = s.C + BallReal::from_rational(pow10_neg(12));
    SummationReport r = sum_terms(g.label, s, recurrence_for(g), 30);
    EXPECT_LT(r.digits_agreed, 13);
    EXPECT_FALSE(r.passed());
}

TEST(Failures, DivergentSeriesHitsCap) {
    const GroupRecord& g = find_group("16+");
    SeriesConstants s = compute_BC(g, working_precision(30));
    s.x0_ball = BallReal::from_rational(make_rational(1, 4), s.prec); // beyond the radius of convergence
    SummationOptions o;
    o.max_terms = 400;
    try {
        sum_terms(g.label, s, recurrence_for(g), 30, o);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_NE(std::string(e.what()).find("non-convergent or precision starvation"), std::string::npos) << e.what();
    }
}

TEST(Failures, CapTooSmall) {
    SummationOptions o;
    o.max_terms = 20;
    EXPECT_THROW(sum_series(find_group("39+39"), 30, o), ConvergenceError);
}

TEST(VerifyAll, TenOfTenAtThirty) {
    std::vector<SummationReport> r = verify_all(30);
    ASSERT_EQ(r.size(), 10u);
    for (std::size_t i = 0; i < r.size(); ++i) EXPECT_EQ(r[i].label, load_builtin()[i].label);
    EXPECT_TRUE(all_passed(r));
}

TEST(VerifyAll, FewerTermsAtTen) {
    std::vector<SummationReport> r10 = verify_all(10), r30 = verify_all(30);
    EXPECT_TRUE(all_passed(r10));
    for (std::size_t i = 0; i < r10.size(); ++i) EXPECT_LT(r10[i].terms_used, r30[i].terms_used) << r10[i].label;
}

TEST(VerifyAll, EmptyRegistry) { EXPECT_TRUE(verify_all(30, {}).empty()); }

TEST(VerifyAll, FailuresAreCollected) {
    std::vector<GroupRecord> groups = {find_group("16+"), find_group("39+39"), find_group("20+20")};
    groups[1].cm.A = {1, 0, 0, 1};
    std::vector<SummationReport> r = verify_all(20, groups);
    ASSERT_EQ(r.size(), 3u);
    EXPECT_TRUE(r[0].passed());
    EXPECT_FALSE(r[1].passed());
    EXPECT_FALSE(r[1].error.empty());
    EXPECT_TRUE(r[2].passed());
    EXPECT_FALSE(all_passed(r));
}
