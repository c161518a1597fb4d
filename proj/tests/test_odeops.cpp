#include <gtest/gtest.h>

#include "rsato/odeops/ode.hpp"
#include "rsato/registry/builtin.hpp"

using namespace rsato;

namespace {

std::vector<BigRational> ints(std::initializer_list<long> c) {
    std::vector<BigRational> v;
    for (long x : c) v.emplace_back(x);
    return v;
}

// Coefficient of x^m in apply_ode(w, R, sum_k A_k x^k) with symbolic A_k is
// sum_j P_j(m) A_{m-j}; probing with single monomials x^k isolates each
// P_j(k + j) without using the closed form.
BigRational probe(const Poly& w, const Poly& R, int k, int j) {
    return apply_ode(w, R, Poly::monomial(BigRational(1), k)).coeff(k + j);
}

} // namespace

TEST(Ode, BuildZ39) {
    RationalSeries z = build_z(find_group("39+39"), 8);
    EXPECT_EQ(z.lead_exp(), 0);
    EXPECT_EQ(z.coeffs(), ints({1, 1, 3, 1, 5, 3, 7, 5}));
}

TEST(Ode, ZStartsAtOne) {
    for (const GroupRecord& g : load_builtin()) {
        RationalSeries z = build_z(g, 8);
        EXPECT_EQ(z.lead_exp(), 0) << g.label;
        EXPECT_EQ(z.coeffs()[0], 1) << g.label;
    }
}

TEST(Ode, ExtractRMatchesRegistry) {
    for (const GroupRecord& g : load_builtin()) {
        Poly R = extract_R(g, g.R.degree() + 24);
        EXPECT_EQ(R, g.R) << g.label << ": " << R.to_string();
        EXPECT_EQ(R.coeff(0), 0) << g.label;
    }
}

TEST(Ode, ExtractR16) {
    EXPECT_EQ(extract_R(find_group("16+"), 40), Poly::product({{0, 8}, {1, -2}, {1, -8, 4}}));
}

TEST(Ode, ExtractRNeedsEvidence) {
    EXPECT_THROW(extract_R(find_group("39+39"), 20), DomainError);
}

TEST(Ode, ResidualVanishesThroughOrder40) {
    for (const GroupRecord& g : load_builtin()) {
        RationalSeries r = ode_residual(g, 40);
        EXPECT_TRUE(r.is_zero()) << g.label << ": " << r.to_string();
        EXPECT_GE(r.precision(), 40) << g.label;
    }
}

TEST(Ode, PerturbedRLeavesResidualAtQ1) {
    const GroupRecord& g = find_group("39+39");
    RationalSeries x = hauptmodul_x(g, 25);
    RationalSeries r = ode_residual(g.w, g.R + Poly({0, 1}), build_z(g, 24), x);
    EXPECT_FALSE(r.is_zero());
    EXPECT_NE(r.coeff(BigRational(1)), 0);
    EXPECT_EQ(r.coeff(BigRational(0)), 0);
}

TEST(Ode, ZeroInputHasZeroResidual) {
    const GroupRecord& g = find_group("14+14");
    RationalSeries x = hauptmodul_x(g, 10);
    EXPECT_TRUE(ode_residual(g.w, g.R, RationalSeries::constant(BigRational(0), 9), x).is_zero());
}

TEST(Recurrence, MatchesRegistryForEveryGroup) {
    for (const GroupRecord& g : load_builtin()) {
        Recurrence rec = derive_recurrence(g.w, g.R);
        ASSERT_EQ(rec.terms.size(), g.expected_recurrence.size()) << g.label;
        for (std::size_t j = 0; j < rec.terms.size(); ++j)
            EXPECT_EQ(rec.terms[j], g.expected_recurrence[j]) << g.label << " P_" << j << " = " << rec.terms[j].to_string("n");
        EXPECT_EQ(rec.terms[0], Poly({0, 0, 0, 2})) << g.label;
    }
}

TEST(Recurrence, SpotChecks) {
    Recurrence r39 = derive_recurrence(find_group("39+39").w, find_group("39+39").R);
    EXPECT_EQ(r39.terms[1], Poly({2, -8, 12, -8}));
    EXPECT_EQ(r39.terms[10], Poly({-250, 150, -30, 2}));
    Recurrence r14 = derive_recurrence(find_group("14+7").w, find_group("14+7").R);
    EXPECT_EQ(r14.terms[4], Poly({-1024, 1536, -768, 128}));
    Recurrence r26 = derive_recurrence(find_group("26+26").w, find_group("26+26").R);
    EXPECT_EQ(r26.terms[7].coeff(0), make_rational(343, 4));
    EXPECT_EQ(r26.terms[7].coeff(1), make_rational(-147, 2));
}

TEST(Recurrence, ClosedFormAgreesWithOperator) {
    for (const GroupRecord& g : load_builtin()) {
        Recurrence rec = derive_recurrence(g.w, g.R);
        for (int k = 0; k < 12; ++k)
            for (int j = 0; j <= rec.span(); ++j)
                EXPECT_EQ(rec.terms[static_cast<std::size_t>(j)](BigRational(k + j)), probe(g.w, g.R, k, j))
                    << g.label << " k=" << k << " j=" << j;
    }
}

TEST(Recurrence, Printing) {
    Recurrence r = derive_recurrence(find_group("16+").w, find_group("16+").R);
    EXPECT_EQ(r.to_string().substr(0, 40), "2n^3 A(n) + (8 - 32n + 48n^2 - 32n^3) A(");
}

TEST(Initials, Group39) {
    EXPECT_EQ(initial_coefficients(find_group("39+39"), 10), ints({1, 1, 4, 10, 38, 140, 563, 2315, 9816, 42432}));
}

TEST(Initials, Group22) {
    EXPECT_EQ(initial_coefficients(find_group("22+11"), 6), ints({1, -4, 12, -36, 124, -496}));
}

TEST(Initials, Single) {
    for (const GroupRecord& g : load_builtin()) EXPECT_EQ(initial_coefficients(g, 1), ints({1})) << g.label;
}

TEST(Initials, MatchRegistryForEveryGroup) {
    for (const GroupRecord& g : load_builtin()) {
        auto n = static_cast<long>(g.expected_initials.size());
        EXPECT_EQ(initial_coefficients(g, n), g.expected_initials) << g.label;
    }
}

TEST(Stream, Group39A10) {
    const GroupRecord& g = find_group("39+39");
    AnStream s = a_n_stream(recurrence_for(g));
    std::vector<BigRational> a = s.take(11);
    EXPECT_EQ(a[10], 186576);
    EXPECT_EQ(initial_coefficients(g, 11)[10], 186576);
}

TEST(Stream, Group14ThirdTerm) {
    const GroupRecord& g = find_group("14+14");
    Recurrence rec = derive_recurrence(g.w, g.R);
    rec.initials = ints({1, 3, 16});
    EXPECT_EQ(a_n_stream(rec).take(4), ints({1, 3, 16, 117}));
}

TEST(Stream, SeedA0Suffices) {
    for (const GroupRecord& g : load_builtin()) {
        Recurrence rec = derive_recurrence(g.w, g.R);
        rec.initials = ints({1});
        auto n = static_cast<long>(g.expected_initials.size());
        EXPECT_EQ(a_n_stream(rec).take(n), g.expected_initials) << g.label;
    }
}

TEST(Stream, ConstantRecurrence) {
    Recurrence rec{{Poly({0, 0, 0, 2}), Poly({0, 0, 0, -2})}, ints({1})};
    EXPECT_EQ(a_n_stream(rec).take(6), ints({1, 1, 1, 1, 1, 1}));
}

TEST(Stream, NeedsA0) {
    Recurrence rec = derive_recurrence(find_group("39+39").w, find_group("39+39").R);
    EXPECT_THROW(a_n_stream(rec), DomainError);
}

TEST(Stream, AgreesWithExpansionFor24Terms) {
    for (const GroupRecord& g : load_builtin()) {
        Recurrence rec = derive_recurrence(g.w, g.R);
        rec.initials = g.expected_initials;
        rec.initials.resize(static_cast<std::size_t>(rec.span()));
        EXPECT_EQ(a_n_stream(rec).take(24), initial_coefficients(g, 24)) << g.label;
    }
}
