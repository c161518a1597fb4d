#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/registry/group.hpp"

namespace rsato {

namespace detail {

inline Poly rpoly(std::initializer_list<const char*> coeffs) {
    std::vector<BigRational> v;
    for (const char* c : coeffs) v.push_back(parse_rational(c));
    return Poly(std::move(v));
}

inline std::vector<Poly> recurrence(std::initializer_list<Poly> rows) { return std::vector<Poly>(rows); }

inline std::vector<BigRational> initials(std::initializer_list<const char*> vals) {
    std::vector<BigRational> v;
    for (const char* c : vals) v.push_back(parse_rational(c));
    return v;
}

inline GroupRecord make_group(std::string label, long level, EtaQuotientSpec eta, Poly w, Poly R, long n,
                              const char* tau0, IntMat2 gamma, IntMat2 A, std::vector<Poly> psi_rows,
                              std::vector<Poly> rec, std::vector<BigRational> init, const char* B,
                              const char* C, const char* x0, std::vector<std::string> notes = {}) {
    GroupRecord g;
    g.label = std::move(label);
    g.level = level;
    g.eta = std::move(eta);
    g.w = std::move(w);
    g.R = std::move(R);
    g.meq_n = n;
    g.cm = CMData{parse_quad(tau0), gamma, A};
    g.expected_psi = ModularEquation(n, psi_rows);
    g.expected_recurrence = std::move(rec);
    g.expected_initials = std::move(init);
    g.expected_B = RadicalExpr::parse(B);
    g.expected_C = RadicalExpr::parse(C);
    g.expected_x0 = parse_quad(x0);
    g.notes = std::move(notes);
    return g;
}

inline std::vector<GroupRecord> build_registry() {
    using P = Poly;
    std::vector<GroupRecord> r;

    r.push_back(make_group(
        "14+7", 14, {{{1, 1}, {7, 1}, {2, -1}, {14, -1}}, 3},
        P::product({{1, 1}, {1, 8}, {1, 5, 8}}),
        P::product({{0, -8}, {1, 4}, {1, 7, 8}}), 3,
        "(-7 + sqrt(-21))/14", {-7, -3, -14, -7}, {1, 2, 0, 3},
        {{0, 0, 0, 0, 1}, {0, -1, -9, -18}, {0, -9, -54, -72}, {0, -18, -72, -64}, {1}},
        recurrence({{0, 0, 0, 2}, {-8, 30, -42, 28}, {-176, 420, -366, 122}, {-864, 1584, -1008, 224},
                    {-1024, 1536, -768, 128}}),
        initials({"1", "-4", "16", "-72"}),
        "3/2*sqrt(4 - 3*sqrt(7)/2)",
        "1/14*(588 - 223*sqrt(7) + 13*sqrt(889 - 336*sqrt(7)))*sqrt(4 + 3*sqrt(7)/2)",
        "-3/4 + 1/4*sqrt(7)",
        {"cm.M: gamma^-1*A = (-1, -5/7; 2, 1); a transcription with top-left entry 1 is a sign typo "
         "(only the bottom row (2, 1) enters B and C)"}));

    r.push_back(make_group(
        "14+14", 14, {{{2, 1}, {7, 1}, {1, -1}, {14, -1}}, 4},
        P{1, -14, 19, -14, 1}, P::product({{0, 1}, {6, -25, 34, -4}}), 3,
        "(0 + sqrt(-42))/14", {0, 1, -14, 0}, {1, 0, 0, 3},
        {{0, 0, 0, 0, 1}, {0, -1, 12, -18}, {0, 12, 9, 12}, {0, -18, 12, -1}, {1}},
        recurrence({{0, 0, 0, 2}, {6, -26, 42, -28}, {-50, 126, -114, 38}, {102, -194, 126, -28},
                    {-16, 24, -12, 2}}),
        initials({"1", "3", "16", "117"}),
        "8*sqrt(6/(527 + 115*sqrt(21)))",
        "4*(747 + 163*sqrt(21))*sqrt(2/3*(527 - 115*sqrt(21)))/(23 + 5*sqrt(21))^2",
        "23/2 - 5/2*sqrt(21)"));

    r.push_back(make_group(
        "15+15", 15, {{{3, 1}, {5, 1}, {1, -1}, {15, -1}}, 3},
        P::product({{-1, -1, 1}, {-1, 11, 1}}), P::product({{0, 4}, {1, 4, -6, -1}}), 2,
        "(0 + sqrt(-30))/15", {0, -1, 15, 0}, {1, 0, 0, 2},
        {{0, 0, 0, 1}, {0, -1, 6}, {0, 6, 1}, {1}},
        recurrence({{0, 0, 0, 2}, {4, -18, 30, -20}, {32, -84, 78, -26}, {-72, 138, -90, 20},
                    {-16, 24, -12, 2}}),
        initials({"1", "2", "11", "72"}),
        "2*sqrt(6*(99 - 70*sqrt(2)))",
        "6*sqrt(3*(99 - 70*sqrt(2))) + 2*(-536 + 379*sqrt(2))*sqrt(3*(99 + 70*sqrt(2)))",
        "-7 + 5*sqrt(2)",
        {"eta: the variant (eta1 eta5/(eta3 eta15))^3 has leading exponent -3/2 and cannot be a "
         "Hauptmodul 1/q + O(1); (eta3 eta5/(eta1 eta15))^3 reproduces w, R, the recurrence and Psi"}));

    r.push_back(make_group(
        "16+", 16, {{{2, 6}, {8, 6}, {1, -4}, {4, -4}, {16, -4}}, 1},
        P::product({{1, -2}, {1, -2}, {1, -12, 4}}), P::product({{0, 8}, {1, -2}, {1, -8, 4}}), 3,
        "(8 + sqrt(-3))/4", {-16, 33, -16, 32}, {1, 1, 0, 3},
        {{0, 0, 0, 0, 1}, {0, -1, 12, -24}, {0, 12, -42, 48}, {0, -24, 48, -16}, {1}},
        recurrence({{0, 0, 0, 2}, {8, -32, 48, -32}, {-160, 384, -336, 112}, {480, -896, 576, -128},
                    {-256, 384, -192, 32}}),
        initials({"1", "4", "20", "128"}),
        "2*(-2 + sqrt(6))*sqrt(15 - 6*sqrt(6))",
        "2*(-12 + 5*sqrt(6))*sqrt(1/3*(5 - 2*sqrt(6)))",
        "5/2 - 1*sqrt(6)"));

    r.push_back(make_group(
        "20+20", 20, {{{4, 1}, {5, 1}, {1, -1}, {20, -1}}, 2},
        P::product({{1, 1}, {1, 1}, {1, -8, -2, -8, 1}}), P::product({{0, 1}, {1, 1}, {2, 25, 31, 47, -9}}), 3,
        "(0 + sqrt(-15))/10", {0, -1, 20, 0}, {1, 0, 0, 3},
        {{0, 0, 0, 0, 1}, {0, -1, 6, 3}, {0, 6, 18, 6}, {0, 3, 6, -1}, {1}},
        recurrence({{0, 0, 0, 2}, {2, -10, 18, -12}, {54, -122, 102, -34}, {168, -292, 180, -40},
                    {312, -428, 204, -34}, {190, -226, 90, -12}, {-54, 54, -18, 2}}),
        initials({"1", "1", "6", "30", "175", "1087"}),
        "-16*(-2 + sqrt(3))*sqrt(3*(97 - 56*sqrt(3)))",
        "4*(14*sqrt(97 - 56*sqrt(3)) - 7*sqrt(3*(97 - 56*sqrt(3))) + 3*(-3064 + 1769*sqrt(3))*sqrt(97 + 56*sqrt(3)))",
        "7 - 4*sqrt(3)",
        {"C: the closed form has unbalanced brackets in transcription; stored reading multiplies only "
         "3(-3064 + 1769 sqrt(3)) by sqrt(97 + 56 sqrt(3)), which matches the computed C"}));

    r.push_back(make_group(
        "21+21", 21, {{{3, 1}, {7, 1}, {1, -1}, {21, -1}}, 2},
        P::product({{1, -1}, {1, -1}, {1, -6, -17, -6, 1}}), P{0, 4, 4, -70, 16, 52, -9}, 2,
        "(0 + sqrt(-42))/21", {0, 1, -21, 0}, {1, 0, 0, 2},
        {{0, 0, 0, 1}, {0, -1, 4}, {0, 4, -1}, {1}},
        recurrence({{0, 0, 0, 2}, {4, -16, 24, -16}, {8, -24, 24, -8}, {-210, 338, -198, 44},
                    {64, -96, 48, -8}, {260, -304, 120, -16}, {-54, 54, -18, 2}}),
        initials({"1", "2", "8", "37", "204", "1218"}),
        "4*(-2 + sqrt(6))*sqrt(98 - 40*sqrt(6))",
        "2/3*(-26*sqrt(147 - 60*sqrt(6)) + 39*sqrt(98 - 40*sqrt(6)) + (-7035*sqrt(2) + 5744*sqrt(3))*sqrt(49 + 20*sqrt(6)))",
        "5 - 2*sqrt(6)",
        {"C: the line break in the closed form leaves the bracketing ambiguous; the stored reading "
         "keeps all three terms inside 2/3*(...), which matches the computed C"}));

    r.push_back(make_group(
        "22+11", 22, {{{1, 1}, {11, 1}, {2, -1}, {22, -1}}, 2},
        P::product({{1, 4, 8, 4}, {1, 8, 16, 16}}), P::product({{0, -8}, {1, 12, 57, 132, 160, 72}}), 3,
        "(-33 + sqrt(-33))/22", {-11, -17, 22, 33}, {1, 0, 0, 3},
        {{0, 0, 0, 0, 1}, {0, -1, -6, -9}, {0, -6, -24, -24}, {0, -9, -24, -16}, {1}},
        recurrence({{0, 0, 0, 2}, {-8, 28, -36, 24}, {-192, 416, -336, 112}, {-1368, 2244, -1332, 296},
                    {-4224, 5696, -2688, 448}, {-6400, 7360, -2880, 384}, {-3456, 3456, -1152, 128}}),
        initials({"1", "-4", "12", "-36", "124", "-496"}),
        "sqrt(39 - 45*sqrt(3)/2)",
        "1/4*(7*sqrt(52 - 30*sqrt(3)) + 3*(-149 + 86*sqrt(3))*sqrt(52 + 30*sqrt(3)))",
        "-1 + 1/2*sqrt(3)"));

    r.push_back(make_group(
        "26+26", 26, {{{2, 1}, {13, 1}, {1, -1}, {26, -1}}, 2},
        P::product({{1, -1}, {1, -8, 8, -18, 8, -8, 1}}),
        rpoly({"0", "5", "-109/4", "339/4", "-521/4", "445/4", "-335/4", "49/4"}), 3,
        "(0 + sqrt(-78))/26", {0, -1, 26, 0}, {1, 0, 0, 3},
        {{0, 0, 0, 0, 1}, {0, -1, 6, -3}, {0, 6, -9, 6}, {0, -3, 6, -1}, {1}},
        recurrence({{0, 0, 0, 2}, {5, -19, 27, -18}, rpoly({"-109/2", "237/2", "-96", "32"}),
                    rpoly({"1017/4", "-807/2", "234", "-52"}), rpoly({"-521", "1353/2", "-312", "52"}),
                    rpoly({"2225/4", "-1245/2", "240", "-32"}), rpoly({"-1005/2", "983/2", "-162", "18"}),
                    rpoly({"343/4", "-147/2", "21", "-2"})}),
        initials({"1", "5/2", "59/8", "497/16", "19539/128", "207051/256", "4623151/1024"}),
        "12*sqrt(-8574 + 2378*sqrt(13))",
        "2*(-41828 + 11601*sqrt(13))*sqrt(8574 + 2378*sqrt(13))",
        "11/2 - 3/2*sqrt(13)"));

    r.push_back(make_group(
        "35+35", 35, {{{5, 1}, {7, 1}, {1, -1}, {35, -1}}, 1},
        P::product({{1, 1, -1}, {1, -5, 0, -9, 0, -5, -1}}),
        P::product({{0, -1}, {-2, -9, -14, -47, 30, -57, 50, 16}}), 2,
        "(0 + sqrt(-70))/35", {0, -1, 35, 0}, {1, 0, 0, 2},
        {{0, 0, 0, 1}, {0, -1, 2}, {0, 2, 1}, {1}},
        recurrence({{0, 0, 0, 2}, {2, -8, 12, -8}, {18, -42, 36, -12}, {42, -64, 36, -8},
                    {188, -238, 108, -18}, {-150, 160, -60, 8}, {342, -330, 108, -12},
                    {-350, 296, -84, 8}, {-128, 96, -24, 2}}),
        initials({"1", "1", "3", "10", "38", "150", "627", "2703"}),
        "2*sqrt(14*(721 - 228*sqrt(10)))",
        "2*(2*sqrt(2) - sqrt(5))*sqrt(7*(721 - 228*sqrt(10)))",
        "-3 + 1*sqrt(10)"));

    r.push_back(make_group(
        "39+39", 39, {{{3, 1}, {13, 1}, {1, -1}, {39, -1}}, 1},
        P::product({{1, 1}, {1, 1}, {1, -7, 11, -7, 1}, {1, 1, -1, 1, 1}}),
        P::product({{0, 1}, {2, 17, -48, -25, 194, -45, -168, 137, 82, -25}}), 2,
        "(0 + sqrt(-78))/39", {0, -1, 39, 0}, {1, 0, 0, 2},
        {{0, 0, 0, 1}, {0, -1, 2}, {0, 2, -1}, {1}},
        recurrence({{0, 0, 0, 2}, {2, -8, 12, -8}, {34, -66, 48, -16}, {-144, 204, -108, 24},
                    {-100, 114, -48, 8}, {970, -938, 330, -44}, {-270, 234, -72, 8},
                    {-1176, 924, -252, 24}, {1096, -786, 192, -16}, {738, -488, 108, -8},
                    {-250, 150, -30, 2}}),
        initials({"1", "1", "4", "10", "38", "140", "563", "2315", "9816", "42432"}),
        "-4*(-2 + sqrt(2))*sqrt(6*(577 - 408*sqrt(2)))",
        "44*sqrt(3*(577 - 408*sqrt(2))) - 22*sqrt(6*(577 - 408*sqrt(2))) + 2*(-47420 + 33531*sqrt(2))*sqrt(3*(577 + 408*sqrt(2)))",
        "3 - 2*sqrt(2)",
        {"P.1: 2 - 8n + 12n^2 - 8n^3; a transcription with an extra overall factor 2 contradicts both the worked "
         "example and the derivation from w and R"}));

    for (const GroupRecord& g : r) validate(g);
    return r;
}

} // namespace detail

/// The ten built-in groups in canonical order, validated once.
inline const std::vector<GroupRecord>& load_builtin() {
    static const std::vector<GroupRecord> registry = detail::build_registry();
    return registry;
}

inline std::vector<std::string> builtin_labels() {
    std::vector<std::string> out;
    for (const auto& g : load_builtin()) out.push_back(g.label);
    return out;
}

/// Throws UnknownGroup for labels outside the registry.
inline const GroupRecord& find_group(std::string_view label) {
    const auto& r = load_builtin();
    auto it = std::find_if(r.begin(), r.end(), [&](const GroupRecord& g) { return g.label == label; });
    if (it == r.end()) throw UnknownGroup(std::string(label));
    return *it;
}

} // namespace rsato
