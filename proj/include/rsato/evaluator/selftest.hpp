#pragma once

#include <functional>
#include <future>
#include <string>
#include <vector>

#include "rsato/constants/constants.hpp"
#include "rsato/evaluator/evaluator.hpp"
#include "rsato/modeq/discovery.hpp"
#include "rsato/odeops/ode.hpp"
#include "rsato/registry/group.hpp"

namespace rsato {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Every oracle of the pipeline for one group.
struct GroupSelfTest {
    std::string label;
    std::vector<CheckResult> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
    }
};

namespace detail {

/// Runs `body`, which returns "" on success or a mismatch description;
/// exceptions count as failures.
inline CheckResult run_check(const std::string& name, const std::function<std::string()>& body) {
    try {
        std::string detail = body();
        return {name, detail.empty(), detail};
    } catch (const std::exception& e) {
        return {name, false, e.what()};
    }
}

inline std::string join(const std::vector<BigRational>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + to_string(x);
    return s;
}

} // namespace detail

/// Checks R, the ODE residual, the recurrence and initials, the two A_n
/// paths, Psi (kernel, annihilation, symmetric functions), the CM data,
/// y', the closed forms of B and C and the summation to 1/pi. Checks whose
/// expected values the record does not carry are skipped.
inline GroupSelfTest run_group_selftest(const GroupRecord& g, long digits = 30) {
    using detail::run_check;
    GroupSelfTest t;
    t.label = g.label;
    auto& c = t.checks;

    c.push_back(run_check("R", [&] {
        Poly R = extract_R(g, g.R.degree() + 24);
        return R == g.R ? "" : "extracted " + R.to_string() + ", registry " + g.R.to_string();
    }));
    c.push_back(run_check("ode_residual", [&] {
        RationalSeries r = ode_residual(g, 40);
        return r.is_zero() ? "" : "residual " + r.to_string();
    }));
    c.push_back(run_check("recurrence", [&] {
        Recurrence rec = recurrence_for(g);
        if (g.expected_recurrence.empty() || rec.terms == g.expected_recurrence) return std::string();
        return "derived " + rec.to_string();
    }));
    if (!g.expected_initials.empty())
        c.push_back(run_check("initials", [&] {
            auto a = initial_coefficients(g, static_cast<long>(g.expected_initials.size()));
            return a == g.expected_initials ? "" : "computed " + detail::join(a);
        }));
    c.push_back(run_check("a_n_paths", [&] {
        auto direct = initial_coefficients(g, 24);
        auto streamed = a_n_stream(recurrence_for(g)).take(24);
        return direct == streamed ? "" : "stream " + detail::join(streamed) + " vs expansion " + detail::join(direct);
    }));

    c.push_back(run_check("modeq", [&] {
        ModularEquation psi = find_modular_equation(g);
        if (!g.expected_psi || psi == *g.expected_psi) return std::string();
        return "discovered " + psi.to_string();
    }));
    c.push_back(run_check("annihilation", [&] {
        RationalSeries r = verify_annihilation(g.expected_psi ? *g.expected_psi : find_modular_equation(g), g, 60);
        return r.is_zero() ? "" : "residual " + r.to_string();
    }));
    if (g.meq_n == 2 || g.meq_n == 3)
        c.push_back(run_check("symmetric_functions", [&] {
            SymmetricCheck s = symmetric_function_check(g, 24);
            ModularEquation want = g.expected_psi ? *g.expected_psi : find_modular_equation(g);
            return s.psi == want ? "" : "reconstructed " + s.psi.to_string();
        }));

    c.push_back(run_check("fixed_point", [&] {
        verify_fixed_point(g);
        return std::string();
    }));
    c.push_back(run_check("x0", [&] {
        X0Selection s = select_x0(g, g.expected_psi ? *g.expected_psi : find_modular_equation(g));
        if (g.expected_x0 && !same_number(s.exact, *g.expected_x0)) return "selected " + s.exact.to_string();
        if (separation_bound(s.numeric.re(), quad_eval(s.exact, s.prec)) > pow10_neg(30))
            return "numeric x(tau0) " + s.numeric.to_string(40) + " disagrees with " + s.exact.to_string();
        return std::string();
    }));
    SeriesConstants sc;
    c.push_back(run_check("constants", [&] {
        sc = compute_BC(g);
        return sc.y1 == QuadExt(-1) ? "" : "y' = " + sc.y1.to_string();
    }));
    if (g.expected_B && g.expected_C)
        c.push_back(run_check("table_BC", [&] {
            if (sc.label.empty()) sc = compute_BC(g);
            TableVerdict v = compare_with_table(g, sc);
            if (v.agrees()) return std::string();
            return "B " + sc.B.to_string(30) + " vs " + v.B_table.to_string(30) + ", C " + sc.C.to_string(30) + " vs " +
                   v.C_table.to_string(30);
        }));
    c.push_back(run_check("pi", [&] {
        SummationReport r = sum_series(g, digits);
        if (r.digits_agreed >= digits) return std::string();
        return std::to_string(r.digits_agreed) + " digits after " + std::to_string(r.terms_used) + " terms";
    }));
    return t;
}

/// run_group_selftest for every record, concurrently, in input order.
inline std::vector<GroupSelfTest> run_selftest(const std::vector<GroupRecord>& groups, long digits = 30) {
    std::vector<std::future<GroupSelfTest>> jobs;
    for (const GroupRecord& g : groups)
        jobs.push_back(std::async(std::launch::async, [&g, digits] { return run_group_selftest(g, digits); }));
    std::vector<GroupSelfTest> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

} // namespace rsato
