// rsato: command-line front end for the Ramanujan-Sato pipeline.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error (including an
// unknown group label or an unreadable group file), 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rsato/constants/constants.hpp"
#include "rsato/evaluator/evaluator.hpp"
#include "rsato/evaluator/selftest.hpp"
#include "rsato/modeq/discovery.hpp"
#include "rsato/odeops/ode.hpp"
#include "rsato/registry/builtin.hpp"
#include "rsato/registry/group_file.hpp"

using json = nlohmann::ordered_json;
using namespace rsato;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

/// Thrown for bad flag values detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    bool json = false;
    std::string group_file;
    long order = 0;
    long prec = kDefaultPrecision;
    long digits = 30;
};

// ---------------------------------------------------------------- JSON

json to_json(const BigRational& q) { return q.get_str(); }

json to_json(const BallReal& b) { return {{"mid", b.mid_string()}, {"rad", b.rad_string()}, {"prec", b.prec()}}; }

json to_json(const QuadExt& x) {
    json j = {{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"d", x.d()}, {"text", x.to_string()}};
    return j;
}

json to_json(const RationalSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(to_json(c));
    return {{"lead_exp", to_json(s.lead_exp())}, {"ramification", s.ramification()}, {"coeffs", coeffs}};
}

json to_json(const Poly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs()) a.push_back(to_json(c));
    return a;
}

json integer_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json to_json(const SummationReport& r) {
    json j = {{"label", r.label},
              {"target_digits", r.target_digits},
              {"terms_used", r.terms_used},
              {"digits_agreed", r.digits_agreed},
              {"per_term_rate", r.per_term_rate},
              {"passed", r.passed()}};
    if (r.error.empty()) {
        j["partial_sum"] = to_json(r.partial_sum);
        j["pi_inverse_ref"] = to_json(r.pi_inverse_ref);
    } else {
        j["error"] = r.error;
    }
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- registry

std::optional<GroupRecord> file_record(const Common& c) {
    if (c.group_file.empty()) return std::nullopt;
    return load_file(c.group_file);
}

/// The group named by `label`; the --group-file record wins over a builtin
/// with the same label and is used when no label is given.
GroupRecord resolve(const std::string& label, const Common& c) {
    std::optional<GroupRecord> f = file_record(c);
    if (f && (label.empty() || label == f->label)) return *f;
    if (label.empty()) throw UsageError("a group label is required");
    return find_group(label);
}

/// Builtins, with the --group-file record replacing or extending them.
std::vector<GroupRecord> all_groups(const Common& c) {
    std::vector<GroupRecord> groups = load_builtin();
    if (std::optional<GroupRecord> f = file_record(c)) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const GroupRecord& g) { return g.label == f->label; });
        if (it != groups.end())
            *it = *f;
        else
            groups.push_back(*f);
    }
    return groups;
}

// ---------------------------------------------------------------- commands

int cmd_expand(const std::string& label, const std::string& which, const Common& c) {
    GroupRecord g = resolve(label, c);
    const long order = c.order > 0 ? c.order : 20;
    RationalSeries s;
    if (which == "x")
        s = hauptmodul_x(g, order);
    else if (which == "t")
        s = eta_quotient(g.eta, order - 1);
    else if (which == "z")
        s = build_z(g, order);
    else
        throw UsageError("--series must be one of x, t, z");
    if (c.json)
        emit({{"label", g.label}, {"series", which}, {"expansion", to_json(s)}});
    else
        std::cout << which << " = " << s.to_string() << "\n";
    return kOk;
}

int cmd_recurrence(const std::string& label, long count, const Common& c) {
    GroupRecord g = resolve(label, c);
    Recurrence rec = recurrence_for(g);
    std::vector<BigRational> a = a_n_stream(rec).take(count);
    if (c.json) {
        json terms = json::array();
        for (const Poly& p : rec.terms) {
            json row = json::array();
            for (int k = 0; k <= 3; ++k) row.push_back(to_json(p.coeff(k)));
            terms.push_back(row);
        }
        json init = json::array();
        for (const auto& v : a) init.push_back(to_json(v));
        emit({{"label", g.label}, {"span", rec.span()}, {"terms", terms}, {"initials", init}});
        return kOk;
    }
    std::cout << g.label << "\n";
    for (int j = 0; j <= rec.span(); ++j)
        std::cout << "  P_" << j << "(n) = " << rec.terms[static_cast<std::size_t>(j)].to_string("n") << "\n";
    std::cout << "  " << rec.to_string() << "\n  A_n:";
    for (const auto& v : a) std::cout << " " << to_string(v);
    std::cout << "\n";
    return kOk;
}

int cmd_modeq(const std::string& label, const Common& c) {
    GroupRecord g = resolve(label, c);
    ModularEquation psi = find_modular_equation(g, c.order);
    int status = kOk;
    if (g.expected_psi && psi != *g.expected_psi) status = kVerificationFailed;
    if (c.json) {
        json m = json::array();
        for (int i = 0; i <= psi.degree_x(); ++i) {
            json row = json::array();
            for (int j = 0; j <= psi.degree_y(); ++j) row.push_back(integer_json(psi.coeff(i, j)));
            m.push_back(row);
        }
        json j = {{"label", g.label}, {"n", psi.n()}, {"degree", psi_degree(psi.n())}, {"coeffs", m},
                  {"text", psi.to_string()}};
        if (g.expected_psi) j["matches_registry"] = status == kOk;
        emit(j);
    } else {
        std::cout << psi.to_string() << "\n";
    }
    if (status != kOk) std::cerr << g.label << ": discovered equation differs from the registry\n";
    return status;
}

int cmd_constants(const std::string& label, const Common& c) {
    GroupRecord g = resolve(label, c);
    SeriesConstants s = compute_BC(g, c.prec);
    TableVerdict v = compare_with_table(g, s);
    const int status = !v.has_entry || v.agrees() ? kOk : kVerificationFailed;
    if (c.json) {
        json j = {{"label", g.label},
                  {"prec", s.prec},
                  {"x0", to_json(s.x0_exact)},
                  {"x0_ball", to_json(s.x0_ball)},
                  {"y1", to_json(s.y1)},
                  {"y2", to_json(s.y2)},
                  {"W", to_json(s.W)},
                  {"dW", to_json(s.dW)},
                  {"B", to_json(s.B)},
                  {"C", to_json(s.C)}};
        if (v.has_entry)
            j["table"] = {{"B", to_json(v.B_table)}, {"C", to_json(v.C_table)}, {"B_agrees", v.B_agrees},
                          {"C_agrees", v.C_agrees}, {"tolerance", to_json(v.tolerance)}};
        emit(j);
    } else {
        const int d = 40;
        std::cout << g.label << "\n"
                  << "  x0  = " << s.x0_exact.to_string() << " = " << s.x0_ball.to_string(d) << "\n"
                  << "  y'  = " << s.y1.to_string() << "\n"
                  << "  y'' = " << s.y2.to_string() << "\n"
                  << "  W   = " << s.W.to_string(d) << "\n"
                  << "  W'  = " << s.dW.to_string(d) << "\n"
                  << "  B   = " << s.B.to_string(d) << "\n"
                  << "  C   = " << s.C.to_string(d) << "\n";
        if (v.has_entry)
            std::cout << "  closed forms: B " << (v.B_agrees ? "agree" : "DISAGREE") << ", C "
                      << (v.C_agrees ? "agree" : "DISAGREE") << " (tolerance 1e-25)\n";
        else
            std::cout << "  closed forms: none recorded\n";
    }
    if (status != kOk)
        std::cerr << g.label << ": computed B/C disagree with the recorded closed forms (B " << v.B_table.to_string(30)
                  << ", C " << v.C_table.to_string(30) << ")\n";
    return status;
}

void print_report(const SummationReport& r) {
    if (!r.error.empty()) {
        std::cout << r.label << ": FAIL: " << r.error << "\n";
        return;
    }
    std::ostringstream rate;
    rate.setf(std::ios::fixed);
    rate.precision(4);
    rate << r.per_term_rate;
    std::cout << r.label << ": " << (r.passed() ? "PASS" : "FAIL") << ", " << r.digits_agreed << " digits after "
              << r.terms_used << " terms (" << rate.str() << " digits/term)\n"
              << "  sum  = " << r.partial_sum.to_string(static_cast<int>(r.target_digits) + 5) << "\n"
              << "  1/pi = " << r.pi_inverse_ref.to_string(static_cast<int>(r.target_digits) + 5) << "\n";
}

int report_all(const std::vector<SummationReport>& reports, const Common& c) {
    if (c.json) {
        json a = json::array();
        for (const auto& r : reports) a.push_back(to_json(r));
        emit(a);
    } else {
        for (const auto& r : reports) print_report(r);
    }
    for (const auto& r : reports)
        if (!r.error.empty()) std::cerr << r.label << ": " << r.error << "\n";
    return all_passed(reports) ? kOk : kVerificationFailed;
}

int cmd_pi(const std::string& label, const Common& c) {
    GroupRecord g = resolve(label, c);
    if (c.digits < 5) throw UsageError("--digits must be at least 5");
    SummationReport r;
    try {
        r = sum_series(g, c.digits);
    } catch (const ConvergenceError& e) {
        r.label = g.label;
        r.target_digits = c.digits;
        r.error = e.what();
    }
    return report_all({r}, c);
}

int cmd_verify(const std::vector<std::string>& labels, bool all, const Common& c) {
    if (c.digits < 5) throw UsageError("--digits must be at least 5");
    if (all == !labels.empty()) throw UsageError("verify takes either --all or a list of labels");
    std::vector<GroupRecord> groups;
    if (all)
        groups = all_groups(c);
    else
        for (const auto& l : labels) groups.push_back(resolve(l, c));
    return report_all(verify_all(c.digits, groups), c);
}

int cmd_selftest(const std::vector<std::string>& labels, const Common& c) {
    std::vector<GroupRecord> groups;
    if (labels.empty())
        groups = all_groups(c);
    else
        for (const auto& l : labels) groups.push_back(resolve(l, c));
    std::vector<GroupSelfTest> results = run_selftest(groups, c.digits);
    bool ok = true;
    if (c.json) {
        json a = json::array();
        for (const auto& t : results) {
            json checks = json::array();
            for (const auto& k : t.checks) {
                json e = {{"name", k.name}, {"ok", k.ok}};
                if (!k.ok) e["detail"] = k.detail;
                checks.push_back(e);
            }
            a.push_back({{"label", t.label}, {"ok", t.ok()}, {"checks", checks}});
        }
        emit(a);
    }
    for (const auto& t : results) {
        ok = ok && t.ok();
        long passed = std::count_if(t.checks.begin(), t.checks.end(), [](const CheckResult& k) { return k.ok; });
        if (!c.json) {
            std::cout << t.label << ": " << (t.ok() ? "PASS" : "FAIL") << " (" << passed << "/" << t.checks.size()
                      << " checks)\n";
            for (const auto& k : t.checks)
                if (!k.ok) std::cout << "  " << k.name << ": " << k.detail << "\n";
        }
    }
    return ok ? kOk : kVerificationFailed;
}

int cmd_group_list(const Common& c) {
    std::vector<GroupRecord> groups = all_groups(c);
    if (c.json) {
        json a = json::array();
        for (const auto& g : groups) a.push_back({{"label", g.label}, {"level", g.level}, {"n", g.meq_n}});
        emit(a);
    } else {
        for (const auto& g : groups) std::cout << g.label << "  level " << g.level << "  n = " << g.meq_n << "\n";
    }
    return kOk;
}

int cmd_group_show(const std::string& label, const Common& c) {
    GroupRecord g = resolve(label, c);
    if (c.json) {
        json j = {{"label", g.label},
                  {"level", g.level},
                  {"w", to_json(g.w)},
                  {"R", to_json(g.R)},
                  {"n", g.meq_n},
                  {"tau0", to_json(g.cm.tau0)},
                  {"atkin_lehner", g.atkin_lehner()},
                  {"notes", g.notes}};
        emit(j);
    } else {
        std::cout << serialize(g);
    }
    return kOk;
}

int cmd_group_check(const std::string& path, const Common& c) {
    try {
        GroupRecord g = load_file(path);
        if (c.json)
            emit({{"file", path}, {"ok", true}, {"label", g.label}});
        else
            std::cout << path << ": ok (" << g.label << ")\n";
        return kOk;
    } catch (const ParseError& e) {
        if (c.json) emit({{"file", path}, {"ok", false}, {"line", e.line}, {"column", e.column}, {"error", e.what()}});
        std::cerr << path << ": " << e.what() << "\n";
    } catch (const InvariantViolation& e) {
        if (c.json) emit({{"file", path}, {"ok", false}, {"field", e.field}, {"error", e.what()}});
        std::cerr << path << ": " << e.what() << "\n";
    }
    return kVerificationFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ramanujan-Sato series for 1/pi from eta-quotient Hauptmoduls"};
    app.require_subcommand(1);
    app.fallthrough();

    Common c;
    app.add_flag("--json", c.json, "Emit a single JSON document on standard output");
    app.add_option("--group-file", c.group_file, "Load an extra group record from a group file")->check(CLI::ExistingFile);
    app.add_option("--order", c.order, "q-expansion order (0 = automatic)")->check(CLI::NonNegativeNumber);
    app.add_option("--prec", c.prec, "Working precision in bits")->check(CLI::Range(64L, 1L << 20));
    app.add_option("--digits", c.digits, "Target decimal digits")->check(CLI::Range(5L, 100000L));

    std::string label, which = "x", path;
    long count = 10;
    bool all = false;
    std::vector<std::string> labels;
    int status = kOk;
    std::function<int()> run;

    auto* expand = app.add_subcommand("expand", "q-expansion of x = 1/t, t or z");
    expand->add_option("label", label, "Group label")->required(false);
    expand->add_option("--series", which, "x, t or z")->check(CLI::IsMember({"x", "t", "z"}));
    expand->callback([&] { run = [&] { return cmd_expand(label, which, c); }; });

    auto* recurrence = app.add_subcommand("recurrence", "Recurrence P_j(n) and the first coefficients A_n");
    recurrence->add_option("label", label, "Group label");
    recurrence->add_option("--terms", count, "Number of A_n to print")->check(CLI::Range(1L, 100000L));
    recurrence->callback([&] { run = [&] { return cmd_recurrence(label, count, c); }; });

    auto* modeq = app.add_subcommand("modeq", "Discover the modular equation Psi_n");
    modeq->add_option("label", label, "Group label");
    modeq->callback([&] { run = [&] { return cmd_modeq(label, c); }; });

    auto* constants = app.add_subcommand("constants", "x0, y', y'', W, B, C and the closed-form comparison");
    constants->add_option("label", label, "Group label");
    constants->callback([&] { run = [&] { return cmd_constants(label, c); }; });

    auto* pi = app.add_subcommand("pi", "Sum the series and compare with 1/pi");
    pi->add_option("label", label, "Group label");
    pi->callback([&] { run = [&] { return cmd_pi(label, c); }; });

    auto* verify = app.add_subcommand("verify", "Sum the series of several groups");
    verify->add_option("labels", labels, "Group labels");
    verify->add_flag("--all", all, "Every builtin group");
    verify->callback([&] { run = [&] { return cmd_verify(labels, all, c); }; });

    auto* selftest = app.add_subcommand("selftest", "Run every oracle for every group");
    selftest->add_option("labels", labels, "Restrict to these groups");
    selftest->callback([&] { run = [&] { return cmd_selftest(labels, c); }; });

    auto* group = app.add_subcommand("group", "Inspect the registry and group files");
    group->require_subcommand(1);
    auto* list = group->add_subcommand("list", "List the groups");
    list->callback([&] { run = [&] { return cmd_group_list(c); }; });
    auto* show = group->add_subcommand("show", "Print a group in group-file format");
    show->add_option("label", label, "Group label");
    show->callback([&] { run = [&] { return cmd_group_show(label, c); }; });
    auto* check = group->add_subcommand("check", "Parse and validate a group file");
    check->add_option("file", path, "Group file")->required();
    check->callback([&] { run = [&] { return cmd_group_check(path, c); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the error
        return code == 0 ? kOk : kUsage;
    }

    try {
        status = run();
    } catch (const UnknownGroup& e) {
        std::cerr << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "group file: " << e.what() << "\n";
        return kUsage;
    } catch (const InvariantViolation& e) {
        std::cerr << "group file: " << e.what() << "\n";
        return kUsage;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const ConvergenceError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kVerificationFailed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return status;
}
