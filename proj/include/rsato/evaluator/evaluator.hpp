#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <string>
#include <vector>

#include "rsato/constants/constants.hpp"
#include "rsato/errors.hpp"
#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/pi.hpp"
#include "rsato/odeops/ode.hpp"
#include "rsato/registry/builtin.hpp"
#include "rsato/registry/group.hpp"

namespace rsato {

struct SummationOptions {
    long max_terms = 5000;
    double ratio_limit = 0.95;
    std::vector<long> checkpoints; // term counts at which digits_agreed is recorded
};

struct Checkpoint {
    long terms = 0;
    long digits = 0;
    bool operator==(const Checkpoint&) const = default;
};

struct SummationReport {
    std::string label;
    long target_digits = 0;
    long terms_used = 0;
    BallReal partial_sum;
    BallReal pi_inverse_ref;
    long digits_agreed = 0;
    double per_term_rate = 0;
    std::vector<Checkpoint> trace;
    std::string error; // empty on success

    bool passed() const { return error.empty() && digits_agreed >= target_digits; }
};

/// Bits needed for a summation to d digits: ceil(3.4 d) + 64.
inline long working_precision(long digits) { return (34 * digits + 9) / 10 + 64; }

/// 10^-k as an exact rational.
inline BigRational pow10_neg(long k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
    return BigRational(1) / BigRational(p);
}

/// Digits of agreement certified by ball separation.
inline long agreed_digits(const BallReal& a, const BallReal& b) { return decimal_digits_below(separation_bound(a, b)); }

/// Enumerates the terms A_n (B n + C) x0^n with A_n exact and the rest in
/// balls at the precision of the constants.
class TermStream {
public:
    TermStream(const SeriesConstants& s, Recurrence rec, long prec)
        : B_(s.B.rounded_to(prec)), C_(s.C.rounded_to(prec)), x0_(s.x0_ball.rounded_to(prec)),
          power_(BallReal::from_long(1, prec)), prec_(prec), a_(std::move(rec)) {}

    long index() const { return a_.index(); }

    BallReal next() {
        const long n = a_.index();
        BigRational an = a_.next();
        BallReal t = BallReal::from_rational(an, prec_) * (B_ * BigRational(n) + C_) * power_;
        power_ = power_ * x0_;
        return t;
    }

private:
    BallReal B_, C_, x0_, power_;
    long prec_;
    AnStream a_;
};

/// Sum of the first `terms` terms.
inline BallReal partial_sum(const SeriesConstants& s, const Recurrence& rec, long terms, long prec = kDefaultPrecision) {
    if (terms < 0) throw DomainError("partial_sum needs terms >= 0");
    TermStream ts(s, rec, prec);
    BallReal sum(prec);
    for (long i = 0; i < terms; ++i) sum = sum + ts.next();
    return sum;
}

/// Sums until both the current term and the geometric tail estimate
/// |t| rho / (1 - rho), rho the largest of the last five term ratios, fall
/// below 10^-(digits + 3). The reported digits come only from the ball
/// separation between the partial sum and 1/pi.
inline SummationReport sum_terms(const std::string& label, const SeriesConstants& s, const Recurrence& rec, long digits,
                                 const SummationOptions& opt = {}) {
    if (digits < 5) throw DomainError("sum_series needs target_digits >= 5");
    const long prec = working_precision(digits);
    SummationReport r;
    r.label = label;
    r.target_digits = digits;
    r.pi_inverse_ref = BallReal::from_long(1, prec) / ref_pi(prec);

    const BigRational eps = pow10_neg(digits + 3);
    std::vector<long> marks = opt.checkpoints;
    std::sort(marks.begin(), marks.end());
    std::size_t next_mark = 0;

    TermStream ts(s, rec, prec);
    BallReal sum(prec);
    std::deque<double> ratios;
    double prev_mag = 0;
    double rho = 1;
    while (true) {
        if (ts.index() >= opt.max_terms) {
            if (rho >= opt.ratio_limit)
                throw ConvergenceError(label + ": non-convergent or precision starvation (tail ratio " + std::to_string(rho) +
                                       " after " + std::to_string(ts.index()) + " terms)");
            throw ConvergenceError(label + ": term cap of " + std::to_string(opt.max_terms) + " exceeded");
        }
        BallReal t = ts.next();
        sum = sum + t;
        const long used = ts.index();
        while (next_mark < marks.size() && marks[next_mark] == used) {
            r.trace.push_back({used, agreed_digits(sum, r.pi_inverse_ref)});
            ++next_mark;
        }

        const BigRational tmag = t.mag();
        const double mag = tmag.get_d();
        if (mag > 0 && prev_mag > 0) {
            ratios.push_back(mag / prev_mag);
            if (ratios.size() > 5) ratios.pop_front();
        }
        if (mag > 0) prev_mag = mag;
        if (ratios.size() < 5) continue;
        rho = *std::max_element(ratios.begin(), ratios.end());
        if (rho >= opt.ratio_limit || tmag >= eps) continue;
        const BigRational tail = tmag * BigRational(rho) / (1 - BigRational(rho));
        if (tail < eps) break;
    }
    r.terms_used = ts.index();
    r.partial_sum = sum;
    r.digits_agreed = agreed_digits(r.partial_sum, r.pi_inverse_ref);
    // Checkpoints past the stopping point continue the summation on a copy.
    for (BallReal more = sum; next_mark < marks.size() && marks[next_mark] <= opt.max_terms; ++next_mark) {
        while (ts.index() < marks[next_mark]) more = more + ts.next();
        r.trace.push_back({marks[next_mark], agreed_digits(more, r.pi_inverse_ref)});
    }
    r.per_term_rate = r.terms_used > 0 ? static_cast<double>(r.digits_agreed) / static_cast<double>(r.terms_used) : 0;
    return r;
}

/// Computes B, C, x0 for g and sums its series to `digits` digits.
inline SummationReport sum_series(const GroupRecord& g, long digits, const SummationOptions& opt = {}) {
    if (digits < 5) throw DomainError("sum_series needs target_digits >= 5");
    SeriesConstants s = compute_BC(g, working_precision(digits));
    return sum_terms(g.label, s, recurrence_for(g), digits, opt);
}

/// Runs sum_series for every record concurrently and returns the reports in
/// input order. A failing group is reported through its error field.
inline std::vector<SummationReport> verify_all(long digits, const std::vector<GroupRecord>& groups = load_builtin(),
                                               const SummationOptions& opt = {}) {
    std::vector<std::future<SummationReport>> jobs;
    for (const GroupRecord& g : groups)
        jobs.push_back(std::async(std::launch::async, [&g, digits, &opt] {
            try {
                return sum_series(g, digits, opt);
            } catch (const std::exception& e) {
                SummationReport r;
                r.label = g.label;
                r.target_digits = digits;
                r.error = e.what();
                return r;
            }
        }));
    std::vector<SummationReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

inline bool all_passed(const std::vector<SummationReport>& reports) {
    return std::all_of(reports.begin(), reports.end(), [](const SummationReport& r) { return r.passed(); });
}

} // namespace rsato
