#pragma once

#include <climits>
#include <initializer_list>
#include <string>
#include <vector>

#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/numerics/rational.hpp"

namespace rsato {

/// Dense univariate polynomial with rational coefficients; coeffs()[i] is the
/// coefficient of x^i. Trailing zeros are always trimmed.
class Poly {
public:
    static constexpr int kZeroDegree = INT_MIN;

    Poly() = default;
    explicit Poly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static Poly monomial(const BigRational& c, int degree) {
        std::vector<BigRational> v(static_cast<std::size_t>(degree) + 1, BigRational(0));
        v.back() = c;
        return Poly(std::move(v));
    }

    /// Product of factors, each given constant term first.
    static Poly product(std::initializer_list<Poly> factors) {
        Poly r{1};
        for (const Poly& f : factors) r = r * f;
        return r;
    }

    const std::vector<BigRational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kZeroDegree : static_cast<int>(c_.size()) - 1; }

    BigRational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<std::size_t>(i)];
    }

    /// Sets coefficient i (extending as needed).
    void set_coeff(int i, const BigRational& v) {
        if (i >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(i) + 1, BigRational(0));
        c_[static_cast<std::size_t>(i)] = v;
        trim();
    }

    Poly derivative() const {
        std::vector<BigRational> v;
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<long>(i));
        return Poly(std::move(v));
    }

    /// x * d/dx.
    Poly theta() const {
        std::vector<BigRational> v = c_;
        for (std::size_t i = 0; i < v.size(); ++i) v[i] *= static_cast<long>(i);
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<BigRational> v(std::max(a.c_.size(), b.c_.size()), BigRational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<BigRational> v = a.c_;
        for (auto& c : v) c = -c;
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<BigRational> v(a.c_.size() + b.c_.size() - 1, BigRational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(v));
    }
    friend Poly operator*(const BigRational& s, const Poly& p) {
        std::vector<BigRational> v = p.c_;
        for (auto& c : v) c *= s;
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder of exact division by a nonzero divisor.
    std::pair<Poly, Poly> divmod(const Poly& divisor) const {
        if (divisor.is_zero()) throw DomainError("polynomial division by zero");
        std::vector<BigRational> rem = c_;
        int dd = divisor.degree();
        int qd = degree() - dd;
        if (qd < 0) return {Poly(), *this};
        std::vector<BigRational> q(static_cast<std::size_t>(qd) + 1, BigRational(0));
        const BigRational& lead = divisor.c_.back();
        for (int k = qd; k >= 0; --k) {
            BigRational f = rem[static_cast<std::size_t>(k + dd)] / lead;
            q[static_cast<std::size_t>(k)] = f;
            if (f == 0) continue;
            for (int i = 0; i <= dd; ++i)
                rem[static_cast<std::size_t>(k + i)] -= f * divisor.c_[static_cast<std::size_t>(i)];
        }
        return {Poly(std::move(q)), Poly(std::move(rem))};
    }

    /// Horner evaluation in any ring that rationals embed into.
    BigRational operator()(const BigRational& x) const {
        BigRational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }
    QuadExt operator()(const QuadExt& x) const {
        QuadExt r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + QuadExt(*it);
        return r;
    }
    BallReal operator()(const BallReal& x) const {
        BallReal r(x.prec());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    /// Ascending layout, e.g. "2x + 17x^2 - 48x^3".
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string s;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const BigRational& c = c_[i];
            if (c == 0) continue;
            BigRational mag = abs(c);
            if (first) s += (c < 0 ? "-" : "");
            else s += (c < 0 ? " - " : " + ");
            first = false;
            bool unit = (mag == 1 && i > 0);
            if (!unit) s += rsato::to_string(mag);
            if (i >= 1) s += var;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<BigRational> c_;
};

} // namespace rsato
