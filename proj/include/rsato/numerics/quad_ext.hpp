#pragma once

#include <cctype>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rsato/errors.hpp"
#include "rsato/numerics/rational.hpp"

namespace rsato {

/// Element a + b*sqrt(d) of the quadratic field Q(sqrt(d)).
///
/// d is squarefree and different from 0 and 1, except for the value d = 0,
/// which marks a plain rational that has not been attached to a field yet.
/// Such values (and more generally any value with b = 0) combine with
/// elements of every field. Combining two elements that carry different
/// nonzero d throws FieldMismatch.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(const BigRational& a) : a_(a) {} // NOLINT: rationals embed implicitly
    QuadExt(long a) : a_(a) {}              // NOLINT
    QuadExt(const BigRational& a, const BigRational& b, long d) : a_(a), b_(b), d_(d) {
        if (d == 1 || !is_squarefree(d))
            throw DomainError("quadratic field needs squarefree d != 0, 1; got " +
                              std::to_string(d));
    }

    /// sqrt(d) itself.
    static QuadExt sqrt_of(long d) { return QuadExt(0, 1, d); }

    /// (p + sqrt(d)) / r, the form used for CM points.
    static QuadExt from_pdr(long p, long d, long r) {
        return QuadExt(make_rational(p, r), make_rational(1, r), d);
    }

    const BigRational& a() const { return a_; }
    const BigRational& b() const { return b_; }
    long d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadExt conj() const {
        QuadExt r = *this;
        r.b_ = -r.b_;
        return r;
    }

    /// a^2 - d b^2.
    BigRational norm() const { return a_ * a_ - BigRational(d_) * b_ * b_; }
    BigRational trace() const { return 2 * a_; }

    /// Exact sign of the real embedding with sqrt(d) > 0. Requires d > 0 (or b = 0).
    int sign() const {
        if (b_ != 0 && d_ < 0) throw DomainError("sign of a non-real quadratic number");
        int sa = sgn(a_), sb = sgn(b_);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // a and b*sqrt(d) have opposite signs: compare magnitudes squared.
        BigRational lhs = a_ * a_;
        BigRational rhs = BigRational(d_) * b_ * b_;
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    QuadExt& operator+=(const QuadExt& o) {
        d_ = join(o);
        a_ += o.a_;
        b_ += o.b_;
        return *this;
    }
    QuadExt& operator-=(const QuadExt& o) {
        d_ = join(o);
        a_ -= o.a_;
        b_ -= o.b_;
        return *this;
    }
    QuadExt& operator*=(const QuadExt& o) {
        long d = join(o);
        BigRational na = a_ * o.a_ + BigRational(d) * b_ * o.b_;
        BigRational nb = a_ * o.b_ + b_ * o.a_;
        a_ = na;
        b_ = nb;
        d_ = d;
        return *this;
    }
    QuadExt& operator/=(const QuadExt& o) {
        long d = join(o);
        QuadExt den = o;
        den.d_ = d;
        BigRational n = den.norm();
        if (n == 0) throw DomainError("division by zero in Q(sqrt(" + std::to_string(d) + "))");
        *this *= den.conj();
        a_ /= n;
        b_ /= n;
        return *this;
    }

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { return x += y; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { return x -= y; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { return x *= y; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { return x /= y; }
    friend QuadExt operator-(QuadExt x) {
        x.a_ = -x.a_;
        x.b_ = -x.b_;
        return x;
    }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        if (x.b_ == 0 && y.b_ == 0) return x.a_ == y.a_;
        if (x.d_ != y.d_ && x.b_ != 0 && y.b_ != 0) throw FieldMismatch(x.d_, y.d_);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    /// "a + b*sqrt(d)" with rationals in p/q form; plain "a" when b = 0.
    std::string to_string() const {
        if (b_ == 0) return rsato::to_string(a_);
        std::string s;
        if (a_ != 0) s = rsato::to_string(a_) + (b_ > 0 ? " + " : " - ");
        else if (b_ < 0) s = "-";
        BigRational mb = abs(b_);
        if (mb != 1) s += rsato::to_string(mb) + "*";
        s += "sqrt(" + std::to_string(d_) + ")";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
        return os << x.to_string();
    }

private:
    long join(const QuadExt& o) const {
        if (d_ == o.d_) return d_;
        if (o.b_ == 0) return d_ != 0 ? d_ : o.d_;
        if (b_ == 0) return o.d_ != 0 ? o.d_ : d_;
        if (d_ == 0) return o.d_;
        if (o.d_ == 0) return d_;
        throw FieldMismatch(d_, o.d_);
    }

    BigRational a_{0};
    BigRational b_{0};
    long d_ = 0;
};

/// Parses QuadExt::to_string output ("a", "a + b*sqrt(d)", "-sqrt(d)", ...)
/// and the CM-point form "(p + sqrt(d))/r".
inline QuadExt parse_quad(std::string_view text, int line = 0, int column = 0) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto bad = [&](const std::string& why) {
        return ParseError("bad quadratic number '" + std::string(text) + "': " + why, line, column);
    };
    if (t.empty()) throw bad("empty");
    if (t.front() == '(') {
        std::size_t close = t.find(")/");
        if (close == std::string::npos) throw bad("expected (p + sqrt(d))/r");
        QuadExt inner = parse_quad(t.substr(1, close - 1), line, column);
        BigRational r = parse_rational(t.substr(close + 2), line, column);
        if (r == 0) throw bad("zero denominator");
        return inner / QuadExt(r);
    }
    std::size_t sq = t.find("sqrt(");
    if (sq == std::string::npos) return QuadExt(parse_rational(t, line, column));
    if (t.back() != ')') throw bad("trailing characters after sqrt(...)");
    std::string dtext = t.substr(sq + 5, t.size() - sq - 6);
    long d = 0;
    try {
        std::size_t used = 0;
        d = std::stol(dtext, &used);
        if (used != dtext.size()) throw bad("bad radicand");
    } catch (const std::logic_error&) {
        throw bad("bad radicand");
    }
    std::string prefix = t.substr(0, sq);
    if (!prefix.empty() && prefix.back() == '*') prefix.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = prefix.size(); i-- > 1;)
        if (prefix[i] == '+' || prefix[i] == '-') {
            split = i;
            break;
        }
    BigRational a(0), b(1);
    std::string bpart = prefix;
    if (split != std::string::npos) {
        a = parse_rational(prefix.substr(0, split), line, column);
        bpart = prefix.substr(split);
    }
    if (bpart.empty() || bpart == "+") b = 1;
    else if (bpart == "-") b = -1;
    else b = parse_rational(bpart, line, column);
    return QuadExt(a, b, d);
}

/// Primitive cube root of unity (-1 + sqrt(-3))/2.
/// Equality that never throws: numbers with nonzero irrational parts in
/// different fields are distinct.
inline bool same_number(const QuadExt& x, const QuadExt& y) {
    if (!x.is_rational() && !y.is_rational() && x.d() != y.d()) return false;
    return x == y;
}

inline QuadExt zeta3() { return QuadExt(BigRational(-1, 2), BigRational(1, 2), -3); }

} // namespace rsato
