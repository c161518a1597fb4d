#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "rsato/errors.hpp"

namespace rsato {

using BigInt = mpz_class;

/// Exact rational, always canonical (gcd 1, positive denominator).
using BigRational = mpq_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const BigRational& r) { return r.get_str(); }

inline bool is_integer(const BigRational& r) { return r.get_den() == 1; }

/// Parses "p", "-p", "p/q" (optional leading '+'). Whitespace is not allowed inside.
inline BigRational parse_rational(std::string_view text, int line = 0, int column = 0) {
    auto bad = [&](const std::string& why) {
        return ParseError("bad rational '" + std::string(text) + "': " + why, line, column);
    };
    if (text.empty()) throw bad("empty");
    std::size_t slash = text.find('/');
    auto check_int = [&](std::string_view s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i >= s.size()) throw bad("missing digits");
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad("unexpected character");
    };
    std::string_view num = text.substr(0, slash);
    check_int(num, true);
    std::string num_str(num.front() == '+' ? num.substr(1) : num);
    BigInt n(num_str, 10);
    BigInt d(1);
    if (slash != std::string_view::npos) {
        std::string_view den = text.substr(slash + 1);
        check_int(den, false);
        d = BigInt(std::string(den), 10);
        if (d == 0) throw bad("zero denominator");
    }
    return make_rational(n, d);
}

/// Parses a decimal literal "[-]digits[.digits][e[-]digits]" exactly.
inline BigRational parse_decimal(std::string_view text) {
    auto bad = [&] { return ParseError("bad decimal '" + std::string(text) + "'", 0, 0); };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any = false;
    for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
        char c = text[i];
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            any = true;
            if (seen_dot) --scale;
        } else {
            throw bad();
        }
    }
    if (!any) throw bad();
    if (i < text.size()) {
        std::string_view ex = text.substr(i + 1);
        if (ex.empty()) throw bad();
        std::size_t used = 0;
        try {
            scale += std::stol(std::string(ex), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != ex.size()) throw bad();
    }
    BigInt n(digits, 10);
    if (neg) n = -n;
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    return scale < 0 ? make_rational(n, p) : BigRational(n * p);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Writes n = f^2 * s with s squarefree (sign carried by s). Trial division;
/// adequate for the discriminants that appear here.
inline std::pair<BigInt, BigInt> squarefree_decompose(const BigInt& n) {
    if (n == 0) return {BigInt(0), BigInt(1)};
    BigInt m = abs(n);
    BigInt s = 1, f = 1;
    for (unsigned long p = 2; BigInt(p) * p <= m; ++p) {
        if (p > 10000000UL) break;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p * p)) {
            m /= p * p;
            f *= p;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            s *= p;
        }
    }
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        BigInt r;
        mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
        f *= r;
    } else {
        s *= m;
    }
    if (n < 0) s = -s;
    return {s, f};
}

inline bool is_squarefree(long d) {
    if (d == 0) return false;
    auto [s, f] = squarefree_decompose(BigInt(d));
    return f == 1;
}

} // namespace rsato
