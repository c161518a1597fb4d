#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "rsato/errors.hpp"
#include "rsato/numerics/ball.hpp"
#include "rsato/numerics/quad_ext.hpp"
#include "rsato/numerics/rational.hpp"
#include "rsato/qseries/poly.hpp"

namespace rsato {

/// Bivariate integer polynomial Psi(X, Y) = sum c_ij X^i Y^j relating x(tau)
/// and x(n tau).
class ModularEquation {
public:
    ModularEquation() = default;

    /// rows[j] is the coefficient of Y^j as a polynomial in X (constant first).
    ModularEquation(long n, const std::vector<Poly>& rows) : n_(n) {
        int dx = 0;
        for (const Poly& r : rows) dx = std::max(dx, r.degree());
        c_.assign(static_cast<std::size_t>(dx) + 1, std::vector<BigInt>(rows.size(), BigInt(0)));
        for (std::size_t j = 0; j < rows.size(); ++j)
            for (int i = 0; i <= rows[j].degree(); ++i) {
                const BigRational& v = rows[j].coeffs()[static_cast<std::size_t>(i)];
                if (v.get_den() != 1) throw DomainError("modular equation coefficients must be integers");
                c_[static_cast<std::size_t>(i)][j] = v.get_num();
            }
        trim();
    }

    /// From a dense table coeff[i][j] of X^i Y^j.
    ModularEquation(long n, std::vector<std::vector<BigInt>> coeff) : n_(n), c_(std::move(coeff)) { trim(); }

    long n() const { return n_; }
    int degree_x() const { return static_cast<int>(c_.size()) - 1; }
    int degree_y() const { return c_.empty() ? -1 : static_cast<int>(c_[0].size()) - 1; }
    const std::vector<std::vector<BigInt>>& coeffs() const { return c_; }

    BigInt coeff(int i, int j) const {
        if (i < 0 || j < 0 || i > degree_x() || j > degree_y()) return 0;
        return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    /// Coefficient of Y^j as a polynomial in X.
    Poly y_row(int j) const {
        std::vector<BigRational> v;
        for (int i = 0; i <= degree_x(); ++i) v.emplace_back(coeff(i, j));
        return Poly(std::move(v));
    }

    bool is_symmetric() const {
        const int d = std::max(degree_x(), degree_y());
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j)
                if (coeff(i, j) != coeff(j, i)) return false;
        return true;
    }

    /// Psi(X, X).
    Poly diagonal() const {
        std::vector<BigRational> v(static_cast<std::size_t>(degree_x() + degree_y() + 1), BigRational(0));
        for (int i = 0; i <= degree_x(); ++i)
            for (int j = 0; j <= degree_y(); ++j) v[static_cast<std::size_t>(i + j)] += coeff(i, j);
        return Poly(std::move(v));
    }

    /// d^a/dX^a d^b/dY^b.
    ModularEquation partial(int a, int b) const {
        std::vector<std::vector<BigInt>> r(c_.size(), std::vector<BigInt>(c_.empty() ? 0 : c_[0].size(), BigInt(0)));
        for (int i = a; i <= degree_x(); ++i)
            for (int j = b; j <= degree_y(); ++j) {
                BigInt f = coeff(i, j);
                for (int k = 0; k < a; ++k) f *= i - k;
                for (int k = 0; k < b; ++k) f *= j - k;
                r[static_cast<std::size_t>(i - a)][static_cast<std::size_t>(j - b)] = f;
            }
        return ModularEquation(n_, std::move(r));
    }

    template <class T>
    T eval(const T& x, const T& y) const {
        T acc = T(0);
        for (int j = degree_y(); j >= 0; --j) {
            T row = T(0);
            for (int i = degree_x(); i >= 0; --i) row = row * x + T(BigRational(coeff(i, j)));
            acc = acc * y + row;
        }
        return acc;
    }

    BallReal eval(const BallReal& x, const BallReal& y) const {
        BallReal acc(x.prec());
        for (int j = degree_y(); j >= 0; --j) {
            BallReal row(x.prec());
            for (int i = degree_x(); i >= 0; --i) row = row * x + BigRational(coeff(i, j));
            acc = acc * y + row;
        }
        return acc;
    }

    /// "Y^3 + (2X − X^2)Y^2 + (−X + 2X^2)Y + X^3" (U+2212 minus signs).
    std::string to_string() const {
        static const std::string minus = "−";
        std::string out;
        bool first = true;
        for (int j = degree_y(); j >= 0; --j) {
            Poly row = y_row(j);
            if (row.is_zero()) continue;
            int terms = 0;
            for (const auto& c : row.coeffs()) terms += c != 0;
            std::string ypart = j == 0 ? "" : (j == 1 ? "Y" : "Y^" + std::to_string(j));
            if (terms == 1) {
                int i = row.degree();
                BigRational c = row.coeffs()[static_cast<std::size_t>(i)];
                bool neg = c < 0;
                out += first ? (neg ? minus : "") : (neg ? " " + minus + " " : " + ");
                out += monomial(abs(c), i, ypart.empty() && i == 0);
                out += ypart;
            } else {
                out += first ? "" : " + ";
                out += "(" + row_text(row, minus) + ")" + ypart;
            }
            first = false;
        }
        return first ? "0" : out;
    }

    friend bool operator==(const ModularEquation& a, const ModularEquation& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

private:
    static std::string monomial(const BigRational& mag, int i, bool show_unit) {
        std::string s;
        if (mag != 1 || show_unit) s = rsato::to_string(mag);
        if (i >= 1) s += "X";
        if (i >= 2) s += "^" + std::to_string(i);
        return s;
    }

    static std::string row_text(const Poly& row, const std::string& minus) {
        std::string s;
        bool first = true;
        for (int i = 0; i <= row.degree(); ++i) {
            const BigRational& c = row.coeffs()[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            bool neg = c < 0;
            s += first ? (neg ? minus : "") : (neg ? " " + minus + " " : " + ");
            s += monomial(abs(c), i, i == 0);
            first = false;
        }
        return s;
    }

    void trim() {
        while (!c_.empty() && std::all_of(c_.back().begin(), c_.back().end(), [](const BigInt& v) { return v == 0; }))
            c_.pop_back();
        if (c_.empty()) return;
        for (;;) {
            bool zero_col = !c_[0].empty();
            for (const auto& r : c_) zero_col = zero_col && r.back() == 0;
            if (!zero_col) break;
            for (auto& r : c_) r.pop_back();
        }
        std::size_t w = c_[0].size();
        for (auto& r : c_) r.resize(w, BigInt(0));
    }

    long n_ = 0;
    std::vector<std::vector<BigInt>> c_;
};

} // namespace rsato
