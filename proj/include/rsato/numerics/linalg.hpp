#pragma once

#include <cstddef>
#include <vector>

#include "rsato/numerics/rational.hpp"

namespace rsato {

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Row echelon form by fraction-free (Bareiss) elimination. The pivot in each
/// column is the first remaining row with a nonzero entry, so the result is
/// deterministic. Returns the pivot column of each of the first rank rows.
inline std::vector<std::size_t> bareiss_echelon(IntMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Basis of {v : m v = 0} over the rationals, one vector per free column,
/// each primitive integral with a positive free entry.
inline std::vector<std::vector<BigInt>> exact_nullspace(IntMatrix m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    std::vector<std::size_t> pivots = bareiss_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<BigInt>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<BigRational> v(cols, BigRational(0));
        v[f] = 1;
        for (std::size_t k = pivots.size(); k-- > 0;) {
            const std::size_t c = pivots[k];
            BigRational acc = 0;
            for (std::size_t j = c + 1; j < cols; ++j)
                if (v[j] != 0 && m[k][j] != 0) acc += BigRational(m[k][j]) * v[j];
            v[c] = -acc / BigRational(m[k][c]);
        }
        BigInt den = 1, g = 0;
        for (const auto& x : v) den = lcm(den, x.get_den());
        std::vector<BigInt> iv;
        for (const auto& x : v) {
            BigRational s = x * BigRational(den);
            iv.push_back(s.get_num());
            g = gcd(g, s.get_num());
        }
        for (auto& x : iv) x /= g;
        basis.push_back(std::move(iv));
    }
    return basis;
}

} // namespace rsato
