#pragma once

#include "rsato/numerics/ball.hpp"

namespace rsato {

/// Enclosure of arctan(1/k), k >= 2, from the alternating Gregory series.
/// The truncation error is bounded by the first omitted term.
inline BallReal arctan_inverse(unsigned long k, long prec) {
    if (k < 2) throw DomainError("arctan_inverse needs k >= 2");
    BallReal sum(prec);
    BigInt k2 = BigInt(k) * k;
    BigInt power = k; // k^(2j+1)
    BigRational cutoff(1);
    cutoff /= BigRational(BigInt(1) << static_cast<mp_bitcnt_t>(prec + 4));
    for (unsigned long j = 0;; ++j) {
        BigRational term(BigInt(1), BigInt(2 * j + 1) * power);
        term.canonicalize();
        if (term < cutoff) return sum.widened(term);
        BallReal t = BallReal::from_rational(term, prec);
        sum = (j % 2 == 0) ? sum + t : sum - t;
        power *= k2;
    }
}

/// Enclosure of pi with radius <= 2^(4 - prec), from Machin's formula
/// pi = 16 arctan(1/5) - 4 arctan(1/239).
inline BallReal ref_pi(long prec = kDefaultPrecision) {
    if (prec < 16) throw DomainError("ref_pi needs at least 16 bits");
    const long work = prec + 32;
    BallReal a5 = arctan_inverse(5, work);
    BallReal a239 = arctan_inverse(239, work);
    BallReal pi = a5 * BigRational(16) - a239 * BigRational(4);
    return pi.rounded_to(prec);
}

} // namespace rsato
