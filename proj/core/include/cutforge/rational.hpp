#ifndef CUTFORGE_RATIONAL_HPP
#define CUTFORGE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cutforge {

// All expectation and certificate arithmetic is exact; Rational is GMP's
// canonicalized mpq wrapper.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "num/den" or "num". Throws std::invalid_argument on junk input.
inline Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    Rational q;
    if (q.set_str(std::string(text), 10) != 0)
        throw std::invalid_argument("bad rational literal: " + std::string(text));
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: " + std::string(text));
    q.canonicalize();
    return q;
}

/// Canonical "num/den" rendering (always includes the denominator).
inline std::string rational_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline bool is_probability(const Rational& q) { return q >= 0 && q <= 1; }

/// Probability that two independently sided endpoints land on the same side:
/// p*q + (1-p)*(1-q).
inline Rational same_side_probability(const Rational& p, const Rational& q) {
    return p * q + (1 - p) * (1 - q);
}

}  // namespace cutforge

#endif
