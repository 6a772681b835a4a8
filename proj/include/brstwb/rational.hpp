#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace brstwb {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "n" or "n/d" with an optional leading sign.
inline Rational parse_rational(std::string_view text) {
    Rational q;
    if (q.set_str(std::string(text), 10) != 0) {
        throw std::invalid_argument("not a rational: " + std::string(text));
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("zero denominator: " + std::string(text));
    }
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

} // namespace brstwb
