#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cbd {

/// Exact rational used for every payoff, similarity and evaluation.
using Rational = mpq_class;

/// Arbitrary-precision integer for case counts (periods times group sizes).
using Integer = mpz_class;

/// Parses "87.5", "-3", "175/2" or "+0.25" into an exact rational.
/// Throws std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

/// Decimal form when the expansion terminates ("87.5"), reduced fraction otherwise ("1/3").
std::string format_rational(const Rational& value);

[[nodiscard]] bool has_terminating_decimal(const Rational& value);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    Rational r{static_cast<long>(num), static_cast<long>(den)};
    r.canonicalize();
    return r;
}

inline Integer to_integer(std::uint64_t v) { return Integer{static_cast<unsigned long>(v)}; }

}  // namespace cbd
