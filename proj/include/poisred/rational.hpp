#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace poisred {

// Exact rational scalar with arbitrary-precision integer parts. GMP keeps
// values in lowest terms with positive denominator as long as construction
// goes through ratio() / parseRational().
using Rational = mpq_class;

inline Rational ratio(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool isZero(const Rational& r) { return sgn(r) == 0; }

/// Renders "p/q", omitting "/q" when q == 1.
std::string str(const Rational& r);

/// Parses "p" or "p/q" with optional sign. Empty optional on malformed input.
std::optional<Rational> parseRational(const std::string& text);

} // namespace poisred
