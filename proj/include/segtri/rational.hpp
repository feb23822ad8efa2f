#ifndef SEGTRI_RATIONAL_HPP
#define SEGTRI_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace segtri {

// All arithmetic in this library is exact; Rat is always stored canonicalized
// (lowest terms, positive denominator).
using Rat = mpq_class;
using Vec = std::vector<Rat>;

// Parses "p/q" or an integer literal. Rejects empty strings, zero
// denominators and anything with stray characters.
std::optional<Rat> parse_rational(const std::string& text);

// Lowest-terms rendering: "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rat& r);

// Decimal rendering with a fixed number of fractional digits, rounded to
// nearest (ties away from zero). Used only at the SVG boundary, where byte
// stability matters and exactness does not.
std::string to_decimal(const Rat& r, int digits);

bool vec_equal(const Vec& a, const Vec& b);

// Lexicographic order on rational vectors; the canonical segment order.
bool vec_less(const Vec& a, const Vec& b);

}  // namespace segtri

#endif
