#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fmlinv {

// Exact rationals. gmpxx keeps values canonical (reduced, positive
// denominator) as long as every value is produced by arithmetic or by
// parse_rational below.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

/// Parses `[+-]digits[/digits]` with a positive denominator and no
/// whitespace. Returns nullopt on anything else.
std::optional<Scalar> parse_rational(std::string_view text);

/// Canonical "num/den" form; integers print without a denominator.
std::string to_string(const Scalar& value);

/// p-adic valuation. Throws std::domain_error for zero.
long valuation(const Scalar& value, long p);

/// base^exponent for any integer exponent; 0^negative throws.
Scalar power(const Scalar& base, long exponent);

bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);

Vector add(const Vector& a, const Vector& b);
Vector subtract(const Vector& a, const Vector& b);
Vector scale(const Scalar& factor, const Vector& v);
Scalar dot(const Vector& a, const Vector& b);

/// Divides by the first nonzero entry so that entry becomes 1.
Vector normalize_leading(const Vector& v);

/// Lexicographic comparison of equal-length vectors.
bool lex_less(const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

}  // namespace fmlinv
