#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace stochord {

using BigInt = mpz_class;
using Rational = mpq_class;

/// A probability-valued number that is either an exact rational (always
/// canonical: lowest terms, positive denominator) or an IEEE double.
///
/// Arithmetic between two rationals stays rational; anything touching a
/// double degrades to double. Comparisons between an exact and a floating
/// value are done in double.
class Scalar {
 public:
  Scalar() : value_(Rational(0)) {}
  Scalar(const Rational& q) : value_(q) { std::get<Rational>(value_).canonicalize(); }  // NOLINT
  Scalar(Rational&& q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }  // NOLINT
  Scalar(int v) : value_(Rational(v)) {}  // NOLINT
  Scalar(long v) : value_(Rational(v)) {}  // NOLINT

  static Scalar exact(const Rational& q) { return Scalar(q); }
  static Scalar exact(long num, long den);
  static Scalar floating(double x);

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  /// Throws Error(InvalidArgument) when the value is floating.
  const Rational& rational() const;
  double to_double() const;

  bool is_zero() const;
  bool is_integer() const;
  int sign() const;

  /// "a/b" (or "a" for integers) for exact values, shortest round-trip
  /// decimal for floating values.
  std::string to_string() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend std::partial_ordering operator<=>(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return (a <=> b) == 0; }

  /// Structural identity: same representation and same value.
  bool identical(const Scalar& o) const;

 private:
  explicit Scalar(double x) : value_(x) {}
  std::variant<Rational, double> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses "a/b", integers, and decimal literals ("0.5106", "1e-3") into
/// exact rationals. Throws Error(InvalidSpec) on malformed input.
Rational parse_rational(std::string_view text);

/// q^e for e >= 0, exactly.
Rational pow(const Rational& q, unsigned long e);
Scalar pow(const Scalar& s, unsigned long e);

/// Binomial coefficient C(n, k) for 0 <= k <= n, zero otherwise.
BigInt binomial_coefficient(long n, long k);

/// Generalized coefficient C(r+k-1, k) = prod_{l=1..k} (r+l-1)/l; rational
/// whenever r is.
Scalar rising_coefficient(const Scalar& r, long k);

/// Decides a^x >= b^y for positive bases and positive exponents. Exact for
/// rational inputs with moderate exponents, otherwise by comparing logs.
/// Returns the sign of a^x - b^y.
int compare_powers(const Scalar& a, const Scalar& x, const Scalar& b, const Scalar& y);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double x);

}  // namespace stochord
