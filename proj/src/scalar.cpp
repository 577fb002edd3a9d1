#include "stochord/scalar.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "stochord/error.hpp"

namespace stochord {

namespace {

double rational_to_double(const Rational& q) {
  // mpq_get_d truncates; go through mpf-free long arithmetic on the
  // exponent to keep tiny values (e.g. 2^-4000) from underflowing early.
  if (q == 0) return 0.0;
  long num_exp = 0;
  long den_exp = 0;
  const double n = mpz_get_d_2exp(&num_exp, q.get_num_mpz_t());
  const double d = mpz_get_d_2exp(&den_exp, q.get_den_mpz_t());
  return std::ldexp(n / d, static_cast<int>(std::clamp(num_exp - den_exp, -100000L, 100000L)));
}

}  // namespace

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  return Scalar(Rational(num, den));
}

Scalar Scalar::floating(double x) { return Scalar(x); }

const Rational& Scalar::rational() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return *q;
  throw Error(ErrorCode::InvalidArgument, "floating value has no exact rational form");
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return rational_to_double(*q);
  return std::get<double>(value_);
}

bool Scalar::is_zero() const { return sign() == 0; }

bool Scalar::is_integer() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_den() == 1;
  const double x = std::get<double>(value_);
  return std::isfinite(x) && std::floor(x) == x;
}

int Scalar::sign() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return sgn(*q);
  const double x = std::get<double>(value_);
  return (x > 0) - (x < 0);
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return q->get_str();
  return format_double(std::get<double>(value_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) += std::get<Rational>(o.value_);
  } else {
    value_ = to_double() + o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) -= std::get<Rational>(o.value_);
  } else {
    value_ = to_double() - o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) *= std::get<Rational>(o.value_);
  } else {
    value_ = to_double() * o.to_double();
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero");
  if (is_exact() && o.is_exact()) {
    std::get<Rational>(value_) /= std::get<Rational>(o.value_);
  } else {
    value_ = to_double() / o.to_double();
  }
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<Rational>(&value_)) return Scalar(Rational(-*q));
  return Scalar(-std::get<double>(value_));
}

std::partial_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = cmp(std::get<Rational>(a.value_), std::get<Rational>(b.value_));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  return a.to_double() <=> b.to_double();
}

bool Scalar::identical(const Scalar& o) const {
  if (is_exact() != o.is_exact()) return false;
  if (is_exact()) return std::get<Rational>(value_) == std::get<Rational>(o.value_);
  return std::get<double>(value_) == std::get<double>(o.value_);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Error {
    return Error(ErrorCode::InvalidSpec, "malformed number '" + std::string(text) + "'");
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw fail();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = trim(text.substr(0, slash));
    const auto den = trim(text.substr(slash + 1));
    auto is_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!is_int(num) || !is_int(den)) throw fail();
    BigInt n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
    BigInt d(std::string(den.front() == '+' ? den.substr(1) : den), 10);
    if (d == 0) throw fail();
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  // Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_digit = false;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    digits += text[i++];
    seen_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      digits += text[i++];
      ++frac_digits;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw fail();
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const auto rest = text.substr(i);
    auto [ptr, ec] = std::from_chars(rest.data() + (rest.starts_with('+') ? 1 : 0),
                                     rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || rest.empty()) throw fail();
    i = text.size();
  }
  if (i != text.size()) throw fail();
  if (std::labs(exponent) > 100000) throw fail();

  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long scale = exponent - frac_digits;
  BigInt p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(mantissa * p10) : Rational(mantissa, p10);
  q.canonicalize();
  return q;
}

Rational pow(const Rational& q, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

Scalar pow(const Scalar& s, unsigned long e) {
  if (s.is_exact()) return Scalar(pow(s.rational(), e));
  return Scalar::floating(std::pow(s.to_double(), static_cast<double>(e)));
}

BigInt binomial_coefficient(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Scalar rising_coefficient(const Scalar& r, long k) {
  if (r.is_exact()) {
    const Rational& rq = r.rational();
    if (rq.get_den() == 1 && rq > 0 && rq.get_num().fits_slong_p()) {
      return Scalar(Rational(binomial_coefficient(rq.get_num().get_si() + k - 1, k)));
    }
    Rational acc(1);
    for (long l = 1; l <= k; ++l) acc *= (rq + (l - 1)) / Rational(l);
    return Scalar(acc);
  }
  const double rd = r.to_double();
  if (k > 200) {
    return Scalar::floating(std::exp(std::lgamma(rd + k) - std::lgamma(rd) - std::lgamma(k + 1.0)));
  }
  double acc = 1.0;
  for (long l = 1; l <= k; ++l) acc *= (rd + static_cast<double>(l - 1)) / static_cast<double>(l);
  return Scalar::floating(acc);
}

int compare_powers(const Scalar& a, const Scalar& x, const Scalar& b, const Scalar& y) {
  if (a.sign() < 0 || b.sign() < 0 || x.sign() <= 0 || y.sign() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "compare_powers needs nonnegative bases and positive exponents");
  }
  if (a.is_zero() || b.is_zero()) return (a.is_zero() ? 0 : 1) - (b.is_zero() ? 0 : 1);
  constexpr unsigned long kMaxExactExponent = 4096;
  if (a.is_exact() && b.is_exact() && x.is_exact() && y.is_exact()) {
    const Rational& xq = x.rational();
    const Rational& yq = y.rational();
    // a^(xn/xd) vs b^(yn/yd)  <=>  a^(xn*yd) vs b^(yn*xd)
    const BigInt ea = xq.get_num() * yq.get_den();
    const BigInt eb = yq.get_num() * xq.get_den();
    if (ea.fits_ulong_p() && eb.fits_ulong_p() && ea.get_ui() <= kMaxExactExponent &&
        eb.get_ui() <= kMaxExactExponent) {
      return cmp(pow(a.rational(), ea.get_ui()), pow(b.rational(), eb.get_ui()));
    }
  }
  const double la = x.to_double() * std::log(a.to_double());
  const double lb = y.to_double() * std::log(b.to_double());
  return (la > lb) - (la < lb);
}

}  // namespace stochord
