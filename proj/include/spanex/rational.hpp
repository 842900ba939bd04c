#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace spanex {

using Int128 = __int128;

/// Exact rational number with 128-bit numerator and denominator.
///
/// Values are kept normalized (gcd(num, den) = 1, den > 0). Every arithmetic
/// operation is overflow-checked and throws std::overflow_error instead of
/// wrapping. Comparisons never overflow.
///
/// A single unsigned infinity (den = 0) is supported for distances: it
/// compares greater than every finite value, absorbs addition of finite
/// values, and is preserved by multiplication with a positive finite value.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by intent
  Rational(Int128 num, Int128 den);

  static Rational infinity() {
    Rational r;
    r.num_ = 1;
    r.den_ = 0;
    return r;
  }

  /// Parses "p/q", "p", or a finite decimal such as "0.25" (exactly).
  static Rational parse(std::string_view text);

  Int128 num() const noexcept { return num_; }
  Int128 den() const noexcept { return den_; }
  bool is_infinite() const noexcept { return den_ == 0; }
  bool is_finite() const noexcept { return den_ != 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const noexcept;

  /// Always "p/q" (also for integers); infinity renders as "inf".
  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
    if (a.den_ == b.den_) return a.num_ <=> b.num_;  // also covers inf vs inf
    return compare(a, b);
  }

 private:
  static std::strong_ordering compare(const Rational& a, const Rational& b) noexcept;

  Int128 num_ = 0;
  Int128 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

std::string int128_to_string(Int128 value);

/// Dyadic rational within 2^-precision_bits of log2(n) (truncated), n >= 1.
/// Computed with integer arithmetic only, so it is identical on every platform.
Rational log2_dyadic(std::uint64_t n, unsigned precision_bits);

/// log2(n) as a dyadic rational within 1/n^2, the precision used for
/// delta = log2(n) runs.
Rational log2_within_inverse_square(std::uint64_t n);

}  // namespace spanex
