#include "spanex/rational.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "spanex/errors.hpp"

namespace spanex {
namespace {

using UInt128 = unsigned __int128;

[[noreturn]] void overflow(const char* op) {
  throw std::overflow_error(std::string("rational overflow in ") + op);
}

Int128 checked_mul(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_mul_overflow(a, b, &out)) overflow("multiplication");
  return out;
}

Int128 checked_add(Int128 a, Int128 b) {
  Int128 out;
  if (__builtin_add_overflow(a, b, &out)) overflow("addition");
  return out;
}

bool fits_64(Int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

UInt128 abs_u(Int128 v) { return v < 0 ? UInt128(0) - UInt128(v) : UInt128(v); }

int ctz128(UInt128 v) {
  auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<std::uint64_t>(v >> 64));
}

// Binary gcd.
UInt128 gcd_u(UInt128 a, UInt128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  int shift = ctz128(a | b);
  a >>= ctz128(a);
  do {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

Int128 gcd_i(Int128 a, Int128 b) {
  UInt128 g = gcd_u(abs_u(a), abs_u(b));
  if (g > UInt128(std::numeric_limits<Int128>::max())) overflow("gcd");
  return static_cast<Int128>(g);
}

// Compares non-negative a/b and c/d (b, d > 0) by continued-fraction
// expansion, which never needs products wider than the operands.
std::strong_ordering compare_nonneg(Int128 a, Int128 b, Int128 c, Int128 d) {
  bool flipped = false;
  for (;;) {
    Int128 q1 = a / b, r1 = a % b;
    Int128 q2 = c / d, r2 = c % d;
    if (q1 != q2) {
      auto o = q1 <=> q2;
      return flipped ? 0 <=> o : o;
    }
    if (r1 == 0 || r2 == 0) {
      auto o = r1 <=> r2;  // 0 vs positive fraction
      return flipped ? 0 <=> o : o;
    }
    // r1/b vs r2/d has the reverse ordering of b/r1 vs d/r2.
    a = b;
    b = r1;
    c = d;
    d = r2;
    flipped = !flipped;
  }
}

}  // namespace

Rational::Rational(Int128 num, Int128 den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  if (den < 0) {
    if (num == std::numeric_limits<Int128>::min() || den == std::numeric_limits<Int128>::min())
      overflow("negation");
    num = -num;
    den = -den;
  }
  if (den == 1) {
    num_ = num;
    den_ = 1;
    return;
  }
  Int128 g = gcd_i(num, den);
  if (g == 1) {
    num_ = num;
    den_ = den;
    return;
  }
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto bad = [&]() -> ArgumentError {
    return ArgumentError("not a rational number: '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s, bool allow_sign) -> Int128 {
    bool neg = false;
    if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw bad();
    Int128 v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') throw bad();
      v = checked_add(checked_mul(v, 10), ch - '0');
    }
    return neg ? -v : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int128 p = parse_int(trim(text.substr(0, slash)), true);
    Int128 q = parse_int(trim(text.substr(slash + 1)), false);
    if (q == 0) throw ArgumentError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw bad();
    Int128 w = whole.empty() ? 0 : parse_int(whole, false);
    Int128 f = frac.empty() ? 0 : parse_int(frac, false);
    Int128 scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale = checked_mul(scale, 10);
    Int128 num = checked_add(checked_mul(w, scale), f);
    return Rational(neg ? -num : num, scale);
  }
  return Rational(parse_int(text, true), 1);
}

double Rational::to_double() const noexcept {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string int128_to_string(Int128 value) {
  if (value == 0) return "0";
  UInt128 v = abs_u(value);
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (value < 0) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

std::string Rational::str() const {
  if (is_infinite()) return "inf";
  return int128_to_string(num_) + "/" + int128_to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational& Rational::operator+=(const Rational& rhs) {
  if (is_infinite() || rhs.is_infinite()) {
    *this = infinity();
    return *this;
  }
  if (den_ == rhs.den_) {
    if (den_ == 1) {
      num_ = checked_add(num_, rhs.num_);
      return *this;
    }
    *this = Rational(checked_add(num_, rhs.num_), den_);
    return *this;
  }
  Int128 g = gcd_i(den_, rhs.den_);
  Int128 lhs_scale = rhs.den_ / g;
  Int128 rhs_scale = den_ / g;
  Int128 num = checked_add(checked_mul(num_, lhs_scale), checked_mul(rhs.num_, rhs_scale));
  Int128 den = checked_mul(den_, lhs_scale);
  *this = Rational(num, den);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  if (rhs.is_infinite()) throw std::domain_error("subtracting infinity");
  return *this += -rhs;
}

Rational Rational::operator-() const {
  if (is_infinite()) throw std::domain_error("negative infinity is not representable");
  if (num_ == std::numeric_limits<Int128>::min()) overflow("negation");
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational& Rational::operator*=(const Rational& rhs) {
  if (is_infinite() || rhs.is_infinite()) {
    const Rational& finite = is_infinite() ? rhs : *this;
    if (finite.is_finite() && finite.sign() <= 0)
      throw std::domain_error("infinity times a non-positive value");
    *this = infinity();
    return *this;
  }
  Int128 g1 = gcd_i(num_, rhs.den_);
  Int128 g2 = gcd_i(rhs.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  Int128 num = checked_mul(num_ / g1, rhs.num_ / g2);
  Int128 den = checked_mul(den_ / g2, rhs.den_ / g1);
  *this = Rational(num, den);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_infinite()) {
    if (is_infinite()) throw std::domain_error("infinity divided by infinity");
    *this = Rational(0);
    return *this;
  }
  if (rhs.num_ == 0) throw std::domain_error("division by zero");
  if (is_infinite()) {
    if (rhs.sign() < 0) throw std::domain_error("infinity divided by a negative value");
    return *this;
  }
  Rational inverse;
  inverse.num_ = rhs.num_ < 0 ? -rhs.den_ : rhs.den_;
  inverse.den_ = rhs.num_ < 0 ? -rhs.num_ : rhs.num_;
  return *this *= inverse;
}

std::strong_ordering Rational::compare(const Rational& a, const Rational& b) noexcept {
  if (a.is_infinite() || b.is_infinite()) {
    return static_cast<int>(a.is_infinite()) <=> static_cast<int>(b.is_infinite());
  }
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa <=> sb;
  if (fits_64(a.num_) && fits_64(a.den_) && fits_64(b.num_) && fits_64(b.den_))
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  Int128 lhs, rhs;
  if (!__builtin_mul_overflow(a.num_, b.den_, &lhs) && !__builtin_mul_overflow(b.num_, a.den_, &rhs))
    return lhs <=> rhs;
  if (sa > 0) return compare_nonneg(a.num_, a.den_, b.num_, b.den_);
  // both negative: a < b  <=>  -b < -a
  return compare_nonneg(-b.num_, b.den_, -a.num_, a.den_);
}

Rational log2_dyadic(std::uint64_t n, unsigned precision_bits) {
  if (n == 0) throw ArgumentError("log2 of zero");
  if (precision_bits > 56) throw ArgumentError("log2 precision above 56 bits");
  constexpr int kFrac = 62;
  const int whole = 63 - std::countl_zero(n);
  // y = n / 2^whole in [1, 2), fixed point with kFrac fractional bits.
  UInt128 y = (UInt128(n) << kFrac) >> whole;
  const UInt128 two = UInt128(2) << kFrac;
  Int128 frac = 0;
  for (unsigned i = 0; i < precision_bits; ++i) {
    y = (y * y) >> kFrac;
    frac <<= 1;
    if (y >= two) {
      frac |= 1;
      y >>= 1;
    }
  }
  return Rational(whole) + Rational(frac, Int128(1) << precision_bits);
}

Rational log2_within_inverse_square(std::uint64_t n) {
  if (n == 0) throw ArgumentError("log2 of zero");
  const unsigned whole = 63 - static_cast<unsigned>(std::countl_zero(n));
  // n < 2^(whole+1) so 2^-(2 whole + 3) < 1 / (2 n^2).
  return log2_dyadic(n, std::min(2 * whole + 3, 56u));
}

}  // namespace spanex
