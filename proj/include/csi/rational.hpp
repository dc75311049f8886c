#pragma once

#include <cstdint>
#include <string>

#include "csi/error.hpp"

namespace csi {

namespace detail {

using int128 = __int128;

inline int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

// Exact rational over int64. Always normalized: den > 0, gcd(|num|, den) = 1.
// Intermediates run in 128 bits; a result that does not fit back into int64
// raises a numeric error instead of silently wrapping.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d) : Rational(make(n, d)) {}

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string to_string() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make128(detail::int128(a.num_) * b.den_ + detail::int128(b.num_) * a.den_,
                   detail::int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make128(detail::int128(a.num_) * b.den_ - detail::int128(b.num_) * a.den_,
                   detail::int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make128(detail::int128(a.num_) * b.num_, detail::int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(ErrorKind::Numeric, "rational division by zero");
    return make128(detail::int128(a.num_) * b.den_, detail::int128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  // Normalized form makes equality a plain field compare.
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return detail::int128(a.num_) * b.den_ < detail::int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static Rational make(std::int64_t n, std::int64_t d) {
    return make128(detail::int128(n), detail::int128(d));
  }

  static Rational make128(detail::int128 n, detail::int128 d) {
    if (d == 0) throw Error(ErrorKind::Numeric, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    detail::int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr detail::int128 kMax = INT64_MAX;
    constexpr detail::int128 kMin = INT64_MIN;
    if (n > kMax || n < kMin || d > kMax) {
      throw Error(ErrorKind::Numeric, "rational overflow beyond 64-bit range");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace csi
