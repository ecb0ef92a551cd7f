#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace mtc {

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Exact rational with 64-bit numerator/denominator. Intermediate products
// are carried in 128 bits; anything that does not fit back throws.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(int64_t n) : num_(n) {}  // NOLINT(implicit)
  Rational(int64_t n, int64_t d) { assign(n, d); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const { return Rational(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from128(static_cast<__int128>(a.num_) + b.num_, a.den_);
    __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
    __int128 d = static_cast<__int128>(a.den_) * b.den_;
    return from128(n, d);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    return from128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend auto operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw OverflowError("Rational: 64-bit overflow");
    Rational r;
    r.num_ = static_cast<int64_t>(n);
    r.den_ = static_cast<int64_t>(d);
    return r;
  }

  void assign(int64_t n, int64_t d) { *this = from128(n, d); }

  int64_t num_ = 0;
  int64_t den_ = 1;
};

}  // namespace mtc
