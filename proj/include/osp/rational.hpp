#pragma once

#include <string>

namespace osp {

/// Exact rational arithmetic for the combinatorial layer.
///
/// Numerator and denominator are kept reduced with den > 0. Operations that
/// would leave the 64-bit range throw std::overflow_error instead of
/// silently wrapping; the partition expansions this backs are guarded to
/// sizes where that never happens.
class Rational {
 public:
  Rational() = default;
  Rational(long long value) : num_(value), den_(1) {}  // implicit: integers are rationals
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  /// "10" for integers, "10/3" otherwise.
  std::string str() const;

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

 private:
  void normalize();

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace osp
