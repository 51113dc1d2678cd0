#include "osp/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace osp {

namespace {

long long checked(__int128 v, const char* what) {
  if (v > static_cast<__int128>(9223372036854775807LL) ||
      v < -static_cast<__int128>(9223372036854775807LL) - 1) {
    throw std::overflow_error(std::string("rational overflow in ") + what);
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
  if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& rhs) {
  const __int128 n =
      static_cast<__int128>(num_) * rhs.den_ + static_cast<__int128>(rhs.num_) * den_;
  const __int128 d = static_cast<__int128>(den_) * rhs.den_;
  num_ = checked(n, "+");
  den_ = checked(d, "+");
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  num_ = checked(static_cast<__int128>(num_) * rhs.num_, "*");
  den_ = checked(static_cast<__int128>(den_) * rhs.den_, "*");
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  num_ = checked(static_cast<__int128>(num_) * rhs.den_, "/");
  den_ = checked(static_cast<__int128>(den_) * rhs.num_, "/");
  normalize();
  return *this;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

}  // namespace osp
