#include "regmatch/rational.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace regmatch {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("rational overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(checked_narrow(num), checked_narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) {
    return Rational(std::stoll(text), 1);
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::size_t frac_len = text.size() - dot - 1;
  if (frac_len > 18) throw std::invalid_argument("decimal literal too precise for rational");
  std::int64_t den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(std::stoll(digits), den);
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return Rational(-num_, den_); }

Rational Rational::operator+(const Rational& o) const {
  return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return make(i128(num_) * o.den_, i128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

bool Rational::operator<=(const Rational& o) const {
  return i128(num_) * o.den_ <= i128(o.num_) * den_;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace regmatch
