#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace regmatch {

// Exact rational arithmetic on 64-bit numerator/denominator. Operations
// normalize through 128-bit intermediates and throw std::overflow_error if
// the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t num, std::int64_t den);

  // Parses "3", "-5/7" or a decimal literal like "0.05" (kept exact).
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const;
  std::string str() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

 private:
  std::int64_t num_;
  std::int64_t den_;  // always > 0
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace regmatch
