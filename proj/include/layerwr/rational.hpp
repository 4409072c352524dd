#pragma once

#include <numeric>
#include <stdexcept>
#include <string>

namespace layerwr {

/// Exact nonnegative rational with an infinity marker (den == 0), so bound
/// comparisons never touch floating point.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (d == 0) {
      num = 1;  // canonical infinity
      return;
    }
    if (n < 0 || d < 0) {
      throw std::invalid_argument("Rational: negative values not supported");
    }
    long long g = std::gcd(n, d);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rational infinity() { return Rational(1, 0); }
  bool is_infinite() const { return den == 0; }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const {
    if (is_infinite()) {
      return false;
    }
    if (o.is_infinite()) {
      return true;
    }
    return num * o.den < o.num * den;
  }
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>=(const Rational& o) const { return !(*this < o); }
  bool operator>(const Rational& o) const { return o < *this; }

  Rational operator*(const Rational& o) const {
    if (is_infinite() || o.is_infinite()) {
      return infinity();
    }
    return Rational(num * o.num, den * o.den);
  }

  std::string to_string() const {
    if (is_infinite()) {
      return "inf";
    }
    if (den == 1) {
      return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace layerwr
