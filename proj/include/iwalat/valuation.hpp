#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace iwalat {

/// Rational valuation num/den, normalized with den >= 1 and gcd(num,den) = 1.
/// Valuations in Q_p are integers; in Q_p(zeta_{p^r}) they lie in (1/e)Z.
struct Valuation {
  long num = 0;
  long den = 1;

  Valuation() = default;
  Valuation(long n, long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend Valuation operator+(Valuation a, Valuation b) {
    return Valuation(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Valuation operator-(Valuation a, Valuation b) {
    return Valuation(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend bool operator==(Valuation a, Valuation b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(Valuation a, Valuation b) { return !(a == b); }
  friend bool operator<(Valuation a, Valuation b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(Valuation a, Valuation b) { return a < b || a == b; }
  friend bool operator>(Valuation a, Valuation b) { return b < a; }
  friend bool operator>=(Valuation a, Valuation b) { return b <= a; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace iwalat
