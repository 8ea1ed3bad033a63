#pragma once

#include <gmpxx.h>

#include <string>

#include "iwalat/errors.hpp"
#include "iwalat/valuation.hpp"

namespace iwalat {

/// Element of Q_p with capped absolute precision and exact valuation.
///
/// A nonzero element is stored as p^v * u with u a unit known modulo p^rp,
/// so the absolute precision is N = v + rp.  An element whose digits all
/// vanish up to the cap is "zero to precision N": it carries N but no
/// valuation, and any operation that needs its valuation throws.
///
/// Arithmetic never reports more precision than the inputs justify:
/// addition yields min of the absolute precisions, multiplication and
/// division preserve the relative precision of the unit parts.
class Padic {
 public:
  Padic() : p_(3), zero_(true), v_(1), rp_(0) {}

  static Padic zero(unsigned long p, long abs_prec);
  static Padic from_int(const mpz_class& a, unsigned long p, long abs_prec);
  static Padic from_int(long a, unsigned long p, long abs_prec) {
    return from_int(mpz_class(a), p, abs_prec);
  }
  static Padic from_rational(const mpq_class& a, unsigned long p, long abs_prec);
  /// p^v * u with u given mod p^rel_prec (u need not be reduced).
  static Padic from_unit(const mpz_class& u, long v, unsigned long p, long rel_prec);

  unsigned long p() const { return p_; }
  bool is_zero() const { return zero_; }
  long abs_prec() const { return zero_ ? v_ : v_ + rp_; }
  long rel_prec() const { return zero_ ? 0 : rp_; }

  /// Exact p-adic valuation; throws IndeterminateValuation on a
  /// zero-to-precision element.
  long val() const;
  Valuation valuation() const { return Valuation(val()); }

  const mpz_class& unit_part() const;

  /// Integer representative in [0, p^abs_prec) (requires val() >= 0 or zero).
  mpz_class lift() const;

  /// Truncate to absolute precision n (may turn the element into zero-to-precision).
  Padic with_abs_prec(long n) const;

  Padic operator-() const;
  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b);
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b);
  Padic& operator+=(const Padic& b) { return *this = *this + b; }
  Padic& operator-=(const Padic& b) { return *this = *this - b; }
  Padic& operator*=(const Padic& b) { return *this = *this * b; }
  Padic& operator/=(const Padic& b) { return *this = *this / b; }

  Padic inverse() const;
  Padic pow(long e) const;
  Padic mul_int(const mpz_class& a) const;  // multiply by an exact integer
  Padic div_exact_int(const mpz_class& a) const;

  /// True when a and b agree on all digits both can certify.
  friend bool agree_to_joint_prec(const Padic& a, const Padic& b);

  /// Canonical textual form "p^v * (d0 + d1*p + ...)".
  std::string str() const;

  static mpz_class pow_p(unsigned long p, long k);

 private:
  Padic(unsigned long p, bool zero, long v, long rp, mpz_class u)
      : p_(p), zero_(zero), v_(v), rp_(rp), u_(std::move(u)) {}
  void reduce_unit();

  unsigned long p_;
  bool zero_;
  long v_;   // valuation, or absolute precision when zero_
  long rp_;  // relative precision of the unit part
  mpz_class u_;
};

}  // namespace iwalat
