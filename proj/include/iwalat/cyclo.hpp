#pragma once

#include <memory>
#include <vector>

#include "iwalat/padic.hpp"

namespace iwalat {

class Cyclo;

/// The totally ramified extension Z_p[zeta_{p^r}], presented as Z_p[pi] with
/// pi = zeta_{p^r} - 1 and minimal polynomial Phi_{p^r}(1+X) (Eisenstein of
/// degree e = (p-1)p^{r-1}).  Valuations are normalized so v(p) = 1,
/// v(pi) = 1/e.
class CycloRing : public std::enable_shared_from_this<CycloRing> {
 public:
  static std::shared_ptr<const CycloRing> make(unsigned long p, long r, long prec);

  unsigned long p() const { return p_; }
  long r() const { return r_; }
  long e() const { return e_; }
  long prec() const { return prec_; }
  const std::vector<Padic>& minpoly() const { return minpoly_; }

  Cyclo zero() const;
  Cyclo one() const;
  Cyclo pi() const;
  Cyclo pi_inverse() const;
  Cyclo zeta() const;            // zeta_{p^r} = 1 + pi
  Cyclo zeta_pow(long t) const;  // zeta_{p^r}^t
  Cyclo embed(const Padic& x) const;

 private:
  CycloRing(unsigned long p, long r, long prec);

  unsigned long p_;
  long r_, e_, prec_;
  std::vector<Padic> minpoly_;  // length e+1, monic
};

/// Element of Z_p[zeta_{p^r}] (or its fraction field) in the pi-power basis.
class Cyclo {
 public:
  Cyclo() = default;
  Cyclo(std::shared_ptr<const CycloRing> ring, std::vector<Padic> coeffs);

  const std::shared_ptr<const CycloRing>& ring() const { return ring_; }
  const std::vector<Padic>& coeffs() const { return c_; }

  bool is_zero() const;  // zero to precision
  /// Valuation in (1/e)Z, read from the pi-basis; throws IndeterminateValuation
  /// when the minimum could hide below some coefficient's precision cap.
  Valuation val() const;

  /// Absolute precision in pi-units (valuations >= this are not certified).
  long pi_prec() const;
  /// Truncate so that nothing below pi^k is claimed.
  Cyclo cap_pi_prec(long k) const;

  Cyclo operator-() const;
  friend Cyclo operator+(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator-(const Cyclo& a, const Cyclo& b);
  friend Cyclo operator*(const Cyclo& a, const Cyclo& b);
  Cyclo& operator+=(const Cyclo& b) { return *this = *this + b; }
  Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
  Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }

  Cyclo scale(const Padic& s) const;
  Cyclo mul_int(const mpz_class& n) const;
  Cyclo div_exact_int(const mpz_class& n) const;
  Cyclo pow(const mpz_class& t) const;
  Cyclo inverse() const;  // O(e^3) linear solve, intended for small e
  friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }

  /// Valuation via repeated exact division by pi (independent route, test use).
  Valuation val_by_pi_division(long max_steps) const;
  /// Field norm down to Q_p as det of the multiplication matrix
  /// (equals the resultant with the minimal polynomial of pi).
  Padic norm() const;

 private:
  std::shared_ptr<const CycloRing> ring_;
  std::vector<Padic> c_;
};

}  // namespace iwalat
