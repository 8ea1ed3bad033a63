#pragma once

#include <vector>

#include "iwalat/cyclo.hpp"
#include "iwalat/padic_ops.hpp"

namespace iwalat {

/// Primitive Dirichlet character with values in Z_p[zeta_{p^r}].
///
/// Decomposed as omega^a (tame, conductor p or 1) times chi_zeta (wild,
/// conductor p^{r+1}, sending u = 1+p to zeta_{p^r}^t) times an away-from-p
/// character of modulus N coprime to p.  Away values are constrained to
/// mu_{p-1}, stored as elements of (Z/p)^x and evaluated through the
/// Teichmuller lift; characters needing other roots of unity are rejected.
class DirichletChar {
 public:
  /// away_table: length N, entry n is the value at n as an element of
  /// (Z/p)^x, or 0 when gcd(n, N) > 1.  Empty vector means trivial away part.
  DirichletChar(unsigned long p, long tame_a, long wild_r, long wild_t,
                unsigned long away_n = 1, std::vector<unsigned long> away_table = {});

  static DirichletChar trivial(unsigned long p) { return DirichletChar(p, 0, 0, 0); }
  static DirichletChar omega_power(unsigned long p, long a) { return DirichletChar(p, a, 0, 0); }
  static DirichletChar wild(unsigned long p, long r, long t) { return DirichletChar(p, 0, r, t); }
  /// Quadratic character (D/.) of a fundamental discriminant D prime to p.
  static DirichletChar quadratic(unsigned long p, long D);

  unsigned long p() const { return p_; }
  long tame_exp() const { return a_; }
  long wild_r() const { return r_; }
  long wild_t() const { return t_; }
  unsigned long away_modulus() const { return nn_; }
  const std::vector<unsigned long>& away_table() const { return table_; }

  mpz_class conductor() const { return cond_; }
  bool is_even() const { return even_; }
  bool is_trivial() const { return cond_ == 1; }
  /// True for the characters cutting out Gal(Q_infty/Q): trivial tame and
  /// away parts, arbitrary wild part.
  bool factors_through_wild_tower() const { return a_ == 0 && nn_ == 1; }
  bool takes_values_in_zp() const { return r_ == 0; }

  /// Value at n in the given cyclotomic ring (ring->r() >= max(wild_r, 1)).
  Cyclo eval(const mpz_class& n, const std::shared_ptr<const CycloRing>& ring) const;
  /// Value at n in Z_p; requires takes_values_in_zp().
  Padic eval_zp(const mpz_class& n, long N) const;

  DirichletChar inv() const;
  friend DirichletChar operator*(const DirichletChar& x, const DirichletChar& y);
  bool operator==(const DirichletChar& o) const;

 private:
  void primitivize();

  unsigned long p_;
  long a_;  // tame exponent mod p-1
  long r_;  // wild level: zeta has exact order p^r (0 = trivial wild part)
  long t_;  // wild twist: u maps to zeta_{p^r}^t, gcd(t, p) = 1 when r > 0
  unsigned long nn_;
  std::vector<unsigned long> table_;
  mpz_class cond_;
  bool even_;
};

}  // namespace iwalat
