#pragma once

#include <optional>
#include <string>

#include "iwalat/iwasawa.hpp"

namespace iwalat {

/// q-expansion with exact integer coefficients, 1-based.
struct QExpansion {
  std::string label;
  std::vector<mpz_class> a;  // a[n] for 1 <= n <= B, a[0] unused

  long bound() const { return static_cast<long>(a.size()) - 1; }
  const mpz_class& coeff(long n) const { return a.at(static_cast<size_t>(n)); }
};

/// Coefficients of Delta = q prod (1-q^n)^24 up to q^B, via the cube of the
/// eta-product (Jacobi's sparse series) squared three times.
QExpansion delta_expansion(long B);

struct CongruenceReport {
  unsigned long p = 0;
  long a = 0;      // exponent, reported as min(a, 11-a)
  long m = 0;      // maximal modulus exponent valid for all tested primes
  long count = 1;  // m + 1
  std::vector<long> witnesses;  // primes where p^{m+1} fails
  long bound = 0;
  long stability_margin = 50;
  bool stable = false;  // dropping the last margin primes does not change m
};

/// Largest m with tau(l) = l^a + l^{11-a} mod p^m for some a and every prime
/// l <= B, l != p.  A finite certificate, not a proof.
CongruenceReport eisenstein_congruence(unsigned long p, long B);

struct CountReport {
  unsigned long p = 0;
  long k = 0;
  long r_zeta = 0;
  long ord = 0;    // in the uniformizer of Z_p[zeta]
  long count = 0;  // ord + 1
  long certified_digits = 0;
  bool exact = true;  // false: reported as an upper bound only
  std::string label;
};

/// Lattice count ord(L_p(1-k, chi_zeta * chi)) + 1 for the even character chi.
/// Requires tau(p) to be a p-adic unit (ordinarity); zeta is the zeta_t-th
/// power of a fixed primitive p^{r_zeta}-th root of unity, r_zeta = 0 for 1.
CountReport lattice_count_from_Lp(unsigned long p, long k, const DirichletChar& chi,
                                  long r_zeta, long zeta_t, long N, bool exact_mode = true);

enum class ScanMode { kFixedZetaOverK, kFixedKOverZeta, kTail };

struct ScanRow {
  long k = 0;
  long r_zeta = 0;
  long zeta_t = 0;
  long ord = 0;
  long count = 0;
};

struct ScanParams {
  long M = 8;  // fitting nodes
  long N = 8;  // working digits
  std::vector<long> ks;       // weights (fixed-k mode uses ks[0]; k-scan fallback grid)
  long r_zeta = 1;            // wild level for the cyclotomic modes
  std::vector<long> zeta_ts;  // zeta exponents for the cyclotomic modes
  long depth = 3;             // k_n scan depth when a zero exists
};

struct ScanReport {
  ScanMode mode = ScanMode::kFixedZetaOverK;
  unsigned long p = 0;
  long mu = 0;
  long lambda = 0;  // deg of the distinguished factor of G_hat
  long bound = 0;   // lambda + 1 (rank-1 family)
  std::vector<ScanRow> rows;
  bool constant = false;
  bool monotone = false;
  std::optional<std::string> s0;
};

/// Counts along specializations of the family attached to the odd tame
/// character psi (the L-values interpolate L_p(1-s, psi*omega)).  Fixed-zeta
/// mode follows k_n congruent to the zero s0 to n digits when one exists,
/// otherwise the supplied weight grid; tail mode evaluates at zeta != 1 where
/// the count is forced constant by the ramified valuation formula.
ScanReport weight_variation_scan(const DirichletChar& psi, ScanMode mode,
                                 const ScanParams& prm);

}  // namespace iwalat
