#pragma once

#include <memory>
#include <vector>

#include "iwalat/dirichlet.hpp"

namespace iwalat {

using BigRational = mpq_class;

/// Exact k-th Bernoulli number (convention B_1 = -1/2), memoized.
BigRational bernoulli_number(long k);

/// p*B_j mod p^digits for j = 0..kmax.  p*B_j is p-integral by von
/// Staudt-Clausen, so the table lives in Z/p^digits.
struct PBernoulliTable {
  unsigned long p;
  long digits;  // certified digits (may exceed the request)
  mpz_class mod;
  std::vector<mpz_class> pb;
};
std::shared_ptr<const PBernoulliTable> p_bernoulli_table(unsigned long p, long kmax, long digits);

/// Exact B_{k,chi} for the quadratic character chi = (D/.) of a fundamental
/// discriminant (D = 1 gives the trivial character).  Test oracle path:
/// computed from exact Bernoulli polynomials.
BigRational quadratic_bernoulli_exact(long k, long D);

/// B_{k,chi} for a primitive chi with values in Z_p, to absolute precision N.
Padic generalized_bernoulli(long k, const DirichletChar& chi, long N);
/// Same for wild characters, valued in Z_p[zeta_{p^r}].
Cyclo generalized_bernoulli(long k, const DirichletChar& chi,
                            const std::shared_ptr<const CycloRing>& ring);

/// L(1-k, chi) = -B_{k,chi}/k.
Padic classical_L_negative(long k, const DirichletChar& chi, long N);
Cyclo classical_L_negative(long k, const DirichletChar& chi,
                           const std::shared_ptr<const CycloRing>& ring);

/// Kubota-Leopoldt value L_p(1-k, psi) = (1 - psi omega^{-k}(p) p^{k-1}) L(1-k, psi omega^{-k}).
/// Requires k >= 1 and psi even; the pole at s = 1 for trivial psi is rejected.
Padic kubota_leopoldt(long k, const DirichletChar& psi, long N);
Cyclo kubota_leopoldt(long k, const DirichletChar& psi,
                      const std::shared_ptr<const CycloRing>& ring);

}  // namespace iwalat
