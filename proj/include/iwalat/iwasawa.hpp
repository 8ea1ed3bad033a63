#pragma once

#include <optional>
#include <vector>

#include "iwalat/lvalues.hpp"

namespace iwalat {

/// Truncated power series over Z_p (coefficient i at index i, truncation at
/// c.size()).  Evaluation assumes the un-stored tail has integral
/// coefficients, which holds for every series produced here; the certified
/// output precision is capped by the tail bound size * v(x).
struct PSeries {
  unsigned long p = 0;
  std::vector<Padic> c;

  long trunc() const { return static_cast<long>(c.size()); }
  PSeries derivative() const;
  Padic eval(const Padic& x) const;
  Cyclo eval(const Cyclo& x) const;
};

/// Same over Z_p[zeta_{p^r}].
struct CSeries {
  std::shared_ptr<const CycloRing> ring;
  std::vector<Cyclo> c;

  long trunc() const { return static_cast<long>(c.size()); }
  Cyclo eval(const Cyclo& x) const;
};

/// H_psi(X) = psi(u)(1+X)-1 when psi factors through the wild tower, else 1.
PSeries H_poly_zp(const DirichletChar& psi, long N);
CSeries H_poly(const DirichletChar& psi, const std::shared_ptr<const CycloRing>& ring);

/// The unique G_psi with G_psi(u^k - 1) = L_p(1-k, psi) H_psi(u^k - 1),
/// fitted on the node grid k_j = k_0 + (p-1)j, j < M, by divided differences.
/// Coefficient j is certified to min(N, M - j) digits (the tail of the true
/// series perturbs coefficient j only above p^{M-j}).
PSeries fit_G(const DirichletChar& psi, long M, long N);
CSeries fit_G(const DirichletChar& psi, long M, const std::shared_ptr<const CycloRing>& ring);

/// First node weight of the fitting grid for psi.
long fit_node_start(const DirichletChar& psi);

/// G_hat_psi(X) = G_{psi omega}(u^2(1+X)-1); requires psi omega even.
PSeries g_hat(const DirichletChar& psi, long M, long N);
/// H_hat_psi(X) = H_{psi omega}(u^2(1+X)-1).
PSeries h_hat_zp(const DirichletChar& psi, long N);

/// F(alpha(1+X)-1) by binomial re-expansion.
PSeries compose_affine(const PSeries& F, const Padic& alpha);
CSeries compose_affine(const PSeries& F, const Cyclo& alpha);

struct InvariantsReport {
  long mu = 0;
  long lambda = 0;
  bool certified = false;  // false: min-valuation index too close to the truncation
  long certified_digits = 0;
  std::vector<Padic> distinguished;  // monic, degree lambda, of F / p^mu
  std::vector<Padic> unit;           // unit cofactor, truncated like F
};

/// mu/lambda and the Weierstrass factorization of F.  Throws PrecisionError
/// when every coefficient is zero to precision (never guesses).
InvariantsReport invariants(const PSeries& F);

struct ZpZero {
  Padic x0;
  bool resolved = false;
  std::optional<Padic> s0;  // weight-space solution u^{s0-2} = 1 + x0
  std::vector<Valuation> slopes;
};

/// Zeros of F in pZ_p (zeta = 1 branch), with the weight-space conversion
/// s0 = 2 + log(1+x0)/log(u).  Non-simple or non-integral-slope zeros are
/// reported unresolved together with the Newton polygon slopes.
std::vector<ZpZero> zeros_in_zp(const PSeries& F);

struct LemmaLReport {
  bool applicable = false;  // root valuations clear the 1/((p-1)p^{r-1}) threshold
  Valuation computed = Valuation(0);
  Valuation formula = Valuation(0);
  bool matches = false;
};

/// ord_p F(zeta u^k - 1) for a distinguished polynomial F (coefficients low
/// to high, monic) and zeta a primitive p^{r_zeta}-th root of unity, checked
/// against deg F / ((p-1) p^{r_zeta - 1}).
LemmaLReport lemma_L_valuation(const std::vector<Padic>& F, long k, long r_zeta);

}  // namespace iwalat
