#pragma once

#include <vector>

#include "iwalat/padic.hpp"

namespace iwalat {

/// Dense polynomial over Q_p, coefficient of X^i at index i.
struct PadicPoly {
  std::vector<Padic> c;

  Padic eval(const Padic& x) const;
  PadicPoly derivative() const;
  long degree() const { return static_cast<long>(c.size()) - 1; }
};

/// Unique (p-1)-st root of unity congruent to a mod p, to absolute precision N.
Padic teichmuller_lift(const mpz_class& a, unsigned long p, long N);

/// Newton iteration from x0; requires v(f(x0)) > 2 v(f'(x0)).
Padic hensel_root(const PadicPoly& f, const Padic& x0, long N);

/// p-adic logarithm on 1 + pZ_p.
Padic plog(const Padic& x);

/// p-adic exponential on pZ_p (p odd).
Padic pexp(const Padic& y);

/// The fixed topological generator u = 1 + p of 1 + pZ_p.
Padic topgen_u(unsigned long p, long N);

/// u^s for an integer exponent (binary powering, exact).
Padic u_power(const mpz_class& s, unsigned long p, long N);

/// u^s for s in Z_p, via exp(s log u).
Padic u_power(const Padic& s, long N);

}  // namespace iwalat
