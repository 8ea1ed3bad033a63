#include "iwalat/padic_ops.hpp"

namespace iwalat {

Padic PadicPoly::eval(const Padic& x) const {
  if (c.empty()) return Padic::zero(x.p(), x.abs_prec());
  Padic acc = c.back();
  for (long i = degree() - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

PadicPoly PadicPoly::derivative() const {
  PadicPoly d;
  for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i].mul_int(mpz_class(i)));
  return d;
}

Padic teichmuller_lift(const mpz_class& a, unsigned long p, long N) {
  if (N < 1) throw DomainError("teichmuller_lift: N must be >= 1");
  if (mpz_divisible_ui_p(a.get_mpz_t(), p))
    throw DomainError("teichmuller_lift: argument divisible by p");
  mpz_class m = Padic::pow_p(p, N);
  mpz_class x = a % m;
  if (x < 0) x += m;
  // x -> x^p converges to the unique (p-1)-st root of unity in x + pZ_p
  for (long i = 0; i < N + 1; ++i) {
    mpz_class y;
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), p, m.get_mpz_t());
    if (y == x) break;
    x = y;
  }
  return Padic::from_int(x, p, N);
}

Padic hensel_root(const PadicPoly& f, const Padic& x0, long N) {
  Padic x = x0;
  Padic fx = f.eval(x);
  PadicPoly df = f.derivative();
  Padic dfx = df.eval(x);
  long vf = fx.is_zero() ? fx.abs_prec() : fx.val();
  if (dfx.is_zero())
    throw DomainError("hensel_root: derivative zero to precision at start point");
  long vdf = dfx.val();
  if (!(vf > 2 * vdf))
    throw DomainError("hensel_root: no convergence, v(f(x0))=" + std::to_string(vf) +
                      " <= 2*v(f'(x0))=" + std::to_string(2 * vdf));
  for (int it = 0; it < 64; ++it) {
    fx = f.eval(x);
    if (fx.is_zero()) break;
    dfx = df.eval(x);
    Padic step = fx / dfx;
    if (step.is_zero() || step.val() >= x.abs_prec()) break;
    x = x - step;
  }
  fx = f.eval(x);
  long residual = fx.is_zero() ? fx.abs_prec() : fx.val();
  long certified = residual - vdf;
  return x.with_abs_prec(std::min(N, std::min(x.abs_prec(), certified)));
}

Padic plog(const Padic& x) {
  unsigned long p = x.p();
  long N = x.abs_prec();
  Padic y = x - Padic::from_int(1, p, N);
  if (!y.is_zero() && y.val() < 1)
    throw DomainError("plog: argument not congruent to 1 mod p");
  if (y.is_zero()) return Padic::zero(p, N);
  long vy = y.val();
  Padic sum = Padic::zero(p, N);
  Padic ypow = Padic::from_int(1, p, N + 2);
  long lim = N / vy + 2;
  for (long n = 1; n <= lim; ++n) {
    ypow = ypow * y;
    long vn = 0;
    for (long t = n; t % static_cast<long>(p) == 0; t /= static_cast<long>(p)) ++vn;
    if (n * vy - vn >= N) break;
    Padic term = ypow.div_exact_int(mpz_class(n));
    if (n % 2 == 0) term = -term;
    sum = sum + term;
  }
  return sum;
}

Padic pexp(const Padic& y) {
  unsigned long p = y.p();
  long N = y.abs_prec();
  if (p == 2) throw DomainError("pexp: p must be odd");
  if (!y.is_zero() && y.val() < 1)
    throw DomainError("pexp: argument valuation must be >= 1");
  Padic sum = Padic::from_int(1, p, N);
  if (y.is_zero()) return sum;
  Padic term = Padic::from_int(1, p, N + 2);
  for (long n = 1; n < 8 * N + 8; ++n) {
    term = (term * y).div_exact_int(mpz_class(n));
    if (term.is_zero() || term.val() >= N) break;
    sum = sum + term;
  }
  return sum.with_abs_prec(N);
}

Padic topgen_u(unsigned long p, long N) {
  return Padic::from_int(mpz_class(1) + mpz_class(static_cast<long>(p)), p, N);
}

Padic u_power(const mpz_class& s, unsigned long p, long N) {
  mpz_class m = Padic::pow_p(p, N);
  mpz_class base = (mpz_class(1) + mpz_class(static_cast<long>(p))) % m;
  mpz_class r;
  if (s >= 0) {
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), base.get_mpz_t(), m.get_mpz_t());
    mpz_class e = -s;
    mpz_powm(r.get_mpz_t(), inv.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  }
  return Padic::from_int(r, p, N);
}

Padic u_power(const Padic& s, long N) {
  if (s.is_zero()) return Padic::from_int(1, s.p(), N);
  if (s.val() < 0) throw DomainError("u_power: exponent must lie in Z_p");
  unsigned long p = s.p();
  Padic lu = plog(topgen_u(p, N + 1));
  return pexp((s * lu).with_abs_prec(N)).with_abs_prec(N);
}

}  // namespace iwalat
