#include "iwalat/iwasawa.hpp"

#include <algorithm>

namespace iwalat {

namespace {

long vp_long(unsigned long p, long n) {
  long v = 0;
  n = n < 0 ? -n : n;
  while (n % static_cast<long>(p) == 0) {
    n /= static_cast<long>(p);
    ++v;
  }
  return v;
}

mpz_class binom(long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

// lower convex hull slopes of (j, v(a_j)) for a polynomial with unit leading
// coefficient; returns the root valuations with multiplicity, ascending
std::vector<Valuation> newton_slopes(const std::vector<Padic>& a) {
  long d = static_cast<long>(a.size()) - 1;
  std::vector<std::pair<long, long>> pts;  // (j, val); zero-to-precision treated as +inf
  for (long j = 0; j <= d; ++j)
    if (!a[static_cast<size_t>(j)].is_zero()) pts.push_back({j, a[static_cast<size_t>(j)].val()});
  std::vector<std::pair<long, long>> hull;
  for (auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& q = hull[hull.size() - 1];
      auto& r = hull[hull.size() - 2];
      // drop q if it lies above segment r-pt
      if ((q.second - r.second) * (pt.first - r.first) >=
          (pt.second - r.second) * (q.first - r.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<Valuation> out;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    long dj = hull[i + 1].first - hull[i].first;
    long dv = hull[i].second - hull[i + 1].second;  // slope of roots = -(segment slope)
    for (long t = 0; t < dj; ++t) out.push_back(Valuation(dv, dj));
  }
  return out;
}

}  // namespace

PSeries PSeries::derivative() const {
  PSeries d;
  d.p = p;
  for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i].mul_int(mpz_class(i)));
  return d;
}

Padic PSeries::eval(const Padic& x) const {
  if (x.p() != p) throw DomainError("PSeries::eval: prime mismatch");
  if (!x.is_zero() && x.val() < 1)
    throw DomainError("PSeries::eval: argument must lie in pZ_p");
  if (x.is_zero() && x.abs_prec() < 1)
    throw DomainError("PSeries::eval: argument not certified to lie in pZ_p");
  if (c.empty()) return Padic::zero(p, x.abs_prec());
  Padic acc = c.back();
  for (long i = trunc() - 2; i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
  long vx = x.is_zero() ? x.abs_prec() : x.val();
  long tail = trunc() * vx;  // omitted tail has integral coefficients
  return acc.with_abs_prec(std::min(acc.abs_prec(), tail));
}

Cyclo PSeries::eval(const Cyclo& x) const {
  auto ring = x.ring();
  if (ring->p() != p) throw DomainError("PSeries::eval: prime mismatch");
  long e = ring->e();
  long vx_pi;  // valuation of x in pi-units
  try {
    Valuation v = x.val();
    if (!(Valuation(0) < v)) throw DomainError("PSeries::eval: argument must have v > 0");
    vx_pi = v.num * (e / v.den);
  } catch (const IndeterminateValuation&) {
    vx_pi = x.pi_prec();
    if (vx_pi < 1) throw DomainError("PSeries::eval: argument not certified to have v > 0");
  }
  Cyclo acc = ring->zero();
  for (long i = trunc() - 1; i >= 0; --i)
    acc = acc * x + ring->embed(c[static_cast<size_t>(i)]);
  long tail = trunc() * vx_pi;
  return acc.cap_pi_prec(std::min(acc.pi_prec(), tail));
}

Cyclo CSeries::eval(const Cyclo& x) const {
  long e = ring->e();
  long vx_pi;
  try {
    Valuation v = x.val();
    if (!(Valuation(0) < v)) throw DomainError("CSeries::eval: argument must have v > 0");
    vx_pi = v.num * (e / v.den);
  } catch (const IndeterminateValuation&) {
    vx_pi = x.pi_prec();
    if (vx_pi < 1) throw DomainError("CSeries::eval: argument not certified to have v > 0");
  }
  Cyclo acc = ring->zero();
  for (long i = trunc() - 1; i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
  long tail = trunc() * vx_pi;
  return acc.cap_pi_prec(std::min(acc.pi_prec(), tail));
}

PSeries H_poly_zp(const DirichletChar& psi, long N) {
  PSeries H;
  H.p = psi.p();
  if (psi.factors_through_wild_tower() && psi.takes_values_in_zp()) {
    // psi trivial: H(X) = (1+X) - 1 = X
    H.c = {Padic::zero(psi.p(), N), Padic::from_int(1, psi.p(), N)};
  } else {
    H.c = {Padic::from_int(1, psi.p(), N)};
  }
  return H;
}

CSeries H_poly(const DirichletChar& psi, const std::shared_ptr<const CycloRing>& ring) {
  CSeries H;
  H.ring = ring;
  if (psi.factors_through_wild_tower()) {
    Cyclo pu = psi.eval(mpz_class(1 + static_cast<long>(psi.p())), ring);
    H.c = {pu - ring->one(), pu};
  } else {
    H.c = {ring->one()};
  }
  return H;
}

long fit_node_start(const DirichletChar& psi) {
  long a = psi.tame_exp();
  return a == 0 ? static_cast<long>(psi.p()) - 1 : a;
}

namespace {

long fit_loss_bound(unsigned long p, long M) {
  long loss = 0;
  for (long m = 1; m < M; ++m) loss += 1 + vp_long(p, m);
  return loss;
}

}  // namespace

PSeries fit_G(const DirichletChar& psi, long M, long N) {
  if (M < 1) throw DomainError("fit_G: M must be >= 1");
  if (!psi.is_even()) throw DomainError("fit_G: psi must be even");
  if (!psi.takes_values_in_zp()) throw DomainError("fit_G: wild psi needs the cyclotomic overload");
  unsigned long p = psi.p();
  long pm1 = static_cast<long>(p) - 1;
  long k0 = fit_node_start(psi);
  long W = N + fit_loss_bound(p, M) + 3;
  bool h_is_x = psi.factors_through_wild_tower();  // trivial psi

  std::vector<Padic> x, dd;
  for (long j = 0; j < M; ++j) {
    long k = k0 + pm1 * j;
    Padic xj = u_power(mpz_class(k), p, W) - Padic::from_int(1, p, W);
    Padic y = kubota_leopoldt(k, psi, W);
    if (h_is_x) y = y * xj;
    x.push_back(xj);
    dd.push_back(y);
  }
  for (long m = 1; m < M; ++m)
    for (long j = M - 1; j >= m; --j)
      dd[static_cast<size_t>(j)] =
          (dd[static_cast<size_t>(j)] - dd[static_cast<size_t>(j - 1)]) /
          (x[static_cast<size_t>(j)] - x[static_cast<size_t>(j - m)]);

  // expand the Newton form to monomials
  std::vector<Padic> g(static_cast<size_t>(M), Padic::zero(p, W));
  g[0] = dd[static_cast<size_t>(M - 1)];
  for (long j = M - 2; j >= 0; --j) {
    for (long i = M - 1; i >= 1; --i)
      g[static_cast<size_t>(i)] =
          g[static_cast<size_t>(i - 1)] - g[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
    g[0] = dd[static_cast<size_t>(j)] - g[0] * x[static_cast<size_t>(j)];
  }

  PSeries G;
  G.p = p;
  G.c = std::move(g);
  for (long j = 0; j < M; ++j) {
    long cap = M - j;  // the un-fitted integral tail sits above p^{M-j}
    Padic& cj = G.c[static_cast<size_t>(j)];
    cj = cj.with_abs_prec(std::min(cj.abs_prec(), cap));
  }
  return G;
}

CSeries fit_G(const DirichletChar& psi, long M, const std::shared_ptr<const CycloRing>& ring) {
  if (M < 1) throw DomainError("fit_G: M must be >= 1");
  if (!psi.is_even()) throw DomainError("fit_G: psi must be even");
  unsigned long p = psi.p();
  if (ring->p() != p) throw DomainError("fit_G: ring prime mismatch");
  long pm1 = static_cast<long>(p) - 1;
  long k0 = fit_node_start(psi);
  long W = ring->prec();
  bool has_h = psi.factors_through_wild_tower();
  CSeries Hs = H_poly(psi, ring);

  std::vector<Padic> x;
  std::vector<Cyclo> dd;
  for (long j = 0; j < M; ++j) {
    long k = k0 + pm1 * j;
    Padic xj = u_power(mpz_class(k), p, W) - Padic::from_int(1, p, W);
    Cyclo y = kubota_leopoldt(k, psi, ring);
    if (has_h) {
      Cyclo h = Hs.c[0] + Hs.c[1].scale(xj);  // psi(u)(1 + x_j) - 1
      y = y * h;
    }
    x.push_back(xj);
    dd.push_back(y);
  }
  for (long m = 1; m < M; ++m)
    for (long j = M - 1; j >= m; --j)
      dd[static_cast<size_t>(j)] =
          (dd[static_cast<size_t>(j)] - dd[static_cast<size_t>(j - 1)])
              .scale((x[static_cast<size_t>(j)] - x[static_cast<size_t>(j - m)]).inverse());

  std::vector<Cyclo> g(static_cast<size_t>(M), ring->zero());
  g[0] = dd[static_cast<size_t>(M - 1)];
  for (long j = M - 2; j >= 0; --j) {
    for (long i = M - 1; i >= 1; --i)
      g[static_cast<size_t>(i)] = g[static_cast<size_t>(i - 1)] -
                                  g[static_cast<size_t>(i)].scale(x[static_cast<size_t>(j)]);
    g[0] = dd[static_cast<size_t>(j)] - g[0].scale(x[static_cast<size_t>(j)]);
  }

  CSeries G;
  G.ring = ring;
  G.c = std::move(g);
  long e = ring->e();
  for (long j = 0; j < M; ++j) {
    long cap = e * (M - j);
    Cyclo& cj = G.c[static_cast<size_t>(j)];
    cj = cj.cap_pi_prec(std::min(cj.pi_prec(), cap));
  }
  return G;
}

PSeries g_hat(const DirichletChar& psi, long M, long N) {
  unsigned long p = psi.p();
  DirichletChar po = psi * DirichletChar::omega_power(p, 1);
  PSeries G = fit_G(po, M, N);
  Padic u2 = u_power(mpz_class(2), p, N + M + 3);
  return compose_affine(G, u2);
}

PSeries h_hat_zp(const DirichletChar& psi, long N) {
  unsigned long p = psi.p();
  DirichletChar po = psi * DirichletChar::omega_power(p, 1);
  PSeries H;
  H.p = p;
  if (po.factors_through_wild_tower() && po.takes_values_in_zp()) {
    Padic u2 = u_power(mpz_class(2), p, N);
    H.c = {u2 - Padic::from_int(1, p, N), u2};
  } else {
    H.c = {Padic::from_int(1, p, N)};
  }
  return H;
}

PSeries compose_affine(const PSeries& F, const Padic& alpha) {
  unsigned long p = F.p;
  long M = F.trunc();
  Padic b = alpha - Padic::from_int(1, p, alpha.abs_prec());
  long vb = b.is_zero() ? b.abs_prec() : b.val();
  if (vb < 1) throw DomainError("compose_affine: alpha must be 1 mod p");
  PSeries out;
  out.p = p;
  out.c.assign(static_cast<size_t>(M), Padic::zero(p, 1));
  std::vector<Padic> bpow(static_cast<size_t>(M), Padic::from_int(1, p, alpha.abs_prec()));
  for (long t = 1; t < M; ++t) bpow[static_cast<size_t>(t)] = bpow[static_cast<size_t>(t - 1)] * b;
  Padic apow = Padic::from_int(1, p, alpha.abs_prec());
  for (long j = 0; j < M; ++j) {
    Padic acc = Padic::zero(p, F.c.back().abs_prec() + M);
    for (long i = j; i < M; ++i)
      acc = acc + F.c[static_cast<size_t>(i)].mul_int(binom(i, j)) * bpow[static_cast<size_t>(i - j)];
    acc = acc * apow;
    long cap = (M - j) * vb;  // true-series tail beyond the truncation
    out.c[static_cast<size_t>(j)] = acc.with_abs_prec(std::min(acc.abs_prec(), cap));
    apow = apow * alpha;
  }
  return out;
}

CSeries compose_affine(const PSeries& F, const Cyclo& alpha) {
  auto ring = alpha.ring();
  long M = F.trunc();
  long e = ring->e();
  Cyclo b = alpha - ring->one();
  long vb_pi;
  try {
    Valuation v = b.val();
    vb_pi = v.num * (e / v.den);
  } catch (const IndeterminateValuation&) {
    vb_pi = b.pi_prec();
  }
  if (vb_pi < 1) throw DomainError("compose_affine: alpha must be congruent to 1");
  CSeries out;
  out.ring = ring;
  out.c.assign(static_cast<size_t>(M), ring->zero());
  std::vector<Cyclo> bpow(static_cast<size_t>(M), ring->one());
  for (long t = 1; t < M; ++t) bpow[static_cast<size_t>(t)] = bpow[static_cast<size_t>(t - 1)] * b;
  Cyclo apow = ring->one();
  for (long j = 0; j < M; ++j) {
    Cyclo acc = ring->zero();
    for (long i = j; i < M; ++i)
      acc += bpow[static_cast<size_t>(i - j)].scale(F.c[static_cast<size_t>(i)].mul_int(binom(i, j)));
    acc = acc * apow;
    long cap = (M - j) * vb_pi;
    out.c[static_cast<size_t>(j)] = acc.cap_pi_prec(std::min(acc.pi_prec(), cap));
    apow = apow * alpha;
  }
  return out;
}

InvariantsReport invariants(const PSeries& F) {
  unsigned long p = F.p;
  long M = F.trunc();
  long mu = 0;
  long lambda = -1;
  bool have = false;
  for (long j = 0; j < M; ++j) {
    const Padic& cj = F.c[static_cast<size_t>(j)];
    if (cj.is_zero()) continue;
    if (!have || cj.val() < mu) {
      mu = cj.val();
      lambda = j;
      have = true;
    }
  }
  if (!have)
    throw PrecisionError("invariants: every coefficient is zero to precision");

  InvariantsReport rep;
  rep.mu = mu;
  rep.lambda = lambda;
  rep.certified = lambda < M - 1;
  for (long j = 0; j < lambda; ++j) {
    const Padic& cj = F.c[static_cast<size_t>(j)];
    if (cj.is_zero() ? cj.abs_prec() <= mu : false) rep.certified = false;
  }
  for (long j = 0; j < M; ++j) {
    const Padic& cj = F.c[static_cast<size_t>(j)];
    if (cj.is_zero() && cj.abs_prec() <= mu) rep.certified = false;
  }

  // Weierstrass preparation of F / p^mu by linear Hensel lifting mod p^NP
  std::vector<Padic> f(static_cast<size_t>(M), Padic());
  long minb = -1;
  for (long j = 0; j < M; ++j) {
    Padic cj = mu >= 0 ? F.c[static_cast<size_t>(j)].div_exact_int(Padic::pow_p(p, mu))
                       : F.c[static_cast<size_t>(j)].mul_int(Padic::pow_p(p, -mu));
    f[static_cast<size_t>(j)] = cj;
    long bj = cj.abs_prec() + (lambda > 0 ? j / lambda : 0);
    if (minb < 0 || bj < minb) minb = bj;
  }
  long NP = std::max(minb, 1L);
  rep.certified_digits = NP;

  if (lambda == 0) {
    rep.distinguished = {Padic::from_int(1, p, NP)};
    rep.unit = f;
    return rep;
  }

  mpz_class mod = Padic::pow_p(p, NP);
  auto lift_of = [&](const Padic& x) {
    if (x.is_zero() || x.val() >= NP) return mpz_class(0);
    return mpz_class(x.lift() % mod);
  };
  std::vector<mpz_class> fv(static_cast<size_t>(M));
  for (long j = 0; j < M; ++j) fv[static_cast<size_t>(j)] = lift_of(f[static_cast<size_t>(j)]);

  // mod p: F = X^lambda * Ubar with Ubar a unit
  std::vector<mpz_class> P(static_cast<size_t>(lambda) + 1, mpz_class(0));
  P[static_cast<size_t>(lambda)] = 1;
  std::vector<mpz_class> U(static_cast<size_t>(M), mpz_class(0));
  for (long j = lambda; j < M; ++j) U[static_cast<size_t>(j - lambda)] = fv[static_cast<size_t>(j)] % p;
  // series inverse of U mod (p, X^M)
  std::vector<mpz_class> Uinv(static_cast<size_t>(M), mpz_class(0));
  {
    mpz_class u0inv;
    mpz_invert(u0inv.get_mpz_t(), U[0].get_mpz_t(), mpz_class(p).get_mpz_t());
    Uinv[0] = u0inv;
    for (long n = 1; n < M; ++n) {
      mpz_class s = 0;
      for (long t = 1; t <= n; ++t) s += U[static_cast<size_t>(t)] * Uinv[static_cast<size_t>(n - t)];
      Uinv[static_cast<size_t>(n)] = ((-s * u0inv) % p + p) % p;
    }
  }

  auto polymul_trunc = [&](const std::vector<mpz_class>& A, const std::vector<mpz_class>& B) {
    std::vector<mpz_class> R(static_cast<size_t>(M), mpz_class(0));
    for (size_t i = 0; i < A.size() && static_cast<long>(i) < M; ++i) {
      if (A[i] == 0) continue;
      for (size_t j = 0; j < B.size() && static_cast<long>(i + j) < M; ++j) {
        R[i + j] = (R[i + j] + A[i] * B[j]) % mod;
      }
    }
    return R;
  };

  mpz_class pm = p;  // p^m
  for (long m = 1; m < NP; ++m) {
    std::vector<mpz_class> prod = polymul_trunc(P, U);
    std::vector<mpz_class> d(static_cast<size_t>(M));
    for (long j = 0; j < M; ++j) {
      mpz_class delta = (fv[static_cast<size_t>(j)] - prod[static_cast<size_t>(j)]) % mod;
      if (delta < 0) delta += mod;
      if (!mpz_divisible_p(delta.get_mpz_t(), pm.get_mpz_t()))
        throw PrecisionError("invariants: Hensel lift lost divisibility");
      d[static_cast<size_t>(j)] = (delta / pm) % p;
    }
    // solve alpha*U + X^lambda*beta = d mod p, deg alpha < lambda
    std::vector<mpz_class> alpha(static_cast<size_t>(lambda), mpz_class(0));
    std::vector<mpz_class> dlow = polymul_trunc(d, Uinv);
    for (long j = 0; j < lambda; ++j) alpha[static_cast<size_t>(j)] = dlow[static_cast<size_t>(j)] % p;
    std::vector<mpz_class> au = polymul_trunc(alpha, U);
    for (long j = 0; j < lambda; ++j) {
      P[static_cast<size_t>(j)] = (P[static_cast<size_t>(j)] + pm * alpha[static_cast<size_t>(j)]) % mod;
    }
    for (long j = lambda; j < M; ++j) {
      mpz_class beta = ((d[static_cast<size_t>(j)] - au[static_cast<size_t>(j)]) % p + p) % p;
      U[static_cast<size_t>(j - lambda)] =
          (U[static_cast<size_t>(j - lambda)] + pm * beta) % mod;
    }
    pm *= p;
  }

  rep.distinguished.clear();
  for (long j = 0; j <= lambda; ++j)
    rep.distinguished.push_back(Padic::from_int(P[static_cast<size_t>(j)], p, NP));
  rep.unit.clear();
  for (long j = 0; j < M; ++j)
    rep.unit.push_back(Padic::from_int(U[static_cast<size_t>(j)], p, NP));
  return rep;
}

namespace {

Padic newton_refine(const PSeries& F, const PSeries& Fd, Padic x) {
  for (int it = 0; it < 64; ++it) {
    Padic fx = F.eval(x);
    if (fx.is_zero()) break;
    Padic dfx = Fd.eval(x);
    Padic step = fx / dfx;
    if (step.is_zero() || step.val() >= x.abs_prec()) break;
    x = x - step;
  }
  Padic fx = F.eval(x);
  long res = fx.is_zero() ? fx.abs_prec() : fx.val();
  long vd = Fd.eval(x).val();
  return x.with_abs_prec(std::min(x.abs_prec(), res - vd));
}

}  // namespace

std::vector<ZpZero> zeros_in_zp(const PSeries& F) {
  InvariantsReport inv = invariants(F);
  if (!inv.certified)
    throw PrecisionError("zeros_in_zp: lambda not certified; refit with larger truncation");
  std::vector<ZpZero> out;
  if (inv.lambda == 0) return out;
  unsigned long p = F.p;
  std::vector<Valuation> slopes = newton_slopes(inv.distinguished);
  PSeries Fd = F.derivative();
  long NP = inv.certified_digits;

  if (inv.lambda == 1) {
    ZpZero z;
    z.slopes = slopes;
    Padic x0 = -inv.distinguished[0];
    x0 = newton_refine(F, Fd, x0);
    z.x0 = x0;
    z.resolved = true;
    long Ns = x0.abs_prec() + 1;
    Padic lx = plog(Padic::from_int(1, p, Ns) + x0.with_abs_prec(Ns));
    Padic lu = plog(topgen_u(p, Ns + 1));
    z.s0 = Padic::from_int(2, p, Ns) + lx / lu;
    out.push_back(std::move(z));
    return out;
  }

  // group slopes; only simple integral slopes resolve to Z_p roots
  size_t i = 0;
  while (i < slopes.size()) {
    size_t j = i;
    while (j < slopes.size() && slopes[j] == slopes[i]) ++j;
    long mult = static_cast<long>(j - i);
    ZpZero z;
    z.slopes = slopes;
    if (mult == 1 && slopes[i].den == 1) {
      long m = slopes[i].num;
      PadicPoly P;
      P.c = inv.distinguished;
      PadicPoly Pd = P.derivative();
      for (unsigned long cdig = 1; cdig < p; ++cdig) {
        Padic x0 = Padic::from_unit(cdig, m, p, std::max(NP - m, 2L));
        Padic px = P.eval(x0);
        Padic dpx = Pd.eval(x0);
        long vpx = px.is_zero() ? px.abs_prec() : px.val();
        if (dpx.is_zero() || !(vpx > 2 * dpx.val())) continue;
        Padic r = hensel_root(P, x0, NP);
        z.x0 = newton_refine(F, Fd, r);
        z.resolved = true;
        long Ns = z.x0.abs_prec() + 1;
        Padic lx = plog(Padic::from_int(1, p, Ns) + z.x0.with_abs_prec(Ns));
        Padic lu = plog(topgen_u(p, Ns + 1));
        z.s0 = Padic::from_int(2, p, Ns) + lx / lu;
        break;
      }
    }
    out.push_back(std::move(z));
    i = j;
  }
  return out;
}

LemmaLReport lemma_L_valuation(const std::vector<Padic>& F, long k, long r_zeta) {
  if (F.empty()) throw DomainError("lemma_L_valuation: empty polynomial");
  if (r_zeta < 1) throw DomainError("lemma_L_valuation: zeta must be a nontrivial p-power root");
  unsigned long p = F[0].p();
  long deg = static_cast<long>(F.size()) - 1;
  long prec = 0;
  for (const auto& a : F) prec = std::max(prec, a.abs_prec());
  auto ring = CycloRing::make(p, r_zeta, prec + deg + 2);
  long e = ring->e();

  Cyclo x = ring->zeta().scale(u_power(mpz_class(k), p, ring->prec())) - ring->one();
  Cyclo acc = ring->embed(F.back());
  for (long i = deg - 1; i >= 0; --i) acc = acc * x + ring->embed(F[static_cast<size_t>(i)]);

  LemmaLReport rep;
  rep.formula = Valuation(deg, e);
  rep.computed = acc.val();
  std::vector<Valuation> slopes = newton_slopes(F);
  rep.applicable = !slopes.empty();
  for (const auto& s : slopes)
    if (!(Valuation(1, e) < s)) rep.applicable = false;
  rep.matches = (rep.computed == rep.formula);
  return rep;
}

}  // namespace iwalat
