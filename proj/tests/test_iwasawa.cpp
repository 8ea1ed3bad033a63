#include "doctest.h"
#include "iwalat/iwasawa.hpp"

using namespace iwalat;

TEST_CASE("H is the two-case polynomial") {
  auto w12 = DirichletChar::omega_power(691, 12);
  PSeries h1 = H_poly_zp(w12, 6);
  CHECK(h1.c.size() == 1);
  CHECK(h1.c[0].lift() == 1);

  PSeries hx = H_poly_zp(DirichletChar::trivial(5), 6);
  CHECK(hx.c.size() == 2);
  CHECK(hx.c[0].is_zero());
  CHECK(hx.c[1].lift() == 1);

  auto R = CycloRing::make(5, 1, 6);
  CSeries hz = H_poly(DirichletChar::wild(5, 1, 1), R);
  CHECK(hz.c.size() == 2);
  CHECK((hz.c[1] - R->zeta()).is_zero());
  CHECK((hz.c[0] - (R->zeta() - R->one())).is_zero());
}

TEST_CASE("fitted series interpolates held-out weights") {
  for (unsigned long p : {5ul, 7ul}) {
    auto psi = DirichletChar::omega_power(p, 2);
    long M = 5, N = 8;
    PSeries G = fit_G(psi, M, N);
    long k0 = fit_node_start(psi);
    // held-out nodes beyond the fitting grid
    for (long j = M; j < M + 3; ++j) {
      long k = k0 + (static_cast<long>(p) - 1) * j;
      Padic x = u_power(mpz_class(k), p, N + 4) - Padic::from_int(1, p, N + 4);
      Padic lhs = G.eval(x);
      Padic rhs = kubota_leopoldt(k, psi, N + 4);
      CHECK(agree_to_joint_prec(lhs, rhs));
    }
  }
}

TEST_CASE("trivial-character branch carries the pole through H") {
  unsigned long p = 5;
  auto triv = DirichletChar::trivial(p);
  PSeries G = fit_G(triv, 5, 8);
  // G(u^k - 1) = L_p(1-k) * (u^k - 1) at a held-out weight
  long k = fit_node_start(triv) + 4 * 6;
  Padic x = u_power(mpz_class(k), p, 10) - Padic::from_int(1, p, 10);
  CHECK(agree_to_joint_prec(G.eval(x), kubota_leopoldt(k, triv, 10) * x));
  // coefficients are integral and c_0 relates to the zeta_p residue
  for (const auto& cj : G.c)
    if (!cj.is_zero()) CHECK(cj.val() >= 0);
}

TEST_CASE("fit at p=691 matches the direct L-value") {
  auto w12 = DirichletChar::omega_power(691, 12);
  PSeries G = fit_G(w12, 3, 3);
  Padic x12 = u_power(mpz_class(12), 691, 6) - Padic::from_int(1, 691, 6);
  Padic lhs = G.eval(x12);
  CHECK(lhs.val() == 1);
  CHECK(agree_to_joint_prec(lhs, kubota_leopoldt(12, w12, 6)));
}

TEST_CASE("g_hat substitution identity") {
  unsigned long p = 5;
  auto psi = DirichletChar::omega_power(p, 3);  // odd; psi*omega = omega^4 even
  long M = 5, N = 8;
  PSeries Gh = g_hat(psi, M, N);
  PSeries G = fit_G(psi * DirichletChar::omega_power(p, 1), M, N);
  // Ghat(u^{k-2} - 1) = G(u^k - 1)
  for (long k : {4L, 8L, 24L}) {
    Padic one = Padic::from_int(1, p, N + 4);
    Padic xh = u_power(mpz_class(k - 2), p, N + 4) - one;
    Padic xg = u_power(mpz_class(k), p, N + 4) - one;
    CHECK(agree_to_joint_prec(Gh.eval(xh), G.eval(xg)));
  }
}

TEST_CASE("invariants of explicit polynomials") {
  unsigned long p = 7;
  PSeries F;
  F.p = p;
  F.c = {Padic::from_int(7, p, 8), Padic::from_int(1, p, 8), Padic::zero(p, 8)};
  InvariantsReport r = invariants(F);
  CHECK(r.mu == 0);
  CHECK(r.lambda == 1);
  CHECK(r.certified);
  CHECK(r.distinguished.size() == 2);
  CHECK(agree_to_joint_prec(r.distinguished[0], Padic::from_int(7, p, r.certified_digits)));

  PSeries F2;
  F2.p = p;
  F2.c = {Padic::from_int(7, p, 8), Padic::from_int(7, p, 8)};
  InvariantsReport r2 = invariants(F2);
  CHECK(r2.mu == 1);
  CHECK(r2.lambda == 0);

  PSeries Z;
  Z.p = p;
  Z.c = {Padic::zero(p, 4), Padic::zero(p, 4)};
  CHECK_THROWS_AS(invariants(Z), PrecisionError);
}

TEST_CASE("Weierstrass factors reproduce the series") {
  unsigned long p = 5;
  PSeries F;
  F.p = p;
  // (X + 5)(X + 10) * (1 + 2X + X^3-ish unit), built coefficientwise
  F.c = {Padic::from_int(50, p, 10), Padic::from_int(115, p, 10), Padic::from_int(31, p, 10),
         Padic::from_int(32, p, 10), Padic::from_int(2, p, 10)};
  InvariantsReport r = invariants(F);
  CHECK(r.mu == 0);
  CHECK(r.lambda == 2);
  // P * U == F coefficientwise to the certified digits
  for (long j = 0; j < F.trunc(); ++j) {
    Padic acc = Padic::zero(p, r.certified_digits);
    for (long i = 0; i <= std::min<long>(j, r.lambda); ++i)
      if (j - i < static_cast<long>(r.unit.size()))
        acc = acc + r.distinguished[i] * r.unit[j - i];
    CHECK(agree_to_joint_prec(acc, F.c[j]));
  }
}

TEST_CASE("zeros of a planted lambda=1 series") {
  unsigned long p = 7;
  long N = 10;
  // F = (X - 14)(1 + 3X): coefficients -14, 1-42, 3
  PSeries F;
  F.p = p;
  F.c = {Padic::from_int(-14, p, N), Padic::from_int(-41, p, N), Padic::from_int(3, p, N),
         Padic::zero(p, N)};
  auto zs = zeros_in_zp(F);
  REQUIRE(zs.size() == 1);
  CHECK(zs[0].resolved);
  CHECK(agree_to_joint_prec(zs[0].x0, Padic::from_int(14, p, zs[0].x0.abs_prec())));
  REQUIRE(zs[0].s0.has_value());
  // replay: u^{s0 - 2} - 1 = x0
  Padic s0 = *zs[0].s0;
  Padic back = u_power(s0 - Padic::from_int(2, p, s0.abs_prec()), s0.abs_prec()) -
               Padic::from_int(1, p, s0.abs_prec());
  CHECK(agree_to_joint_prec(back, zs[0].x0));
}

TEST_CASE("unit series has no zeros") {
  auto psi = DirichletChar::omega_power(5, 2);
  PSeries G = fit_G(psi, 5, 8);
  InvariantsReport r = invariants(G);
  CHECK(r.mu == 0);
  CHECK(r.lambda == 0);
  CHECK(zeros_in_zp(G).empty());
}

TEST_CASE("twist rule against an independent cyclotomic fit") {
  unsigned long p = 5;
  long M = 4;
  auto psi = DirichletChar::omega_power(p, 2);
  auto chiz = DirichletChar::wild(p, 1, 1);
  auto ring = CycloRing::make(p, 1, 9);

  PSeries G = fit_G(psi, M, 9);
  CSeries Gt = fit_G(psi * chiz, M, ring);
  CSeries Gc = compose_affine(G, ring->zeta());

  for (const Cyclo& x : {ring->pi(), ring->embed(Padic::from_int(5, p, 9)),
                         ring->pi() * ring->pi()}) {
    Cyclo lhs = Gt.eval(x);
    Cyclo rhs = Gc.eval(x);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("cyclotomic evaluation matches the direct wild L-value") {
  unsigned long p = 5;
  auto psi = DirichletChar::omega_power(p, 2);
  auto chiz = DirichletChar::wild(p, 1, 1);
  auto ring = CycloRing::make(p, 1, 9);
  PSeries G = fit_G(psi, 5, 9);
  // L_p(1-k, chi_zeta psi) = G_psi(zeta u^k - 1) for the tame psi (H = 1)
  for (long k : {2L, 6L}) {
    Cyclo x = ring->zeta().scale(u_power(mpz_class(k), p, 9)) - ring->one();
    Cyclo lhs = G.eval(x);
    Cyclo rhs = kubota_leopoldt(k, psi * chiz, ring);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("valuation formula at ramified points") {
  unsigned long p = 5;
  long N = 8;
  // F = X + 5: deg 1, r_zeta = 2 -> 1/20
  std::vector<Padic> F = {Padic::from_int(5, p, N), Padic::from_int(1, p, N)};
  LemmaLReport r = lemma_L_valuation(F, 3, 2);
  CHECK(r.applicable);
  CHECK(r.computed == Valuation(1, 20));
  CHECK(r.matches);

  // (X + 5)(X + 25) = X^2 + 30X + 125: deg 2 -> 2/20
  std::vector<Padic> F2 = {Padic::from_int(125, p, N), Padic::from_int(30, p, N),
                           Padic::from_int(1, p, N)};
  LemmaLReport r2 = lemma_L_valuation(F2, 7, 2);
  CHECK(r2.applicable);
  CHECK(r2.computed == Valuation(1, 10));
  CHECK(r2.matches);

  // X^4 + 5 has root valuation 1/4, not above the r_zeta = 1 threshold
  std::vector<Padic> F3 = {Padic::from_int(5, p, N), Padic::zero(p, N), Padic::zero(p, N),
                           Padic::zero(p, N), Padic::from_int(1, p, N)};
  LemmaLReport r3 = lemma_L_valuation(F3, 2, 1);
  CHECK(!r3.applicable);

  CHECK_THROWS_AS(lemma_L_valuation(F, 3, 0), DomainError);
}
