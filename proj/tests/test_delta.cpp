#include "doctest.h"
#include "iwalat/delta.hpp"

using namespace iwalat;

TEST_CASE("tau values and multiplicativity") {
  QExpansion d = delta_expansion(100);
  CHECK(d.coeff(1) == 1);
  CHECK(d.coeff(2) == -24);
  CHECK(d.coeff(3) == 252);
  CHECK(d.coeff(5) == 4830);
  CHECK(d.coeff(7) == -16744);
  CHECK(d.coeff(6) == d.coeff(2) * d.coeff(3));
  CHECK(d.coeff(10) == d.coeff(2) * d.coeff(5));
  CHECK(d.coeff(15) == d.coeff(3) * d.coeff(5));
  // tau(4) = tau(2)^2 - 2^11 tau(1)
  CHECK(d.coeff(4) == d.coeff(2) * d.coeff(2) - 2048);
  CHECK_THROWS_AS(delta_expansion(0), DomainError);
}

TEST_CASE("Eisenstein congruences at moderate bound") {
  CongruenceReport r691 = eisenstein_congruence(691, 700);
  CHECK(r691.m == 1);
  CHECK(r691.a == 0);
  CHECK(r691.count == 2);
  CHECK(r691.stable);

  CongruenceReport r7 = eisenstein_congruence(7, 700);
  CHECK(r7.m == 1);
  CHECK(r7.a == 1);
  CHECK(r7.count == 2);

  // the deep congruences need the exponent lifted beyond 0..11
  CongruenceReport r5 = eisenstein_congruence(5, 700);
  CHECK(r5.m == 3);
  CHECK(r5.a == 41);  // 41 = 11 - (-30) mod 100, the sigma_71 twist
  CHECK(r5.count == 4);
  CongruenceReport r3 = eisenstein_congruence(3, 700);
  CHECK(r3.m == 6);
  CHECK(r3.a == 135);
  CHECK(r3.count == 7);

  // residually irreducible prime: no congruence at all
  CongruenceReport r11 = eisenstein_congruence(11, 700);
  CHECK(r11.m == 0);
  CHECK(r11.count == 1);
}

TEST_CASE("count from the L-value at the irregular pair") {
  CountReport c = lattice_count_from_Lp(691, 12, DirichletChar::omega_power(691, 12), 0, 0, 4);
  CHECK(c.ord == 1);
  CHECK(c.count == 2);
  CHECK(c.exact);

  // same residue class of weights, same count
  CountReport c2 =
      lattice_count_from_Lp(691, 12 + 690, DirichletChar::omega_power(691, 12), 0, 0, 4);
  CHECK(c2.count == 2);

  // non-ordinary primes are refused
  CHECK_THROWS_AS(lattice_count_from_Lp(5, 12, DirichletChar::omega_power(5, 2), 0, 0, 4),
                  DomainError);
}

TEST_CASE("scan without a zero is flat") {
  auto psi = DirichletChar::omega_power(5, 1);  // psi*omega = omega^2
  ScanParams prm;
  prm.M = 5;
  prm.N = 8;
  ScanReport rep = weight_variation_scan(psi, ScanMode::kFixedZetaOverK, prm);
  CHECK(rep.lambda == 0);
  CHECK(rep.mu == 0);
  CHECK(!rep.s0.has_value());
  REQUIRE(rep.rows.size() == 3);
  CHECK(rep.constant);
  CHECK(rep.rows[0].count == 1);

  prm.ks = {2, 6};
  prm.zeta_ts = {1, 2};
  ScanReport tail = weight_variation_scan(psi, ScanMode::kTail, prm);
  REQUIRE(tail.rows.size() == 4);
  CHECK(tail.constant);
  CHECK(tail.rows[0].count == 1);
  CHECK(tail.rows[0].ord == rep.lambda);  // e * (deg/e), here 0
}

TEST_CASE("odd or trivial-branch characters are rejected by scans") {
  ScanParams prm;
  CHECK_THROWS_AS(
      weight_variation_scan(DirichletChar::omega_power(5, 2), ScanMode::kTail, prm),
      DomainError);
  // psi*omega trivial: the pole branch
  CHECK_THROWS_AS(
      weight_variation_scan(DirichletChar::omega_power(5, 3), ScanMode::kTail, prm),
      DomainError);
}
