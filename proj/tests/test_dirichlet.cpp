#include "doctest.h"
#include "iwalat/dirichlet.hpp"

using namespace iwalat;

TEST_CASE("trivial and Teichmuller powers") {
  auto triv = DirichletChar::trivial(5);
  CHECK(triv.conductor() == 1);
  CHECK(triv.is_even());
  CHECK(triv.eval_zp(10, 4).lift() == 1);  // conductor 1: nonzero even at p

  auto w = DirichletChar::omega_power(5, 1);
  CHECK(w.conductor() == 5);
  CHECK(!w.is_even());
  CHECK(w.eval_zp(2, 2).lift() == 7);  // omega(2) = 7 mod 25
  CHECK(w.eval_zp(5, 4).is_zero());

  auto w2 = DirichletChar::omega_power(5, 2);
  CHECK(w2.is_even());
  auto w11 = DirichletChar::omega_power(691, 11);
  CHECK(w11.conductor() == 691);
  CHECK(!w11.is_even());
}

TEST_CASE("omega^a times omega^{-a} is trivial") {
  auto w3 = DirichletChar::omega_power(7, 3);
  auto prod = w3 * w3.inv();
  CHECK(prod.conductor() == 1);
  CHECK(prod.is_trivial());
  auto w6 = DirichletChar::omega_power(7, 3) * DirichletChar::omega_power(7, 3);
  CHECK(w6 == DirichletChar::omega_power(7, 6));
}

TEST_CASE("wild character sends u to zeta") {
  unsigned long p = 5;
  auto chi = DirichletChar::wild(p, 1, 1);
  CHECK(chi.conductor() == 25);
  CHECK(chi.is_even());
  CHECK(chi.factors_through_wild_tower());
  auto R = CycloRing::make(p, 1, 6);
  Cyclo v = chi.eval(mpz_class(1 + p), R);
  CHECK((v - R->zeta()).is_zero());
  // u^2 maps to zeta^2
  CHECK((chi.eval(mpz_class((1 + p) * (1 + p)), R) - R->zeta_pow(2)).is_zero());
  // inverse twists by zeta^{-1}
  CHECK((chi.inv().eval(mpz_class(1 + p), R) - R->zeta_pow(-1)).is_zero());
}

TEST_CASE("wild character at level 2") {
  unsigned long p = 3;
  auto chi = DirichletChar::wild(p, 2, 1);
  CHECK(chi.conductor() == 27);
  auto R = CycloRing::make(p, 2, 6);
  CHECK((chi.eval(mpz_class(4), R) - R->zeta()).is_zero());
  // u^3 = 64 maps to zeta^3, a primitive cube root of unity
  CHECK((chi.eval(mpz_class(64), R) - R->zeta_pow(3)).is_zero());
  // zeta^9 = 1, so u^9 maps to 1
  mpz_class u9;
  mpz_pow_ui(u9.get_mpz_t(), mpz_class(4).get_mpz_t(), 9);
  CHECK((chi.eval(u9, R) - R->one()).is_zero());
}

TEST_CASE("wild exponent with p-divisible twist drops level") {
  auto chi = DirichletChar::wild(5, 2, 5);  // zeta_25^5 = zeta_5
  CHECK(chi.wild_r() == 1);
  CHECK(chi.wild_t() == 1);
  CHECK(chi.conductor() == 25);
  auto chi0 = DirichletChar::wild(5, 1, 5);  // zeta_5^5 = 1
  CHECK(chi0.is_trivial());
}

TEST_CASE("quadratic away character") {
  auto chi = DirichletChar::quadratic(5, -4);
  CHECK(chi.conductor() == 4);
  CHECK(!chi.is_even());
  CHECK(chi.eval_zp(1, 4).lift() == 1);
  CHECK((chi.eval_zp(3, 4) + Padic::from_int(1, 5, 4)).is_zero());
  CHECK(chi.eval_zp(2, 4).is_zero());
  // (-4/5) = +1: 5 = 1 mod 4
  CHECK(chi.eval_zp(5, 4).lift() == 1);

  auto chi8 = DirichletChar::quadratic(7, 8);
  CHECK(chi8.conductor() == 8);
  CHECK(chi8.is_even());
}

TEST_CASE("complete multiplicativity and periodicity") {
  auto chi = DirichletChar::omega_power(7, 2) * DirichletChar::quadratic(7, -3);
  CHECK(chi.conductor() == 21);
  long N = 5;
  for (long m = 1; m < 30; ++m)
    for (long n = m; n < 30; ++n) {
      Padic lhs = chi.eval_zp(mpz_class(m) * n, N);
      Padic rhs = chi.eval_zp(m, N) * chi.eval_zp(n, N);
      if (lhs.is_zero())
        CHECK(rhs.is_zero());
      else
        CHECK(agree_to_joint_prec(lhs, rhs));
    }
  for (long n = 1; n < 25; ++n)
    CHECK(agree_to_joint_prec(chi.eval_zp(n, N), chi.eval_zp(n + 21, N)));
}

TEST_CASE("away conductor shrinks induced tables") {
  // quadratic mod 3 presented with modulus 9
  std::vector<unsigned long> t(9, 0);
  for (unsigned long n = 0; n < 9; ++n) {
    if (n % 3 == 0) continue;
    t[n] = (n % 3 == 1) ? 1 : 6;
  }
  DirichletChar chi(7, 0, 0, 0, 9, t);
  CHECK(chi.away_modulus() == 3);
  CHECK(chi.conductor() == 3);
  CHECK(chi == DirichletChar::quadratic(7, -3));
}
