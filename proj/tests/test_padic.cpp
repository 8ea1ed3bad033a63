#include "doctest.h"
#include "iwalat/padic.hpp"
#include "iwalat/padic_ops.hpp"

using namespace iwalat;

TEST_CASE("integer round trip and valuation") {
  Padic x = Padic::from_int(75, 5, 10);
  CHECK(x.val() == 2);
  CHECK(x.lift() == 75);
  CHECK(x.abs_prec() == 10);

  Padic y = Padic::from_int(-1, 7, 4);
  CHECK(y.val() == 0);
  CHECK(y.lift() == 2400);  // 7^4 - 1
}

TEST_CASE("zero to precision semantics") {
  Padic z = Padic::from_int(125, 5, 3);
  CHECK(z.is_zero());
  CHECK(z.abs_prec() == 3);
  CHECK_THROWS_AS(z.val(), IndeterminateValuation);

  Padic a = Padic::from_int(7, 5, 6);
  Padic s = a + z;
  CHECK(s.abs_prec() == 3);
  CHECK(s.val() == 0);
  CHECK(s.lift() == 7);
}

TEST_CASE("addition tracks minimum absolute precision") {
  Padic a = Padic::from_unit(3, 1, 5, 4);  // 5 * 3, known mod 5^5
  Padic b = Padic::from_unit(2, 0, 5, 3);  // known mod 5^3
  Padic s = a + b;
  CHECK(s.abs_prec() == 3);
  CHECK(s.val() == 0);
  Padic d = a - a;
  CHECK(d.is_zero());
  CHECK(d.abs_prec() == 5);
}

TEST_CASE("multiplication keeps min relative precision and exact valuation") {
  Padic a = Padic::from_unit(2, 3, 7, 5);
  Padic b = Padic::from_unit(4, -1, 7, 2);
  Padic c = a * b;
  CHECK(c.val() == 2);
  CHECK(c.rel_prec() == 2);
  CHECK(c.unit_part() == 8);
}

TEST_CASE("rationals and inversion") {
  Padic t = Padic::from_rational(mpq_class(1, 3), 5, 4);
  CHECK((t.mul_int(3) - Padic::from_int(1, 5, 4)).is_zero());

  Padic h = Padic::from_rational(mpq_class(7, 25), 5, 4);
  CHECK(h.val() == -2);
  CHECK(h.abs_prec() == 4);

  Padic inv = Padic::from_int(12, 11, 6).inverse();
  CHECK((inv.mul_int(12) - Padic::from_int(1, 11, 6)).is_zero());
}

TEST_CASE("div_exact_int shifts valuation by the p-part") {
  Padic x = Padic::from_int(50, 5, 8);
  Padic y = x.div_exact_int(10);
  CHECK(y.val() == 1);
  CHECK(y.lift() == 5);
}

TEST_CASE("teichmuller lift") {
  // omega(2) mod 25 is 7: 7^4 = 2401 = 1 mod 25 and 7 = 2 mod 5
  Padic t = teichmuller_lift(2, 5, 2);
  CHECK(t.lift() == 7);
  Padic t4 = t.pow(4);
  CHECK((t4 - Padic::from_int(1, 5, 2)).is_zero());

  Padic s = teichmuller_lift(3, 7, 10);
  CHECK((s.pow(6) - Padic::from_int(1, 7, 10)).is_zero());
  CHECK((s - Padic::from_int(3, 7, 1)).is_zero());
}

TEST_CASE("hensel root of X^2 - 2 over Q_7") {
  PadicPoly f;
  f.c = {Padic::from_int(-2, 7, 12), Padic::from_int(0, 7, 12), Padic::from_int(1, 7, 12)};
  Padic r = hensel_root(f, Padic::from_int(3, 7, 12), 12);
  CHECK(f.eval(r).is_zero());
  CHECK(r.abs_prec() >= 10);
  CHECK((r - Padic::from_int(3, 7, 1)).is_zero());
}

TEST_CASE("plog and pexp invert each other") {
  Padic u = topgen_u(5, 10);
  Padic l = plog(u);
  CHECK(l.val() == 1);
  Padic back = pexp(l);
  CHECK((back - u).is_zero());

  // log is a homomorphism
  Padic x = Padic::from_int(1 + 2 * 5, 5, 10);
  Padic y = Padic::from_int(1 + 3 * 5 + 5 * 5, 5, 10);
  CHECK((plog(x * y) - (plog(x) + plog(y))).is_zero());
}

TEST_CASE("u_power integer and p-adic exponents agree") {
  unsigned long p = 5;
  long N = 9;
  for (long s : {0L, 1L, 4L, 17L, -3L}) {
    Padic a = u_power(mpz_class(s), p, N);
    Padic b = u_power(Padic::from_int(s, p, N), N);
    CHECK(agree_to_joint_prec(a, b));
  }
  // interpolation: exponents congruent mod p^k give values congruent mod p^{k+1}
  Padic c1 = u_power(mpz_class(3), p, N);
  Padic c2 = u_power(mpz_class(3 + 125), p, N);
  Padic d = c1 - c2;
  CHECK(d.val() == 4);
}
