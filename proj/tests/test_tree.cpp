#include <random>

#include "doctest.h"
#include "iwalat/tree.hpp"

using namespace iwalat;

namespace {

Padic pi(long x, unsigned long p, long N = 30) { return Padic::from_int(x, p, N); }

Mat2 imat(long a, long b, long c, long d, unsigned long p, long N = 30) {
  return {pi(a, p, N), pi(b, p, N), pi(c, p, N), pi(d, p, N)};
}

// rho ~ {diag(1,lam), [[1,1],[p^n c,1]]} conjugated by C and scaled by p^sv
RepSpec planted(unsigned long p, long n, long lam, long c, const Mat2& C, long sv) {
  long N = 30;
  Mat2 g1 = imat(1, 0, 0, lam, p, N);
  Mat2 g2{pi(1, p, N), pi(1, p, N), Padic::from_unit(c, n, p, N), pi(1, p, N)};
  Mat2 Ci = C.inverse();
  Padic s = Padic::from_unit(1, sv, p, N);
  RepSpec rho;
  rho.p = p;
  rho.N = N;
  rho.gens = {(C * g1 * Ci).scale(s), (C * g2 * Ci).scale(s)};
  return rho;
}

}  // namespace

TEST_CASE("canonical form is a class invariant") {
  unsigned long p = 5;
  LatticeClass L0 = LatticeClass::base(p);
  CHECK(L0.a() == 0);
  CHECK(L0.c() == 0);
  CHECK(L0.b() == 0);

  // homothety, unimodular column operations, column swaps all collapse
  Mat2 m = imat(25, 3, 0, 1, p);
  LatticeClass L = LatticeClass::from_matrix(p, m);
  CHECK(L.a() == 2);
  CHECK(L.c() == 0);
  CHECK(L.b() == 3);
  Mat2 swapped = imat(3, 25, 1, 0, p);
  CHECK(LatticeClass::from_matrix(p, swapped) == L);
  Mat2 scaled = m.scale(pi(125, p));
  CHECK(LatticeClass::from_matrix(p, scaled) == L);
  Mat2 colop = imat(25, 3 + 7 * 25, 0, 1, p);  // col2 += 7 col1
  CHECK(LatticeClass::from_matrix(p, colop) == L);
  // b is reduced into [0, p^a)
  CHECK(LatticeClass::from_matrix(p, imat(25, 28, 0, 1, p)) == L);

  CHECK_THROWS_AS(LatticeClass::from_matrix(p, imat(1, 2, 0, 0, p)), DomainError);
}

TEST_CASE("tree axioms: neighbors and distance") {
  unsigned long p = 5;
  LatticeClass L0 = LatticeClass::base(p);
  auto nbs = L0.neighbors();
  CHECK(nbs.size() == p + 1);
  for (size_t i = 0; i < nbs.size(); ++i) {
    CHECK(distance(L0, nbs[i]) == 1);
    CHECK(distance(nbs[i], L0) == 1);
    for (size_t j = i + 1; j < nbs.size(); ++j) {
      CHECK(!(nbs[i] == nbs[j]));
      CHECK(distance(nbs[i], nbs[j]) == 2);
    }
  }
  // the apartment through diag(1, p^k)
  for (long k = 1; k <= 4; ++k) {
    LatticeClass Lk = LatticeClass::from_matrix(p, {pi(1, p), pi(0, p), pi(0, p),
                                                    Padic::from_unit(1, k, p, 30)});
    CHECK(distance(L0, Lk) == k);
  }
  CHECK(distance(L0, L0) == 0);
}

TEST_CASE("generator scaling rejects odd determinant valuation") {
  RepSpec rho;
  rho.p = 5;
  rho.gens = {imat(1, 0, 0, 5, 5)};
  CHECK_THROWS_AS(rho.normalized_gens(), DomainError);
}

TEST_CASE("planted representation: ideal exponent and fixed segment") {
  unsigned long p = 5;
  long n = 2;
  Mat2 C = imat(2, 1, 3, 2, p);  // det 1
  RepSpec rho = planted(p, n, 2, 1, C, 2);

  ReducibilityReport red = reducibility_ideal(rho);
  CHECK(red.n == n);

  SegmentReport seg = fixed_set(rho, 8);
  CHECK(!seg.boundary_touched);
  REQUIRE(seg.path.size() == static_cast<size_t>(n) + 1);
  CHECK(distance(seg.path.front(), seg.path.back()) == n);
  CHECK(seg.types.front() == ReductionType::kIndecomposable);
  CHECK(seg.types.back() == ReductionType::kIndecomposable);
  for (size_t i = 1; i + 1 < seg.types.size(); ++i)
    CHECK(seg.types[i] == ReductionType::kSplit);

  RibetReport rib = ribet_lattice(rho, 8);
  CHECK((rib.lattice == seg.path.front() || rib.lattice == seg.path.back()));
  CHECK(!rib.certificate_word.empty());
}

TEST_CASE("residually irreducible representation fixes a single vertex") {
  unsigned long p = 5;
  RepSpec rho = planted(p, 0, 2, 2, imat(1, 1, 1, 2, p), 0);
  ReducibilityReport red = reducibility_ideal(rho);
  CHECK(red.n == 0);
  SegmentReport seg = fixed_set(rho, 5);
  REQUIRE(seg.path.size() == 1);
  CHECK(seg.types[0] == ReductionType::kIrreducible);
  CHECK_THROWS_AS(ribet_lattice(rho, 5), DomainError);
}

TEST_CASE("genuinely reducible representation is detected") {
  unsigned long p = 5;
  RepSpec rho;
  rho.p = p;
  rho.gens = {imat(1, 1, 0, 1, p), imat(1, 0, 0, 2, p)};
  CHECK_THROWS_AS(reducibility_ideal(rho), DomainError);
  // its fixed set is a ray; the search stops at the radius
  SegmentReport seg = fixed_set(rho, 4);
  CHECK(seg.boundary_touched);
  CHECK(seg.path.size() >= 4);
}

TEST_CASE("random planted conjugates keep n and the segment length") {
  std::mt19937 rng(20240817u);
  for (unsigned long p : {3ul, 7ul}) {
    for (long n : {1L, 3L}) {
      for (int trial = 0; trial < 3; ++trial) {
        // random integral conjugator with unit determinant
        long r = static_cast<long>(rng() % 7) + 1;
        long s = static_cast<long>(rng() % 7) + 1;
        Mat2 C = imat(1, r, 0, 1, p) * imat(1, 0, s, 1, p);
        long lam = 2;  // distinct from 1 mod 3 and mod 7
        long sv = 2 * static_cast<long>(rng() % 3);
        RepSpec rho = planted(p, n, lam, 1, C, sv);

        ReducibilityReport red = reducibility_ideal(rho);
        CHECK(red.n == n);
        SegmentReport seg = fixed_set(rho, n + 4);
        CHECK(seg.path.size() == static_cast<size_t>(n) + 1);
        CHECK(distance(seg.path.front(), seg.path.back()) == n);
      }
    }
  }
}
