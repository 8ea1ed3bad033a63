#pragma once

#include <string>
#include <vector>

#include "iwalat/padic_ops.hpp"

namespace iwalat {

/// 2x2 matrix over Q_p, row major.
struct Mat2 {
  Padic a, b, c, d;

  Padic det() const { return a * d - b * c; }
  Padic trace() const { return a + d; }
  Mat2 inverse() const;
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  Mat2 scale(const Padic& s) const { return {a * s, b * s, c * s, d * s}; }
};

/// Homothety class of a rank-2 Z_p-lattice, canonicalized as the primitive
/// column Hermite form [[p^a, b], [0, p^c]] with 0 <= b < p^a and
/// min(a, c, v_p(b)) = 0.  The class of the standard lattice is (0, 0, 0).
class LatticeClass {
 public:
  static LatticeClass base(unsigned long p);
  /// Class of the lattice spanned by the columns of m (must be invertible).
  static LatticeClass from_matrix(unsigned long p, const Mat2& m);

  unsigned long p() const { return p_; }
  long a() const { return a_; }
  long c() const { return c_; }
  const mpz_class& b() const { return b_; }

  /// Basis matrix of the canonical representative, to precision N.
  Mat2 matrix(long N) const;
  std::vector<LatticeClass> neighbors() const;
  friend long distance(const LatticeClass& x, const LatticeClass& y);

  bool operator==(const LatticeClass& o) const {
    return p_ == o.p_ && a_ == o.a_ && c_ == o.c_ && b_ == o.b_;
  }
  bool operator<(const LatticeClass& o) const;
  std::string str() const;

 private:
  LatticeClass(unsigned long p, long a, long c, mpz_class b)
      : p_(p), a_(a), c_(c), b_(std::move(b)) {}

  unsigned long p_;
  long a_, c_;
  mpz_class b_;
};

/// Finitely generated matrix representation; the monoid generated by gens
/// (inverses appended unless closed_under_inverses) stands in for the
/// paper's compact group.
struct RepSpec {
  unsigned long p = 0;
  long N = 30;  // working precision
  std::vector<Mat2> gens;
  bool closed_under_inverses = false;

  /// Generators scaled to determinant valuation 0; throws DomainError when
  /// some determinant has odd valuation (no fixed homothety class exists).
  std::vector<Mat2> normalized_gens() const;
};

enum class ReductionType { kIrreducible, kIndecomposable, kSplit };
const char* reduction_type_name(ReductionType t);

struct SegmentReport {
  std::vector<LatticeClass> path;  // ordered, consecutive nodes at distance 1
  std::vector<int> inset_neighbors;
  std::vector<ReductionType> types;
  bool boundary_touched = false;  // fixed set may extend past the radius
};

/// All classes fixed by the representation within the given radius of a
/// stable seed class, verified to form a segment.
SegmentReport fixed_set(const RepSpec& rho, long radius);

struct ReducibilityReport {
  long n = 0;  // I(rho) = (p^n)
  long depth = 0;
  std::vector<long> g0_word;  // indices into the inverse-closed generator list
  std::vector<long> b_word, c_word;
  Mat2 eigenbasis;
};

/// Exponent of the reducibility ideal, via conjugation to an eigenbasis of a
/// word with distinct residual eigenvalues and word sampling with iterative
/// deepening (stable for two consecutive depths).
ReducibilityReport reducibility_ideal(const RepSpec& rho, long max_depth = 6);

struct RibetReport {
  LatticeClass lattice;
  std::vector<long> certificate_word;  // nonzero upper-right, zero lower-left mod p
};

/// An endpoint of the fixed segment, whose reduction is reducible but not
/// semisimple; requires n >= 1.
RibetReport ribet_lattice(const RepSpec& rho, long radius);

}  // namespace iwalat
