#include "iwalat/tree.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace iwalat {

Mat2 Mat2::inverse() const {
  Padic dt = det();
  Padic i = dt.inverse();
  return {d * i, -b * i, -c * i, a * i};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

namespace {

long eff_val(const Padic& x) { return x.is_zero() ? x.abs_prec() : x.val(); }

Padic p_power(unsigned long p, long k, long rel) { return Padic::from_unit(1, k, p, rel); }

Mat2 identity(unsigned long p, long N) {
  return {Padic::from_int(1, p, N), Padic::zero(p, N), Padic::zero(p, N),
          Padic::from_int(1, p, N)};
}

// basis of the lattice spanned by the given columns (not class-normalized)
Mat2 hnf2(unsigned long p, std::vector<std::pair<Padic, Padic>> cols) {
  size_t piv = cols.size();
  long best = LONG_MAX;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (cols[i].second.is_zero()) continue;
    long v = cols[i].second.val();
    if (v < best) {
      best = v;
      piv = i;
    }
  }
  if (piv == cols.size()) throw DomainError("hnf2: bottom row vanishes, lattice degenerate");
  auto pc = cols[piv];
  size_t top = cols.size();
  best = LONG_MAX;
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i == piv) continue;
    Padic t = cols[i].first - (cols[i].second / pc.second) * pc.first;
    if (t.is_zero()) continue;
    long v = t.val();
    if (v < best) {
      best = v;
      top = i;
      cols[i].first = t;
    } else {
      cols[i].first = t;
    }
  }
  if (top == cols.size()) throw DomainError("hnf2: columns do not span a rank-2 lattice");
  return {cols[top].first, pc.first, Padic::zero(p, cols[top].first.abs_prec()), pc.second};
}

}  // namespace

LatticeClass LatticeClass::base(unsigned long p) { return LatticeClass(p, 0, 0, mpz_class(0)); }

LatticeClass LatticeClass::from_matrix(unsigned long p, const Mat2& m) {
  Padic A = m.a, B = m.b, C = m.c, D = m.d;
  if (C.is_zero() && D.is_zero())
    throw DomainError("LatticeClass: bottom row vanishes, matrix singular");
  if (D.is_zero() || (!C.is_zero() && C.val() < D.val())) {
    std::swap(A, B);
    std::swap(C, D);
  }
  long rel = std::max(A.abs_prec(), D.abs_prec()) + 8;
  if (!C.is_zero()) A = A - (C / D) * B;
  long gamma = D.val();
  // scale column 2 by the unit part of D
  B = B * p_power(p, gamma, rel) / D;
  long alpha = A.val();  // throws if cancellation ate the entry
  long vb = B.is_zero() ? LONG_MAX : B.val();
  long shift = std::min(std::min(alpha, gamma), vb);
  alpha -= shift;
  gamma -= shift;
  mpz_class bq(0);
  if (!B.is_zero() && B.val() - shift < alpha) {
    Padic Bs = B * p_power(p, -shift, rel);
    if (Bs.abs_prec() < alpha)
      throw PrecisionError("LatticeClass: not enough digits to reduce the off-corner entry");
    bq = Bs.with_abs_prec(alpha).lift() % Padic::pow_p(p, alpha);
  }
  return LatticeClass(p, alpha, gamma, bq);
}

Mat2 LatticeClass::matrix(long N) const {
  return {p_power(p_, a_, N), Padic::from_int(b_, p_, N + a_ + c_),
          Padic::zero(p_, N + a_), p_power(p_, c_, N)};
}

std::vector<LatticeClass> LatticeClass::neighbors() const {
  long N = a_ + c_ + 12;
  Mat2 m = matrix(N);
  std::vector<LatticeClass> out;
  for (unsigned long j = 0; j < p_; ++j) {
    Mat2 s = {p_power(p_, 1, N), Padic::from_int(static_cast<long>(j), p_, N),
              Padic::zero(p_, N), Padic::from_int(1, p_, N)};
    out.push_back(from_matrix(p_, m * s));
  }
  Mat2 s = {Padic::from_int(1, p_, N), Padic::zero(p_, N), Padic::zero(p_, N),
            p_power(p_, 1, N)};
  out.push_back(from_matrix(p_, m * s));
  return out;
}

long distance(const LatticeClass& x, const LatticeClass& y) {
  if (x.p_ != y.p_) throw DomainError("distance: mixed primes");
  long N = x.a_ + x.c_ + y.a_ + y.c_ + 12;
  Mat2 r = x.matrix(N).inverse() * y.matrix(N);
  long vdet = r.det().val();
  long mn = LONG_MAX;
  for (const Padic* e : {&r.a, &r.b, &r.c, &r.d}) {
    if (e->is_zero()) continue;
    mn = std::min(mn, e->val());
  }
  for (const Padic* e : {&r.a, &r.b, &r.c, &r.d})
    if (e->is_zero() && e->abs_prec() <= mn)
      throw PrecisionError("distance: entry valuation not certified");
  return vdet - 2 * mn;
}

bool LatticeClass::operator<(const LatticeClass& o) const {
  if (a_ != o.a_) return a_ < o.a_;
  if (c_ != o.c_) return c_ < o.c_;
  return b_ < o.b_;
}

std::string LatticeClass::str() const {
  return "[p^" + std::to_string(a_) + ", " + b_.get_str() + "; 0, p^" + std::to_string(c_) + "]";
}

std::vector<Mat2> RepSpec::normalized_gens() const {
  std::vector<Mat2> out;
  for (const Mat2& g : gens) {
    long v = g.det().val();
    if (v % 2 != 0)
      throw DomainError("RepSpec: generator determinant has odd valuation, no fixed class");
    Mat2 h = v == 0 ? g : g.scale(p_power(p, -v / 2, N));
    out.push_back(h);
  }
  if (!closed_under_inverses) {
    size_t n = out.size();
    for (size_t i = 0; i < n; ++i) out.push_back(out[i].inverse());
  }
  return out;
}

namespace {

bool class_stable(const LatticeClass& L, const std::vector<Mat2>& gens, long N) {
  Mat2 m = L.matrix(N);
  for (const Mat2& g : gens)
    if (!(LatticeClass::from_matrix(L.p(), g * m) == L)) return false;
  return true;
}

LatticeClass stable_seed(unsigned long p, const std::vector<Mat2>& gens, long N) {
  Mat2 T = identity(p, N);
  long vprev = 0;
  for (int it = 0; it < 200; ++it) {
    std::vector<std::pair<Padic, Padic>> cols;
    cols.push_back({T.a, T.c});
    cols.push_back({T.b, T.d});
    for (const Mat2& g : gens) {
      Mat2 gt = g * T;
      cols.push_back({gt.a, gt.c});
      cols.push_back({gt.b, gt.d});
    }
    Mat2 S = hnf2(p, std::move(cols));
    long v = S.det().val();
    if (v == vprev) return LatticeClass::from_matrix(p, T);
    T = S;
    vprev = v;
  }
  throw DomainError("fixed_set: no stable class found (representation unbounded/reducible?)");
}

ReductionType reduction_type(const LatticeClass& L, const std::vector<Mat2>& gens, long N) {
  unsigned long p = L.p();
  Mat2 m = L.matrix(N);
  Mat2 mi = m.inverse();
  std::vector<std::array<long, 4>> red;
  for (const Mat2& g : gens) {
    Mat2 h = mi * g * m;
    std::array<long, 4> r{};
    const Padic* e[4] = {&h.a, &h.b, &h.c, &h.d};
    for (int i = 0; i < 4; ++i) {
      if (e[i]->is_zero() || e[i]->val() >= 1)
        r[i] = 0;
      else
        r[i] = static_cast<long>(mpz_class(e[i]->lift() % p).get_si());
    }
    red.push_back(r);
  }
  // stable lines of P^1(F_p): (1,0) and (t,1)
  long stable = 0;
  auto line_stable = [&](long x, long y) {
    for (const auto& r : red) {
      long nx = (r[0] * x + r[1] * y) % static_cast<long>(p);
      long ny = (r[2] * x + r[3] * y) % static_cast<long>(p);
      if ((nx * y - ny * x) % static_cast<long>(p) != 0) return false;
    }
    return true;
  };
  if (line_stable(1, 0)) ++stable;
  for (long t = 0; t < static_cast<long>(p); ++t)
    if (line_stable(t, 1)) ++stable;
  if (stable == 0) return ReductionType::kIrreducible;
  if (stable == 1) return ReductionType::kIndecomposable;
  return ReductionType::kSplit;
}

}  // namespace

const char* reduction_type_name(ReductionType t) {
  switch (t) {
    case ReductionType::kIrreducible: return "irreducible";
    case ReductionType::kIndecomposable: return "reducible-indecomposable";
    default: return "split";
  }
}

SegmentReport fixed_set(const RepSpec& rho, long radius) {
  unsigned long p = rho.p;
  long N = rho.N;
  std::vector<Mat2> gens = rho.normalized_gens();
  LatticeClass seed = stable_seed(p, gens, N);
  if (!class_stable(seed, gens, N))
    throw DomainError("fixed_set: stabilized lattice class is not fixed");

  std::set<LatticeClass> fixed{seed};
  std::vector<std::pair<LatticeClass, long>> frontier{{seed, 0}};
  bool boundary = false;
  while (!frontier.empty()) {
    auto [node, d] = frontier.back();
    frontier.pop_back();
    if (d == radius) {
      boundary = true;
      continue;
    }
    for (const LatticeClass& nb : node.neighbors()) {
      if (fixed.count(nb)) continue;
      if (!class_stable(nb, gens, N)) continue;
      fixed.insert(nb);
      frontier.push_back({nb, d + 1});
    }
  }

  // order into a path and validate the segment shape
  std::vector<LatticeClass> nodes(fixed.begin(), fixed.end());
  auto inset_count = [&](const LatticeClass& L) {
    int c = 0;
    for (const LatticeClass& nb : L.neighbors())
      if (fixed.count(nb)) ++c;
    return c;
  };
  SegmentReport rep;
  rep.boundary_touched = boundary;
  if (nodes.size() == 1) {
    rep.path = nodes;
  } else {
    const LatticeClass* endp = nullptr;
    for (const auto& L : nodes)
      if (inset_count(L) == 1) {
        endp = &L;
        break;
      }
    if (!endp) throw DomainError("fixed_set: fixed set is not a segment");
    std::vector<LatticeClass> path{*endp};
    std::set<LatticeClass> seen{*endp};
    while (path.size() < nodes.size()) {
      bool advanced = false;
      for (const LatticeClass& nb : path.back().neighbors())
        if (fixed.count(nb) && !seen.count(nb)) {
          path.push_back(nb);
          seen.insert(nb);
          advanced = true;
          break;
        }
      if (!advanced) throw DomainError("fixed_set: fixed set is not a segment");
    }
    rep.path = std::move(path);
  }
  for (const auto& L : rep.path) {
    rep.inset_neighbors.push_back(inset_count(L));
    rep.types.push_back(reduction_type(L, gens, N));
  }
  if (rep.path.size() >= 2) {
    for (size_t i = 0; i + 1 < rep.path.size(); ++i)
      if (distance(rep.path[i], rep.path[i + 1]) != 1)
        throw DomainError("fixed_set: path nodes not adjacent");
    if (rep.inset_neighbors.front() != 1 || rep.inset_neighbors.back() != 1)
      throw DomainError("fixed_set: endpoints must have one in-set neighbor");
    for (size_t i = 1; i + 1 < rep.path.size(); ++i)
      if (rep.inset_neighbors[i] != 2)
        throw DomainError("fixed_set: interior node with wrong neighbor count");
  }
  return rep;
}

namespace {

struct Word {
  Mat2 m;
  std::vector<long> w;
};

// quadratic residue test mod p
bool is_qr(const mpz_class& a, unsigned long p) {
  mpz_class r;
  mpz_powm_ui(r.get_mpz_t(), a.get_mpz_t(), (p - 1) / 2, mpz_class(p).get_mpz_t());
  return r == 1;
}

}  // namespace

ReducibilityReport reducibility_ideal(const RepSpec& rho, long max_depth) {
  unsigned long p = rho.p;
  long N = rho.N;
  std::vector<Mat2> gens = rho.normalized_gens();

  // find g0 with distinct residual eigenvalues in F_p
  std::vector<Word> level;
  for (size_t i = 0; i < gens.size(); ++i) level.push_back({gens[i], {static_cast<long>(i)}});
  Word g0;
  bool found = false;
  long g0_depth = 0;
  std::vector<Word> cur = level;
  for (long d = 1; d <= max_depth && !found; ++d) {
    for (const Word& w : cur) {
      Padic disc = w.m.trace() * w.m.trace() - w.m.det().mul_int(4);
      if (disc.is_zero() || disc.val() != 0) continue;
      if (!is_qr(disc.unit_part() % p, p)) continue;
      g0 = w;
      g0_depth = d;
      found = true;
      break;
    }
    if (found) break;
    std::vector<Word> next;
    for (const Word& w : cur)
      for (size_t i = 0; i < gens.size(); ++i) {
        Word x{w.m * gens[i], w.w};
        x.w.push_back(static_cast<long>(i));
        next.push_back(std::move(x));
        if (next.size() > 4096) break;
      }
    cur = std::move(next);
  }
  if (!found)
    throw DomainError(
        "reducibility_ideal: no word with distinct residual eigenvalues (residually scalar?)");

  // Hensel-split eigenvalues of g0
  Padic t = g0.m.trace(), dt = g0.m.det();
  Padic disc = t * t - dt.mul_int(4);
  unsigned long r0 = 0;
  mpz_class dm = disc.unit_part() % p;
  for (unsigned long c = 1; c < p; ++c)
    if ((mpz_class(c) * c - dm) % p == 0) {
      r0 = c;
      break;
    }
  PadicPoly sq;
  sq.c = {-disc, Padic::zero(p, N), Padic::from_int(1, p, N)};
  Padic root = hensel_root(sq, Padic::from_int(static_cast<long>(r0), p, N), N);
  Padic half = Padic::from_int(2, p, N).inverse();
  Padic l1 = (t + root) * half;
  Padic l2 = (t - root) * half;

  auto eigvec = [&](const Padic& lam) -> std::pair<Padic, Padic> {
    // rows of g0 - lam: (a-lam, b), (c, d-lam)
    Padic v1x = g0.m.b, v1y = lam - g0.m.a;
    Padic v2x = lam - g0.m.d, v2y = g0.m.c;
    long n1 = std::min(eff_val(v1x), eff_val(v1y));
    long n2 = std::min(eff_val(v2x), eff_val(v2y));
    if (n1 <= n2) {
      Padic s = p_power(p, -n1, N);
      return {v1x * s, v1y * s};
    }
    Padic s = p_power(p, -n2, N);
    return {v2x * s, v2y * s};
  };
  auto [e1x, e1y] = eigvec(l1);
  auto [e2x, e2y] = eigvec(l2);
  Mat2 B{e1x, e2x, e1y, e2y};
  if (B.det().is_zero() || B.det().val() != 0)
    throw PrecisionError("reducibility_ideal: eigenbasis not unimodular");
  Mat2 Bi = B.inverse();

  std::vector<Mat2> H;
  for (const Mat2& g : gens) H.push_back(Bi * g * B);

  long min_b = LONG_MAX, min_c = LONG_MAX;
  std::vector<long> bw, cw;
  long stable_for = 0;
  long depth_used = 0;
  std::vector<Word> words;
  for (size_t i = 0; i < H.size(); ++i) words.push_back({H[i], {static_cast<long>(i)}});
  for (long d = 1; d <= max_depth; ++d) {
    long pb = min_b, pc = min_c;
    for (const Word& w : words) {
      if (!w.m.b.is_zero() && w.m.b.val() < min_b) {
        min_b = w.m.b.val();
        bw = w.w;
      }
      if (!w.m.c.is_zero() && w.m.c.val() < min_c) {
        min_c = w.m.c.val();
        cw = w.w;
      }
    }
    depth_used = d;
    if (min_b == pb && min_c == pc && min_b != LONG_MAX && min_c != LONG_MAX) {
      if (++stable_for >= 2) break;
    } else {
      stable_for = 0;
    }
    if (d == max_depth) break;
    std::vector<Word> next;
    for (const Word& w : words)
      for (size_t i = 0; i < H.size(); ++i) {
        Word x{w.m * H[i], w.w};
        x.w.push_back(static_cast<long>(i));
        next.push_back(std::move(x));
        if (next.size() > 8192) break;
      }
    words = std::move(next);
  }
  if (min_b == LONG_MAX || min_c == LONG_MAX)
    throw DomainError("reducibility_ideal: off-diagonal entries vanish, representation reducible");

  ReducibilityReport rep;
  rep.n = min_b + min_c;
  rep.depth = depth_used;
  rep.g0_word = g0.w;
  (void)g0_depth;
  rep.b_word = bw;
  rep.c_word = cw;
  rep.eigenbasis = B;
  return rep;
}

RibetReport ribet_lattice(const RepSpec& rho, long radius) {
  ReducibilityReport red = reducibility_ideal(rho);
  if (red.n == 0)
    throw DomainError("ribet_lattice: reducibility ideal is the unit ideal, no such lattice");
  SegmentReport seg = fixed_set(rho, radius);
  if (seg.path.size() != static_cast<size_t>(red.n) + 1)
    throw DomainError("ribet_lattice: fixed-set size disagrees with the reducibility ideal");

  unsigned long p = rho.p;
  long N = rho.N;
  std::vector<Mat2> gens = rho.normalized_gens();
  Mat2 swap_cols{Padic::zero(p, N), Padic::from_int(1, p, N), Padic::from_int(1, p, N),
                 Padic::zero(p, N)};
  for (const LatticeClass& L : {seg.path.front(), seg.path.back()}) {
    // the stable line may sit in either basis column of the canonical form
    for (int flip = 0; flip < 2; ++flip) {
      Mat2 m = L.matrix(N);
      if (flip) m = m * swap_cols;
      Mat2 mi = m.inverse();
      std::vector<Mat2> conj;
      for (const Mat2& g : gens) conj.push_back(mi * g * m);
      std::vector<Word> words;
      for (size_t i = 0; i < conj.size(); ++i)
        words.push_back({conj[i], {static_cast<long>(i)}});
      for (long d = 1; d <= 4; ++d) {
        for (const Word& w : words) {
          bool c_zero = w.m.c.is_zero() || w.m.c.val() >= 1;
          bool b_unit = !w.m.b.is_zero() && w.m.b.val() == 0;
          if (c_zero && b_unit) {
            RibetReport rep{L, w.w};
            return rep;
          }
        }
        std::vector<Word> next;
        for (const Word& w : words)
          for (size_t i = 0; i < conj.size(); ++i) {
            Word x{w.m * conj[i], w.w};
            x.w.push_back(static_cast<long>(i));
            next.push_back(std::move(x));
            if (next.size() > 2048) break;
          }
        words = std::move(next);
      }
    }
  }
  throw DomainError("ribet_lattice: no certificate word found");
}

}  // namespace iwalat
