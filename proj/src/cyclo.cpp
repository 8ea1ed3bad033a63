#include "iwalat/cyclo.hpp"

#include <algorithm>
#include <climits>

namespace iwalat {

namespace {
long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }
}  // namespace

CycloRing::CycloRing(unsigned long p, long r, long prec) : p_(p), r_(r), prec_(prec) {
  if (p < 3) throw DomainError("CycloRing: p must be an odd prime");
  if (r < 1) throw DomainError("CycloRing: wild level r must be >= 1");
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(r - 1));
  e_ = static_cast<long>(p - 1) * static_cast<long>(m.get_si());
  // Phi_{p^r}(1+X) = sum_{j=0}^{p-1} (1+X)^{j p^{r-1}}
  std::vector<mpz_class> poly(static_cast<size_t>(e_) + 1, mpz_class(0));
  unsigned long step = m.get_ui();
  for (unsigned long j = 0; j < p; ++j) {
    unsigned long n = j * step;
    mpz_class b = 1;  // C(n, k), updated incrementally
    for (unsigned long k = 0; k <= n && k <= static_cast<unsigned long>(e_); ++k) {
      poly[k] += b;
      b = b * (n - k) / (k + 1);
    }
  }
  long cp = prec + 4;
  minpoly_.reserve(poly.size());
  for (const auto& a : poly) minpoly_.push_back(Padic::from_int(a, p, cp));
}

std::shared_ptr<const CycloRing> CycloRing::make(unsigned long p, long r, long prec) {
  return std::shared_ptr<const CycloRing>(new CycloRing(p, r, prec));
}

Cyclo CycloRing::zero() const {
  std::vector<Padic> c(static_cast<size_t>(e_), Padic::zero(p_, prec_));
  return Cyclo(shared_from_this(), std::move(c));
}

Cyclo CycloRing::embed(const Padic& x) const {
  Cyclo z = zero();
  std::vector<Padic> c = z.coeffs();
  c[0] = x;
  return Cyclo(shared_from_this(), std::move(c));
}

Cyclo CycloRing::one() const { return embed(Padic::from_int(1, p_, prec_)); }

Cyclo CycloRing::pi() const {
  Cyclo z = zero();
  std::vector<Padic> c = z.coeffs();
  if (e_ == 1) {
    c[0] = Padic::from_int(static_cast<long>(p_), p_, prec_ + 1);  // degenerate, unused
  } else {
    c[1] = Padic::from_int(1, p_, prec_);
  }
  return Cyclo(shared_from_this(), std::move(c));
}

Cyclo CycloRing::pi_inverse() const {
  // from the minimal polynomial: pi * sum_{i>=1} a_i pi^{i-1} = -a_0 = -p
  std::vector<Padic> c(static_cast<size_t>(e_), Padic::zero(p_, prec_));
  for (long i = 1; i <= e_; ++i) {
    Padic ai = minpoly_[static_cast<size_t>(i)];
    c[static_cast<size_t>(i - 1)] = -(ai.div_exact_int(mpz_class(static_cast<long>(p_))));
  }
  return Cyclo(shared_from_this(), std::move(c));
}

Cyclo CycloRing::zeta() const { return one() + pi(); }

Cyclo CycloRing::zeta_pow(long t) const {
  mpz_class ord;
  mpz_ui_pow_ui(ord.get_mpz_t(), p_, static_cast<unsigned long>(r_));
  mpz_class tt = mpz_class(t) % ord;
  if (tt < 0) tt += ord;
  return zeta().pow(tt);
}

Cyclo::Cyclo(std::shared_ptr<const CycloRing> ring, std::vector<Padic> coeffs)
    : ring_(std::move(ring)), c_(std::move(coeffs)) {
  if (c_.size() != static_cast<size_t>(ring_->e()))
    throw DomainError("Cyclo: coefficient vector length must equal e");
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

Valuation Cyclo::val() const {
  long e = ring_->e();
  bool have = false;
  long best = 0;
  long zero_bound = LONG_MAX;
  for (long i = 0; i < e; ++i) {
    const Padic& x = c_[static_cast<size_t>(i)];
    if (x.is_zero()) {
      zero_bound = std::min(zero_bound, e * x.abs_prec() + i);
    } else {
      long cand = e * x.val() + i;
      if (!have || cand < best) best = cand;
      have = true;
    }
  }
  if (!have) throw IndeterminateValuation("cyclo valuation of zero-to-precision element");
  if (best >= zero_bound)
    throw IndeterminateValuation(
        "cyclo valuation not certified: minimum may hide below a precision cap");
  return Valuation(best, e);
}

long Cyclo::pi_prec() const {
  long e = ring_->e();
  long b = LONG_MAX;
  for (long i = 0; i < e; ++i)
    b = std::min(b, e * c_[static_cast<size_t>(i)].abs_prec() + i);
  return b;
}

Cyclo Cyclo::cap_pi_prec(long k) const {
  long e = ring_->e();
  std::vector<Padic> c = c_;
  for (long i = 0; i < e; ++i) {
    long cap = ceil_div(k - i, e);
    if (cap < c[static_cast<size_t>(i)].abs_prec())
      c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)].with_abs_prec(cap);
  }
  return Cyclo(ring_, std::move(c));
}

Cyclo Cyclo::operator-() const {
  std::vector<Padic> c = c_;
  for (auto& x : c) x = -x;
  return Cyclo(ring_, std::move(c));
}

Cyclo operator+(const Cyclo& a, const Cyclo& b) {
  if (a.ring_->p() != b.ring_->p() || a.ring_->e() != b.ring_->e())
    throw DomainError("Cyclo: mixed rings");
  std::vector<Padic> c = a.c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b.c_[i];
  return Cyclo(a.ring_, std::move(c));
}

Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }

Cyclo operator*(const Cyclo& a, const Cyclo& b) {
  if (a.ring_->p() != b.ring_->p() || a.ring_->e() != b.ring_->e())
    throw DomainError("Cyclo: mixed rings");
  long e = a.ring_->e();
  unsigned long p = a.ring_->p();
  long prec = a.ring_->prec();
  std::vector<Padic> t(static_cast<size_t>(2 * e - 1), Padic::zero(p, prec + 4));
  for (long i = 0; i < e; ++i) {
    const Padic& ai = a.c_[static_cast<size_t>(i)];
    if (ai.is_zero() && ai.abs_prec() >= prec + 4) continue;
    for (long j = 0; j < e; ++j) {
      t[static_cast<size_t>(i + j)] = t[static_cast<size_t>(i + j)] + ai * b.c_[static_cast<size_t>(j)];
    }
  }
  const std::vector<Padic>& mp = a.ring_->minpoly();
  for (long k = 2 * e - 2; k >= e; --k) {
    Padic q = t[static_cast<size_t>(k)];
    if (q.is_zero() && q.abs_prec() >= prec + 4) continue;
    // subtract q * X^{k-e} * minpoly  (leading term cancels exactly)
    for (long i = 0; i < e; ++i) {
      t[static_cast<size_t>(k - e + i)] = t[static_cast<size_t>(k - e + i)] - q * mp[static_cast<size_t>(i)];
    }
    t[static_cast<size_t>(k)] = Padic::zero(p, q.abs_prec());
  }
  t.resize(static_cast<size_t>(e));
  return Cyclo(a.ring_, std::move(t));
}

Cyclo Cyclo::scale(const Padic& s) const {
  std::vector<Padic> c = c_;
  for (auto& x : c) x = x * s;
  return Cyclo(ring_, std::move(c));
}

Cyclo Cyclo::mul_int(const mpz_class& n) const {
  std::vector<Padic> c = c_;
  for (auto& x : c) x = x.mul_int(n);
  return Cyclo(ring_, std::move(c));
}

Cyclo Cyclo::div_exact_int(const mpz_class& n) const {
  std::vector<Padic> c = c_;
  for (auto& x : c) x = x.div_exact_int(n);
  return Cyclo(ring_, std::move(c));
}

Cyclo Cyclo::pow(const mpz_class& t) const {
  if (t < 0) return inverse().pow(-t);
  Cyclo acc = ring_->one();
  Cyclo base = *this;
  mpz_class n = t;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

namespace {

// columns of the multiplication-by-x matrix in the pi-power basis
std::vector<std::vector<Padic>> mult_matrix(const Cyclo& x) {
  long e = x.ring()->e();
  std::vector<std::vector<Padic>> cols;
  cols.reserve(static_cast<size_t>(e));
  Cyclo cur = x;
  const std::vector<Padic>& mp = x.ring()->minpoly();
  cols.push_back(cur.coeffs());
  for (long j = 1; j < e; ++j) {
    // multiply by pi: shift up, reduce the overflow with the minimal polynomial
    std::vector<Padic> c = cur.coeffs();
    Padic top = c.back();
    std::vector<Padic> nc(c.size(), Padic::zero(x.ring()->p(), x.ring()->prec() + 4));
    for (long i = static_cast<long>(c.size()) - 1; i >= 1; --i) nc[static_cast<size_t>(i)] = c[static_cast<size_t>(i - 1)];
    for (long i = 0; i < e; ++i)
      nc[static_cast<size_t>(i)] = nc[static_cast<size_t>(i)] - top * mp[static_cast<size_t>(i)];
    cur = Cyclo(x.ring(), std::move(nc));
    cols.push_back(cur.coeffs());
  }
  return cols;
}

}  // namespace

Cyclo Cyclo::inverse() const {
  long e = ring_->e();
  unsigned long p = ring_->p();
  // solve M y = e0 by elimination with min-valuation pivoting
  auto cols = mult_matrix(*this);
  // augmented system: rows are basis coordinates
  std::vector<std::vector<Padic>> A(static_cast<size_t>(e),
                                    std::vector<Padic>(static_cast<size_t>(e + 1), Padic::zero(p, ring_->prec() + 4)));
  for (long j = 0; j < e; ++j)
    for (long i = 0; i < e; ++i) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  A[0][static_cast<size_t>(e)] = Padic::from_int(1, p, ring_->prec() + 4);

  std::vector<long> perm(static_cast<size_t>(e));
  std::vector<bool> used_row(static_cast<size_t>(e), false);
  for (long j = 0; j < e; ++j) {
    long pr = -1;
    long bestv = 0;
    for (long i = 0; i < e; ++i) {
      if (used_row[static_cast<size_t>(i)]) continue;
      const Padic& x = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (x.is_zero()) continue;
      if (pr < 0 || x.val() < bestv) {
        pr = i;
        bestv = x.val();
      }
    }
    if (pr < 0) throw PrecisionError("Cyclo::inverse: singular to working precision");
    used_row[static_cast<size_t>(pr)] = true;
    perm[static_cast<size_t>(j)] = pr;
    Padic inv = A[static_cast<size_t>(pr)][static_cast<size_t>(j)].inverse();
    for (long k = j; k <= e; ++k) A[static_cast<size_t>(pr)][static_cast<size_t>(k)] = A[static_cast<size_t>(pr)][static_cast<size_t>(k)] * inv;
    for (long i = 0; i < e; ++i) {
      if (i == pr) continue;
      Padic f = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (f.is_zero()) continue;
      for (long k = j; k <= e; ++k)
        A[static_cast<size_t>(i)][static_cast<size_t>(k)] = A[static_cast<size_t>(i)][static_cast<size_t>(k)] - f * A[static_cast<size_t>(pr)][static_cast<size_t>(k)];
    }
  }
  std::vector<Padic> y(static_cast<size_t>(e), Padic::zero(p, ring_->prec()));
  for (long j = 0; j < e; ++j) y[static_cast<size_t>(j)] = A[static_cast<size_t>(perm[static_cast<size_t>(j)])][static_cast<size_t>(e)];
  return Cyclo(ring_, std::move(y));
}

Padic Cyclo::norm() const {
  long e = ring_->e();
  unsigned long p = ring_->p();
  auto cols = mult_matrix(*this);
  std::vector<std::vector<Padic>> A(static_cast<size_t>(e), std::vector<Padic>());
  for (long i = 0; i < e; ++i) {
    A[static_cast<size_t>(i)].reserve(static_cast<size_t>(e));
    for (long j = 0; j < e; ++j) A[static_cast<size_t>(i)].push_back(cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
  }
  Padic det = Padic::from_int(1, p, ring_->prec() + 4);
  int sign = 1;
  std::vector<bool> used(static_cast<size_t>(e), false);
  for (long j = 0; j < e; ++j) {
    long pr = -1;
    long bestv = 0;
    for (long i = 0; i < e; ++i) {
      if (used[static_cast<size_t>(i)]) continue;
      const Padic& x = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (x.is_zero()) continue;
      if (pr < 0 || x.val() < bestv) {
        pr = i;
        bestv = x.val();
      }
    }
    if (pr < 0) throw PrecisionError("Cyclo::norm: singular to working precision");
    used[static_cast<size_t>(pr)] = true;
    long nuse = 0;
    for (long i = 0; i < pr; ++i)
      if (!used[static_cast<size_t>(i)]) ++nuse;
    // parity bookkeeping is irrelevant for valuations but keep the sign honest
    if (nuse % 2 == 1) sign = -sign;
    Padic piv = A[static_cast<size_t>(pr)][static_cast<size_t>(j)];
    det = det * piv;
    Padic inv = piv.inverse();
    for (long i = 0; i < e; ++i) {
      if (used[static_cast<size_t>(i)]) continue;
      Padic f = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (f.is_zero()) continue;
      f = f * inv;
      for (long k = j + 1; k < e; ++k)
        A[static_cast<size_t>(i)][static_cast<size_t>(k)] = A[static_cast<size_t>(i)][static_cast<size_t>(k)] - f * A[static_cast<size_t>(pr)][static_cast<size_t>(k)];
    }
  }
  return sign < 0 ? -det : det;
}

Valuation Cyclo::val_by_pi_division(long max_steps) const {
  Cyclo z = *this;
  Cyclo piinv = ring_->pi_inverse();
  long k = 0;
  while (k < max_steps) {
    Cyclo w = z * piinv;
    bool integral = true;
    for (const auto& x : w.coeffs()) {
      if (!x.is_zero() && x.val() < 0) {
        integral = false;
        break;
      }
    }
    if (!integral) break;
    z = w;
    ++k;
  }
  return Valuation(k, ring_->e());
}

}  // namespace iwalat
