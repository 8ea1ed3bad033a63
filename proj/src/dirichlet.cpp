#include "iwalat/dirichlet.hpp"

#include <numeric>

namespace iwalat {

namespace {

unsigned long ugcd(unsigned long a, unsigned long b) { return std::gcd(a, b); }

// c mod p^r with n = omega(n) u^c in Z_p^x
long wild_dlog(const mpz_class& n, unsigned long p, long r) {
  long N = r + 1;
  Padic np = Padic::from_int(n, p, N);
  Padic n1 = np / teichmuller_lift(n, p, N);
  Padic c = plog(n1) / plog(topgen_u(p, N + 1));
  mpz_class lift = c.lift() % Padic::pow_p(p, r);
  return static_cast<long>(lift.get_si());
}

}  // namespace

DirichletChar::DirichletChar(unsigned long p, long tame_a, long wild_r, long wild_t,
                             unsigned long away_n, std::vector<unsigned long> away_table)
    : p_(p), a_(tame_a), r_(wild_r), t_(wild_t), nn_(away_n), table_(std::move(away_table)) {
  if (p < 3 || p % 2 == 0) throw DomainError("DirichletChar: p must be an odd prime");
  if (r_ < 0) throw DomainError("DirichletChar: negative wild level");
  if (nn_ == 0 || ugcd(nn_, p) != 1)
    throw DomainError("DirichletChar: away modulus must be positive and coprime to p");
  if (nn_ == 1) table_.clear();
  if (nn_ > 1) {
    if (table_.size() != nn_) throw DomainError("DirichletChar: away table length != modulus");
    if (table_[1 % nn_] != 1) throw DomainError("DirichletChar: away table not normalized at 1");
    for (unsigned long n = 0; n < nn_; ++n) {
      bool unit = ugcd(n, nn_) == 1;
      if (unit && (table_[n] == 0 || table_[n] >= p))
        throw DomainError("DirichletChar: away values must lie in (Z/p)^x");
      if (!unit && table_[n] != 0)
        throw DomainError("DirichletChar: away table must vanish on non-units");
    }
    for (unsigned long m = 1; m < nn_; ++m) {
      if (ugcd(m, nn_) != 1) continue;
      for (unsigned long n = m; n < nn_; ++n) {
        if (ugcd(n, nn_) != 1) continue;
        if (table_[(m * n) % nn_] != (table_[m] * table_[n]) % p)
          throw DomainError("DirichletChar: away table is not multiplicative");
      }
    }
  }
  primitivize();
}

void DirichletChar::primitivize() {
  long pm1 = static_cast<long>(p_) - 1;
  a_ = ((a_ % pm1) + pm1) % pm1;

  if (r_ > 0) {
    mpz_class ord = Padic::pow_p(p_, r_);
    mpz_class t = mpz_class(t_) % ord;
    if (t < 0) t += ord;
    while (r_ > 0 && mpz_divisible_ui_p(t.get_mpz_t(), p_)) {
      t /= static_cast<long>(p_);
      --r_;
    }
    if (r_ == 0 || t == 0) {
      r_ = 0;
      t_ = 0;
    } else {
      t_ = static_cast<long>(t.get_si());
    }
  } else {
    t_ = 0;
  }

  if (nn_ > 1) {
    // away conductor: least divisor d of N with the table trivial on units = 1 mod d
    unsigned long f = nn_;
    for (unsigned long d = 1; d <= nn_; ++d) {
      if (nn_ % d != 0) continue;
      bool ok = true;
      for (unsigned long n = 1; n < nn_ && ok; ++n)
        if (ugcd(n, nn_) == 1 && n % d == 1 % d && table_[n] != 1) ok = false;
      if (ok) {
        f = d;
        break;
      }
    }
    if (f < nn_) {
      std::vector<unsigned long> t(f, 0);
      for (unsigned long m = 0; m < f; ++m) {
        if (ugcd(m, f) != 1) continue;
        for (unsigned long n = m; n < m + nn_; n += f) {
          if (n > 0 && ugcd(n % nn_, nn_) == 1) {
            t[m] = table_[n % nn_];
            break;
          }
        }
      }
      nn_ = f;
      table_ = std::move(t);
      if (nn_ == 1) table_.clear();
    }
  }

  mpz_class fp = 1;
  if (r_ > 0)
    fp = Padic::pow_p(p_, r_ + 1);
  else if (a_ != 0)
    fp = static_cast<long>(p_);
  cond_ = fp * nn_;

  bool even = (a_ % 2 == 0);
  if (nn_ > 1) {
    unsigned long b = table_[(nn_ - 1) % nn_];
    if (b != 1 && b != p_ - 1)
      throw DomainError("DirichletChar: value at -1 must be a square root of 1");
    if (b == p_ - 1) even = !even;
  }
  even_ = even;
}

DirichletChar DirichletChar::quadratic(unsigned long p, long D) {
  if (D == 0) throw DomainError("quadratic: discriminant must be nonzero");
  unsigned long N = static_cast<unsigned long>(D > 0 ? D : -D);
  if (ugcd(N, p) != 1) throw DomainError("quadratic: discriminant not coprime to p");
  std::vector<unsigned long> table(N, 0);
  mpz_class Dz(D);
  for (unsigned long n = 0; n < N; ++n) {
    int k = mpz_kronecker_ui(Dz.get_mpz_t(), n);
    table[n] = k == 1 ? 1 : (k == -1 ? p - 1 : 0);
  }
  return DirichletChar(p, 0, 0, 0, N, std::move(table));
}

Padic DirichletChar::eval_zp(const mpz_class& n, long N) const {
  if (r_ > 0) throw DomainError("eval_zp: character has wild part, values need zeta_{p^r}");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), cond_.get_mpz_t());
  if (g != 1) return Padic::zero(p_, N);
  Padic v = Padic::from_int(1, p_, N);
  if (a_ != 0) v = v * teichmuller_lift(n, p_, N).pow(a_);
  if (nn_ > 1) {
    mpz_class m = n % nn_;
    if (m < 0) m += nn_;
    v = v * teichmuller_lift(mpz_class(table_[m.get_ui()]), p_, N);
  }
  return v;
}

Cyclo DirichletChar::eval(const mpz_class& n, const std::shared_ptr<const CycloRing>& ring) const {
  if (ring->p() != p_) throw DomainError("eval: ring prime mismatch");
  if (ring->r() < r_) throw DomainError("eval: ring level too small for wild part");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), cond_.get_mpz_t());
  if (g != 1) return ring->zero();
  long N = ring->prec();
  Padic v = Padic::from_int(1, p_, N);
  if (a_ != 0) v = v * teichmuller_lift(n, p_, N).pow(a_);
  if (nn_ > 1) {
    mpz_class m = n % nn_;
    if (m < 0) m += nn_;
    v = v * teichmuller_lift(mpz_class(table_[m.get_ui()]), p_, N);
  }
  if (r_ == 0) return ring->embed(v);
  long c = wild_dlog(n, p_, r_);
  mpz_class shift = Padic::pow_p(p_, ring->r() - r_);
  mpz_class exp = (mpz_class(t_) * c * shift) % Padic::pow_p(p_, ring->r());
  return ring->zeta_pow(static_cast<long>(exp.get_si())).scale(v);
}

DirichletChar DirichletChar::inv() const {
  std::vector<unsigned long> table = table_;
  for (auto& b : table)
    if (b != 0) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), mpz_class(b).get_mpz_t(), mpz_class(p_).get_mpz_t());
      b = inv.get_ui();
    }
  return DirichletChar(p_, -a_, r_, -t_, nn_, std::move(table));
}

DirichletChar operator*(const DirichletChar& x, const DirichletChar& y) {
  if (x.p_ != y.p_) throw DomainError("character product: mixed primes");
  long r = std::max(x.r_, y.r_);
  mpz_class t = mpz_class(x.t_) * Padic::pow_p(x.p_, r - x.r_) +
                mpz_class(y.t_) * Padic::pow_p(x.p_, r - y.r_);
  t %= Padic::pow_p(x.p_, r);
  unsigned long N = std::lcm(x.nn_, y.nn_);
  std::vector<unsigned long> table;
  if (N > 1) {
    table.assign(N, 0);
    for (unsigned long n = 0; n < N; ++n) {
      if (ugcd(n, N) != 1) continue;
      unsigned long bx = x.nn_ > 1 ? x.table_[n % x.nn_] : 1;
      unsigned long by = y.nn_ > 1 ? y.table_[n % y.nn_] : 1;
      table[n] = (bx * by) % x.p_;
    }
  }
  return DirichletChar(x.p_, x.a_ + y.a_, r, static_cast<long>(t.get_si()), N, std::move(table));
}

bool DirichletChar::operator==(const DirichletChar& o) const {
  return p_ == o.p_ && a_ == o.a_ && r_ == o.r_ && t_ == o.t_ && nn_ == o.nn_ &&
         table_ == o.table_;
}

}  // namespace iwalat
