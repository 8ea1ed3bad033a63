#include "iwalat/lvalues.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace iwalat {

namespace {

std::mutex cache_mutex;

long vp_long(unsigned long p, long n) {
  long v = 0;
  while (n % static_cast<long>(p) == 0) {
    n /= static_cast<long>(p);
    ++v;
  }
  return v;
}

}  // namespace

BigRational bernoulli_number(long k) {
  if (k < 0) throw DomainError("bernoulli_number: k must be >= 0");
  static std::vector<mpq_class> table = {mpq_class(1), mpq_class(-1, 2)};
  std::lock_guard<std::mutex> lk(cache_mutex);
  while (static_cast<long>(table.size()) <= k) {
    long m = static_cast<long>(table.size());
    // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
    mpq_class s = 0;
    mpz_class bin = 1;  // C(m+1, j)
    for (long j = 0; j < m; ++j) {
      s += mpq_class(bin) * table[static_cast<size_t>(j)];
      bin = bin * (m + 1 - j) / (j + 1);
    }
    s /= -(m + 1);
    s.canonicalize();
    table.push_back(s);
  }
  return table[static_cast<size_t>(k)];
}

namespace {

std::map<unsigned long, std::shared_ptr<const PBernoulliTable>> pb_cache;

std::shared_ptr<const PBernoulliTable> build_pb_table(unsigned long p, long kmax, long digits) {
  long slack = 2;
  for (long m = 1; m <= kmax; ++m) slack += vp_long(p, m + 1);
  long W = digits + slack;
  auto T = std::make_shared<PBernoulliTable>();
  T->p = p;
  T->mod = Padic::pow_p(p, W);
  T->pb.assign(static_cast<size_t>(kmax) + 1, mpz_class(0));
  T->pb[0] = p;
  std::vector<mpz_class> row(static_cast<size_t>(kmax) + 2, mpz_class(0));
  row[0] = 1;
  row[1] = 1;  // C(1, .)
  long lost = 0;
  mpz_class S, t;
  for (long m = 1; m <= kmax; ++m) {
    // advance Pascal row to C(m+1, .), reduced mod p^W
    for (long j = m + 1; j >= 1; --j) {
      row[static_cast<size_t>(j)] += row[static_cast<size_t>(j - 1)];
      if (row[static_cast<size_t>(j)] >= T->mod) row[static_cast<size_t>(j)] -= T->mod;
    }
    S = 0;
    for (long j = 0; j < m; ++j) {
      if (T->pb[static_cast<size_t>(j)] == 0) continue;
      t = row[static_cast<size_t>(j)] * T->pb[static_cast<size_t>(j)];
      S += t;
    }
    S %= T->mod;
    long s = vp_long(p, m + 1);
    if (s > 0) {
      mpz_class ps = Padic::pow_p(p, s);
      if (!mpz_divisible_p(S.get_mpz_t(), ps.get_mpz_t()))
        throw PrecisionError("p_bernoulli_table: divisibility certificate failed");
      mpz_divexact(S.get_mpz_t(), S.get_mpz_t(), ps.get_mpz_t());
      lost += s;
    }
    long qd = m + 1;
    for (long i = 0; i < s; ++i) qd /= static_cast<long>(p);
    mpz_class q(qd), inv;
    mpz_invert(inv.get_mpz_t(), q.get_mpz_t(), T->mod.get_mpz_t());
    S = (S * inv) % T->mod;
    S = (T->mod - S) % T->mod;
    T->pb[static_cast<size_t>(m)] = S;
  }
  T->digits = W - lost;
  if (T->digits < digits)
    throw PrecisionError("p_bernoulli_table: slack accounting failed");
  return T;
}

}  // namespace

std::shared_ptr<const PBernoulliTable> p_bernoulli_table(unsigned long p, long kmax, long digits) {
  std::lock_guard<std::mutex> lk(cache_mutex);
  auto it = pb_cache.find(p);
  if (it != pb_cache.end() && static_cast<long>(it->second->pb.size()) > kmax &&
      it->second->digits >= digits)
    return it->second;
  long want_k = kmax;
  long want_d = digits;
  if (it != pb_cache.end()) {
    want_k = std::max(want_k, static_cast<long>(it->second->pb.size()) - 1);
    want_d = std::max(want_d, it->second->digits);
  }
  auto T = build_pb_table(p, want_k, want_d);
  pb_cache[p] = T;
  return T;
}

BigRational quadratic_bernoulli_exact(long k, long D) {
  if (k < 0) throw DomainError("quadratic_bernoulli_exact: k must be >= 0");
  unsigned long f = static_cast<unsigned long>(D > 0 ? D : -D);
  mpz_class Dz(D);
  if (f == 1) return bernoulli_number(k);
  if (k == 0) return mpq_class(0);
  // f^{k-1} sum_a chi(a) B_k(a/f), B_k(x) = sum_j C(k,j) B_j x^{k-j}
  mpq_class total = 0;
  for (unsigned long a = 1; a <= f; ++a) {
    int c = mpz_kronecker_ui(Dz.get_mpz_t(), a);
    if (c == 0) continue;
    mpq_class x(static_cast<long>(a), static_cast<long>(f));
    x.canonicalize();
    // evaluate B_k(x) by Horner in x
    mpz_class bin = 1;
    mpq_class bk = bernoulli_number(0);
    for (long j = 1; j <= k; ++j) {
      bin = bin * (k - j + 1) / j;
      bk = bk * x + mpq_class(bin) * bernoulli_number(j);
    }
    total += c * bk;
  }
  mpz_class fk;
  mpz_ui_pow_ui(fk.get_mpz_t(), f, static_cast<unsigned long>(k - 1));
  total *= mpq_class(fk);
  total.canonicalize();
  return total;
}

namespace {

struct PowerSumTable {
  long imax;
  mpz_class mod;
  std::vector<mpz_class> S;  // S_i = sum_a chi(a) a^i mod p^W
};

std::map<std::string, std::shared_ptr<const PowerSumTable>> ps_cache;

std::string char_key(const DirichletChar& chi) {
  std::ostringstream os;
  os << chi.p() << "|" << chi.tame_exp() << "|" << chi.wild_r() << "|" << chi.wild_t() << "|"
     << chi.away_modulus() << "|";
  for (auto b : chi.away_table()) os << b << ",";
  return os.str();
}

std::shared_ptr<const PowerSumTable> char_power_sums(const DirichletChar& chi, long imax,
                                                     long W) {
  std::string key = char_key(chi) + "#" + std::to_string(W);
  {
    std::lock_guard<std::mutex> lk(cache_mutex);
    auto it = ps_cache.find(key);
    if (it != ps_cache.end() && it->second->imax >= imax) return it->second;
  }
  auto T = std::make_shared<PowerSumTable>();
  T->imax = imax;
  T->mod = Padic::pow_p(chi.p(), W);
  unsigned long f = static_cast<unsigned long>(chi.conductor().get_ui());
  std::vector<mpz_class> cval;
  std::vector<unsigned long> units;
  for (unsigned long a = 1; a <= f; ++a) {
    Padic v = chi.eval_zp(a, W);
    if (v.is_zero()) continue;
    units.push_back(a);
    cval.push_back(v.lift());
  }
  std::vector<mpz_class> powa(units.size(), mpz_class(1));
  T->S.assign(static_cast<size_t>(imax) + 1, mpz_class(0));
  mpz_class acc, t;
  for (long i = 0; i <= imax; ++i) {
    acc = 0;
    for (size_t idx = 0; idx < units.size(); ++idx) {
      t = cval[idx] * powa[idx];
      acc += t;
    }
    T->S[static_cast<size_t>(i)] = acc % T->mod;
    if (i < imax)
      for (size_t idx = 0; idx < units.size(); ++idx) {
        powa[idx] = (powa[idx] * units[idx]) % T->mod;
      }
  }
  std::lock_guard<std::mutex> lk(cache_mutex);
  ps_cache[key] = T;
  return T;
}

}  // namespace

Padic generalized_bernoulli(long k, const DirichletChar& chi, long N) {
  if (!chi.takes_values_in_zp())
    throw DomainError("generalized_bernoulli: wild character needs the cyclotomic overload");
  unsigned long p = chi.p();
  if (k < 0) throw DomainError("generalized_bernoulli: k must be >= 0");
  if (k == 0) return Padic::from_int(chi.is_trivial() ? 1 : 0, p, N);
  bool k_even = (k % 2 == 0);
  if (chi.is_even() != k_even && !(k == 1 && chi.is_trivial()))
    return Padic::zero(p, N);  // parity vanishing

  long f = static_cast<long>(chi.conductor().get_ui());
  long W = N + 2 + vp_long(p, k) + 1 + (f % static_cast<long>(p) == 0 ? 1 : 0);
  auto bt = p_bernoulli_table(p, k, W);
  long Wt = bt->digits;
  mpz_class modt = Padic::pow_p(p, Wt);
  auto st = char_power_sums(chi, k, Wt);
  // p f B_{k,chi} = sum_j C(k,j) (p B_j) f^j S_{k-j}
  mpz_class acc = 0, bin = 1, fpow = 1, term;
  for (long j = 0; j <= k; ++j) {
    const mpz_class& pb = bt->pb[static_cast<size_t>(j)];
    if (pb != 0 && st->S[static_cast<size_t>(k - j)] != 0) {
      term = (bin * pb) % modt;
      term = (term * fpow) % modt;
      term = (term * st->S[static_cast<size_t>(k - j)]) % modt;
      acc += term;
    }
    if (j < k) {
      bin = bin * (k - j) / (j + 1);
      fpow = (fpow * f) % modt;
    }
  }
  Padic num = Padic::from_unit(acc % modt, 0, p, Wt);
  return num.div_exact_int(mpz_class(f) * static_cast<long>(p)).with_abs_prec(N);
}

Cyclo generalized_bernoulli(long k, const DirichletChar& chi,
                            const std::shared_ptr<const CycloRing>& ring) {
  unsigned long p = chi.p();
  if (ring->p() != p) throw DomainError("generalized_bernoulli: ring prime mismatch");
  if (k < 0) throw DomainError("generalized_bernoulli: k must be >= 0");
  if (k == 0) return chi.is_trivial() ? ring->one() : ring->zero();
  bool k_even = (k % 2 == 0);
  if (chi.is_even() != k_even && !(k == 1 && chi.is_trivial())) return ring->zero();

  mpz_class fz = chi.conductor();
  long W = ring->prec() + 4 + vp_long(p, k) +
           static_cast<long>(mpz_remove(fz.get_mpz_t(), fz.get_mpz_t(), mpz_class(p).get_mpz_t()));
  fz = chi.conductor();
  auto bt = p_bernoulli_table(p, k, W);
  mpz_class modt = Padic::pow_p(p, bt->digits);

  // S_i = sum_a chi(a) a^i in the cyclotomic ring
  unsigned long f = static_cast<unsigned long>(fz.get_ui());
  std::vector<Cyclo> cval;
  std::vector<unsigned long> units;
  for (unsigned long a = 1; a <= f; ++a) {
    Cyclo v = chi.eval(a, ring);
    if (v.is_zero()) continue;
    units.push_back(a);
    cval.push_back(v);
  }
  std::vector<mpz_class> powa(units.size(), mpz_class(1));
  std::vector<Cyclo> S(static_cast<size_t>(k) + 1, ring->zero());
  for (long i = 0; i <= k; ++i) {
    Cyclo acc = ring->zero();
    for (size_t idx = 0; idx < units.size(); ++idx) acc += cval[idx].mul_int(powa[idx]);
    S[static_cast<size_t>(i)] = acc;
    if (i < k)
      for (size_t idx = 0; idx < units.size(); ++idx)
        powa[idx] = (powa[idx] * units[idx]) % modt;
  }

  Cyclo acc = ring->zero();
  mpz_class bin = 1, fpow = 1, c;
  for (long j = 0; j <= k; ++j) {
    const mpz_class& pb = bt->pb[static_cast<size_t>(j)];
    if (pb != 0) {
      c = (bin * pb) % modt;
      c = (c * fpow) % modt;
      acc += S[static_cast<size_t>(k - j)].mul_int(c);
    }
    if (j < k) {
      bin = bin * (k - j) / (j + 1);
      fpow = (fpow * fz) % modt;
    }
  }
  return acc.div_exact_int(fz * static_cast<long>(p));
}

Padic classical_L_negative(long k, const DirichletChar& chi, long N) {
  if (k < 1) throw DomainError("classical_L_negative: k must be >= 1");
  long pad = vp_long(chi.p(), k);
  return generalized_bernoulli(k, chi, N + pad).div_exact_int(-k).with_abs_prec(N);
}

Cyclo classical_L_negative(long k, const DirichletChar& chi,
                           const std::shared_ptr<const CycloRing>& ring) {
  if (k < 1) throw DomainError("classical_L_negative: k must be >= 1");
  return generalized_bernoulli(k, chi, ring).div_exact_int(mpz_class(-k));
}

namespace {

void kl_guard(long k, const DirichletChar& psi) {
  if (k < 1) throw DomainError("kubota_leopoldt: k must be >= 1 (value at s = 1-k)");
  if (!psi.is_even())
    throw DomainError("kubota_leopoldt: L_p vanishes identically for odd psi");
  if (psi.is_trivial() && k == 1)
    throw DomainError("kubota_leopoldt: pole at s = 1 for trivial psi");
}

}  // namespace

Padic kubota_leopoldt(long k, const DirichletChar& psi, long N) {
  kl_guard(k, psi);
  unsigned long p = psi.p();
  DirichletChar chi = psi * DirichletChar::omega_power(p, -k);
  Padic L = classical_L_negative(k, chi, N + 1);
  Padic chip = chi.eval_zp(p, N + 1);
  Padic euler = Padic::from_int(1, p, N + 1);
  if (!chip.is_zero()) {
    Padic pk = Padic::from_unit(1, k - 1, p, N + 1);
    euler = euler - chip * pk;
  }
  return (euler * L).with_abs_prec(N);
}

Cyclo kubota_leopoldt(long k, const DirichletChar& psi,
                      const std::shared_ptr<const CycloRing>& ring) {
  kl_guard(k, psi);
  unsigned long p = psi.p();
  DirichletChar chi = psi * DirichletChar::omega_power(p, -k);
  Cyclo L = classical_L_negative(k, chi, ring);
  Cyclo chip = chi.eval(p, ring);
  Cyclo euler = ring->one();
  if (!chip.is_zero()) {
    Padic pk = Padic::from_unit(1, k - 1, p, ring->prec() + 1);
    euler = euler - chip.scale(pk);
  }
  return euler * L;
}

}  // namespace iwalat
