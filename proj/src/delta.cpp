#include "iwalat/delta.hpp"

#include <algorithm>

namespace iwalat {

namespace {

// g = f^2 truncated at exponent bound (exclusive)
std::vector<mpz_class> square_trunc(const std::vector<mpz_class>& f, long bound) {
  std::vector<mpz_class> g(static_cast<size_t>(bound));
  mpz_class t;
  for (long i = 0; i < bound; ++i) {
    if (f[static_cast<size_t>(i)] == 0) continue;
    for (long j = i; i + j < bound; ++j) {
      if (f[static_cast<size_t>(j)] == 0) continue;
      t = f[static_cast<size_t>(i)] * f[static_cast<size_t>(j)];
      if (i != j) t *= 2;
      g[static_cast<size_t>(i + j)] += t;
    }
  }
  return g;
}

}  // namespace

QExpansion delta_expansion(long B) {
  if (B < 1) throw DomainError("delta_expansion: bound must be positive");
  // prod (1-q^n)^3 = sum (-1)^m (2m+1) q^{m(m+1)/2}  (Jacobi)
  std::vector<mpz_class> e3(static_cast<size_t>(B));
  for (long m = 0;; ++m) {
    long t = m * (m + 1) / 2;
    if (t >= B) break;
    e3[static_cast<size_t>(t)] = (m % 2 ? -1 : 1) * (2 * m + 1);
  }
  std::vector<mpz_class> e24 = square_trunc(square_trunc(square_trunc(e3, B), B), B);
  QExpansion q;
  q.label = "delta";
  q.a.resize(static_cast<size_t>(B) + 1);
  for (long n = 1; n <= B; ++n) q.a[static_cast<size_t>(n)] = e24[static_cast<size_t>(n - 1)];
  return q;
}

namespace {

constexpr long kValCap = 64;

long int_valuation(const mpz_class& x, unsigned long p) {
  if (x == 0) return kValCap;
  mpz_class t = x;
  long v = 0;
  while (v < kValCap && mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::vector<long> primes_up_to(long B) {
  std::vector<bool> comp(static_cast<size_t>(B) + 1, false);
  std::vector<long> out;
  for (long n = 2; n <= B; ++n) {
    if (comp[static_cast<size_t>(n)]) continue;
    out.push_back(n);
    for (long m = n * n; m <= B; m += n) comp[static_cast<size_t>(m)] = true;
  }
  return out;
}

}  // namespace

namespace {

// tau(l) = l^a + l^{11-a} mod p^level for every listed prime; the exponent a
// is only meaningful mod (p-1)p^{level-1}, the order of (Z/p^level)^x
bool congruence_holds(const QExpansion& dq, const std::vector<long>& primes,
                      const mpz_class& a, const mpz_class& ordm, const mpz_class& pm) {
  mpz_class ea = ((a % ordm) + ordm) % ordm;
  mpz_class eb = (((11 - a) % ordm) + ordm) % ordm;
  mpz_class la, lb;
  for (long l : primes) {
    mpz_class lz(l);
    mpz_powm(la.get_mpz_t(), lz.get_mpz_t(), ea.get_mpz_t(), pm.get_mpz_t());
    mpz_powm(lb.get_mpz_t(), lz.get_mpz_t(), eb.get_mpz_t(), pm.get_mpz_t());
    if ((dq.coeff(l) - la - lb) % pm != 0) return false;
  }
  return true;
}

// deepest level reachable by lifting the exponent digit by digit
std::pair<long, mpz_class> exponent_lift(const QExpansion& dq, unsigned long p,
                                         const std::vector<long>& primes) {
  std::vector<mpz_class> cands;
  for (unsigned long a0 = 0; a0 + 1 < p; ++a0) cands.push_back(a0);
  long m = 0;
  mpz_class best_a = 0, best_ord = p - 1;
  mpz_class pm = 1, ordm = p - 1;
  for (long level = 1; level <= 40 && !cands.empty(); ++level) {
    pm *= p;
    if (level > 1) ordm *= p;
    std::vector<mpz_class> surv;
    for (const mpz_class& a : cands)
      if (congruence_holds(dq, primes, a, ordm, pm)) surv.push_back(a);
    if (surv.empty()) break;
    m = level;
    best_ord = ordm;
    best_a = surv[0];
    mpz_class best_key = std::min(mpz_class(surv[0] % ordm),
                                  mpz_class(((11 - surv[0]) % ordm + ordm) % ordm));
    for (const mpz_class& a : surv) {
      mpz_class key = std::min(mpz_class(a % ordm), mpz_class(((11 - a) % ordm + ordm) % ordm));
      if (key < best_key) {
        best_key = key;
        best_a = a;
      }
    }
    cands.clear();
    for (const mpz_class& a : surv)
      for (unsigned long j = 0; j < p; ++j) cands.push_back(a + mpz_class(j) * ordm);
  }
  // canonical representative: the smaller of the pair {a, 11-a} mod the order
  mpz_class alt = ((11 - best_a) % best_ord + best_ord) % best_ord;
  best_a = std::min(mpz_class(((best_a % best_ord) + best_ord) % best_ord), alt);
  return {m, best_a};
}

}  // namespace

CongruenceReport eisenstein_congruence(unsigned long p, long B) {
  QExpansion dq = delta_expansion(B);
  std::vector<long> primes = primes_up_to(B);
  primes.erase(std::remove(primes.begin(), primes.end(), static_cast<long>(p)), primes.end());

  CongruenceReport rep;
  rep.p = p;
  rep.bound = B;

  auto [m, a] = exponent_lift(dq, p, primes);
  rep.m = m;
  rep.a = static_cast<long>(a.get_si());
  rep.count = m + 1;

  // witnesses: primes blocking level m+1 for the reported exponent
  if (m > 0) {
    mpz_class pm1 = Padic::pow_p(p, m + 1);
    mpz_class ordm1 = mpz_class(p - 1) * Padic::pow_p(p, m);
    mpz_class ea = ((a % ordm1) + ordm1) % ordm1;
    mpz_class eb = (((11 - a) % ordm1) + ordm1) % ordm1;
    mpz_class la, lb;
    for (long l : primes) {
      if (rep.witnesses.size() >= 5) break;
      mpz_class lz(l);
      mpz_powm(la.get_mpz_t(), lz.get_mpz_t(), ea.get_mpz_t(), pm1.get_mpz_t());
      mpz_powm(lb.get_mpz_t(), lz.get_mpz_t(), eb.get_mpz_t(), pm1.get_mpz_t());
      if ((dq.coeff(l) - la - lb) % pm1 != 0) rep.witnesses.push_back(l);
    }
  }

  if (static_cast<long>(primes.size()) > rep.stability_margin) {
    std::vector<long> head(primes.begin(), primes.end() - rep.stability_margin);
    rep.stable = (exponent_lift(dq, p, head).first == m);
  }
  return rep;
}

CountReport lattice_count_from_Lp(unsigned long p, long k, const DirichletChar& chi,
                                  long r_zeta, long zeta_t, long N, bool exact_mode) {
  // the family here is the one through Delta: its p-th coefficient must be a unit
  QExpansion dq = delta_expansion(static_cast<long>(p));
  if (mpz_divisible_ui_p(dq.coeff(static_cast<long>(p)).get_mpz_t(), p))
    throw DomainError("lattice_count_from_Lp: tau(p) = 0 mod p, form not p-ordinary; "
                      "use the congruence method");
  if (!chi.is_even()) throw DomainError("lattice_count_from_Lp: character must be even");

  CountReport rep;
  rep.p = p;
  rep.k = k;
  rep.r_zeta = r_zeta;
  rep.exact = exact_mode;
  rep.label = exact_mode ? "exact" : "upper bound";
  if (r_zeta == 0) {
    Padic L = kubota_leopoldt(k, chi, N);
    if (L.is_zero())
      throw PrecisionError("lattice_count_from_Lp: L-value zero to precision, raise N");
    rep.ord = L.val();
    rep.certified_digits = L.abs_prec();
  } else {
    auto ring = CycloRing::make(p, r_zeta, N);
    Cyclo L = kubota_leopoldt(k, DirichletChar::wild(p, r_zeta, zeta_t) * chi, ring);
    if (L.is_zero())
      throw PrecisionError("lattice_count_from_Lp: L-value zero to precision, raise N");
    Valuation v = L.val();
    rep.ord = v.num * (ring->e() / v.den);
    rep.certified_digits = L.pi_prec();
  }
  rep.count = rep.ord + 1;
  return rep;
}

ScanReport weight_variation_scan(const DirichletChar& psi, ScanMode mode,
                                 const ScanParams& prm) {
  unsigned long p = psi.p();
  if (psi.is_even())
    throw DomainError("weight_variation_scan: psi must be odd (psi*omega drives the L-values)");
  if ((psi * DirichletChar::omega_power(p, 1)).factors_through_wild_tower())
    throw DomainError("weight_variation_scan: trivial branch has a pole, not scanned");

  PSeries Gh = g_hat(psi, prm.M, prm.N);
  InvariantsReport inv = invariants(Gh);
  ScanReport rep;
  rep.mode = mode;
  rep.p = p;
  rep.mu = inv.mu;
  rep.lambda = inv.lambda;
  rep.bound = inv.lambda + 1;

  auto row_at_k = [&](const mpz_class& k) {
    long W = prm.N + 4;
    Padic x = u_power(k - 2, p, W) - Padic::from_int(1, p, W);
    Padic y = Gh.eval(x);
    if (y.is_zero())
      throw PrecisionError("weight_variation_scan: value zero to precision, raise M/N");
    ScanRow row;
    row.k = static_cast<long>(k.get_si());
    row.ord = y.val();
    row.count = row.ord + 1;
    return row;
  };

  if (mode == ScanMode::kTail || mode == ScanMode::kFixedKOverZeta) {
    auto ring = CycloRing::make(p, prm.r_zeta, prm.N);
    std::vector<long> ks = prm.ks;
    if (ks.empty()) ks = {2};
    if (mode == ScanMode::kFixedKOverZeta) ks.resize(1);
    std::vector<long> ts = prm.zeta_ts.empty() ? std::vector<long>{1} : prm.zeta_ts;
    for (long k : ks)
      for (long t : ts) {
        Cyclo x = ring->zeta_pow(t).scale(u_power(mpz_class(k - 2), p, prm.N + 4)) -
                  ring->one();
        Cyclo y = Gh.eval(x);
        if (y.is_zero())
          throw PrecisionError("weight_variation_scan: value zero to precision, raise M/N");
        Valuation v = y.val();
        ScanRow row;
        row.k = k;
        row.r_zeta = prm.r_zeta;
        row.zeta_t = t;
        row.ord = v.num * (ring->e() / v.den);
        row.count = row.ord + 1;
        rep.rows.push_back(row);
      }
  } else {
    bool scanned_zero = false;
    if (inv.lambda >= 1) {
      for (const ZpZero& z : zeros_in_zp(Gh))
        if (z.resolved && z.s0.has_value()) {
          Padic s0 = *z.s0;
          rep.s0 = s0.str();
          mpz_class s0l = s0.lift();
          for (long n = 1; n <= prm.depth; ++n) {
            mpz_class pn = Padic::pow_p(p, n);
            mpz_class tr = s0l % pn;
            long dig = mpz_class((s0l / pn) % p).get_si();
            long d = (dig == 1) ? 2 : 1;  // force digit n to differ from s0
            rep.rows.push_back(row_at_k(tr + d * pn));
          }
          scanned_zero = true;
          break;
        }
    }
    if (!scanned_zero) {
      std::vector<long> ks = prm.ks;
      if (ks.empty())
        for (long j = 0; j < 3; ++j) ks.push_back(2 + (static_cast<long>(p) - 1) * j);
      for (long k : ks) rep.rows.push_back(row_at_k(mpz_class(k)));
    }
  }

  rep.constant = !rep.rows.empty();
  for (const ScanRow& r : rep.rows) rep.constant = rep.constant && r.count == rep.rows[0].count;
  rep.monotone = rep.rows.size() >= 2;
  for (size_t i = 0; i + 1 < rep.rows.size(); ++i)
    rep.monotone = rep.monotone && rep.rows[i].count < rep.rows[i + 1].count;
  return rep;
}

}  // namespace iwalat
