#include "iwalat/padic.hpp"

#include <sstream>

namespace iwalat {

mpz_class Padic::pow_p(unsigned long p, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

Padic Padic::zero(unsigned long p, long abs_prec) {
  return Padic(p, true, abs_prec, 0, mpz_class(0));
}

void Padic::reduce_unit() {
  if (zero_) return;
  if (rp_ <= 0) {
    // no certified digits left
    long n = v_ + rp_;
    zero_ = true;
    v_ = n;
    rp_ = 0;
    u_ = 0;
    return;
  }
  mpz_class m = pow_p(p_, rp_);
  mpz_mod(u_.get_mpz_t(), u_.get_mpz_t(), m.get_mpz_t());
  if (u_ == 0) {
    long n = v_ + rp_;
    zero_ = true;
    v_ = n;
    rp_ = 0;
    return;
  }
  // strip powers of p into the valuation
  unsigned long s = mpz_remove(u_.get_mpz_t(), u_.get_mpz_t(), mpz_class(p_).get_mpz_t());
  if (s > 0) {
    v_ += static_cast<long>(s);
    rp_ -= static_cast<long>(s);
    if (rp_ <= 0) {
      long n = v_ + rp_;
      zero_ = true;
      v_ = n;
      rp_ = 0;
      u_ = 0;
    }
  }
}

Padic Padic::from_unit(const mpz_class& u, long v, unsigned long p, long rel_prec) {
  Padic x(p, false, v, rel_prec, u);
  x.reduce_unit();
  return x;
}

Padic Padic::from_int(const mpz_class& a, unsigned long p, long abs_prec) {
  if (abs_prec <= 0) return zero(p, abs_prec);
  return from_unit(a, 0, p, abs_prec);
}

Padic Padic::from_rational(const mpq_class& a, unsigned long p, long abs_prec) {
  mpz_class num = a.get_num(), den = a.get_den();
  if (num == 0) return zero(p, abs_prec);
  mpz_class pz(p);
  long vn = static_cast<long>(mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  long v = vn - vd;
  long rp = abs_prec - v;
  if (rp <= 0) return zero(p, abs_prec);
  mpz_class m = pow_p(p, rp), inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("from_rational: denominator not invertible mod p^k");
  mpz_class u = (num * inv) % m;
  return from_unit(u, v, p, rp);
}

long Padic::val() const {
  if (zero_)
    throw IndeterminateValuation("valuation of zero-to-precision element (O(p^" +
                                 std::to_string(v_) + "))");
  return v_;
}

const mpz_class& Padic::unit_part() const {
  if (zero_) throw IndeterminateValuation("unit part of zero-to-precision element");
  return u_;
}

mpz_class Padic::lift() const {
  if (zero_) return mpz_class(0);
  if (v_ < 0) throw DomainError("lift of element with negative valuation");
  return u_ * pow_p(p_, v_);
}

Padic Padic::with_abs_prec(long n) const {
  if (zero_) return zero(p_, std::min(v_, n));
  if (n >= v_ + rp_) return *this;  // cannot gain precision
  if (n <= v_) return zero(p_, n);
  Padic x(p_, false, v_, n - v_, u_);
  x.reduce_unit();
  return x;
}

Padic Padic::operator-() const {
  if (zero_) return *this;
  return from_unit(-u_ + pow_p(p_, rp_), v_, p_, rp_);
}

Padic operator+(const Padic& a, const Padic& b) {
  if (a.p_ != b.p_) throw DomainError("mixed primes in Padic arithmetic");
  long n = std::min(a.abs_prec(), b.abs_prec());
  if (a.zero_ && b.zero_) return Padic::zero(a.p_, n);
  if (a.zero_) return b.with_abs_prec(n);
  if (b.zero_) return a.with_abs_prec(n);
  long v = std::min(a.v_, b.v_);
  if (n <= v) return Padic::zero(a.p_, n);
  mpz_class t = a.u_ * Padic::pow_p(a.p_, a.v_ - v) + b.u_ * Padic::pow_p(a.p_, b.v_ - v);
  return Padic::from_unit(t, v, a.p_, n - v);
}

Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

Padic operator*(const Padic& a, const Padic& b) {
  if (a.p_ != b.p_) throw DomainError("mixed primes in Padic arithmetic");
  if (a.zero_ || b.zero_) {
    // v(xy) >= v(x) + v(y); a zero side contributes its precision bound
    return Padic::zero(a.p_, a.v_ + b.v_);
  }
  long rp = std::min(a.rp_, b.rp_);
  mpz_class m = Padic::pow_p(a.p_, rp);
  mpz_class u = (a.u_ * b.u_) % m;
  return Padic::from_unit(u, a.v_ + b.v_, a.p_, rp);
}

Padic Padic::inverse() const {
  if (zero_) throw DomainError("inverse of zero-to-precision element");
  mpz_class m = pow_p(p_, rp_), inv;
  mpz_invert(inv.get_mpz_t(), u_.get_mpz_t(), m.get_mpz_t());
  return from_unit(inv, -v_, p_, rp_);
}

Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }

Padic Padic::pow(long e) const {
  if (e == 0) {
    if (zero_) return from_int(1, p_, v_);
    return from_int(1, p_, rp_ > 0 ? rp_ : 1).with_abs_prec(rp_);
  }
  if (e < 0) return inverse().pow(-e);
  if (zero_) return zero(p_, v_ * e);
  mpz_class m = pow_p(p_, rp_), u;
  mpz_powm_ui(u.get_mpz_t(), u_.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
  return from_unit(u, v_ * e, p_, rp_);
}

Padic Padic::mul_int(const mpz_class& a) const {
  if (a == 0) {
    // exact zero times anything: zero with a generous bound
    return zero(p_, abs_prec());
  }
  mpz_class t = a;
  mpz_class pz(p_);
  long s = static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t()));
  if (zero_) return zero(p_, v_ + s);
  mpz_class m = pow_p(p_, rp_);
  mpz_class u = (u_ * t) % m;
  return from_unit(u, v_ + s, p_, rp_);
}

Padic Padic::div_exact_int(const mpz_class& a) const {
  if (a == 0) throw DomainError("division by zero integer");
  mpz_class t = a;
  mpz_class pz(p_);
  long s = static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t()));
  if (zero_) return zero(p_, v_ - s);
  mpz_class m = pow_p(p_, rp_), inv;
  mpz_invert(inv.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
  mpz_class u = (u_ * inv) % m;
  return from_unit(u, v_ - s, p_, rp_);
}

bool agree_to_joint_prec(const Padic& a, const Padic& b) {
  Padic d = a - b;
  return d.is_zero();
}

std::string Padic::str() const {
  if (zero_) return "O(" + std::to_string(p_) + "^" + std::to_string(v_) + ")";
  std::ostringstream os;
  os << p_ << "^" << v_ << " * (";
  mpz_class t = u_;
  mpz_class pz(p_);
  bool first = true;
  for (long i = 0; i < rp_ && t != 0; ++i) {
    mpz_class d = t % pz;
    if (d != 0) {
      if (!first) os << " + ";
      os << d.get_str();
      if (i == 1) os << "*" << p_;
      if (i > 1) os << "*" << p_ << "^" << i;
      first = false;
    }
    t /= pz;
  }
  if (first) os << "0";
  os << " + O(" << p_ << "^" << rp_ << "))";
  return os.str();
}

}  // namespace iwalat
