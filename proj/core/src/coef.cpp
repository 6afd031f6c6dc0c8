#include "ramif/coef.hpp"

#include <sstream>

#include "ramif/errors.hpp"

namespace ramif::algebra {

namespace {
long long mod_norm(long long v, int p) {
  long long r = v % p;
  return r < 0 ? r + p : r;
}

void check_same(const Coef& a, const Coef& b) {
  if (a.characteristic() != b.characteristic())
    throw internal_error("coefficient characteristic mismatch");
}
}  // namespace

Coef Coef::fp(int p, long long v) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw input_error("unsupported characteristic " + std::to_string(p) +
                      " (expected 0, 2, 3, 5 or 7)");
  Coef c;
  c.p_ = p;
  c.r_ = mod_norm(v, p);
  return c;
}

Coef Coef::rational(Rational q) {
  Coef c;
  c.p_ = 0;
  c.q_ = std::move(q);
  return c;
}

Coef Coef::zero(int p) { return integer(p, 0); }
Coef Coef::one(int p) { return integer(p, 1); }

Coef Coef::integer(int p, long long v) {
  return p == 0 ? rational(Rational(v)) : fp(p, v);
}

bool Coef::is_zero() const { return p_ == 0 ? q_.is_zero() : r_ == 0; }
bool Coef::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

long long Coef::residue() const {
  if (p_ == 0) throw internal_error("residue() on a rational");
  return r_;
}

const Rational& Coef::rat() const {
  if (p_ != 0) throw internal_error("rat() on a prime-field element");
  return q_;
}

Coef Coef::operator+(const Coef& o) const {
  check_same(*this, o);
  return p_ == 0 ? rational(q_ + o.q_) : fp(p_, r_ + o.r_);
}

Coef Coef::operator-(const Coef& o) const {
  check_same(*this, o);
  return p_ == 0 ? rational(q_ - o.q_) : fp(p_, r_ - o.r_);
}

Coef Coef::operator*(const Coef& o) const {
  check_same(*this, o);
  return p_ == 0 ? rational(q_ * o.q_) : fp(p_, r_ * o.r_);
}

Coef Coef::operator-() const {
  return p_ == 0 ? rational(-q_) : fp(p_, -r_);
}

Coef Coef::inverse() const {
  if (is_zero()) throw domain_error("inverse of zero");
  if (p_ == 0) return rational(Rational(1) / q_);
  // Fermat: a^(p-2) mod p.
  return pow(p_ - 2);
}

Coef Coef::pow(long long e) const {
  if (e < 0) throw internal_error("pow() with negative exponent");
  if (p_ != 0) {
    long long base = r_, acc = 1;
    long long k = e;
    while (k > 0) {
      if (k & 1) acc = mod_norm(acc * base, p_);
      base = mod_norm(base * base, p_);
      k >>= 1;
    }
    return fp(p_, acc);
  }
  Rational acc(1), base = q_;
  long long k = e;
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return rational(acc);
}

bool Coef::operator==(const Coef& o) const {
  if (p_ != o.p_) return false;
  return p_ == 0 ? q_ == o.q_ : r_ == o.r_;
}

std::string Coef::str() const {
  if (p_ != 0) return std::to_string(r_);
  std::ostringstream os;
  os << q_;
  return os.str();
}

}  // namespace ramif::algebra
