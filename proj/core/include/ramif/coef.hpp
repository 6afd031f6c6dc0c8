#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ramif::algebra {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact field element: a residue mod p (p a small prime) or a rational.
// All arithmetic is exact; mixing characteristics is a bug and throws.
class Coef {
 public:
  Coef() : p_(2), r_(0) {}  // zero in F_2; containers only

  static Coef fp(int p, long long v);
  static Coef rational(Rational q);
  static Coef zero(int p);
  static Coef one(int p);
  // Integer literal interpreted in the given characteristic.
  static Coef integer(int p, long long v);

  int characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  long long residue() const;     // requires p > 0
  const Rational& rat() const;   // requires p == 0

  Coef operator+(const Coef&) const;
  Coef operator-(const Coef&) const;
  Coef operator*(const Coef&) const;
  Coef operator-() const;
  Coef inverse() const;          // throws domain_error on zero
  Coef pow(long long e) const;   // e >= 0

  bool operator==(const Coef&) const;
  bool operator!=(const Coef& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int p_;
  long long r_ = 0;  // residue in [0, p) when p_ > 0
  Rational q_;       // value when p_ == 0
};

}  // namespace ramif::algebra
