#pragma once

#include <limits>
#include <map>
#include <optional>

#include "ramif/poly.hpp"

namespace ramif::algebra {

// Valuation of the zero series.
inline constexpr int VAL_INF = std::numeric_limits<int>::max();
// Precision sentinel for exactly known values (polynomial data, constants).
inline constexpr int PREC_EXACT = 1 << 30;

// Truncated Laurent series in t with Poly coefficients. Coefficients at
// t-exponents >= precision are unknown; the pole part (exponents < 0) is
// always exact, so every operation whose result precision would drop below 0
// throws precision_error instead of silently truncating a pole.
class TLaurent {
 public:
  TLaurent() = default;  // context-less; containers only
  explicit TLaurent(CtxPtr ctx, int precision = PREC_EXACT);

  static TLaurent from_poly(const Poly& c, int t_exp = 0,
                            int precision = PREC_EXACT);
  static TLaurent t_power(CtxPtr ctx, int e, int precision = PREC_EXACT);
  static TLaurent constant(CtxPtr ctx, long long v, int precision = PREC_EXACT);

  const CtxPtr& ctx() const { return ctx_; }
  const std::map<int, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int precision() const { return precision_; }
  int pole_bound() const { return pole_bound_; }

  // Coefficient of t^e (zero Poly when absent); e must be below precision.
  Poly coeff(int e) const;
  void add_term(int e, const Poly& c);
  // Declare a pole bound larger than the tight one (codec round-trips).
  void declare_pole_bound(int m);
  // Forget coefficients at exponents >= n (n <= current precision).
  TLaurent truncated(int n) const;

  TLaurent operator+(const TLaurent&) const;
  TLaurent operator-(const TLaurent&) const;
  TLaurent operator*(const TLaurent&) const;
  TLaurent operator-() const;
  TLaurent operator*(const Coef&) const;
  TLaurent operator*(const Poly&) const;
  TLaurent pow(long long e) const;  // e >= 0
  TLaurent shifted(int e) const;    // multiply by t^e

  bool operator==(const TLaurent&) const;
  bool operator!=(const TLaurent& o) const { return !(*this == o); }

  std::string str() const;  // diagnostics only

 private:
  void normalize();

  CtxPtr ctx_;
  std::map<int, Poly> terms_;
  int precision_ = PREC_EXACT;
  int pole_bound_ = 0;
};

int valuation(const TLaurent& a);  // VAL_INF for zero

enum class LaurentOp { add, mul, unit_inverse };
// Dispatcher form of the basic arithmetic (b is ignored for unit_inverse).
TLaurent laurent_arith(const TLaurent& a, const TLaurent& b, LaurentOp op);

// Multiplicative inverse of a unit series: valuation 0 and the t^0
// coefficient a nonzero scalar. Result carries the same precision window.
TLaurent unit_inverse(const TLaurent& a);

// d/dt, termwise. Precision drops by one.
TLaurent t_derivative(const TLaurent& a);
// Partial derivative in a coefficient variable.
TLaurent coeff_derivative(const TLaurent& a, std::size_t var);

TLaurent frobenius_power(const TLaurent& a, int j);
std::optional<TLaurent> pth_root(const TLaurent& a);

TLaurent embed(const TLaurent& a, const CtxPtr& wider);
TLaurent restrict_vars(const TLaurent& a, const CtxPtr& narrower);
// Substitute coefficient variables by series (used for curve restriction).
TLaurent substitute(const TLaurent& a, const std::vector<TLaurent>& images);

}  // namespace ramif::algebra
