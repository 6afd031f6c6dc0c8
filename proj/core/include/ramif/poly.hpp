#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ramif/coef.hpp"
#include "ramif/context.hpp"

namespace ramif::algebra {

// Sparse multivariate polynomial over a Context. No zero coefficients are
// stored; exponent vectors always have the context's arity.
class Poly {
 public:
  using Expo = std::vector<int>;
  using TermMap = std::map<Expo, Coef>;

  Poly() = default;  // context-less; containers only
  explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}

  static Poly constant(CtxPtr ctx, const Coef& c);
  static Poly constant(CtxPtr ctx, long long v);
  static Poly var(CtxPtr ctx, std::size_t index, int exp = 1);
  static Poly monomial(CtxPtr ctx, Expo e, const Coef& c);

  const CtxPtr& ctx() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Coefficient of the constant monomial (zero if absent).
  Coef constant_value() const;
  Coef coeff(const Expo& e) const;
  void add_term(const Expo& e, const Coef& c);

  Poly operator+(const Poly&) const;
  Poly operator-(const Poly&) const;
  Poly operator*(const Poly&) const;
  Poly operator-() const;
  Poly operator*(const Coef&) const;
  Poly pow(long long e) const;  // e >= 0

  bool operator==(const Poly&) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string str() const;  // diagnostics only

 private:
  CtxPtr ctx_;
  TermMap terms_;
};

Poly partial_derivative(const Poly& f, std::size_t var);

// Componentwise p^j-th power: exponents scale by p^j, coefficients are raised
// to the p^j (identity on prime-field scalars). Char-0 input throws.
Poly frobenius_power(const Poly& f, int j);

// Unique p-th root when every exponent is divisible by p; nullopt otherwise.
std::optional<Poly> pth_root(const Poly& f);

// Re-express over a wider context (every variable of f must exist there).
Poly embed(const Poly& f, const CtxPtr& wider);
// Re-express over a narrower context; throws domain_error if f involves a
// dropped variable.
Poly restrict_vars(const Poly& f, const CtxPtr& narrower);
// Substitute each variable by the polynomial at its index.
Poly substitute(const Poly& f, const std::vector<Poly>& images);

}  // namespace ramif::algebra
