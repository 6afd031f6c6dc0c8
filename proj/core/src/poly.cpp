#include "ramif/poly.hpp"

#include <sstream>

#include "ramif/errors.hpp"

namespace ramif::algebra {

namespace {
void check_same(const Poly& a, const Poly& b) {
  if (!same_context(a.ctx(), b.ctx()))
    throw internal_error("polynomial context mismatch");
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}
}  // namespace

Poly Poly::constant(CtxPtr ctx, const Coef& c) {
  Poly f(std::move(ctx));
  f.add_term(Expo(f.ctx_->arity(), 0), c);
  return f;
}

Poly Poly::constant(CtxPtr ctx, long long v) {
  int p = ctx->characteristic();
  return constant(std::move(ctx), Coef::integer(p, v));
}

Poly Poly::var(CtxPtr ctx, std::size_t index, int exp) {
  if (index >= ctx->arity()) throw internal_error("variable index out of range");
  if (exp < 0) throw internal_error("negative exponent");
  Expo e(ctx->arity(), 0);
  e[index] = exp;
  int p = ctx->characteristic();
  return monomial(std::move(ctx), std::move(e), Coef::one(p));
}

Poly Poly::monomial(CtxPtr ctx, Expo e, const Coef& c) {
  if (e.size() != ctx->arity()) throw internal_error("exponent arity mismatch");
  Poly f(std::move(ctx));
  f.add_term(e, c);
  return f;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  for (int x : e)
    if (x != 0) return false;
  return true;
}

Coef Poly::constant_value() const {
  return coeff(Expo(ctx_->arity(), 0));
}

Coef Poly::coeff(const Expo& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coef::zero(ctx_->characteristic()) : it->second;
}

void Poly::add_term(const Expo& e, const Coef& c) {
  if (e.size() != ctx_->arity()) throw internal_error("exponent arity mismatch");
  for (int x : e)
    if (x < 0) throw internal_error("negative exponent");
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator+(const Poly& o) const {
  check_same(*this, o);
  Poly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_same(*this, o);
  Poly r(ctx_);
  Expo e(ctx_->arity());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Poly Poly::operator-() const {
  Poly r(ctx_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::operator*(const Coef& c) const {
  Poly r(ctx_);
  if (c.is_zero()) return r;
  for (const auto& [e, a] : terms_) r.add_term(e, a * c);
  return r;
}

Poly Poly::pow(long long e) const {
  if (e < 0) throw internal_error("pow() with negative exponent");
  Poly acc = constant(ctx_, 1), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  return same_context(ctx_, o.ctx_) && terms_ == o.terms_;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << ctx_->var(i);
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

Poly partial_derivative(const Poly& f, std::size_t var) {
  if (var >= f.ctx()->arity())
    throw internal_error("variable index out of range");
  Poly r(f.ctx());
  int p = f.ctx()->characteristic();
  for (const auto& [e, c] : f.terms()) {
    if (e[var] == 0) continue;
    Coef factor = Coef::integer(p, e[var]);
    if (factor.is_zero()) continue;
    auto e2 = e;
    --e2[var];
    r.add_term(e2, c * factor);
  }
  return r;
}

Poly frobenius_power(const Poly& f, int j) {
  int p = f.ctx()->characteristic();
  if (p == 0) throw domain_error("frobenius_power needs characteristic p > 0");
  if (j < 0) throw internal_error("negative Frobenius power");
  if (j == 0) return f;
  long long q = ipow(p, j);
  Poly r(f.ctx());
  for (const auto& [e, c] : f.terms()) {
    auto e2 = e;
    for (auto& x : e2) x = static_cast<int>(x * q);
    r.add_term(e2, c.pow(q));
  }
  return r;
}

std::optional<Poly> pth_root(const Poly& f) {
  int p = f.ctx()->characteristic();
  if (p == 0) throw domain_error("pth_root needs characteristic p > 0");
  Poly r(f.ctx());
  for (const auto& [e, c] : f.terms()) {
    auto e2 = e;
    for (auto& x : e2) {
      if (x % p != 0) return std::nullopt;
      x /= p;
    }
    // Prime-field scalars are their own p-th powers.
    r.add_term(e2, c);
  }
  return r;
}

Poly embed(const Poly& f, const CtxPtr& wider) {
  if (wider->characteristic() != f.ctx()->characteristic())
    throw internal_error("embed: characteristic mismatch");
  std::vector<std::ptrdiff_t> at(f.ctx()->arity());
  for (std::size_t i = 0; i < at.size(); ++i) {
    at[i] = wider->index_of(f.ctx()->var(i));
    if (at[i] < 0)
      throw internal_error("embed: variable " + f.ctx()->var(i) + " missing");
  }
  Poly r(wider);
  Poly::Expo e2(wider->arity());
  for (const auto& [e, c] : f.terms()) {
    std::fill(e2.begin(), e2.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) e2[at[i]] = e[i];
    r.add_term(e2, c);
  }
  return r;
}

Poly restrict_vars(const Poly& f, const CtxPtr& narrower) {
  if (narrower->characteristic() != f.ctx()->characteristic())
    throw internal_error("restrict_vars: characteristic mismatch");
  std::vector<std::ptrdiff_t> at(f.ctx()->arity());
  for (std::size_t i = 0; i < at.size(); ++i)
    at[i] = narrower->index_of(f.ctx()->var(i));
  Poly r(narrower);
  Poly::Expo e2(narrower->arity());
  for (const auto& [e, c] : f.terms()) {
    std::fill(e2.begin(), e2.end(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (at[i] < 0)
        throw domain_error("restriction drops variable " + f.ctx()->var(i) +
                           " that occurs in the polynomial");
      e2[at[i]] = e[i];
    }
    r.add_term(e2, c);
  }
  return r;
}

Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  if (images.size() != f.ctx()->arity())
    throw internal_error("substitute: image count mismatch");
  CtxPtr target =
      images.empty() ? f.ctx() : images.front().ctx();
  Poly r(target);
  for (const auto& [e, c] : f.terms()) {
    Poly term = Poly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * images[i].pow(e[i]);
    r = r + term;
  }
  return r;
}

}  // namespace ramif::algebra
