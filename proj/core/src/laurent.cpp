#include "ramif/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "ramif/errors.hpp"

namespace ramif::algebra {

namespace {
void check_same(const TLaurent& a, const TLaurent& b) {
  if (!same_context(a.ctx(), b.ctx()))
    throw internal_error("series context mismatch");
}

int sat_prec(long long v) {
  if (v >= PREC_EXACT) return PREC_EXACT;
  if (v < -(1LL << 30)) throw precision_error("precision underflow");
  return static_cast<int>(v);
}

long long ipow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}
}  // namespace

TLaurent::TLaurent(CtxPtr ctx, int precision)
    : ctx_(std::move(ctx)), precision_(precision) {
  normalize();
}

TLaurent TLaurent::from_poly(const Poly& c, int t_exp, int precision) {
  TLaurent a(c.ctx(), precision);
  if (!c.is_zero()) a.add_term(t_exp, c);
  return a;
}

TLaurent TLaurent::t_power(CtxPtr ctx, int e, int precision) {
  Poly one = Poly::constant(ctx, 1);
  return from_poly(one, e, precision);
}

TLaurent TLaurent::constant(CtxPtr ctx, long long v, int precision) {
  return from_poly(Poly::constant(ctx, v), 0, precision);
}

Poly TLaurent::coeff(int e) const {
  if (e >= precision_)
    throw precision_error("coefficient beyond precision window");
  auto it = terms_.find(e);
  return it == terms_.end() ? Poly(ctx_) : it->second;
}

void TLaurent::add_term(int e, const Poly& c) {
  if (c.is_zero()) return;
  if (e >= precision_)
    throw internal_error("term added beyond precision window");
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) it->second = it->second + c;
  normalize();
}

void TLaurent::declare_pole_bound(int m) {
  if (m < pole_bound_)
    throw input_error("declared pole bound is smaller than an actual pole");
  pole_bound_ = m;
}

TLaurent TLaurent::truncated(int n) const {
  TLaurent r = *this;
  r.precision_ = std::min(precision_, n);
  r.normalize();
  return r;
}

void TLaurent::normalize() {
  if (precision_ < 0)
    throw precision_error("pole part of a series is no longer exact");
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero() || it->first >= precision_)
      it = terms_.erase(it);
    else
      ++it;
  }
  pole_bound_ = terms_.empty() ? 0 : std::max(0, -terms_.begin()->first);
}

TLaurent TLaurent::operator+(const TLaurent& o) const {
  check_same(*this, o);
  TLaurent r(ctx_, std::min(precision_, o.precision_));
  auto pour = [&r](const std::map<int, Poly>& src) {
    for (const auto& [e, c] : src) {
      if (e >= r.precision_) continue;
      auto [it, fresh] = r.terms_.emplace(e, c);
      if (!fresh) it->second = it->second + c;
    }
  };
  pour(terms_);
  pour(o.terms_);
  r.normalize();
  return r;
}

TLaurent TLaurent::operator-() const {
  TLaurent r(ctx_, precision_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  r.normalize();
  return r;
}

TLaurent TLaurent::operator-(const TLaurent& o) const { return *this + (-o); }

TLaurent TLaurent::operator*(const TLaurent& o) const {
  check_same(*this, o);
  // a = A + O(t^Na), b = B + O(t^Nb):
  // unknown part of ab starts at min(v(A)+Nb, v(B)+Na, Na+Nb).
  long long prec = PREC_EXACT;
  long long va = valuation(*this), vb = valuation(o);
  if (precision_ < PREC_EXACT) {
    if (vb != VAL_INF) prec = std::min(prec, vb + precision_);
    if (o.precision() < PREC_EXACT)
      prec = std::min(prec, static_cast<long long>(precision_) + o.precision());
  }
  if (o.precision() < PREC_EXACT && va != VAL_INF)
    prec = std::min(prec, va + o.precision());
  TLaurent r(ctx_, sat_prec(prec));
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      int e = ea + eb;
      if (e >= r.precision_) continue;
      Poly prod = ca * cb;
      if (prod.is_zero()) continue;
      auto [it, fresh] = r.terms_.emplace(e, prod);
      if (!fresh) it->second = it->second + prod;
    }
  r.normalize();
  return r;
}

TLaurent TLaurent::operator*(const Coef& c) const {
  if (c.is_zero()) return TLaurent(ctx_);
  TLaurent r(ctx_, precision_);
  for (const auto& [e, a] : terms_) {
    Poly prod = a * c;
    if (!prod.is_zero()) r.terms_.emplace(e, prod);
  }
  r.normalize();
  return r;
}

TLaurent TLaurent::operator*(const Poly& c) const {
  return *this * from_poly(c);
}

TLaurent TLaurent::pow(long long e) const {
  if (e < 0) throw internal_error("pow() with negative exponent");
  TLaurent acc = constant(ctx_, 1), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

TLaurent TLaurent::shifted(int e) const {
  TLaurent r(ctx_, precision_ >= PREC_EXACT
                       ? PREC_EXACT
                       : sat_prec(static_cast<long long>(precision_) + e));
  for (const auto& [k, c] : terms_) r.terms_.emplace(k + e, c);
  r.normalize();
  return r;
}

bool TLaurent::operator==(const TLaurent& o) const {
  return same_context(ctx_, o.ctx_) && precision_ == o.precision_ &&
         pole_bound_ == o.pole_bound_ && terms_ == o.terms_;
}

std::string TLaurent::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*t^" << e;
  }
  if (first) os << "0";
  if (precision_ < PREC_EXACT) os << " + O(t^" << precision_ << ")";
  return os.str();
}

int valuation(const TLaurent& a) {
  return a.is_zero() ? VAL_INF : a.terms().begin()->first;
}

TLaurent laurent_arith(const TLaurent& a, const TLaurent& b, LaurentOp op) {
  switch (op) {
    case LaurentOp::add:
      return a + b;
    case LaurentOp::mul:
      return a * b;
    case LaurentOp::unit_inverse:
      return unit_inverse(a);
  }
  throw internal_error("unknown laurent op");
}

TLaurent unit_inverse(const TLaurent& a) {
  if (valuation(a) != 0)
    throw domain_error("unit_inverse: series valuation is not 0");
  Poly c0 = a.coeff(0);
  if (!c0.is_constant() || c0.is_zero())
    throw domain_error("unit_inverse: leading coefficient is not a scalar");
  Coef inv0 = c0.constant_value().inverse();
  if (a.precision() == PREC_EXACT) {
    if (a.terms().size() == 1)
      return TLaurent::constant(a.ctx(), 1) * inv0;
    throw precision_error(
        "unit_inverse of an exact non-scalar series needs a finite window");
  }
  int n = a.precision();
  TLaurent r(a.ctx(), n);
  std::map<int, Poly> out;
  out[0] = Poly::constant(a.ctx(), 1) * inv0;
  for (int e = 1; e < n; ++e) {
    Poly s(a.ctx());
    for (const auto& [i, ai] : a.terms()) {
      if (i < 1 || i > e) continue;
      auto it = out.find(e - i);
      if (it != out.end()) s = s + ai * it->second;
    }
    if (!s.is_zero()) out[e] = -s * inv0;
  }
  for (const auto& [e, c] : out) r.add_term(e, c);
  return r;
}

TLaurent t_derivative(const TLaurent& a) {
  int p = a.ctx()->characteristic();
  TLaurent r(a.ctx(), a.precision() >= PREC_EXACT
                          ? PREC_EXACT
                          : sat_prec(static_cast<long long>(a.precision()) - 1));
  for (const auto& [e, c] : a.terms()) {
    Coef k = Coef::integer(p, e);
    if (k.is_zero()) continue;
    Poly d = c * k;
    if (!d.is_zero()) r.add_term(e - 1, d);
  }
  return r;
}

TLaurent coeff_derivative(const TLaurent& a, std::size_t var) {
  TLaurent r(a.ctx(), a.precision());
  for (const auto& [e, c] : a.terms()) {
    Poly d = partial_derivative(c, var);
    if (!d.is_zero()) r.add_term(e, d);
  }
  return r;
}

TLaurent frobenius_power(const TLaurent& a, int j) {
  int p = a.ctx()->characteristic();
  if (p == 0) throw domain_error("frobenius_power needs characteristic p > 0");
  if (j < 0) throw internal_error("negative Frobenius power");
  if (j == 0) return a;
  long long q = ipow_ll(p, j);
  long long prec = a.precision() >= PREC_EXACT
                       ? PREC_EXACT
                       : static_cast<long long>(a.precision()) * q;
  TLaurent r(a.ctx(), sat_prec(prec));
  for (const auto& [e, c] : a.terms())
    r.add_term(static_cast<int>(e * q), frobenius_power(c, j));
  return r;
}

std::optional<TLaurent> pth_root(const TLaurent& a) {
  int p = a.ctx()->characteristic();
  if (p == 0) throw domain_error("pth_root needs characteristic p > 0");
  int prec = a.precision() >= PREC_EXACT
                 ? PREC_EXACT
                 : (a.precision() >= 0 ? (a.precision() + p - 1) / p
                                       : a.precision() / p);
  TLaurent r(a.ctx(), prec);
  for (const auto& [e, c] : a.terms()) {
    if (e % p != 0) return std::nullopt;
    auto root = pth_root(c);
    if (!root) return std::nullopt;
    r.add_term(e / p, *root);
  }
  return r;
}

TLaurent embed(const TLaurent& a, const CtxPtr& wider) {
  TLaurent r(wider, a.precision());
  for (const auto& [e, c] : a.terms()) r.add_term(e, embed(c, wider));
  return r;
}

TLaurent restrict_vars(const TLaurent& a, const CtxPtr& narrower) {
  TLaurent r(narrower, a.precision());
  for (const auto& [e, c] : a.terms()) r.add_term(e, restrict_vars(c, narrower));
  return r;
}

TLaurent substitute(const TLaurent& a, const std::vector<TLaurent>& images) {
  if (images.size() != a.ctx()->arity())
    throw internal_error("substitute: image count mismatch");
  CtxPtr target = images.empty() ? a.ctx() : images.front().ctx();
  TLaurent r(target, a.precision());
  for (const auto& [e, c] : a.terms()) {
    for (const auto& [expo, coef] : c.terms()) {
      TLaurent term = TLaurent::from_poly(Poly::constant(target, coef), e);
      for (std::size_t i = 0; i < expo.size(); ++i)
        if (expo[i] != 0) term = term * images[i].pow(expo[i]);
      r = r + term;
    }
  }
  return r;
}

}  // namespace ramif::algebra
