#include "ramif/diff_form.hpp"

#include <bit>
#include <sstream>

#include "ramif/errors.hpp"

namespace ramif::forms {

using algebra::same_context;
using algebra::valuation;
using algebra::VAL_INF;

int mask_size(Mask m) { return std::popcount(m); }

std::vector<int> mask_bits(Mask m) {
  std::vector<int> out;
  for (int b = 0; m != 0; ++b, m >>= 1)
    if (m & 1u) out.push_back(b);
  return out;
}

std::optional<std::pair<Mask, int>> mask_wedge(Mask a, Mask b) {
  if (a & b) return std::nullopt;
  int inversions = 0;
  for (int i : mask_bits(b)) inversions += std::popcount(a >> (i + 1));
  return std::make_pair(a | b, inversions % 2 == 0 ? 1 : -1);
}

int mask_insert_sign(int b, Mask m) {
  Mask below = m & ((Mask{1} << b) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

namespace {

void check_basis(const CtxPtr& ctx, Mask m, int degree, bool allow_dt) {
  if (!ctx) throw internal_error("form without context");
  if (mask_size(m) != degree)
    throw internal_error("wedge monomial size does not match form degree");
  int basis = static_cast<int>(ctx->arity()) + 1;
  if (m >> basis)
    throw internal_error("wedge monomial uses an undeclared 1-form");
  if (!allow_dt && (m & 1u))
    throw internal_error("dt is not part of the divisor basis");
}

}  // namespace

DiffForm::DiffForm(CtxPtr ctx, int degree)
    : ctx_(std::move(ctx)), degree_(degree) {
  if (degree_ < 0) throw internal_error("negative form degree");
}

void DiffForm::add_term(Mask m, const TLaurent& c) {
  check_basis(ctx_, m, degree_, true);
  if (!same_context(ctx_, c.ctx()))
    throw internal_error("coefficient context mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

int DiffForm::pole_order() const {
  int m = 0;
  for (auto& [mask, c] : terms_) {
    long long v = valuation(c);
    if (v < 0) m = std::max(m, static_cast<int>(-v));
  }
  return m;
}

DiffForm DiffForm::operator+(const DiffForm& o) const {
  if (!same_context(ctx_, o.ctx_) || degree_ != o.degree_)
    throw internal_error("adding incompatible forms");
  DiffForm r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

DiffForm DiffForm::operator-() const {
  DiffForm r(ctx_, degree_);
  for (auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

DiffForm DiffForm::operator-(const DiffForm& o) const { return *this + (-o); }

DiffForm DiffForm::operator*(const Coef& c) const {
  DiffForm r(ctx_, degree_);
  for (auto& [m, f] : terms_) r.add_term(m, f * c);
  return r;
}

DiffForm DiffForm::operator*(const TLaurent& c) const {
  DiffForm r(ctx_, degree_);
  for (auto& [m, f] : terms_) r.add_term(m, f * c);
  return r;
}

bool DiffForm::operator==(const DiffForm& o) const {
  return same_context(ctx_, o.ctx_) && degree_ == o.degree_ &&
         terms_ == o.terms_;
}

std::string DiffForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int b : mask_bits(m)) {
      os << "^";
      if (b == 0)
        os << "dt";
      else
        os << "d" << ctx_->var(static_cast<std::size_t>(b - 1));
    }
  }
  return os.str();
}

ResidueForm::ResidueForm(CtxPtr ctx, int degree)
    : ctx_(std::move(ctx)), degree_(degree) {
  if (degree_ < -1) throw internal_error("bad divisor form degree");
}

void ResidueForm::add_term(Mask m, const Poly& c) {
  if (degree_ < 0) throw internal_error("degree -1 divisor form is zero");
  check_basis(ctx_, m, degree_, false);
  if (!same_context(ctx_, c.ctx()))
    throw internal_error("coefficient context mismatch");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

ResidueForm ResidueForm::operator+(const ResidueForm& o) const {
  if (!same_context(ctx_, o.ctx_) || degree_ != o.degree_)
    throw internal_error("adding incompatible divisor forms");
  ResidueForm r = *this;
  for (auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

ResidueForm ResidueForm::operator-() const {
  ResidueForm r(ctx_, degree_);
  for (auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

ResidueForm ResidueForm::operator-(const ResidueForm& o) const {
  return *this + (-o);
}

ResidueForm ResidueForm::operator*(const Coef& c) const {
  ResidueForm r(ctx_, degree_);
  for (auto& [m, f] : terms_) r.add_term(m, f * c);
  return r;
}

bool ResidueForm::operator==(const ResidueForm& o) const {
  return same_context(ctx_, o.ctx_) && degree_ == o.degree_ &&
         terms_ == o.terms_;
}

std::string ResidueForm::str() const {
  if (degree_ < 0 || terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (int b : mask_bits(m))
      os << "^d" << ctx_->var(static_cast<std::size_t>(b - 1)) << "~";
    if (degree_ == 0) os << "*1";
  }
  return os.str();
}

DiffForm exterior_derivative(const DiffForm& w) {
  DiffForm r(w.ctx(), w.degree() + 1);
  std::size_t nvars = w.ctx() ? w.ctx()->arity() : 0;
  for (auto& [m, f] : w.terms()) {
    if (!(m & 1u)) {
      auto df = algebra::t_derivative(f);
      if (!df.is_zero()) r.add_term(m | 1u, df);  // dt slots in front, sign +1
    }
    for (std::size_t v = 0; v < nvars; ++v) {
      Mask bit = Mask{1} << (v + 1);
      if (m & bit) continue;
      auto df = algebra::coeff_derivative(f, v);
      if (df.is_zero()) continue;
      int sign = mask_insert_sign(static_cast<int>(v + 1), m);
      r.add_term(m | bit, sign == 1 ? df : -df);
    }
  }
  return r;
}

ResidueForm exterior_derivative(const ResidueForm& w) {
  ResidueForm r(w.ctx(), w.degree() + 1);
  std::size_t nvars = w.ctx() ? w.ctx()->arity() : 0;
  for (auto& [m, f] : w.terms()) {
    for (std::size_t v = 0; v < nvars; ++v) {
      Mask bit = Mask{1} << (v + 1);
      if (m & bit) continue;
      auto df = algebra::partial_derivative(f, v);
      if (df.is_zero()) continue;
      int sign = mask_insert_sign(static_cast<int>(v + 1), m);
      r.add_term(m | bit, sign == 1 ? df : -df);
    }
  }
  return r;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  if (!same_context(a.ctx(), b.ctx()))
    throw internal_error("wedge across contexts");
  DiffForm r(a.ctx(), a.degree() + b.degree());
  for (auto& [ma, fa] : a.terms())
    for (auto& [mb, fb] : b.terms()) {
      auto merged = mask_wedge(ma, mb);
      if (!merged) continue;
      auto prod = fa * fb;
      r.add_term(merged->first, merged->second == 1 ? prod : -prod);
    }
  return r;
}

ResidueForm wedge(const ResidueForm& a, const ResidueForm& b) {
  if (!same_context(a.ctx(), b.ctx()))
    throw internal_error("wedge across contexts");
  ResidueForm r(a.ctx(), a.degree() + b.degree());
  for (auto& [ma, fa] : a.terms())
    for (auto& [mb, fb] : b.terms()) {
      auto merged = mask_wedge(ma, mb);
      if (!merged) continue;
      auto prod = fa * fb;
      r.add_term(merged->first, merged->second == 1 ? prod : -prod);
    }
  return r;
}

bool pole_membership(const DiffForm& w, int n, PoleMode mode) {
  if (n < 0) throw input_error("pole level must be non-negative");
  for (auto& [m, f] : w.terms()) {
    long long bound =
        (mode == PoleMode::plain || (m & 1u)) ? -(long long)n : -(n - 1LL);
    long long v = valuation(f);
    if (v != VAL_INF && v < bound) return false;
  }
  return true;
}

bool omega_fas_member(const DiffForm& w, int n, int p) {
  if (w.ctx() && w.ctx()->characteristic() != p)
    throw input_error("characteristic does not match the form's field");
  bool plain = (n == 0) || (p > 0 && n % p == 0);
  return pole_membership(w, n, plain ? PoleMode::plain : PoleMode::log);
}

int omega_conductor(const DiffForm& w, int p) {
  int bound = w.pole_order() + 1;
  for (int n = 0; n <= bound; ++n)
    if (omega_fas_member(w, n, p)) return n;
  throw internal_error("conductor search passed its a-priori bound");
}

DiffForm restrict_to_curve(const DiffForm& w,
                           const std::vector<TLaurent>& phi) {
  const CtxPtr& src = w.ctx();
  if (!src) throw internal_error("restricting a form without context");
  if (phi.size() != src->arity())
    throw input_error("curve needs one series per coordinate");
  int p = src->characteristic();
  CtxPtr target = phi.empty() ? algebra::make_context(p, {}) : phi[0].ctx();
  for (auto& s : phi) {
    if (!same_context(s.ctx(), target))
      throw input_error("curve coordinates live in different contexts");
    long long v = valuation(s);
    if (v != VAL_INF && v < 1)
      throw input_error("curve coordinates must vanish at t = 0");
  }
  if (target->characteristic() != p)
    throw input_error("curve characteristic mismatch");

  DiffForm r(target, w.degree());
  for (auto& [m, f] : w.terms()) {
    if (mask_size(m) >= 2) continue;  // two dt factors collapse
    TLaurent base = algebra::substitute(f, phi);
    if (m == 0) {
      r.add_term(0, base);
    } else if (m == 1u) {
      r.add_term(1u, base);
    } else {
      int b = mask_bits(m)[0];
      auto dphi = algebra::t_derivative(phi[static_cast<std::size_t>(b - 1)]);
      r.add_term(1u, base * dphi);
    }
  }
  return r;
}

}  // namespace ramif::forms
