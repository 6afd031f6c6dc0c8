#include "ramif/char_form.hpp"

#include <sstream>

#include "ramif/errors.hpp"

namespace ramif::forms {

using algebra::same_context;

namespace {

bool part_zero(const std::optional<ResidueForm>& f) {
  return !f || f->is_zero();
}

bool part_equal(const std::optional<ResidueForm>& a,
                const std::optional<ResidueForm>& b) {
  if (part_zero(a) && part_zero(b)) return true;
  if (part_zero(a) || part_zero(b)) return false;
  return *a == *b;
}

}  // namespace

bool HomValue::is_zero() const {
  return part_zero(plain) && part_zero(dpart) && frob.empty() &&
         vparts.empty();
}

void HomValue::normalize() {
  if (part_zero(plain)) plain.reset();
  if (part_zero(dpart)) dpart.reset();
  for (auto it = frob.begin(); it != frob.end();)
    it = it->second.is_zero() ? frob.erase(it) : std::next(it);
  for (auto it = vparts.begin(); it != vparts.end();)
    it = it->second.is_zero() ? vparts.erase(it) : std::next(it);
}

HomValue& HomValue::operator+=(const HomValue& o) {
  auto merge = [](std::optional<ResidueForm>& a,
                  const std::optional<ResidueForm>& b) {
    if (!b) return;
    a = a ? *a + *b : *b;
  };
  merge(plain, o.plain);
  merge(dpart, o.dpart);
  for (auto& [s, f] : o.frob) {
    auto it = frob.find(s);
    if (it == frob.end())
      frob.emplace(s, f);
    else
      it->second = it->second + f;
  }
  for (auto& [s, c] : o.vparts) {
    auto it = vparts.find(s);
    if (it == vparts.end())
      vparts.emplace(s, c);
    else
      it->second = it->second + c;
  }
  normalize();
  return *this;
}

bool HomValue::operator==(const HomValue& o) const {
  if (!part_equal(plain, o.plain) || !part_equal(dpart, o.dpart)) return false;
  auto cleaned = [](const auto& m) {
    auto copy = m;
    for (auto it = copy.begin(); it != copy.end();)
      it = it->second.is_zero() ? copy.erase(it) : std::next(it);
    return copy;
  };
  return cleaned(frob) == cleaned(o.frob) &&
         cleaned(vparts) == cleaned(o.vparts);
}

std::string HomValue::str() const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " (+) ";
    first = false;
  };
  if (!part_zero(plain)) {
    sep();
    os << plain->str();
  }
  if (!part_zero(dpart)) {
    sep();
    os << "(" << dpart->str() << ").d";
  }
  for (auto& [s, f] : frob) {
    sep();
    os << "(" << f.str() << ").F^" << s;
  }
  for (auto& [s, c] : vparts) {
    sep();
    os << "V(" << c.str() << ").F^" << s;
  }
  if (first) os << "0";
  return os.str();
}

CharForm::CharForm(CtxPtr ctx, int level, int degree, int witt_length)
    : ctx_(std::move(ctx)),
      level_(level),
      degree_(degree),
      witt_length_(witt_length) {
  if (level_ < 2) throw domain_error("characteristic forms need level >= 2");
  if (witt_length_ < 0 || degree_ < 0)
    throw internal_error("bad characteristic-form shape");
}

HomValue& CharForm::entry(int index) {
  if (index < 0 || index > static_cast<int>(ctx_->arity()))
    throw internal_error("pole-basis index out of range");
  return entries_[index];
}

void CharForm::prune() {
  for (auto it = entries_.begin(); it != entries_.end();) {
    it->second.normalize();
    for (auto& [s, f] : it->second.frob)
      if (s < 1 || s > kMaxFrobExponent)
        throw domain_error("Frobenius twist exponent out of range");
    for (auto& [s, c] : it->second.vparts)
      if (s < 0 || s > kMaxFrobExponent)
        throw domain_error("Frobenius twist exponent out of range");
    it = it->second.is_zero() ? entries_.erase(it) : std::next(it);
  }
}

bool CharForm::operator==(const CharForm& o) const {
  return same_context(ctx_, o.ctx_) && level_ == o.level_ &&
         degree_ == o.degree_ && witt_length_ == o.witt_length_ &&
         entries_ == o.entries_;
}

std::string CharForm::str() const {
  if (entries_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, hv] : entries_) {
    if (!first) os << "  +  ";
    first = false;
    if (i == 0)
      os << "dt";
    else
      os << "d" << ctx_->var(static_cast<std::size_t>(i - 1));
    os << "/t^" << level_ << " (x) [" << hv.str() << "]";
  }
  return os.str();
}

HomValue xi(const ResidueForm& beta, const ResidueForm& alpha) {
  if (!same_context(beta.ctx(), alpha.ctx()))
    throw internal_error("xi across contexts");
  int j = beta.degree();
  if (j < 1 || alpha.degree() != j - 1)
    throw domain_error("xi needs degrees j and j-1");
  HomValue hv;
  hv.plain = beta + exterior_derivative(alpha);
  hv.dpart = (j - 1) % 2 == 0 ? alpha : -alpha;
  hv.normalize();
  return hv;
}

std::map<int, ResidueForm> koszul_partial(const DiffForm& w, int n) {
  if (!pole_membership(w, n, PoleMode::plain))
    throw domain_error("form exceeds the stated pole order");
  std::map<int, ResidueForm> out;
  const CtxPtr& ctx = w.ctx();
  int j = w.degree();
  for (auto& [m, f] : w.terms()) {
    Poly g = f.coeff(-n);
    if (g.is_zero()) continue;
    int s = 0;
    for (int b : mask_bits(m)) {
      ++s;
      Mask rest = m & ~(Mask{1} << b);
      if (rest & 1u) continue;  // leftover dt factor dies on the divisor
      auto [it, fresh] = out.try_emplace(b, ResidueForm(ctx, j - 1));
      it->second.add_term(rest, s % 2 == 1 ? g : -g);
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

CharForm charform_omega(const DiffForm& w, int n, int p) {
  const CtxPtr& ctx = w.ctx();
  if (!ctx) throw internal_error("form without context");
  if (ctx->characteristic() != p)
    throw input_error("characteristic does not match the form's field");
  if (n < 2) throw domain_error("characteristic forms need level >= 2");
  int j = w.degree();
  if (j < 1) throw domain_error("characteristic forms need degree >= 1");
  if (!omega_fas_member(w, n, p))
    throw domain_error("form is not a level-n member");

  auto dcontr = koszul_partial(exterior_derivative(w), n);
  auto contr = koszul_partial(w, n);

  CharForm cf(ctx, n, j);
  ResidueForm zero_j(ctx, j), zero_jm1(ctx, j - 1);
  for (int idx = 0; idx <= static_cast<int>(ctx->arity()); ++idx) {
    auto a = dcontr.find(idx);
    auto b = contr.find(idx);
    if (a == dcontr.end() && b == contr.end()) continue;
    cf.entry(idx) = xi(a == dcontr.end() ? zero_j : a->second,
                       b == contr.end() ? zero_jm1 : b->second);
  }

  if (n == 2 && p == 2) {
    // dt-entry Frobenius part: the divisor residue of t^2 w.
    ResidueForm res(ctx, j);
    for (auto& [m, f] : w.terms()) {
      if (m & 1u) continue;
      res.add_term(m, f.coeff(-2));
    }
    if (!res.is_zero()) {
      auto& fr = cf.entry(0).frob[1];
      fr = fr.degree() == j ? fr + res : res;
    }
  }

  cf.prune();
  return cf;
}

std::pair<std::map<int, ResidueForm>, std::map<int, ResidueForm>>
diagonal_decomposition(const ResidueForm& beta) {
  std::map<int, ResidueForm> gammas, deltas;
  const CtxPtr& ctx = beta.ctx();
  int j = beta.degree();
  std::size_t nvars = ctx ? ctx->arity() : 0;
  for (auto& [m, f] : beta.terms()) {
    int s = 0;
    for (int b : mask_bits(m)) {
      ++s;
      auto [it, fresh] = gammas.try_emplace(b, ResidueForm(ctx, j - 1));
      it->second.add_term(m & ~(Mask{1} << b), (j - s) % 2 == 0 ? f : -f);
    }
    for (std::size_t v = 0; v < nvars; ++v) {
      auto df = algebra::partial_derivative(f, v);
      if (df.is_zero()) continue;
      auto [it, fresh] =
          deltas.try_emplace(static_cast<int>(v) + 1, ResidueForm(ctx, j));
      it->second.add_term(m, df);
    }
  }
  auto clean = [](std::map<int, ResidueForm>& m) {
    for (auto it = m.begin(); it != m.end();)
      it = it->second.is_zero() ? m.erase(it) : std::next(it);
  };
  clean(gammas);
  clean(deltas);
  return {gammas, deltas};
}

}  // namespace ramif::forms
