#include "ramif/dilatation.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "ramif/errors.hpp"

namespace ramif::oracle {

using algebra::BigInt;
using algebra::Coef;
using algebra::embed;
using algebra::make_context;
using algebra::model_context;
using algebra::Rational;
using algebra::same_context;
using algebra::valuation;
using forms::Mask;
using forms::mask_bits;
using forms::mask_size;
using forms::mask_wedge;

namespace {

int env_guard() {
  const char* s = std::getenv("RAMIF_PRECISION_GUARD");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 0 || v > 4096)
    throw input_error("RAMIF_PRECISION_GUARD must be an integer in 0..4096");
  return static_cast<int>(v);
}

TLaurent cap_to(const TLaurent& a, int window) {
  return a.precision() > window ? a.truncated(window) : a;
}

DilElem norm_elem(DilElem e) {
  if (e.num.is_zero()) e.upow = 0;
  return e;
}

}  // namespace

DilatationModel::DilatationModel(int p, int dim, int level, int max_pole,
                                 int witt_length, int extra_precision)
    : p_(p),
      d_(dim),
      n_(level),
      max_pole_(max_pole),
      witt_length_(witt_length) {
  if (dim < 1) throw input_error("dimension must be >= 1");
  if (level < 1) throw input_error("dilatation level must be >= 1");
  if (max_pole < 0) throw input_error("pole bound must be >= 0");
  if (witt_length < 1 || witt_length > 4)
    throw input_error("witt length out of range (1..4)");
  if (witt_length > 1 && p == 0)
    throw input_error("witt length > 1 needs positive characteristic");
  if (extra_precision < 0) throw input_error("extra precision must be >= 0");

  base_ = model_context(p, dim);  // validates the characteristic
  std::vector<std::string> vars(base_->vars());
  vars.push_back("tau");
  for (int i = 1; i < dim; ++i) vars.push_back("tau" + std::to_string(i));
  ambient_ = make_context(p, std::move(vars));

  long long scale = 1;
  for (int i = 1; i < witt_length; ++i) scale *= p;
  long long window = static_cast<long long>(level + 1) * max_pole * scale + 4;
  window += env_guard() + extra_precision;
  if (window > (1 << 20))
    throw input_error("precision window exceeds the supported range");
  precision_ = static_cast<int>(window);

  one_plus_ = TLaurent::constant(ambient_, 1);
  one_plus_.add_term(n_ - 1, Poly::var(ambient_, tau_var()));
  if (n_ >= 2) unit_ = algebra::unit_inverse(one_plus_.truncated(precision_));
}

std::size_t DilatationModel::tau_var() const {
  return static_cast<std::size_t>(d_ - 1);
}

std::size_t DilatationModel::tau_var(int i) const {
  if (i < 1 || i >= d_) throw internal_error("transverse index out of range");
  return static_cast<std::size_t>(d_ - 1 + i);
}

DilElem DilatationModel::elem_add(const DilElem& a, const DilElem& b) const {
  int k = std::max(a.upow, b.upow);
  auto raised = [&](const DilElem& e) {
    if (e.upow == k || e.num.is_zero()) return e.num;
    return cap_to(e.num * one_plus_.pow(k - e.upow), precision_);
  };
  return norm_elem({cap_to(raised(a) + raised(b), precision_), k});
}

DilElem DilatationModel::elem_sub(const DilElem& a, const DilElem& b) const {
  return elem_add(a, elem_neg(b));
}

DilElem DilatationModel::elem_neg(const DilElem& a) const {
  return {-a.num, a.upow};
}

DilElem DilatationModel::elem_mul(const DilElem& a, const DilElem& b) const {
  return norm_elem({cap_to(a.num * b.num, precision_), a.upow + b.upow});
}

DilElem DilatationModel::elem_pow(const DilElem& a, long long e) const {
  if (e < 0) throw internal_error("negative chart-ring exponent");
  return norm_elem(
      {cap_to(a.num.pow(e), precision_), a.upow * static_cast<int>(e)});
}

bool DilatationModel::elem_equal(const DilElem& a, const DilElem& b) const {
  return elem_sub(a, b).num.is_zero();
}

int DilatationModel::elem_valuation(const DilElem& a) const {
  return valuation(a.num);
}

bool DilatationModel::elem_regular(const DilElem& a) const {
  return a.num.pole_bound() == 0;
}

Poly DilatationModel::elem_fiber(const DilElem& a) const {
  if (n_ < 2) throw domain_error("fiber values need dilatation level >= 2");
  if (!elem_regular(a))
    throw domain_error("fiber value of a non-regular element");
  return a.num.coeff(0);
}

void DilatationModel::check_scalar(const TLaurent& a) const {
  if (!same_context(a.ctx(), base_))
    throw input_error("scalar is not over the model base");
  if (a.pole_bound() > max_pole_)
    throw input_error("pole order exceeds the model bound");
}

DilElem DilatationModel::pull_first(const TLaurent& a) const {
  check_scalar(a);
  return norm_elem({cap_to(embed(a, ambient_), precision_), 0});
}

DilElem DilatationModel::pull_second(const TLaurent& a) const {
  check_scalar(a);
  std::vector<TLaurent> images;
  images.reserve(base_->arity());
  for (std::size_t i = 0; i < base_->arity(); ++i) {
    TLaurent xi = TLaurent::from_poly(embed(Poly::var(base_, i), ambient_));
    xi.add_term(n_, Poly::var(ambient_, tau_var(static_cast<int>(i) + 1)));
    images.push_back(xi);
  }
  DilElem acc{TLaurent::constant(ambient_, 0), 0};
  for (const auto& [e, c] : a.terms()) {
    TLaurent coef = images.empty()
                        ? embed(TLaurent::from_poly(c), ambient_)
                        : algebra::substitute(TLaurent::from_poly(c), images);
    DilElem term;
    if (e >= 0)
      term = {cap_to(coef * one_plus_.pow(e).shifted(e), precision_), 0};
    else
      term = {cap_to(coef.shifted(e), precision_), -e};
    acc = elem_add(acc, term);
  }
  if (a.precision() < precision_) acc.num = acc.num.truncated(a.precision());
  return norm_elem(acc);
}

DilatationModel build_model(int p, int dim, int level, int max_pole,
                            int witt_length, int extra_precision) {
  return DilatationModel(p, dim, level, max_pole, witt_length,
                         extra_precision);
}

namespace {

void ambient_accum(const DilatationModel& m, AmbientForm& f, Mask mask,
                   const DilElem& e) {
  if (e.num.is_zero()) return;
  auto it = f.terms.find(mask);
  if (it == f.terms.end()) {
    f.terms.emplace(mask, e);
    return;
  }
  it->second = m.elem_add(it->second, e);
  if (it->second.num.is_zero()) f.terms.erase(it);
}

AmbientForm ambient_add(const DilatationModel& m, AmbientForm a,
                        const AmbientForm& b) {
  if (a.degree != b.degree) throw internal_error("ambient degree mismatch");
  for (const auto& [mask, e] : b.terms) ambient_accum(m, a, mask, e);
  return a;
}

AmbientForm ambient_wedge(const DilatationModel& m, const AmbientForm& a,
                          const AmbientForm& b) {
  AmbientForm r{a.degree + b.degree, {}};
  for (const auto& [ma, ea] : a.terms)
    for (const auto& [mb, eb] : b.terms) {
      auto w = mask_wedge(ma, mb);
      if (!w) continue;
      DilElem prod = m.elem_mul(ea, eb);
      if (w->second < 0) prod = m.elem_neg(prod);
      ambient_accum(m, r, w->first, prod);
    }
  return r;
}

// p2* of the basis 1-form at base mask bit b (0 = dt, b >= 1 = dx_b).
AmbientForm basis_second(const DilatationModel& m, int b) {
  const CtxPtr& amb = m.ambient();
  const int d = m.dimension();
  const int n = m.level();
  const Coef level_c = Coef::integer(m.characteristic(), n);
  AmbientForm r{1, {}};
  if (b == 0) {
    TLaurent lead = TLaurent::constant(amb, 1);
    lead.add_term(n - 1, Poly::var(amb, m.tau_var()) * level_c);
    ambient_accum(m, r, Mask{1}, DilElem{lead, 0});
    ambient_accum(m, r, Mask{1} << d, DilElem{TLaurent::t_power(amb, n), 0});
  } else {
    ambient_accum(m, r, Mask{1} << b,
                  DilElem{TLaurent::constant(amb, 1), 0});
    TLaurent mid =
        TLaurent::from_poly(Poly::var(amb, m.tau_var(b)) * level_c, n - 1);
    ambient_accum(m, r, Mask{1}, DilElem{mid, 0});
    ambient_accum(m, r, Mask{1} << (d + b),
                  DilElem{TLaurent::t_power(amb, n), 0});
  }
  return r;
}

}  // namespace

DilElem delta(const TLaurent& f, const DilatationModel& m) {
  return m.elem_sub(m.pull_second(f), m.pull_first(f));
}

AmbientForm delta(const forms::DiffForm& w, const DilatationModel& m) {
  if (!same_context(w.ctx(), m.base()))
    throw input_error("form is not over the model base");
  if (w.pole_order() > m.max_pole())
    throw input_error("pole order exceeds the model bound");
  AmbientForm out{w.degree(), {}};
  for (const auto& [mask, f] : w.terms()) {
    AmbientForm cur{0, {}};
    ambient_accum(m, cur, Mask{0}, m.pull_second(f));
    for (int b : mask_bits(mask)) cur = ambient_wedge(m, cur, basis_second(m, b));
    out = ambient_add(m, std::move(out), cur);
  }
  for (const auto& [mask, f] : w.terms())
    ambient_accum(m, out, mask, m.elem_neg(m.pull_first(f)));
  return out;
}

std::vector<DilElem> delta(const witt::WittVector& a,
                           const DilatationModel& m) {
  if (a.prime() != m.characteristic())
    throw input_error("witt prime differs from the model characteristic");
  if (a.length() != m.witt_length())
    throw input_error("witt length differs from the model");
  if (!same_context(a.ctx(), m.base()))
    throw input_error("vector is not over the model base");
  if (witt_pole_order(a) > m.max_pole())
    throw input_error("pole order exceeds the model bound");

  const int len = a.length();
  std::vector<DilElem> args, lifted;
  for (int i = 0; i < len; ++i) {
    args.push_back(m.pull_second(a.component(i)));
    lifted.push_back(m.pull_first(a.component(i)));
  }
  auto add = [&m](const DilElem& x, const DilElem& y) {
    return m.elem_add(x, y);
  };
  auto mul = [&m](const DilElem& x, const DilElem& y) {
    return m.elem_mul(x, y);
  };
  auto pw = [&m](const DilElem& x, int e) { return m.elem_pow(x, e); };
  auto cst = [&m](const BigInt& c) {
    Coef v;
    if (m.characteristic() == 0) {
      v = Coef::rational(Rational(c));
    } else {
      BigInt r = c % m.characteristic();
      if (r < 0) r += m.characteristic();
      v = Coef::fp(m.characteristic(), r.convert_to<long long>());
    }
    return DilElem{TLaurent::from_poly(Poly::constant(m.ambient(), v)), 0};
  };

  const auto& laws = witt::witt_laws(m.characteristic(), len);
  for (int i = 0; i < len; ++i)
    args.push_back(
        witt::eval_int_poly<DilElem>(laws.neg[i], lifted, add, mul, pw, cst));
  std::vector<DilElem> out;
  for (int i = 0; i < len; ++i)
    out.push_back(
        witt::eval_int_poly<DilElem>(laws.sum[i], args, add, mul, pw, cst));
  return out;
}

bool as_member(const TLaurent& f, const DilatationModel& m) {
  return m.elem_regular(delta(f, m));
}

bool as_member(const forms::DiffForm& w, const DilatationModel& m) {
  for (const auto& [mask, e] : delta(w, m).terms)
    if (!m.elem_regular(e)) return false;
  return true;
}

bool as_member(const witt::WittVector& a, const DilatationModel& m) {
  for (const auto& e : delta(a, m))
    if (!m.elem_regular(e)) return false;
  return true;
}

FiberForm psi_extract(const AmbientForm& dw, const DilatationModel& m) {
  if (m.level() < 2)
    throw domain_error("fiber restriction needs dilatation level >= 2");
  for (const auto& [mask, e] : dw.terms)
    if (!m.elem_regular(e))
      throw domain_error("fiber restriction of a non-member witness");
  FiberForm out{dw.degree, {}};
  for (const auto& [mask, e] : dw.terms) {
    if (mask & Mask{1}) continue;  // dt dies on the fiber
    Poly v = m.elem_fiber(e);
    if (!v.is_zero()) out.terms.emplace(mask, std::move(v));
  }
  return out;
}

std::vector<Poly> psi_extract(const std::vector<DilElem>& da,
                              const DilatationModel& m) {
  if (m.level() < 2)
    throw domain_error("fiber restriction needs dilatation level >= 2");
  for (const auto& e : da)
    if (!m.elem_regular(e))
      throw domain_error("fiber restriction of a non-member witness");
  std::vector<Poly> out;
  out.reserve(da.size());
  for (const auto& e : da) out.push_back(m.elem_fiber(e));
  return out;
}

namespace {

// Pole index and twist of a fiber monomial that must be a pure power of a
// single tau variable times a base monomial; nullopt flags non-additive.
struct TauShape {
  int index = 0;  // 0 = tau, i >= 1 = tau_i
  int twist = 0;  // the exponent is p^twist
};

std::optional<TauShape> tau_shape(const DilatationModel& m,
                                  const Poly::Expo& expo) {
  const std::size_t tau0 = m.tau_var();
  int which = -1;
  for (std::size_t v = tau0; v < expo.size(); ++v) {
    if (expo[v] == 0) continue;
    if (which >= 0) return std::nullopt;
    which = static_cast<int>(v);
  }
  if (which < 0) return std::nullopt;
  int e = expo[static_cast<std::size_t>(which)];
  int s = 0;
  const int p = m.characteristic();
  while (p > 1 && e % p == 0) {
    e /= p;
    ++s;
  }
  if (e != 1) return std::nullopt;
  return TauShape{which - static_cast<int>(tau0), s};
}

Poly base_part(const DilatationModel& m, const Poly::Expo& expo,
               const Coef& c) {
  Poly::Expo be(m.base()->arity(), 0);
  for (std::size_t i = 0; i < be.size(); ++i) be[i] = expo[i];
  return Poly::monomial(m.base(), std::move(be), c);
}

void add_part(const DilatationModel& m, forms::ResidueForm& slot, int degree,
              Mask mask, const Poly& mono) {
  if (!slot.ctx()) slot = forms::ResidueForm(m.base(), degree);
  slot.add_term(mask, mono);
}

}  // namespace

AdditiveElement additive_decompose(const FiberForm& psi,
                                   const DilatationModel& m) {
  AdditiveElement out;
  out.degree = psi.degree;
  const int d = m.dimension();
  const Mask base_bits = Mask{(1u << d) - 2u};
  for (const auto& [mask, f] : psi.terms) {
    if (mask & Mask{1}) throw internal_error("dt survived to the fiber");
    const Mask fiber_mask = mask & ~base_bits & ~Mask{1};
    const Mask bmask = mask & base_bits;
    if (fiber_mask == 0) {
      for (const auto& [expo, c] : f.terms()) {
        auto shape = tau_shape(m, expo);
        if (!shape) throw domain_error("non-additive term in the fiber");
        Poly mono = base_part(m, expo, c);
        auto& slot = shape->twist == 0
                         ? out.plain[shape->index]
                         : out.frob[{shape->index, shape->twist}];
        add_part(m, slot, psi.degree, bmask, mono);
      }
    } else if (mask_size(fiber_mask) == 1) {
      const int i = mask_bits(fiber_mask)[0] - d;
      for (const auto& [expo, c] : f.terms()) {
        for (std::size_t v = m.tau_var(); v < expo.size(); ++v)
          if (expo[v] != 0)
            throw domain_error("non-additive term in the fiber");
        add_part(m, out.alpha[i], psi.degree - 1, bmask,
                 base_part(m, expo, c));
      }
    } else {
      throw domain_error("non-additive term in the fiber");
    }
  }
  return out;
}

AdditiveElement additive_decompose(const std::vector<Poly>& psi,
                                   const DilatationModel& m) {
  if (psi.empty()) throw input_error("empty fiber vector");
  AdditiveElement out;
  out.witt_length = static_cast<int>(psi.size());
  for (std::size_t i = 0; i + 1 < psi.size(); ++i)
    if (!psi[i].is_zero())
      throw domain_error("non-additive term in the fiber");
  for (const auto& [expo, c] : psi.back().terms()) {
    auto shape = tau_shape(m, expo);
    if (!shape) throw domain_error("non-additive term in the fiber");
    Poly mono = base_part(m, expo, c);
    auto it = out.vparts.find({shape->index, shape->twist});
    if (it == out.vparts.end())
      out.vparts.emplace(std::make_pair(shape->index, shape->twist),
                         std::move(mono));
    else
      it->second = it->second + mono;
  }
  return out;
}

forms::CharForm chi(const AdditiveElement& e, const DilatationModel& m) {
  forms::CharForm cf(m.base(), m.level(), e.degree, e.witt_length);
  for (const auto& [i, rf] : e.plain) cf.entry(i).plain = rf;
  for (const auto& [i, rf] : e.alpha) cf.entry(i).dpart = rf;
  for (const auto& [key, rf] : e.frob) cf.entry(key.first).frob[key.second] = rf;
  for (const auto& [key, c] : e.vparts)
    cf.entry(key.first).vparts[key.second] = c;
  cf.prune();
  return cf;
}

forms::CharForm oracle_charform(const forms::DiffForm& w,
                                const DilatationModel& m) {
  if (m.level() < 2)
    throw domain_error("characteristic forms need level >= 2");
  if (w.degree() < 1)
    throw domain_error("degree >= 1 required; scalars go through the witt route");
  return chi(additive_decompose(psi_extract(delta(w, m), m), m), m);
}

forms::CharForm oracle_charform(const witt::WittVector& a,
                                const DilatationModel& m) {
  if (m.level() < 2)
    throw domain_error("characteristic forms need level >= 2");
  return chi(additive_decompose(psi_extract(delta(a, m), m), m), m);
}

int oracle_conductor(const forms::DiffForm& w, int p, int dim) {
  if (!w.ctx()) throw input_error("form without a context");
  if (w.ctx()->characteristic() != p)
    throw input_error("characteristic mismatch");
  if (static_cast<int>(w.ctx()->arity()) != dim - 1)
    throw input_error("dimension mismatch");
  const int pole = w.pole_order();
  if (pole == 0) return 0;
  for (int n = 1; n <= pole + 1; ++n)
    if (as_member(w, build_model(p, dim, n, pole))) return n;
  throw internal_error("membership search exceeded its a-priori bound");
}

int witt_pole_order(const witt::WittVector& a) {
  int worst = 0;
  for (const auto& c : a.components()) worst = std::max(worst, c.pole_bound());
  return worst;
}

}  // namespace ramif::oracle
