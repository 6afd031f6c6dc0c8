#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ramif/char_form.hpp"
#include "ramif/witt.hpp"

namespace ramif::oracle {

using algebra::CtxPtr;
using algebra::Poly;
using algebra::TLaurent;

// Element of the level-n chart ring, stored as num * u^upow with
// u = (1 + tau t^{n-1})^{-1} the structural unit of the chart. Keeping u
// symbolic makes regularity readable off the numerator (u has t-valuation
// zero) and covers n = 1, where u admits no t-series expansion.
struct DilElem {
  TLaurent num;
  int upow = 0;
};

// Two-point chart of the level-n dilatation of the self-product along the
// diagonal of the divisor t = 0. Coordinates: base x_1..x_{d-1} plus fiber
// tau, tau_1..tau_{d-1}; the projections pull back as
//   p1: z -> t,            x_i -> x_i,
//   p2: z -> t + t^n tau,  x_i -> x_i + t^n tau_i.
// Immutable after construction; safe to share across threads.
class DilatationModel {
 public:
  DilatationModel(int p, int dim, int level, int max_pole,
                  int witt_length = 1, int extra_precision = 0);

  int characteristic() const { return p_; }
  int dimension() const { return d_; }
  int level() const { return n_; }
  int max_pole() const { return max_pole_; }
  int witt_length() const { return witt_length_; }
  // Working window for t-expansions; grows with the environment variable
  // RAMIF_PRECISION_GUARD and the extra_precision argument.
  int precision() const { return precision_; }

  const CtxPtr& base() const { return base_; }
  const CtxPtr& ambient() const { return ambient_; }

  std::size_t tau_var() const;       // ambient index of tau
  std::size_t tau_var(int i) const;  // ambient index of tau_i, 1 <= i < d

  // 1 + tau t^{n-1}, exact.
  const TLaurent& one_plus() const { return one_plus_; }
  // Series expansion of u within the working window; absent when n = 1.
  const std::optional<TLaurent>& unit() const { return unit_; }

  // Chart-ring arithmetic. Addition promotes both operands to a common
  // power of u by multiplying numerators with 1 + tau t^{n-1}.
  DilElem elem_add(const DilElem& a, const DilElem& b) const;
  DilElem elem_sub(const DilElem& a, const DilElem& b) const;
  DilElem elem_neg(const DilElem& a) const;
  DilElem elem_mul(const DilElem& a, const DilElem& b) const;
  DilElem elem_pow(const DilElem& a, long long e) const;
  bool elem_equal(const DilElem& a, const DilElem& b) const;

  // t-valuation of the element (u is a unit, so this is v(num)).
  int elem_valuation(const DilElem& a) const;
  bool elem_regular(const DilElem& a) const;
  // Value at t = 0 of a regular element; level >= 2 only (there u = 1 + O(t)).
  Poly elem_fiber(const DilElem& a) const;

  // Pullbacks of a scalar over the base context.
  DilElem pull_first(const TLaurent& a) const;
  DilElem pull_second(const TLaurent& a) const;

 private:
  void check_scalar(const TLaurent& a) const;

  int p_ = 0;
  int d_ = 1;
  int n_ = 1;
  int max_pole_ = 0;
  int witt_length_ = 1;
  int precision_ = 0;
  CtxPtr base_;
  CtxPtr ambient_;
  TLaurent one_plus_;
  std::optional<TLaurent> unit_;
};

DilatationModel build_model(int p, int dim, int level, int max_pole,
                            int witt_length = 1, int extra_precision = 0);

// Pulled-back differential form on the chart: wedge masks over
// dt, dx_1..dx_{d-1}, dtau, dtau_1..dtau_{d-1} (bit 0 = dt, bit 1 + i = d of
// ambient variable i), chart-ring coefficients.
struct AmbientForm {
  int degree = 0;
  std::map<forms::Mask, DilElem> terms;
};

// p2* a - p1* a on the chart, the membership witness.
DilElem delta(const TLaurent& f, const DilatationModel& m);
AmbientForm delta(const forms::DiffForm& w, const DilatationModel& m);
std::vector<DilElem> delta(const witt::WittVector& a, const DilatationModel& m);

// Level-n membership: every coefficient of delta is t-regular.
bool as_member(const TLaurent& f, const DilatationModel& m);
bool as_member(const forms::DiffForm& w, const DilatationModel& m);
bool as_member(const witt::WittVector& a, const DilatationModel& m);

// Restriction of delta to the exceptional fiber t = 0 with dt killed:
// polynomial coefficients in the ambient variables on the residual masks.
struct FiberForm {
  int degree = 0;
  std::map<forms::Mask, Poly> terms;
};

// Level >= 2 and a regular delta required.
FiberForm psi_extract(const AmbientForm& dw, const DilatationModel& m);
std::vector<Poly> psi_extract(const std::vector<DilElem>& da,
                              const DilatationModel& m);

// Fiber element sorted into the additive shapes. Form family: per pole index
// i (0 = tau / z-direction, i >= 1 = tau_i) the parts tau_i . beta ("plain",
// s = 0), alpha ^ dtau_i with dtau_i moved last ("alpha") and
// tau_i^{p^s} . beta for s >= 1 ("frob"). Witt family: the top component
// splits as sum tau_i^{p^s} c with the lower components zero, recorded per
// (i, s). Anything else is rejected as non-additive.
struct AdditiveElement {
  int degree = 0;       // form degree; 0 for the Witt family
  int witt_length = 0;  // 0 for the form family
  std::map<int, forms::ResidueForm> plain;
  std::map<int, forms::ResidueForm> alpha;
  std::map<std::pair<int, int>, forms::ResidueForm> frob;
  std::map<std::pair<int, int>, Poly> vparts;
};

AdditiveElement additive_decompose(const FiberForm& psi,
                                   const DilatationModel& m);
AdditiveElement additive_decompose(const std::vector<Poly>& psi,
                                   const DilatationModel& m);

// The comparison map into the characteristic-form module: plain parts land
// in entry i as divisor forms, alpha parts as the d-component, Frobenius
// shapes at their twist slot.
forms::CharForm chi(const AdditiveElement& e, const DilatationModel& m);

// Full geometric pipeline: delta, fiber restriction, decomposition, chi.
// Level >= 2; the input must be a level member.
forms::CharForm oracle_charform(const forms::DiffForm& w,
                                const DilatationModel& m);
forms::CharForm oracle_charform(const witt::WittVector& a,
                                const DilatationModel& m);

// Least level at which w becomes a member, decided geometrically (level 0
// checks regularity directly). Bounded by pole considerations.
int oracle_conductor(const forms::DiffForm& w, int p, int dim);

// Largest pole over the components (0 for integral vectors).
int witt_pole_order(const witt::WittVector& a);

}  // namespace ramif::oracle
