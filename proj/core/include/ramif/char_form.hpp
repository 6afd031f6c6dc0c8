#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "ramif/diff_form.hpp"

namespace ramif::forms {

// Largest Frobenius twist exponent a characteristic form may carry.
inline constexpr int kMaxFrobExponent = 4;

// One entry of a characteristic form: an element of the formal direct sum
//   Omega^j_D  (+)  Omega^{j-1}_D . d  (+)  sum_s Omega^j_D . Frob^s
// plus, for Witt-valued inputs, scalar slots c -> V^{m}(c^{p^s}) F^s kept as
// the untwisted polynomial per s ("vparts").  Absent parts mean zero.
struct HomValue {
  std::optional<ResidueForm> plain;
  std::optional<ResidueForm> dpart;
  std::map<int, ResidueForm> frob;  // s >= 1
  std::map<int, Poly> vparts;       // s >= 0

  bool is_zero() const;
  void normalize();  // drop stored zeros so == is structural
  HomValue& operator+=(const HomValue& o);
  bool operator==(const HomValue& o) const;
  bool operator!=(const HomValue& o) const { return !(*this == o); }
  std::string str() const;
};

// Characteristic form at level n: a HomValue for each pole-basis index
// (0 = the dt/t^n line, i >= 1 = dx_i/t^n).
class CharForm {
 public:
  CharForm() = default;
  CharForm(CtxPtr ctx, int level, int degree, int witt_length = 0);

  const CtxPtr& ctx() const { return ctx_; }
  int level() const { return level_; }
  int degree() const { return degree_; }
  int witt_length() const { return witt_length_; }
  const std::map<int, HomValue>& entries() const { return entries_; }

  HomValue& entry(int index);
  void prune();
  bool is_zero() const { return entries_.empty(); }

  bool operator==(const CharForm& o) const;
  bool operator!=(const CharForm& o) const { return !(*this == o); }
  std::string str() const;

 private:
  CtxPtr ctx_;
  int level_ = 0;
  int degree_ = 0;
  int witt_length_ = 0;  // 0 for differential-form-valued entries
  std::map<int, HomValue> entries_;
};

// xi(beta, alpha) = (beta + d alpha) (+) (-1)^{j-1} alpha . d, the injective
// assembly map from pairs of divisor forms; degrees j and j-1.
HomValue xi(const ResidueForm& beta, const ResidueForm& alpha);

// Koszul-type contraction of w in Omega^j(nD): per pole-basis index i the
// degree (j-1) divisor form obtained by extracting that factor with its
// alternating sign, scaling by t^n, and restricting to t = 0.
std::map<int, ResidueForm> koszul_partial(const DiffForm& w, int n);

// Characteristic form of a level-n member (n >= 2, degree >= 1):
// entries are xi applied to the contractions of dw and w; over p = 2 at
// n = 2 the dt entry picks up a Frobenius part, the residue of t^2 w.
CharForm charform_omega(const DiffForm& w, int n, int p);

// Unique gamma/delta decomposition of a divisor form f dz_K against the
// diagonal sections: gamma_{nu_s} = (-1)^{j-s} f dz_{K minus nu_s},
// delta_i = (partial f / partial x_i) dz_K.
std::pair<std::map<int, ResidueForm>, std::map<int, ResidueForm>>
diagonal_decomposition(const ResidueForm& beta);

}  // namespace ramif::forms
