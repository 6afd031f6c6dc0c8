#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramif/laurent.hpp"

namespace ramif::forms {

using algebra::Coef;
using algebra::CtxPtr;
using algebra::Poly;
using algebra::TLaurent;

// A wedge monomial over the 1-form basis dt, dx_1, .., dx_{d-1}, encoded as a
// bitmask: bit 0 is dt, bit i (i >= 1) is d of the (i-1)-th context variable.
using Mask = std::uint32_t;

int mask_size(Mask m);
// Indices of the set bits, ascending.
std::vector<int> mask_bits(Mask m);
// Wedge two sorted basis products; nullopt when they share a factor,
// otherwise the merged mask together with the permutation sign.
std::optional<std::pair<Mask, int>> mask_wedge(Mask a, Mask b);
// Sign picked up when a single extra factor b is inserted into sorted m.
int mask_insert_sign(int b, Mask m);

// Differential form over k[x_1..x_{d-1}]((t)) with truncated-Laurent
// coefficients on the basis above.
class DiffForm {
 public:
  DiffForm() = default;
  DiffForm(CtxPtr ctx, int degree);

  const CtxPtr& ctx() const { return ctx_; }
  int degree() const { return degree_; }
  const std::map<Mask, TLaurent>& terms() const { return terms_; }

  void add_term(Mask m, const TLaurent& c);
  bool is_zero() const { return terms_.empty(); }
  // Largest pole order over all coefficients (0 for the zero form).
  int pole_order() const;

  DiffForm operator+(const DiffForm& o) const;
  DiffForm operator-(const DiffForm& o) const;
  DiffForm operator-() const;
  DiffForm operator*(const Coef& c) const;
  DiffForm operator*(const TLaurent& c) const;
  bool operator==(const DiffForm& o) const;
  bool operator!=(const DiffForm& o) const { return !(*this == o); }

  std::string str() const;

 private:
  CtxPtr ctx_;
  int degree_ = 0;
  std::map<Mask, TLaurent> terms_;
};

// Form on the divisor D = {t = 0}: dt-free, t-free, polynomial coefficients.
// Degree -1 denotes the zero module (no terms can be added).
class ResidueForm {
 public:
  ResidueForm() = default;
  ResidueForm(CtxPtr ctx, int degree);

  const CtxPtr& ctx() const { return ctx_; }
  int degree() const { return degree_; }
  const std::map<Mask, Poly>& terms() const { return terms_; }

  void add_term(Mask m, const Poly& c);
  bool is_zero() const { return terms_.empty(); }

  ResidueForm operator+(const ResidueForm& o) const;
  ResidueForm operator-(const ResidueForm& o) const;
  ResidueForm operator-() const;
  ResidueForm operator*(const Coef& c) const;
  bool operator==(const ResidueForm& o) const;
  bool operator!=(const ResidueForm& o) const { return !(*this == o); }

  std::string str() const;

 private:
  CtxPtr ctx_;
  int degree_ = 0;
  std::map<Mask, Poly> terms_;
};

DiffForm exterior_derivative(const DiffForm& w);
ResidueForm exterior_derivative(const ResidueForm& w);
DiffForm wedge(const DiffForm& a, const DiffForm& b);
ResidueForm wedge(const ResidueForm& a, const ResidueForm& b);

enum class PoleMode { plain, log };

// plain: every coefficient has t-valuation >= -n.  log: writing
// w = eta ^ (dt/t) + rho with eta, rho dt-free, both must have
// valuation >= -(n-1); equivalently dt-carrying coefficients need
// valuation >= -n and the rest >= -(n-1).
bool pole_membership(const DiffForm& w, int n, PoleMode mode);

// Level-n membership: the plain pole condition when p > 0 divides n (or
// n = 0), the logarithmic one otherwise.
bool omega_fas_member(const DiffForm& w, int n, int p);

// Least n >= 0 at which omega_fas_member holds (0 = regular).
int omega_conductor(const DiffForm& w, int p);

// Substitute x_i = phi_i(t), dx_i = phi_i'(t) dt.  Every phi_i must have
// valuation >= 1; they share a target context (parameters of a curve).
DiffForm restrict_to_curve(const DiffForm& w, const std::vector<TLaurent>& phi);

}  // namespace ramif::forms
