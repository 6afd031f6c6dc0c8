#pragma once

#include <map>
#include <string>
#include <vector>

#include "ramif/char_form.hpp"
#include "ramif/diff_form.hpp"
#include "ramif/errors.hpp"
#include "ramif/laurent.hpp"

namespace ramif::witt {

using algebra::BigInt;
using algebra::CtxPtr;
using algebra::Poly;
using algebra::TLaurent;

// Universal polynomial with integer coefficients in a fixed number of formal
// component variables (the a_i's, then the b_i's for binary laws).
struct IntPoly {
  int nvars = 0;
  std::map<std::vector<int>, BigInt> terms;
};

// Sum/product/negation component polynomials for length-n p-typical vectors,
// derived once by ghost-component recursion over the integers.  Every
// division by p^i performed during the derivation is asserted exact.
struct WittLaws {
  int p = 0;
  int n = 0;
  std::vector<IntPoly> sum;   // 2n variables: a_0..a_{n-1}, b_0..b_{n-1}
  std::vector<IntPoly> prod;  // 2n variables
  std::vector<IntPoly> neg;   // n variables
};

// Cached per (p, n); lengths 1..4.
const WittLaws& witt_laws(int p, int n);

// Evaluate an IntPoly in any commutative ring: the ring is described by its
// add/mul/pow operations and a constant embed for big integers.
template <class T, class Add, class Mul, class Pow, class Cst>
T eval_int_poly(const IntPoly& f, const std::vector<T>& args, Add add,
                Mul mul, Pow pow, Cst cst) {
  if (static_cast<int>(args.size()) != f.nvars)
    throw internal_error("component count mismatch in law evaluation");
  std::vector<std::map<int, T>> powers(args.size());
  T acc = cst(BigInt(0));
  for (const auto& [e, c] : f.terms) {
    T term = cst(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = powers[i].find(e[i]);
      if (it == powers[i].end())
        it = powers[i].emplace(e[i], pow(args[i], e[i])).first;
      term = mul(term, it->second);
    }
    acc = add(acc, term);
  }
  return acc;
}

// Truncated p-typical Witt vector.  The component coefficients live in a
// context of characteristic p, or of characteristic 0 for ghost testing
// (the prime is then a formal parameter).
class WittVector {
 public:
  WittVector() = default;
  WittVector(CtxPtr ctx, int p, std::vector<TLaurent> components);
  static WittVector zero(const CtxPtr& ctx, int p, int n);

  const CtxPtr& ctx() const { return ctx_; }
  int prime() const { return p_; }
  int length() const { return static_cast<int>(comps_.size()); }
  const std::vector<TLaurent>& components() const { return comps_; }
  const TLaurent& component(int i) const;

  bool is_zero() const;
  bool operator==(const WittVector& o) const;
  bool operator!=(const WittVector& o) const { return !(*this == o); }
  std::string str() const;

 private:
  CtxPtr ctx_;
  int p_ = 0;
  std::vector<TLaurent> comps_;
};

enum class WittOp { add, sub, mul };

WittVector witt_arith(const WittVector& a, const WittVector& b, WittOp op);

// [x] = (x, 0, .., 0).  The prime defaults to the coefficient characteristic.
WittVector teichmuller(const TLaurent& x, int n, int p = 0);
// (a_0,..,a_{n-1}) -> (0, a_0, .., a_{n-2}) within fixed length.
WittVector verschiebung(const WittVector& a);
// j-th iterated absolute Frobenius: componentwise p^j-th power.
WittVector frobenius_witt(const WittVector& a, int j);

// Ghost components w_i(a) = sum_{k<=i} p^k a_k^{p^{i-k}}; char-0 mode only.
std::vector<TLaurent> ghost(const WittVector& a);

// p^{n-1-i} v(a_i) >= -r, with the bound raised to -r+1 at the single index
// i = n-1-min{n, ord_p(r)} (ord_p(0) = +inf, so r = 0 asks integrality).
bool matsuda_member(const WittVector& a, int r);
// Same family without the raised index.
bool bk_log_member(const WittVector& a, int r);
// Least r >= 0 with matsuda_member(a, r).
int matsuda_conductor(const WittVector& a);

// sum_i a_i^{p^{n-1-i}-1} da_i: the one-form controlling the level of a.
forms::DiffForm Fd(const WittVector& a);

// A vector presented as sum_j F^j(beta_j).
struct FDecomposedWitt {
  std::map<int, WittVector> parts;

  void validate() const;  // shared context/prime/length, j >= 0
  const WittVector& any() const;
};

// sum_j F^j(beta_j), evaluated.
WittVector recombine(const FDecomposedWitt& x);
// max_j matsuda_conductor(beta_j): an upper bound for the conductor of the
// recombined vector.
int decomposed_fsat_bound(const FDecomposedWitt& x);

// Characteristic form at level r >= 2 of sum_j F^j(beta_j) with every
// beta_j in the r-th Matsuda step: entry coefficients are residues of
// Fd(beta_j) twisted by p^j, attached to the F^j slot; over p = 2 at r = 2
// the dt entry additionally receives res(t^2 (beta_j)_{n-1})^{2^j} at slot
// j+1.
forms::CharForm charform_witt(const FDecomposedWitt& x, int r);

// Collapse every F^s symbol to 1 and drop the V-shift: entries become plain
// degree-0 divisor forms.
forms::CharForm charform_h1(const forms::CharForm& cf);

// Componentwise substitution x_i = phi_i(t).
WittVector restrict_to_curve_witt(const WittVector& a,
                                  const std::vector<TLaurent>& phi);

// Exact level-r membership in the F-saturated filtration, decided by the
// geometric oracle (defined alongside it).
bool fsat_member(const WittVector& a, int r);
// Least r >= 0 with fsat_member(a, r); bounded by matsuda_conductor.
int fsat_conductor(const WittVector& a);

}  // namespace ramif::witt
