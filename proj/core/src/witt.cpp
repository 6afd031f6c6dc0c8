#include "ramif/witt.hpp"

#include <mutex>
#include <sstream>

#include "ramif/errors.hpp"

namespace ramif::witt {

using algebra::Coef;
using algebra::Rational;
using algebra::same_context;
using algebra::valuation;
using algebra::VAL_INF;

namespace {

long long ipow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Coef coef_from_big(int p, const BigInt& v) {
  if (p == 0) return Coef::rational(Rational(v));
  BigInt m = v % p;
  if (m < 0) m += p;
  return Coef::fp(p, m.convert_to<long long>());
}

IntPoly ip_zero(int nvars) { return IntPoly{nvars, {}}; }

IntPoly ip_var(int nvars, int idx, int e) {
  IntPoly f{nvars, {}};
  std::vector<int> expo(static_cast<std::size_t>(nvars), 0);
  expo[static_cast<std::size_t>(idx)] = e;
  f.terms.emplace(std::move(expo), BigInt(1));
  return f;
}

void ip_accumulate(IntPoly& a, const std::vector<int>& e, const BigInt& c) {
  auto [it, fresh] = a.terms.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) a.terms.erase(it);
  }
}

IntPoly ip_add(const IntPoly& a, const IntPoly& b) {
  IntPoly r = a;
  for (const auto& [e, c] : b.terms) ip_accumulate(r, e, c);
  return r;
}

IntPoly ip_scale(const IntPoly& a, const BigInt& k) {
  IntPoly r{a.nvars, {}};
  if (k == 0) return r;
  for (const auto& [e, c] : a.terms) r.terms.emplace(e, c * k);
  return r;
}

IntPoly ip_sub(const IntPoly& a, const IntPoly& b) {
  return ip_add(a, ip_scale(b, BigInt(-1)));
}

IntPoly ip_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r{a.nvars, {}};
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      ip_accumulate(r, e, ca * cb);
    }
  return r;
}

IntPoly ip_pow(const IntPoly& a, int e) {
  IntPoly acc{a.nvars, {}};
  acc.terms.emplace(std::vector<int>(static_cast<std::size_t>(a.nvars), 0),
                    BigInt(1));
  IntPoly base = a;
  while (e > 0) {
    if (e & 1) acc = ip_mul(acc, base);
    if (e >>= 1) base = ip_mul(base, base);
  }
  return acc;
}

IntPoly ip_divexact(const IntPoly& a, const BigInt& k) {
  IntPoly r{a.nvars, {}};
  for (const auto& [e, c] : a.terms) {
    if (c % k != 0)
      throw internal_error("inexact integer division in law derivation");
    r.terms.emplace(e, c / k);
  }
  return r;
}

// w_i over the block of components starting at `offset`.
IntPoly ghost_ip(int p, int i, int offset, int nvars) {
  IntPoly w = ip_zero(nvars);
  BigInt pk = 1;
  for (int k = 0; k <= i; ++k) {
    w = ip_add(w, ip_scale(ip_var(nvars, offset + k,
                                  static_cast<int>(ipow_ll(p, i - k))),
                           pk));
    pk *= p;
  }
  return w;
}

// Solve w_i(target) = rhs_i for target components, one ghost level at a time.
std::vector<IntPoly> solve_ghost(int p, int n, int nvars,
                                 const std::vector<IntPoly>& rhs) {
  std::vector<IntPoly> out;
  BigInt pi = 1;
  for (int i = 0; i < n; ++i) {
    IntPoly acc = rhs[static_cast<std::size_t>(i)];
    BigInt pk = 1;
    for (int k = 0; k < i; ++k) {
      acc = ip_sub(acc, ip_scale(ip_pow(out[static_cast<std::size_t>(k)],
                                        static_cast<int>(ipow_ll(p, i - k))),
                                 pk));
      pk *= p;
    }
    out.push_back(ip_divexact(acc, pi));
    pi *= p;
  }
  return out;
}

WittLaws build_laws(int p, int n) {
  WittLaws laws;
  laws.p = p;
  laws.n = n;
  int nv2 = 2 * n;
  std::vector<IntPoly> sum_rhs, prod_rhs, neg_rhs;
  for (int i = 0; i < n; ++i) {
    IntPoly wx = ghost_ip(p, i, 0, nv2);
    IntPoly wy = ghost_ip(p, i, n, nv2);
    sum_rhs.push_back(ip_add(wx, wy));
    prod_rhs.push_back(ip_mul(wx, wy));
    neg_rhs.push_back(ip_scale(ghost_ip(p, i, 0, n), BigInt(-1)));
  }
  laws.sum = solve_ghost(p, n, nv2, sum_rhs);
  laws.prod = solve_ghost(p, n, nv2, prod_rhs);
  laws.neg = solve_ghost(p, n, n, neg_rhs);
  return laws;
}

TLaurent eval_ip_laurent(const IntPoly& f, const std::vector<TLaurent>& args,
                         const CtxPtr& ctx, int p) {
  return eval_int_poly<TLaurent>(
      f, args, [](const TLaurent& a, const TLaurent& b) { return a + b; },
      [](const TLaurent& a, const TLaurent& b) { return a * b; },
      [](const TLaurent& a, int e) { return a.pow(e); },
      [&](const BigInt& c) {
        return TLaurent::from_poly(Poly::constant(ctx, coef_from_big(p, c)));
      });
}

void check_prime(int p) {
  if (p != 2 && p != 3 && p != 5 && p != 7)
    throw input_error("unsupported Witt prime " + std::to_string(p));
}

}  // namespace

const WittLaws& witt_laws(int p, int n) {
  check_prime(p);
  if (n < 1 || n > 4)
    throw input_error("Witt length must lie in 1..4");
  static std::mutex mu;
  static std::map<std::pair<int, int>, WittLaws> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({p, n});
  if (it == cache.end()) it = cache.emplace(std::make_pair(p, n), build_laws(p, n)).first;
  return it->second;
}

WittVector::WittVector(CtxPtr ctx, int p, std::vector<TLaurent> components)
    : ctx_(std::move(ctx)), p_(p), comps_(std::move(components)) {
  check_prime(p_);
  if (comps_.empty() || comps_.size() > 4)
    throw input_error("Witt length must lie in 1..4");
  if (!ctx_) throw internal_error("Witt vector without context");
  int c = ctx_->characteristic();
  if (c != 0 && c != p_)
    throw input_error("coefficient characteristic disagrees with the prime");
  for (const auto& a : comps_)
    if (!same_context(a.ctx(), ctx_))
      throw internal_error("Witt component context mismatch");
}

WittVector WittVector::zero(const CtxPtr& ctx, int p, int n) {
  std::vector<TLaurent> comps(
      static_cast<std::size_t>(n),
      TLaurent::constant(ctx, 0));
  return WittVector(ctx, p, std::move(comps));
}

const TLaurent& WittVector::component(int i) const {
  if (i < 0 || i >= length()) throw internal_error("component out of range");
  return comps_[static_cast<std::size_t>(i)];
}

bool WittVector::is_zero() const {
  for (const auto& a : comps_)
    if (!a.is_zero()) return false;
  return true;
}

bool WittVector::operator==(const WittVector& o) const {
  return same_context(ctx_, o.ctx_) && p_ == o.p_ && comps_ == o.comps_;
}

std::string WittVector::str() const {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < length(); ++i) {
    if (i) os << ", ";
    os << component(i).str();
  }
  os << ")";
  return os.str();
}

WittVector witt_arith(const WittVector& a, const WittVector& b, WittOp op) {
  if (!same_context(a.ctx(), b.ctx()) || a.prime() != b.prime() ||
      a.length() != b.length())
    throw input_error("Witt operands must share shape and context");
  int p = a.prime(), n = a.length();
  const WittLaws& laws = witt_laws(p, n);
  int charp = a.ctx()->characteristic();

  std::vector<TLaurent> bs = b.components();
  if (op == WittOp::sub) {
    std::vector<TLaurent> nb;
    for (int i = 0; i < n; ++i)
      nb.push_back(eval_ip_laurent(laws.neg[static_cast<std::size_t>(i)], bs,
                                   a.ctx(), charp));
    bs = std::move(nb);
  }

  std::vector<TLaurent> args = a.components();
  args.insert(args.end(), bs.begin(), bs.end());
  const auto& polys = (op == WittOp::mul) ? laws.prod : laws.sum;
  std::vector<TLaurent> out;
  for (int i = 0; i < n; ++i)
    out.push_back(eval_ip_laurent(polys[static_cast<std::size_t>(i)], args,
                                  a.ctx(), charp));
  return WittVector(a.ctx(), p, std::move(out));
}

WittVector teichmuller(const TLaurent& x, int n, int p) {
  if (p == 0) p = x.ctx()->characteristic();
  if (p == 0)
    throw input_error("teichmuller needs an explicit prime in characteristic 0");
  std::vector<TLaurent> comps(static_cast<std::size_t>(n),
                              TLaurent::constant(x.ctx(), 0));
  comps[0] = x;
  return WittVector(x.ctx(), p, std::move(comps));
}

WittVector verschiebung(const WittVector& a) {
  std::vector<TLaurent> comps = a.components();
  for (int i = a.length() - 1; i >= 1; --i)
    comps[static_cast<std::size_t>(i)] = comps[static_cast<std::size_t>(i - 1)];
  comps[0] = TLaurent::constant(a.ctx(), 0);
  return WittVector(a.ctx(), a.prime(), std::move(comps));
}

WittVector frobenius_witt(const WittVector& a, int j) {
  if (j < 0) throw input_error("negative Frobenius power");
  if (j == 0) return a;
  std::vector<TLaurent> comps;
  for (const auto& c : a.components())
    comps.push_back(algebra::frobenius_power(c, j));
  return WittVector(a.ctx(), a.prime(), std::move(comps));
}

std::vector<TLaurent> ghost(const WittVector& a) {
  if (a.ctx()->characteristic() != 0)
    throw domain_error("ghost components need a characteristic-0 context");
  int p = a.prime(), n = a.length();
  std::vector<TLaurent> out;
  for (int i = 0; i < n; ++i) {
    TLaurent w = TLaurent::constant(a.ctx(), 0);
    long long pk = 1;
    for (int k = 0; k <= i; ++k) {
      w = w + a.component(k).pow(static_cast<int>(ipow_ll(p, i - k))) *
                  Coef::integer(0, pk);
      pk *= p;
    }
    out.push_back(w);
  }
  return out;
}

namespace {

void check_modular(const WittVector& a) {
  if (a.ctx()->characteristic() == 0)
    throw domain_error("filtrations are defined in characteristic p");
}

// min{n, ord_p(r)} with ord_p(0) = +inf.
int special_depth(int p, int r, int n) {
  if (r == 0) return n;
  int m = 0;
  while (r % p == 0 && m < n) {
    ++m;
    r /= p;
  }
  return m;
}

}  // namespace

bool matsuda_member(const WittVector& a, int r) {
  if (r < 0) throw input_error("filtration index must be >= 0");
  check_modular(a);
  int p = a.prime(), n = a.length();
  int special = n - 1 - special_depth(p, r, n);
  for (int i = 0; i < n; ++i) {
    long long v = valuation(a.component(i));
    if (v == VAL_INF) continue;
    long long lhs = ipow_ll(p, n - 1 - i) * v;
    long long bound = (i == special) ? -static_cast<long long>(r) + 1
                                     : -static_cast<long long>(r);
    if (lhs < bound) return false;
  }
  return true;
}

bool bk_log_member(const WittVector& a, int r) {
  if (r < 0) throw input_error("filtration index must be >= 0");
  check_modular(a);
  int p = a.prime(), n = a.length();
  for (int i = 0; i < n; ++i) {
    long long v = valuation(a.component(i));
    if (v == VAL_INF) continue;
    if (ipow_ll(p, n - 1 - i) * v < -static_cast<long long>(r)) return false;
  }
  return true;
}

int matsuda_conductor(const WittVector& a) {
  check_modular(a);
  int p = a.prime(), n = a.length();
  long long worst = 0;
  for (int i = 0; i < n; ++i) {
    long long v = valuation(a.component(i));
    if (v == VAL_INF || v >= 0) continue;
    worst = std::max(worst, -ipow_ll(p, n - 1 - i) * v);
  }
  for (int r = 0; r <= worst + 1; ++r)
    if (matsuda_member(a, r)) return r;
  throw internal_error("conductor search passed its a-priori bound");
}

forms::DiffForm Fd(const WittVector& a) {
  check_modular(a);
  int p = a.prime(), n = a.length();
  forms::DiffForm out(a.ctx(), 1);
  for (int i = 0; i < n; ++i) {
    const TLaurent& ai = a.component(i);
    if (ai.is_zero()) continue;
    forms::DiffForm fi(a.ctx(), 0);
    fi.add_term(0, ai);
    auto dai = forms::exterior_derivative(fi);
    int e = static_cast<int>(ipow_ll(p, n - 1 - i)) - 1;
    out = out + dai * ai.pow(e);
  }
  return out;
}

void FDecomposedWitt::validate() const {
  if (parts.empty()) return;
  const WittVector& first = parts.begin()->second;
  for (const auto& [j, b] : parts) {
    if (j < 0) throw input_error("decomposition slots must be >= 0");
    if (!same_context(b.ctx(), first.ctx()) || b.prime() != first.prime() ||
        b.length() != first.length())
      throw input_error("decomposition parts must share shape and context");
  }
}

const WittVector& FDecomposedWitt::any() const {
  if (parts.empty()) throw internal_error("empty decomposition");
  return parts.begin()->second;
}

WittVector recombine(const FDecomposedWitt& x) {
  x.validate();
  if (x.parts.empty()) throw input_error("empty decomposition");
  const WittVector& first = x.any();
  WittVector acc = WittVector::zero(first.ctx(), first.prime(), first.length());
  for (const auto& [j, b] : x.parts)
    acc = witt_arith(acc, frobenius_witt(b, j), WittOp::add);
  return acc;
}

int decomposed_fsat_bound(const FDecomposedWitt& x) {
  x.validate();
  int r = 0;
  for (const auto& [j, b] : x.parts)
    r = std::max(r, matsuda_conductor(b));
  return r;
}

forms::CharForm charform_witt(const FDecomposedWitt& x, int r) {
  x.validate();
  if (x.parts.empty()) throw input_error("empty decomposition");
  if (r < 2) throw domain_error("characteristic forms need level >= 2");
  const WittVector& first = x.any();
  const CtxPtr& ctx = first.ctx();
  int p = first.prime(), n = first.length();

  forms::CharForm cf(ctx, r, 0, n);
  for (const auto& [j, b] : x.parts) {
    if (!matsuda_member(b, r))
      throw domain_error("decomposition part exceeds the stated level");
    auto w = Fd(b);
    if (!forms::pole_membership(w, r, forms::PoleMode::plain))
      throw internal_error("level bound violated by the derivative form");
    for (const auto& [m, f] : w.terms()) {
      Poly g = f.coeff(-r);
      if (g.is_zero()) continue;
      int idx = forms::mask_bits(m)[0];  // degree-1 masks are single bits
      auto& slot = cf.entry(idx).vparts;
      Poly tw = algebra::frobenius_power(g, j);
      auto [it, fresh] = slot.emplace(j, tw);
      if (!fresh) it->second = it->second + tw;
    }
    if (p == 2 && r == 2) {
      const TLaurent& top = b.component(n - 1);
      long long v = valuation(top);
      if (v != VAL_INF && v < -2)
        throw domain_error("residue term needs t^2 a_{n-1} regular");
      Poly alpha = top.coeff(-2);
      if (!alpha.is_zero()) {
        auto& slot = cf.entry(0).vparts;
        Poly tw = algebra::frobenius_power(alpha, j);
        auto [it, fresh] = slot.emplace(j + 1, tw);
        if (!fresh) it->second = it->second + tw;
      }
    }
  }
  cf.prune();
  return cf;
}

forms::CharForm charform_h1(const forms::CharForm& cf) {
  if (cf.degree() != 0)
    throw domain_error("H1 reduction applies to Witt-valued entries");
  forms::CharForm out(cf.ctx(), cf.level(), 0, 0);
  for (const auto& [idx, hv] : cf.entries()) {
    if (hv.plain || hv.dpart || !hv.frob.empty())
      throw domain_error("H1 reduction applies to Witt-valued entries");
    Poly acc = Poly::constant(cf.ctx(), 0);
    for (const auto& [s, c] : hv.vparts) acc = acc + c;
    if (acc.is_zero()) continue;
    forms::ResidueForm plain(cf.ctx(), 0);
    plain.add_term(0, acc);
    out.entry(idx).plain = plain;
  }
  out.prune();
  return out;
}

WittVector restrict_to_curve_witt(const WittVector& a,
                                  const std::vector<TLaurent>& phi) {
  if (phi.size() != a.ctx()->arity())
    throw input_error("curve needs one series per coordinate");
  CtxPtr target = phi.empty() ? a.ctx() : phi[0].ctx();
  if (target->characteristic() != a.ctx()->characteristic())
    throw input_error("curve characteristic mismatch");
  for (const auto& s : phi) {
    if (!same_context(s.ctx(), target))
      throw input_error("curve coordinates live in different contexts");
    long long v = valuation(s);
    if (v != VAL_INF && v < 1)
      throw input_error("curve coordinates must vanish at t = 0");
  }
  std::vector<TLaurent> comps;
  for (const auto& c : a.components())
    comps.push_back(algebra::substitute(c, phi));
  return WittVector(target, a.prime(), std::move(comps));
}

}  // namespace ramif::witt
