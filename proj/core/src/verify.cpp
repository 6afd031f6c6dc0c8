#include "ramif/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <memory>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "ramif/errors.hpp"

namespace ramif::verify {

using algebra::Coef;
using algebra::make_context;
using algebra::model_context;
using algebra::Rational;
using forms::DiffForm;
using forms::Mask;
using forms::ResidueForm;
using oracle::DilatationModel;
using witt::FDecomposedWitt;
using witt::WittVector;

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::range(int lo, int hi) {
  if (lo > hi) throw internal_error("empty sampling range");
  std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
  return lo + static_cast<int>(next() % span);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  Rng g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  return g.next();
}

namespace {

Coef draw_coef(Rng& g, int p) {
  if (p > 0) return Coef::fp(p, g.range(0, p - 1));
  return Coef::rational(Rational(g.range(-9, 9)));
}

long long ipow_ll(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Every monomial with per-variable degree <= 2, unit coefficient.
std::vector<Poly> unit_monomials(const CtxPtr& ctx) {
  std::vector<Poly> out;
  Poly::Expo e(ctx->arity(), 0);
  for (;;) {
    out.push_back(Poly::monomial(ctx, e, Coef::one(ctx->characteristic())));
    std::size_t i = 0;
    while (i < e.size() && e[i] == 2) e[i++] = 0;
    if (i == e.size()) return out;
    ++e[i];
  }
}

}  // namespace

TLaurent sample_laurent(Rng& g, const CtxPtr& ctx, int max_pole,
                        int max_terms) {
  if (!ctx) throw input_error("sampler needs a context");
  TLaurent a(ctx);
  int nterms = g.range(1, std::max(1, max_terms));
  for (int k = 0; k < nterms; ++k) {
    int e = g.range(-max_pole, 3);
    Poly::Expo expo(ctx->arity());
    for (auto& x : expo) x = g.range(0, 2);
    Coef c = draw_coef(g, ctx->characteristic());
    if (!c.is_zero()) a.add_term(e, Poly::monomial(ctx, expo, c));
  }
  return a;
}

Poly sample_poly(Rng& g, const CtxPtr& ctx, int max_terms) {
  if (!ctx) throw input_error("sampler needs a context");
  Poly f(ctx);
  int nterms = g.range(1, std::max(1, max_terms));
  for (int k = 0; k < nterms; ++k) {
    Poly::Expo expo(ctx->arity());
    for (auto& x : expo) x = g.range(0, 2);
    Coef c = draw_coef(g, ctx->characteristic());
    if (!c.is_zero()) f.add_term(expo, c);
  }
  return f;
}

forms::DiffForm sample_form(Rng& g, const CtxPtr& ctx, int degree,
                            int max_pole) {
  DiffForm w(ctx, degree);
  int gens = 1 + static_cast<int>(ctx->arity());
  for (Mask m = 0; m < (1u << gens); ++m) {
    if (forms::mask_size(m) != degree) continue;
    TLaurent c = sample_laurent(g, ctx, max_pole, 2);
    if (!c.is_zero()) w.add_term(m, c);
  }
  return w;
}

forms::ResidueForm sample_residue(Rng& g, const CtxPtr& ctx, int degree) {
  ResidueForm b(ctx, degree);
  if (degree < 0) return b;
  int gens = 1 + static_cast<int>(ctx->arity());
  for (Mask m = 0; m < (1u << gens); ++m) {
    if (m & 1u) continue;  // dt does not restrict to the divisor
    if (forms::mask_size(m) != degree) continue;
    Poly c = sample_poly(g, ctx, 2);
    if (!c.is_zero()) b.add_term(m, c);
  }
  return b;
}

witt::WittVector sample_witt(Rng& g, const CtxPtr& ctx, int p, int length,
                             int max_pole) {
  std::vector<TLaurent> comps;
  comps.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i)
    comps.push_back(sample_laurent(g, ctx, max_pole, 2));
  return WittVector(ctx, p, std::move(comps));
}

witt::WittVector sample_witt_in_fil(Rng& g, const CtxPtr& ctx, int length,
                                    int r, int max_pole) {
  int p = ctx->characteristic();
  if (p <= 0)
    throw input_error("filtration sampling needs positive characteristic");
  if (r < 1) throw input_error("filtration sampling needs r >= 1");
  int m = 0;
  for (int rr = r; m < length && rr % p == 0; rr /= p) ++m;
  int special = length - 1 - m;  // -1 when the raise lands outside
  std::vector<TLaurent> comps;
  for (int i = 0; i < length; ++i) {
    long long q = ipow_ll(p, length - 1 - i);
    long long bound = (i == special ? r - 1 : r) / q;
    int pole = static_cast<int>(std::min<long long>(bound, max_pole));
    comps.push_back(sample_laurent(g, ctx, std::max(pole, 0), 2));
  }
  WittVector a(ctx, p, std::move(comps));
  if (!witt::matsuda_member(a, r))
    throw internal_error("filtration sampler missed its step");
  return a;
}

std::vector<forms::DiffForm> monomial_forms(const CtxPtr& ctx, int degree,
                                            int pole) {
  std::vector<DiffForm> out;
  out.emplace_back(ctx, degree);
  int gens = 1 + static_cast<int>(ctx->arity());
  auto monos = unit_monomials(ctx);
  for (Mask m = 0; m < (1u << gens); ++m) {
    if (forms::mask_size(m) != degree) continue;
    for (int e = -pole; e <= 0; ++e)
      for (const Poly& mono : monos) {
        DiffForm w(ctx, degree);
        w.add_term(m, TLaurent::from_poly(mono, e));
        out.push_back(std::move(w));
      }
  }
  return out;
}

std::vector<witt::WittVector> monomial_witts(const CtxPtr& ctx, int length,
                                             int pole) {
  int p = ctx->characteristic();
  std::vector<WittVector> out{WittVector::zero(ctx, p, length)};
  auto monos = unit_monomials(ctx);
  for (int i = 0; i < length; ++i)
    for (int e = -pole; e <= 0; ++e)
      for (const Poly& mono : monos) {
        std::vector<TLaurent> comps(static_cast<std::size_t>(length),
                                    TLaurent(ctx));
        comps[static_cast<std::size_t>(i)] = TLaurent::from_poly(mono, e);
        out.emplace_back(ctx, p, std::move(comps));
      }
  return out;
}

Suite suite_from_name(const std::string& name) {
  if (name == "fas") return Suite::fas;
  if (name == "charform") return Suite::charform;
  if (name == "kernel") return Suite::kernel;
  if (name == "witt") return Suite::witt;
  if (name == "bk") return Suite::bk;
  if (name == "topforms") return Suite::topforms;
  if (name == "algebra") return Suite::algebra;
  throw input_error("unknown suite: " + name);
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::fas: return "fas";
    case Suite::charform: return "charform";
    case Suite::kernel: return "kernel";
    case Suite::witt: return "witt";
    case Suite::bk: return "bk";
    case Suite::topforms: return "topforms";
    case Suite::algebra: return "algebra";
  }
  throw internal_error("unhandled suite tag");
}

void SuiteParams::validate(Suite s) const {
  if (p != 2 && p != 3 && p != 5)
    throw input_error("characteristic must be 2, 3, or 5");
  if (dim < 1 || dim > 2) throw input_error("dimension must be 1 or 2");
  if (degree < 0 || degree > dim)
    throw input_error("form degree out of range (0..dim)");
  bool needs_forms = s == Suite::fas || s == Suite::charform ||
                     s == Suite::kernel || s == Suite::algebra;
  if (needs_forms && degree < 1)
    throw input_error("form suites need degree >= 1");
  if (s == Suite::topforms && degree != dim)
    throw input_error("top-degree suite needs degree = dim");
  if (min_level < 1 || min_level > max_level || max_level > 6)
    throw input_error("level range out of bounds (1..6)");
  if (witt_length < 1 || witt_length > 3)
    throw input_error("witt length out of range (1..3)");
  if (max_pole < 1 || max_pole > 6)
    throw input_error("pole bound out of range (1..6)");
  if (trials < 0 || trials > 100000)
    throw input_error("trial count out of range (0..100000)");
  if (s == Suite::bk && dim != 2)
    throw input_error("curve suite needs a horizontal coordinate (dim = 2)");
}

std::string SuiteParams::str() const {
  std::ostringstream os;
  os << "p=" << p << " dim=" << dim << " degree=" << degree << " level="
     << min_level << ".." << max_level << " witt=" << witt_length
     << " pole=" << max_pole << " trials=" << trials;
  return os.str();
}

namespace {

struct Plan {
  std::string point;
  std::function<void(Rng&, std::vector<TrialRecord>&)> run;
};

std::string bs(bool b) { return b ? "true" : "false"; }

TrialRecord rec(std::string check, std::string input, std::string lhs,
                std::string rhs, bool pass, bool asserted = true) {
  TrialRecord r;
  r.check = std::move(check);
  r.input = std::move(input);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.pass = pass;
  r.asserted = asserted;
  return r;
}

std::string grid_label(const SuiteParams& pp, const char* key, int value) {
  std::ostringstream os;
  os << "p=" << pp.p << " dim=" << pp.dim << " degree=" << pp.degree
     << " witt=" << pp.witt_length << " " << key << "=" << value;
  return os.str();
}

using FormCheck =
    std::function<void(const DiffForm&, std::vector<TrialRecord>&)>;

// Monomial sweep at pole <= 3 followed by the random draws, all feeding the
// same per-level check.
void add_form_plans(std::vector<Plan>& plans, const SuiteParams& pp,
                    int degree, const std::string& point,
                    const FormCheck& chk) {
  CtxPtr ctx = model_context(pp.p, pp.dim);
  for (auto& w : monomial_forms(ctx, degree, std::min(3, pp.max_pole)))
    plans.push_back(
        {point, [w, chk](Rng&, std::vector<TrialRecord>& out) { chk(w, out); }});
  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, degree, mp = pp.max_pole, chk](
                                Rng& g, std::vector<TrialRecord>& out) {
                       chk(sample_form(g, ctx, degree, mp), out);
                     }});
}

void build_fas(std::vector<Plan>& plans, const SuiteParams& pp) {
  for (int n = pp.min_level; n <= pp.max_level; ++n) {
    auto model = std::make_shared<const DilatationModel>(
        oracle::build_model(pp.p, pp.dim, n, pp.max_pole));
    FormCheck chk = [model, n, p = pp.p](const DiffForm& w,
                                         std::vector<TrialRecord>& out) {
      bool geo = oracle::as_member(w, *model);
      bool alg = forms::omega_fas_member(w, n, p);
      out.push_back(rec("membership", w.str(), bs(geo), bs(alg), geo == alg));
    };
    add_form_plans(plans, pp, pp.degree, grid_label(pp, "n", n), chk);
  }
}

void build_charform(std::vector<Plan>& plans, const SuiteParams& pp) {
  for (int n = std::max(2, pp.min_level); n <= pp.max_level; ++n) {
    auto model = std::make_shared<const DilatationModel>(
        oracle::build_model(pp.p, pp.dim, n, pp.max_pole));
    FormCheck chk = [model, n, p = pp.p](const DiffForm& w,
                                         std::vector<TrialRecord>& out) {
      if (!forms::omega_fas_member(w, n, p)) return;
      auto geo = oracle::oracle_charform(w, *model);
      auto alg = forms::charform_omega(w, n, p);
      out.push_back(
          rec("charform", w.str(), geo.str(), alg.str(), geo == alg));
    };
    add_form_plans(plans, pp, pp.degree, grid_label(pp, "n", n), chk);
  }
}

void build_kernel(std::vector<Plan>& plans, const SuiteParams& pp) {
  for (int n = std::max(2, pp.min_level); n <= pp.max_level; ++n) {
    FormCheck chk = [n, p = pp.p](const DiffForm& w,
                                  std::vector<TrialRecord>& out) {
      if (!forms::omega_fas_member(w, n, p)) return;
      bool zero = forms::charform_omega(w, n, p).is_zero();
      bool below = forms::omega_fas_member(w, n - 1, p);
      out.push_back(rec("kernel", w.str(), bs(zero), bs(below), zero == below));
    };
    add_form_plans(plans, pp, pp.degree, grid_label(pp, "n", n), chk);
  }
}

void build_topforms(std::vector<Plan>& plans, const SuiteParams& pp) {
  for (int n = pp.min_level; n <= pp.max_level; ++n) {
    FormCheck chk = [n](const DiffForm& w, std::vector<TrialRecord>& out) {
      bool plain = forms::pole_membership(w, n, forms::PoleMode::plain);
      bool log = forms::pole_membership(w, n, forms::PoleMode::log);
      out.push_back(
          rec("top-collapse", w.str(), bs(plain), bs(log), plain == log));
    };
    add_form_plans(plans, pp, pp.dim, grid_label(pp, "n", n), chk);
  }
}

std::string decomposition_str(const FDecomposedWitt& x) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, b] : x.parts) {
    if (!first) os << " + ";
    os << "F^" << j << " " << b.str();
    first = false;
  }
  return os.str();
}

void build_witt(std::vector<Plan>& plans, const SuiteParams& pp) {
  CtxPtr ctx = model_context(pp.p, pp.dim);
  for (int r = std::max(1, pp.min_level); r <= pp.max_level; ++r) {
    auto run_one = [pp, r](const FDecomposedWitt& x,
                           std::vector<TrialRecord>& out) {
      std::string input = decomposition_str(x);
      WittVector a = witt::recombine(x);
      bool mem = witt::fsat_member(a, r);
      out.push_back(rec("membership", input, bs(mem), "true", mem));
      if (r < 2) return;
      auto model = oracle::build_model(pp.p, pp.dim, r,
                                       oracle::witt_pole_order(a),
                                       pp.witt_length);
      auto geo = oracle::oracle_charform(a, model);
      auto alg = witt::charform_witt(x, r);
      out.push_back(rec("charform", input, geo.str(), alg.str(), geo == alg));
      bool zero = alg.is_zero();
      bool below = witt::fsat_member(a, r - 1);
      out.push_back(rec("kernel", input, bs(zero), bs(below), zero == below));
    };
    std::string point = grid_label(pp, "r", r);
    for (auto& b : monomial_witts(ctx, pp.witt_length,
                                  std::min(3, pp.max_pole))) {
      if (!witt::matsuda_member(b, r)) continue;
      FDecomposedWitt x;
      x.parts.emplace(0, b);
      plans.push_back({point, [x, run_one](Rng&, std::vector<TrialRecord>& out) {
                         run_one(x, out);
                       }});
    }
    for (int k = 0; k < pp.trials; ++k)
      plans.push_back(
          {point, [ctx, pp, r, run_one](Rng& g, std::vector<TrialRecord>& out) {
             FDecomposedWitt x;
             int twist = g.range(0, 1);
             bool pair = g.range(0, 1) == 1;
             if (pair) {
               x.parts.emplace(
                   0, sample_witt_in_fil(g, ctx, pp.witt_length, r, pp.max_pole));
               x.parts.emplace(
                   1, sample_witt_in_fil(g, ctx, pp.witt_length, r, pp.max_pole));
             } else {
               x.parts.emplace(
                   twist,
                   sample_witt_in_fil(g, ctx, pp.witt_length, r, pp.max_pole));
             }
             run_one(x, out);
           }});
  }
}

void build_bk(std::vector<Plan>& plans, const SuiteParams& pp) {
  CtxPtr ctx = model_context(pp.p, pp.dim);
  CtxPtr curve = model_context(pp.p, 1);
  std::string point = grid_label(pp, "pole", pp.max_pole);
  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, curve, pp](Rng& g,
                                             std::vector<TrialRecord>& out) {
      WittVector a = sample_witt(g, ctx, pp.p, pp.witt_length, pp.max_pole);
      int cond = witt::fsat_conductor(a);
      TLaurent phi(curve);
      for (int i = 1; i <= 3; ++i) {
        Coef c = draw_coef(g, pp.p);
        if (!c.is_zero()) phi.add_term(i, Poly::constant(curve, c));
      }
      int scalar = 1 + g.range(0, pp.p - 2);
      int m = std::max(cond, 1) + g.range(0, 2);
      TLaurent bump = TLaurent::t_power(curve, m) * Coef::fp(pp.p, scalar);
      WittVector b1 = witt::restrict_to_curve_witt(a, {phi});
      WittVector b2 = witt::restrict_to_curve_witt(a, {phi + bump});
      int c1 = witt::fsat_conductor(b1);
      int c2 = witt::fsat_conductor(b2);
      std::string input = "a=" + a.str() + " phi=" + phi.str() +
                          " c=" + std::to_string(scalar) +
                          " m=" + std::to_string(m) +
                          " cond=" + std::to_string(cond);
      out.push_back(rec("restricted-conductor", input, std::to_string(c1),
                        std::to_string(c2), c1 == c2));
      if (cond >= 2) {
        // contact order one below the conductor: observed, not asserted
        TLaurent low = TLaurent::t_power(curve, cond - 1) *
                       Coef::fp(pp.p, scalar);
        int c3 =
            witt::fsat_conductor(witt::restrict_to_curve_witt(a, {phi + low}));
        out.push_back(rec("control-contact-below",
                          input + " m'=" + std::to_string(cond - 1),
                          std::to_string(c1), std::to_string(c3), c1 == c3,
                          false));
      }
    }});
}

void build_algebra(std::vector<Plan>& plans, const SuiteParams& pp) {
  CtxPtr ctx = model_context(pp.p, pp.dim);
  std::string point = grid_label(pp, "pole", pp.max_pole);

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, mp = pp.max_pole](
                                Rng& g, std::vector<TrialRecord>& out) {
      TLaurent a = sample_laurent(g, ctx, mp), b = sample_laurent(g, ctx, mp),
               c = sample_laurent(g, ctx, mp);
      std::string in = a.str() + " ; " + b.str() + " ; " + c.str();
      TLaurent l1 = (a + b) + c, r1 = a + (b + c);
      out.push_back(rec("series-assoc", in, l1.str(), r1.str(), l1 == r1));
      TLaurent l2 = a * b, r2 = b * a;
      out.push_back(rec("series-comm", in, l2.str(), r2.str(), l2 == r2));
      TLaurent l3 = a * (b + c), r3 = a * b + a * c;
      out.push_back(rec("series-dist", in, l3.str(), r3.str(), l3 == r3));
    }});

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx](Rng& g, std::vector<TrialRecord>& out) {
      Poly a = sample_poly(g, ctx), b = sample_poly(g, ctx),
           c = sample_poly(g, ctx);
      std::string in = a.str() + " ; " + b.str() + " ; " + c.str();
      Poly l1 = (a + b) + c, r1 = a + (b + c);
      out.push_back(rec("poly-assoc", in, l1.str(), r1.str(), l1 == r1));
      Poly l2 = a * b, r2 = b * a;
      out.push_back(rec("poly-comm", in, l2.str(), r2.str(), l2 == r2));
      Poly l3 = a * (b + c), r3 = a * b + a * c;
      out.push_back(rec("poly-dist", in, l3.str(), r3.str(), l3 == r3));
    }});

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      DiffForm w = sample_form(g, ctx, pp.degree, pp.max_pole);
      DiffForm dd = forms::exterior_derivative(forms::exterior_derivative(w));
      out.push_back(rec("dd-zero", w.str(), dd.str(), "0", dd.is_zero()));
    }});

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      DiffForm a = sample_form(g, ctx, 1, pp.max_pole);
      DiffForm b = sample_form(g, ctx, 1, pp.max_pole);
      DiffForm lhs = forms::exterior_derivative(forms::wedge(a, b));
      DiffForm rhs = forms::wedge(forms::exterior_derivative(a), b) -
                     forms::wedge(a, forms::exterior_derivative(b));
      out.push_back(rec("leibniz", a.str() + " ; " + b.str(), lhs.str(),
                        rhs.str(), lhs == rhs));
    }});

  plans.push_back({point, [ctx, pp](Rng&, std::vector<TrialRecord>& out) {
    ResidueForm beta(ctx, pp.degree), alpha(ctx, pp.degree - 1);
    bool zero = forms::xi(beta, alpha).is_zero();
    out.push_back(rec("xi-injective", "0 ; 0", bs(zero), "true", zero));
  }});
  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      ResidueForm beta = sample_residue(g, ctx, pp.degree);
      ResidueForm alpha = sample_residue(g, ctx, pp.degree - 1);
      bool zero = forms::xi(beta, alpha).is_zero();
      bool args_zero = beta.is_zero() && alpha.is_zero();
      out.push_back(rec("xi-injective", beta.str() + " ; " + alpha.str(),
                        zero ? "0" : "nonzero",
                        args_zero ? "zero arguments" : "nonzero arguments",
                        zero == args_zero));
    }});

  plans.push_back({point, [ctx, pp](Rng&, std::vector<TrialRecord>& out) {
    ResidueForm beta(ctx, pp.degree);
    auto [gs, ds] = forms::diagonal_decomposition(beta);
    bool allz = true;
    for (auto& [i, gi] : gs) allz = allz && gi.is_zero();
    out.push_back(rec("diagonal-nonvanishing", "0", bs(allz), "true", allz));
  }});
  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      ResidueForm beta = sample_residue(g, ctx, pp.degree);
      auto [gs, ds] = forms::diagonal_decomposition(beta);
      bool allz = true;
      for (auto& [i, gi] : gs) allz = allz && gi.is_zero();
      out.push_back(rec("diagonal-nonvanishing", beta.str(),
                        allz ? "0" : "nonzero",
                        beta.is_zero() ? "0" : "nonzero",
                        allz == beta.is_zero()));
    }});

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      WittVector a = sample_witt(g, ctx, pp.p, pp.witt_length, pp.max_pole);
      for (int r = 1; r <= pp.max_level; ++r) {
        bool lo = witt::bk_log_member(a, r - 1);
        bool mid = witt::matsuda_member(a, r);
        bool hi = witt::bk_log_member(a, r);
        bool ok = (!lo || mid) && (!mid || hi);
        out.push_back(rec("filtration-sandwich",
                          a.str() + " r=" + std::to_string(r),
                          "bk(r-1)=" + bs(lo) + " matsuda(r)=" + bs(mid),
                          "matsuda(r)=" + bs(mid) + " bk(r)=" + bs(hi), ok));
      }
    }});

  for (int n = pp.min_level; n < pp.max_level; ++n) {
    auto lower = std::make_shared<const DilatationModel>(
        oracle::build_model(pp.p, pp.dim, n, pp.max_pole));
    auto upper = std::make_shared<const DilatationModel>(
        oracle::build_model(pp.p, pp.dim, n + 1, pp.max_pole));
    std::string mpoint = grid_label(pp, "n", n);
    for (int k = 0; k < pp.trials; ++k)
      plans.push_back({mpoint, [ctx, pp, lower, upper](
                                   Rng& g, std::vector<TrialRecord>& out) {
        DiffForm w = sample_form(g, ctx, pp.degree, pp.max_pole);
        bool at_n = oracle::as_member(w, *lower);
        bool above = oracle::as_member(w, *upper);
        out.push_back(rec("membership-monotone", w.str(), bs(at_n), bs(above),
                          !at_n || above));
      }});
  }

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      WittVector a = sample_witt(g, ctx, pp.p, pp.witt_length, pp.max_pole);
      WittVector lhs = witt::frobenius_witt(witt::verschiebung(a), 1);
      WittVector rhs = WittVector::zero(ctx, pp.p, pp.witt_length);
      for (int i = 0; i < pp.p; ++i)
        rhs = witt::witt_arith(rhs, a, witt::WittOp::add);
      out.push_back(
          rec("witt-fv-law", a.str(), lhs.str(), rhs.str(), lhs == rhs));
    }});

  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [ctx, pp](Rng& g, std::vector<TrialRecord>& out) {
      WittVector a = sample_witt(g, ctx, pp.p, pp.witt_length, pp.max_pole);
      WittVector b = sample_witt(g, ctx, pp.p, pp.witt_length, pp.max_pole);
      WittVector lhs = witt::verschiebung(
          witt::witt_arith(witt::frobenius_witt(a, 1), b, witt::WittOp::mul));
      WittVector rhs =
          witt::witt_arith(a, witt::verschiebung(b), witt::WittOp::mul);
      out.push_back(rec("witt-projection-law", a.str() + " ; " + b.str(),
                        lhs.str(), rhs.str(), lhs == rhs));
    }});

  CtxPtr rational_ctx = make_context(0, {"u", "v"});
  int ghost_len = std::min(pp.witt_length, 3);
  for (int k = 0; k < pp.trials; ++k)
    plans.push_back({point, [rational_ctx, pp, ghost_len](
                                Rng& g, std::vector<TrialRecord>& out) {
      WittVector a = sample_witt(g, rational_ctx, pp.p, ghost_len, 2);
      WittVector b = sample_witt(g, rational_ctx, pp.p, ghost_len, 2);
      auto ga = witt::ghost(a), gb = witt::ghost(b);
      auto gsum = witt::ghost(witt::witt_arith(a, b, witt::WittOp::add));
      auto gprod = witt::ghost(witt::witt_arith(a, b, witt::WittOp::mul));
      bool add_ok = true, mul_ok = true;
      for (int i = 0; i < ghost_len; ++i) {
        add_ok = add_ok && gsum[static_cast<std::size_t>(i)] ==
                               ga[static_cast<std::size_t>(i)] +
                                   gb[static_cast<std::size_t>(i)];
        mul_ok = mul_ok && gprod[static_cast<std::size_t>(i)] ==
                               ga[static_cast<std::size_t>(i)] *
                                   gb[static_cast<std::size_t>(i)];
      }
      std::string in = a.str() + " ; " + b.str();
      out.push_back(rec("ghost-additive", in, bs(add_ok), "true", add_ok));
      out.push_back(rec("ghost-multiplicative", in, bs(mul_ok), "true",
                        mul_ok));
    }});
}

std::vector<Plan> build_plans(Suite s, const SuiteParams& pp) {
  std::vector<Plan> plans;
  switch (s) {
    case Suite::fas: build_fas(plans, pp); break;
    case Suite::charform: build_charform(plans, pp); break;
    case Suite::kernel: build_kernel(plans, pp); break;
    case Suite::witt: build_witt(plans, pp); break;
    case Suite::bk: build_bk(plans, pp); break;
    case Suite::topforms: build_topforms(plans, pp); break;
    case Suite::algebra: build_algebra(plans, pp); break;
  }
  return plans;
}

SuiteReport execute(Suite s, const SuiteParams& pp, std::uint64_t seed,
                    const std::uint64_t* only,
                    std::vector<TrialRecord>* sink) {
  pp.validate(s);
  std::vector<Plan> plans = build_plans(s, pp);
  SuiteReport rep;
  rep.suite = suite_name(s);
  rep.params = pp.str();
  rep.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < plans.size(); ++i) {
    if (only && *only != i) continue;
    Rng g(trial_seed(seed, i));
    std::vector<TrialRecord> recs;
    try {
      plans[i].run(g, recs);
    } catch (const std::exception& e) {
      recs.push_back(rec("exception", "", "", e.what(), false));
    }
    for (TrialRecord& r : recs) {
      r.index = i;
      r.subseed = trial_seed(seed, i);
      if (r.point.empty()) r.point = plans[i].point;
      if (sink) sink->push_back(r);
      if (!r.asserted) {
        rep.controls.push_back(r);
        continue;
      }
      ++rep.attempted;
      if (r.pass)
        ++rep.passed;
      else
        rep.failures.push_back(r);
    }
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  return rep;
}

nlohmann::ordered_json record_json(const TrialRecord& r) {
  nlohmann::ordered_json j;
  j["index"] = r.index;
  j["subseed"] = r.subseed;
  j["point"] = r.point;
  j["check"] = r.check;
  j["input"] = r.input;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["pass"] = r.pass;
  j["asserted"] = r.asserted;
  return j;
}

}  // namespace

std::string SuiteReport::json() const {
  nlohmann::ordered_json j;
  j["schema"] = "ramif-report/1";
  j["suite"] = suite;
  j["params"] = params;
  j["seed"] = seed;
  j["attempted"] = attempted;
  j["passed"] = passed;
  j["failed"] = attempted - passed;
  j["failures"] = nlohmann::ordered_json::array();
  for (const TrialRecord& r : failures) j["failures"].push_back(record_json(r));
  j["controls"] = nlohmann::ordered_json::array();
  for (const TrialRecord& r : controls) j["controls"].push_back(record_json(r));
  return j.dump(2) + "\n";
}

SuiteReport run_suite(Suite s, const SuiteParams& params, std::uint64_t seed) {
  return execute(s, params, seed, nullptr, nullptr);
}

std::vector<TrialRecord> replay_trial(Suite s, const SuiteParams& params,
                                      std::uint64_t seed, std::uint64_t index) {
  std::vector<TrialRecord> out;
  execute(s, params, seed, &index, &out);
  return out;
}

}  // namespace ramif::verify
