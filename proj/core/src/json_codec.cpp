#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ramif/errors.hpp"
#include "ramif/io.hpp"

namespace ramif::io {

using algebra::Coef;
using algebra::CtxPtr;
using algebra::Poly;
using algebra::Rational;
using algebra::TLaurent;
using forms::CharForm;
using forms::DiffForm;
using forms::Mask;
using forms::ResidueForm;
using json = nlohmann::ordered_json;

namespace {

json parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw input_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw input_error("document must be a JSON object");
  return j;
}

// Strict field screening: everything present must be allowed, everything
// required must be present.
void check_fields(const json& j, const std::vector<std::string>& required,
                  const std::vector<std::string>& optional = {}) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& r : required) known = known || key == r;
    for (const auto& o : optional) known = known || key == o;
    if (!known) throw input_error("unexpected field: " + key);
  }
  for (const auto& r : required)
    if (!j.contains(r)) throw input_error("missing field: " + r);
}

int int_field(const json& j, const char* name) {
  const json& v = j.at(name);
  if (!v.is_number_integer())
    throw input_error(std::string(name) + " must be an integer");
  return v.get<int>();
}

std::string expect_schema(const json& j, const std::string& kind) {
  if (!j.contains("schema") || !j.at("schema").is_string())
    throw input_error("document lacks a schema tag");
  std::string s = j.at("schema").get<std::string>();
  if (!kind.empty() && s != "ramif/" + kind + "/1")
    throw input_error("schema mismatch: expected ramif/" + kind +
                      "/1, got " + s);
  return s;
}

json header(const std::string& kind, const CtxPtr& ctx) {
  json j;
  j["schema"] = "ramif/" + kind + "/1";
  j["char"] = ctx->characteristic();
  j["vars"] = json::array();
  for (const auto& v : ctx->vars()) j["vars"].push_back(v);
  return j;
}

CtxPtr header_context(const json& j) {
  int p = int_field(j, "char");
  const json& vs = j.at("vars");
  if (!vs.is_array()) throw input_error("vars must be an array of names");
  std::vector<std::string> vars;
  for (const auto& v : vs) {
    if (!v.is_string()) throw input_error("vars must be an array of names");
    vars.push_back(v.get<std::string>());
  }
  return algebra::make_context(p, std::move(vars));
}

json coef_json(const Coef& c) {
  if (c.characteristic() > 0) return json(c.residue());
  return json(c.str());
}

Coef coef_from(const json& v, int p) {
  if (p > 0) {
    if (!v.is_number_integer())
      throw input_error("coefficients in characteristic p are integers");
    return Coef::integer(p, v.get<long long>());
  }
  if (v.is_number_integer()) return Coef::integer(0, v.get<long long>());
  if (v.is_string()) {
    try {
      return Coef::rational(Rational(v.get<std::string>()));
    } catch (const std::exception&) {
      throw input_error("malformed rational coefficient: " +
                        v.get<std::string>());
    }
  }
  throw input_error("rational coefficients are integers or \"n/d\" strings");
}

json poly_body(const Poly& f) {
  json terms = json::array();
  const CtxPtr& ctx = f.ctx();
  for (const auto& [e, c] : f.terms()) {
    json t;
    t["exponents"] = json::object();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t["exponents"][ctx->var(i)] = e[i];
    t["coef"] = coef_json(c);
    terms.push_back(std::move(t));
  }
  return terms;
}

Poly poly_from(const json& terms, const CtxPtr& ctx) {
  if (!terms.is_array()) throw input_error("polynomial terms must be an array");
  Poly f(ctx);
  std::set<Poly::Expo> seen;
  for (const auto& t : terms) {
    if (!t.is_object()) throw input_error("polynomial term must be an object");
    check_fields(t, {"exponents", "coef"});
    const json& es = t.at("exponents");
    if (!es.is_object()) throw input_error("exponents must be an object");
    Poly::Expo e(ctx->arity(), 0);
    for (const auto& [name, val] : es.items()) {
      auto idx = ctx->index_of(name);
      if (idx < 0) throw input_error("unknown variable: " + name);
      if (!val.is_number_integer() || val.get<int>() < 0)
        throw input_error("exponents must be nonnegative integers");
      e[static_cast<std::size_t>(idx)] = val.get<int>();
    }
    if (!seen.insert(e).second)
      throw input_error("duplicate monomial in polynomial");
    f.add_term(e, coef_from(t.at("coef"), ctx->characteristic()));
  }
  return f;
}

json laurent_body(const TLaurent& a) {
  json j;
  j["pole_bound"] = a.pole_bound();
  if (a.precision() == algebra::PREC_EXACT)
    j["precision"] = "exact";
  else
    j["precision"] = a.precision();
  json terms = json::array();
  for (const auto& [e, c] : a.terms()) {
    json t;
    t["t_exp"] = e;
    t["poly"] = poly_body(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

TLaurent laurent_from(const json& j, const CtxPtr& ctx) {
  if (!j.is_object()) throw input_error("series must be an object");
  check_fields(j, {"pole_bound", "precision", "terms"});
  int prec = algebra::PREC_EXACT;
  const json& pv = j.at("precision");
  if (pv.is_string()) {
    if (pv.get<std::string>() != "exact")
      throw input_error("precision is an integer or \"exact\"");
  } else if (pv.is_number_integer()) {
    prec = pv.get<int>();
    if (prec < 0) throw input_error("precision must be nonnegative");
  } else {
    throw input_error("precision is an integer or \"exact\"");
  }
  TLaurent a(ctx, prec);
  const json& terms = j.at("terms");
  if (!terms.is_array()) throw input_error("series terms must be an array");
  std::set<int> seen;
  for (const auto& t : terms) {
    if (!t.is_object()) throw input_error("series term must be an object");
    check_fields(t, {"t_exp", "poly"});
    int e = int_field(t, "t_exp");
    if (!seen.insert(e).second)
      throw input_error("duplicate series exponent");
    if (e >= prec) throw input_error("series term beyond its precision");
    a.add_term(e, poly_from(t.at("poly"), ctx));
  }
  int pb = int_field(j, "pole_bound");
  if (pb < a.pole_bound())
    throw input_error("declared pole bound is smaller than an actual pole");
  a.declare_pole_bound(pb);
  return a;
}

// Wedge-basis names: bit 0 is dt, bit i is d of the (i-1)-th variable.
std::string basis_name(int bit, const CtxPtr& ctx) {
  if (bit == 0) return "dt";
  return "d" + ctx->var(static_cast<std::size_t>(bit - 1));
}

int basis_bit(const std::string& name, const CtxPtr& ctx) {
  if (name == "dt") return 0;
  if (name.size() > 1 && name[0] == 'd') {
    auto idx = ctx->index_of(name.substr(1));
    if (idx >= 0) return static_cast<int>(idx) + 1;
  }
  throw input_error("unknown basis factor: " + name);
}

json mask_json(Mask m, const CtxPtr& ctx) {
  json b = json::array();
  for (int bit : forms::mask_bits(m)) b.push_back(basis_name(bit, ctx));
  return b;
}

Mask mask_from(const json& b, const CtxPtr& ctx, bool allow_dt) {
  if (!b.is_array()) throw input_error("basis must be an array of factors");
  Mask m = 0;
  int last = -1;
  for (const auto& v : b) {
    if (!v.is_string()) throw input_error("basis must be an array of factors");
    int bit = basis_bit(v.get<std::string>(), ctx);
    if (bit == 0 && !allow_dt)
      throw input_error("divisor forms cannot carry dt");
    if (bit <= last)
      throw input_error("basis factors must be strictly ascending");
    last = bit;
    m |= Mask{1} << bit;
  }
  return m;
}

json form_body(const DiffForm& w) {
  json j;
  j["degree"] = w.degree();
  json terms = json::array();
  for (const auto& [m, c] : w.terms()) {
    json t;
    t["basis"] = mask_json(m, w.ctx());
    t["coef"] = laurent_body(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

DiffForm form_from(const json& j, const CtxPtr& ctx) {
  int degree = int_field(j, "degree");
  DiffForm w(ctx, degree);
  const json& terms = j.at("terms");
  if (!terms.is_array()) throw input_error("form terms must be an array");
  std::set<Mask> seen;
  for (const auto& t : terms) {
    if (!t.is_object()) throw input_error("form term must be an object");
    check_fields(t, {"basis", "coef"});
    Mask m = mask_from(t.at("basis"), ctx, true);
    if (!seen.insert(m).second) throw input_error("duplicate basis monomial");
    w.add_term(m, laurent_from(t.at("coef"), ctx));
  }
  return w;
}

json residue_body(const ResidueForm& b) {
  json j;
  j["degree"] = b.degree();
  json terms = json::array();
  for (const auto& [m, c] : b.terms()) {
    json t;
    t["basis"] = mask_json(m, b.ctx());
    t["coef"] = poly_body(c);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

ResidueForm residue_from(const json& j, const CtxPtr& ctx) {
  if (!j.is_object()) throw input_error("divisor form must be an object");
  check_fields(j, {"degree", "terms"});
  int degree = int_field(j, "degree");
  ResidueForm b(ctx, degree);
  const json& terms = j.at("terms");
  if (!terms.is_array()) throw input_error("form terms must be an array");
  std::set<Mask> seen;
  for (const auto& t : terms) {
    if (!t.is_object()) throw input_error("form term must be an object");
    check_fields(t, {"basis", "coef"});
    Mask m = mask_from(t.at("basis"), ctx, false);
    if (!seen.insert(m).second) throw input_error("duplicate basis monomial");
    b.add_term(m, poly_from(t.at("coef"), ctx));
  }
  return b;
}

json charform_body(const CharForm& cf) {
  json j;
  j["level"] = cf.level();
  j["degree"] = cf.degree();
  j["witt_length"] = cf.witt_length();
  json entries = json::array();
  for (const auto& [index, hv] : cf.entries()) {
    json e;
    e["index"] = index;
    if (hv.plain) e["plain"] = residue_body(*hv.plain);
    if (hv.dpart) e["dpart"] = residue_body(*hv.dpart);
    if (!hv.frob.empty()) {
      json fr = json::array();
      for (const auto& [s, b] : hv.frob) {
        json f;
        f["s"] = s;
        f["form"] = residue_body(b);
        fr.push_back(std::move(f));
      }
      e["frob"] = std::move(fr);
    }
    if (!hv.vparts.empty()) {
      json vp = json::array();
      for (const auto& [s, c] : hv.vparts) {
        json f;
        f["s"] = s;
        f["coef"] = poly_body(c);
        vp.push_back(std::move(f));
      }
      e["vparts"] = std::move(vp);
    }
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j;
}

CharForm charform_from(const json& j, const CtxPtr& ctx) {
  CharForm cf(ctx, int_field(j, "level"), int_field(j, "degree"),
              int_field(j, "witt_length"));
  const json& entries = j.at("entries");
  if (!entries.is_array()) throw input_error("entries must be an array");
  std::set<int> seen;
  for (const auto& e : entries) {
    if (!e.is_object()) throw input_error("entry must be an object");
    check_fields(e, {"index"}, {"plain", "dpart", "frob", "vparts"});
    int index = int_field(e, "index");
    if (index < 0 || index > static_cast<int>(ctx->arity()))
      throw input_error("pole-basis index out of range");
    if (!seen.insert(index).second)
      throw input_error("duplicate characteristic-form entry");
    auto& hv = cf.entry(index);
    if (e.contains("plain")) hv.plain = residue_from(e.at("plain"), ctx);
    if (e.contains("dpart")) hv.dpart = residue_from(e.at("dpart"), ctx);
    if (e.contains("frob")) {
      const json& fr = e.at("frob");
      if (!fr.is_array()) throw input_error("frob must be an array");
      for (const auto& f : fr) {
        check_fields(f, {"s", "form"});
        int s = int_field(f, "s");
        if (!hv.frob.emplace(s, residue_from(f.at("form"), ctx)).second)
          throw input_error("duplicate twist exponent");
      }
    }
    if (e.contains("vparts")) {
      const json& vp = e.at("vparts");
      if (!vp.is_array()) throw input_error("vparts must be an array");
      for (const auto& f : vp) {
        check_fields(f, {"s", "coef"});
        int s = int_field(f, "s");
        if (!hv.vparts.emplace(s, poly_from(f.at("coef"), ctx)).second)
          throw input_error("duplicate twist exponent");
      }
    }
  }
  cf.prune();
  return cf;
}

json witt_body(const witt::WittVector& a) {
  json j;
  j["p"] = a.prime();
  j["n"] = a.length();
  json comps = json::array();
  for (const auto& c : a.components()) comps.push_back(laurent_body(c));
  j["components"] = std::move(comps);
  return j;
}

witt::WittVector witt_from(const json& j, const CtxPtr& ctx) {
  if (!j.is_object()) throw input_error("witt vector must be an object");
  check_fields(j, {"p", "n", "components"});
  int p = int_field(j, "p");
  if (ctx->characteristic() > 0 && p != ctx->characteristic())
    throw input_error("characteristic header disagrees with the prime");
  int n = int_field(j, "n");
  const json& comps = j.at("components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != n)
    throw input_error("component count disagrees with the declared length");
  std::vector<TLaurent> cs;
  for (const auto& c : comps) cs.push_back(laurent_from(c, ctx));
  return witt::WittVector(ctx, p, std::move(cs));
}

}  // namespace

std::string encode(const Poly& f) {
  if (!f.ctx()) throw input_error("cannot encode a value without context");
  json j = header("poly", f.ctx());
  j["terms"] = poly_body(f);
  return j.dump(2) + "\n";
}

std::string encode(const TLaurent& a) {
  if (!a.ctx()) throw input_error("cannot encode a value without context");
  json j = header("laurent", a.ctx());
  json body = laurent_body(a);
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  return j.dump(2) + "\n";
}

std::string encode(const DiffForm& w) {
  if (!w.ctx()) throw input_error("cannot encode a value without context");
  json j = header("form", w.ctx());
  json body = form_body(w);
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  return j.dump(2) + "\n";
}

std::string encode(const CharForm& cf) {
  if (!cf.ctx()) throw input_error("cannot encode a value without context");
  json j = header("charform", cf.ctx());
  json body = charform_body(cf);
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  return j.dump(2) + "\n";
}

std::string encode(const witt::WittVector& a) {
  if (!a.ctx()) throw input_error("cannot encode a value without context");
  json j = header("witt", a.ctx());
  json body = witt_body(a);
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  return j.dump(2) + "\n";
}

std::string encode(const witt::FDecomposedWitt& x) {
  x.validate();
  if (x.parts.empty()) throw input_error("cannot encode an empty decomposition");
  json j = header("decomposition", x.any().ctx());
  json parts = json::array();
  for (const auto& [jj, b] : x.parts) {
    json e;
    e["j"] = jj;
    e["witt"] = witt_body(b);
    parts.push_back(std::move(e));
  }
  j["parts"] = std::move(parts);
  return j.dump(2) + "\n";
}

Poly decode_poly(const std::string& text) {
  json j = parse_document(text);
  expect_schema(j, "poly");
  check_fields(j, {"schema", "char", "vars", "terms"});
  return poly_from(j.at("terms"), header_context(j));
}

TLaurent decode_laurent(const std::string& text) {
  json j = parse_document(text);
  expect_schema(j, "laurent");
  check_fields(j, {"schema", "char", "vars", "pole_bound", "precision",
                   "terms"});
  CtxPtr ctx = header_context(j);
  json body;
  body["pole_bound"] = j.at("pole_bound");
  body["precision"] = j.at("precision");
  body["terms"] = j.at("terms");
  return laurent_from(body, ctx);
}

DiffForm decode_form(const std::string& text) {
  json j = parse_document(text);
  expect_schema(j, "form");
  check_fields(j, {"schema", "char", "vars", "degree", "terms"});
  return form_from(j, header_context(j));
}

CharForm decode_charform(const std::string& text) {
  json j = parse_document(text);
  expect_schema(j, "charform");
  check_fields(j, {"schema", "char", "vars", "level", "degree", "witt_length",
                   "entries"});
  return charform_from(j, header_context(j));
}

witt::WittVector decode_witt(const std::string& text) {
  json j = parse_document(text);
  expect_schema(j, "witt");
  check_fields(j, {"schema", "char", "vars", "p", "n", "components"});
  CtxPtr ctx = header_context(j);
  json body;
  body["p"] = j.at("p");
  body["n"] = j.at("n");
  body["components"] = j.at("components");
  return witt_from(body, ctx);
}

witt::FDecomposedWitt decode_decomposition(const std::string& text) {
  json j = parse_document(text);
  expect_schema(j, "decomposition");
  check_fields(j, {"schema", "char", "vars", "parts"});
  CtxPtr ctx = header_context(j);
  const json& parts = j.at("parts");
  if (!parts.is_array()) throw input_error("parts must be an array");
  witt::FDecomposedWitt x;
  for (const auto& e : parts) {
    if (!e.is_object()) throw input_error("part must be an object");
    check_fields(e, {"j", "witt"});
    int jj = int_field(e, "j");
    if (jj < 0) throw input_error("twist exponents are nonnegative");
    if (!x.parts.emplace(jj, witt_from(e.at("witt"), ctx)).second)
      throw input_error("duplicate twist exponent");
  }
  x.validate();
  return x;
}

std::string document_kind(const std::string& text) {
  json j = parse_document(text);
  std::string s = expect_schema(j, "");
  for (const char* kind : {"poly", "laurent", "form", "charform", "witt",
                           "decomposition"})
    if (s == std::string("ramif/") + kind + "/1") return kind;
  throw input_error("unknown schema: " + s);
}

}  // namespace ramif::io
