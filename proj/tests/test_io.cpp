#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "ramif/dilatation.hpp"
#include "ramif/errors.hpp"
#include "ramif/io.hpp"
#include "ramif/verify.hpp"

using namespace ramif;
using algebra::Coef;
using algebra::model_context;
using algebra::Poly;
using algebra::Rational;
using algebra::TLaurent;

TEST_CASE("polynomials and series round-trip, rationals included") {
  auto ctx = model_context(5, 2);
  verify::Rng g(3);
  for (int k = 0; k < 25; ++k) {
    Poly f = verify::sample_poly(g, ctx);
    CHECK(io::decode_poly(io::encode(f)) == f);
    TLaurent a = verify::sample_laurent(g, ctx, 4);
    CHECK(io::decode_laurent(io::encode(a)) == a);
  }

  auto ctx0 = algebra::make_context(0, {"u"});
  Poly q(ctx0);
  q.add_term({2}, Coef::rational(Rational(-3) / 4));
  q.add_term({0}, Coef::rational(Rational(7)));
  CHECK(io::decode_poly(io::encode(q)) == q);

  // a finite window and a declared (loose) pole bound both survive
  TLaurent w = TLaurent::t_power(ctx, -2, 5) * Coef::fp(5, 3);
  w.declare_pole_bound(4);
  TLaurent back = io::decode_laurent(io::encode(w));
  CHECK(back == w);
  CHECK(back.pole_bound() == 4);
  CHECK(back.precision() == 5);
}

TEST_CASE("forms round-trip with their wedge basis") {
  auto ctx = model_context(3, 2);
  verify::Rng g(8);
  for (int k = 0; k < 25; ++k)
    for (int degree = 1; degree <= 2; ++degree) {
      forms::DiffForm w = verify::sample_form(g, ctx, degree, 3);
      CHECK(io::decode_form(io::encode(w)) == w);
    }
  forms::DiffForm zero(ctx, 1);
  CHECK(io::decode_form(io::encode(zero)) == zero);
}

TEST_CASE("characteristic forms round-trip from both producers") {
  auto ctx = model_context(5, 2);
  forms::DiffForm w(ctx, 1);
  w.add_term(1u, TLaurent::from_poly(Poly::var(ctx, 0), -3));
  w.add_term(2u, TLaurent::from_poly(Poly::var(ctx, 0).pow(2), -2));
  auto cf = forms::charform_omega(w, 3, 5);
  CHECK(io::decode_charform(io::encode(cf)) == cf);

  // Witt-valued entries carry twist slots instead of divisor forms
  auto ctx2 = model_context(2, 2);
  witt::WittVector b(
      ctx2, 2, {TLaurent::from_poly(Poly::var(ctx2, 0), -2)});
  witt::FDecomposedWitt x;
  x.parts.emplace(0, b);
  auto cw = witt::charform_witt(x, 2);
  CHECK(io::decode_charform(io::encode(cw)) == cw);

  // and so does the geometric route's output
  auto m = oracle::build_model(2, 2, 2, 2, 1);
  auto geo = oracle::oracle_charform(witt::recombine(x), m);
  CHECK(io::decode_charform(io::encode(geo)) == geo);
  CHECK(geo == cw);
}

TEST_CASE("witt vectors and decompositions round-trip") {
  auto ctx = model_context(3, 2);
  verify::Rng g(12);
  for (int k = 0; k < 25; ++k) {
    auto a = verify::sample_witt(g, ctx, 3, 2, 4);
    CHECK(io::decode_witt(io::encode(a)) == a);
  }
  witt::FDecomposedWitt x;
  x.parts.emplace(0, verify::sample_witt(g, ctx, 3, 2, 3));
  x.parts.emplace(1, verify::sample_witt(g, ctx, 3, 2, 3));
  auto y = io::decode_decomposition(io::encode(x));
  CHECK(y.parts.size() == 2);
  CHECK(y.parts.at(0) == x.parts.at(0));
  CHECK(y.parts.at(1) == x.parts.at(1));

  // ghost-mode vectors keep the formal prime over characteristic zero
  auto ctx0 = algebra::make_context(0, {"u", "v"});
  auto z = verify::sample_witt(g, ctx0, 3, 2, 2);
  CHECK(io::decode_witt(io::encode(z)) == z);
}

TEST_CASE("document kinds are self-describing") {
  auto ctx = model_context(3, 2);
  CHECK(io::document_kind(io::encode(Poly::var(ctx, 0))) == "poly");
  CHECK(io::document_kind(io::encode(TLaurent::t_power(ctx, -1))) ==
        "laurent");
  forms::DiffForm w(ctx, 1);
  CHECK(io::document_kind(io::encode(w)) == "form");
  CHECK(io::document_kind(io::encode(witt::WittVector::zero(ctx, 3, 2))) ==
        "witt");
  CHECK_THROWS_AS(io::document_kind("{\"schema\":\"ramif/swan/1\"}"),
                  input_error);
  CHECK_THROWS_AS(io::document_kind("not json"), input_error);
}

TEST_CASE("strict screening rejects malformed documents") {
  auto ctx = model_context(3, 1);
  std::string good = io::encode(TLaurent::t_power(ctx, -1));
  auto j = nlohmann::ordered_json::parse(good);

  auto reject_laurent = [](nlohmann::ordered_json doc) {
    CHECK_THROWS_AS(io::decode_laurent(doc.dump()), input_error);
  };

  auto extra = j;
  extra["comment"] = "hand-edited";
  reject_laurent(extra);

  auto missing = j;
  missing.erase("precision");
  reject_laurent(missing);

  auto wrong_schema = j;
  wrong_schema["schema"] = "ramif/poly/1";
  reject_laurent(wrong_schema);

  auto bad_var = j;
  bad_var["terms"][0]["poly"][0]["exponents"]["y9"] = 1;
  reject_laurent(bad_var);

  auto dup = j;
  dup["terms"].push_back(j["terms"][0]);
  reject_laurent(dup);

  auto deep = j;
  deep["pole_bound"] = 0;  // the document has a genuine pole at t^-1
  reject_laurent(deep);

  // wrong characteristic header: the prime no longer matches
  std::string witt_doc = io::encode(witt::WittVector::zero(ctx, 3, 2));
  auto wj = nlohmann::ordered_json::parse(witt_doc);
  wj["char"] = 5;
  CHECK_THROWS_AS(io::decode_witt(wj.dump()), input_error);

  // fractional coefficients are rejected in characteristic p
  auto frac = j;
  frac["terms"][0]["poly"][0]["coef"] = "1/2";
  reject_laurent(frac);

  // out-of-order wedge factors would silently flip a sign
  forms::DiffForm w(model_context(3, 2), 2);
  w.add_term(3u, TLaurent::constant(model_context(3, 2), 1));
  auto fj = nlohmann::ordered_json::parse(io::encode(w));
  std::swap(fj["terms"][0]["basis"][0], fj["terms"][0]["basis"][1]);
  CHECK_THROWS_AS(io::decode_form(fj.dump()), input_error);
}
