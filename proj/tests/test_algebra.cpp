#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <ramif/coef.hpp>
#include <ramif/errors.hpp>
#include <ramif/context.hpp>
#include <ramif/laurent.hpp>
#include <ramif/poly.hpp>

using namespace ramif;
using namespace ramif::algebra;

namespace {

CtxPtr ctx_fp(int p, std::vector<std::string> vars = {"x"}) {
  return make_context(p, std::move(vars));
}

Poly pvar(const CtxPtr& c, const std::string& name, int e = 1) {
  auto i = c->index_of(name);
  REQUIRE(i >= 0);
  return Poly::var(c, static_cast<std::size_t>(i), e);
}

}  // namespace

TEST_CASE("coefficient arithmetic stays in the prime field") {
  auto a = Coef::fp(5, 3), b = Coef::fp(5, 4);
  CHECK((a + b).residue() == 2);
  CHECK((a * b).residue() == 2);
  CHECK((-a).residue() == 2);
  CHECK(a.inverse().residue() == 2);  // 3*2 = 6 = 1 mod 5
  CHECK(a.pow(4).residue() == 1);     // Fermat
  CHECK_THROWS_AS(Coef::zero(5).inverse(), ramif::domain_error);
  CHECK_THROWS_AS(Coef::fp(4, 1), ramif::input_error);
}

TEST_CASE("rational coefficients are exact") {
  auto half = Coef::rational(Rational(1, 2));
  auto third = Coef::rational(Rational(1, 3));
  CHECK((half + third).rat() == Rational(5, 6));
  CHECK((half * third).rat() == Rational(1, 6));
  CHECK(half.inverse().rat() == Rational(2));
}

TEST_CASE("polynomial ring operations") {
  auto c = ctx_fp(3, {"x", "z"});
  auto x = pvar(c, "x"), z = pvar(c, "z");
  auto f = x * x + z;
  auto g = x - z;
  CHECK((f + g) - g == f);
  CHECK(f * g == g * f);
  CHECK((f + g) * g == f * g + g * g);
  CHECK(f.pow(3) == f * f * f);
  CHECK((f - f).is_zero());
}

TEST_CASE("partial derivatives use characteristic arithmetic") {
  auto q = make_context(0, {"x", "z"});
  auto f0 = pvar(q, "x", 2) * pvar(q, "z");
  auto d0 = partial_derivative(f0, 0);
  CHECK(d0 == pvar(q, "x") * pvar(q, "z") * Coef::integer(0, 2));

  auto c2 = ctx_fp(2);
  CHECK(partial_derivative(pvar(c2, "x", 2), 0).is_zero());

  auto c3 = ctx_fp(3, {"x", "y"});
  CHECK(partial_derivative(pvar(c3, "x", 3) * pvar(c3, "y"), 1) ==
        pvar(c3, "x", 3));
}

TEST_CASE("frobenius powers and p-th roots") {
  auto c2 = ctx_fp(2, {"x", "z"});
  auto f = pvar(c2, "x") + pvar(c2, "z");
  CHECK(frobenius_power(f, 1) == pvar(c2, "x", 2) + pvar(c2, "z", 2));

  auto c3 = ctx_fp(3, {"x", "z"});
  auto cube = pvar(c3, "x", 3) * pvar(c3, "z", 6);
  auto r = pth_root(cube);
  REQUIRE(r.has_value());
  CHECK(*r == pvar(c3, "x") * pvar(c3, "z", 2));
  CHECK_FALSE(pth_root(pvar(c3, "x", 2) * pvar(c3, "z", 3)).has_value());
  CHECK(pth_root(frobenius_power(cube + pvar(c3, "x"), 1)).value() ==
        cube + pvar(c3, "x"));
}

TEST_CASE("laurent valuation") {
  auto c = ctx_fp(5);
  auto a = TLaurent::t_power(c, -3) + TLaurent::t_power(c, 2);
  CHECK(valuation(a) == -3);
  CHECK(valuation(TLaurent::constant(c, 0)) == VAL_INF);
  CHECK(valuation(TLaurent::from_poly(pvar(c, "x"), 2)) == 2);
}

TEST_CASE("laurent arithmetic basics") {
  auto c = ctx_fp(2);
  auto x = pvar(c, "x");

  CHECK(laurent_arith(TLaurent::t_power(c, -1), TLaurent::t_power(c, 1),
                      LaurentOp::mul) == TLaurent::t_power(c, 0));

  auto xm2 = TLaurent::from_poly(x, -2);
  CHECK(laurent_arith(xm2, xm2, LaurentOp::add).is_zero());
}

TEST_CASE("unit inverse is the alternating geometric series") {
  auto c = ctx_fp(5, {"tau"});
  auto tau = pvar(c, "tau");
  auto one = TLaurent::t_power(c, 0);
  auto a = (one + TLaurent::from_poly(tau, 1)).truncated(4);
  auto inv = unit_inverse(a);
  CHECK(inv.precision() == 4);
  CHECK(inv.coeff(0) == Poly::constant(c, 1));
  CHECK(inv.coeff(1) == -tau);
  CHECK(inv.coeff(2) == tau * tau);
  CHECK(inv.coeff(3) == -(tau * tau * tau));
  CHECK_THROWS_AS(inv.coeff(4), ramif::precision_error);
  CHECK((a * inv).truncated(4) == one.truncated(4));
}

TEST_CASE("unit inverse rejects non-units") {
  auto c = ctx_fp(5, {"tau"});
  CHECK_THROWS_AS(unit_inverse(TLaurent::t_power(c, 1)), ramif::domain_error);
  CHECK_THROWS_AS(unit_inverse(TLaurent::from_poly(pvar(c, "tau"), 0)),
                  ramif::domain_error);
}

TEST_CASE("precision propagates through products") {
  auto c = ctx_fp(3);
  auto x = pvar(c, "x");
  auto a = TLaurent::from_poly(x, -2).truncated(5);   // x t^-2 + O(t^5)
  auto b = TLaurent::t_power(c, 3).truncated(7);      // t^3 + O(t^7)
  auto ab = a * b;
  // error terms: v(a)+7 = 5, v(b)+5 = 8, 5+7 = 12
  CHECK(ab.precision() == 5);
  CHECK(ab.coeff(1) == x);
  CHECK_THROWS_AS(ab.coeff(5), ramif::precision_error);

  // pole parts must never lose exactness: a product whose unknown tail would
  // reach into negative exponents is refused outright
  auto deep = TLaurent::t_power(c, -4) * TLaurent::t_power(c, 1).truncated(6);
  CHECK(deep.precision() == 2);
  CHECK(deep.coeff(-3) == Poly::constant(c, 1));
  CHECK_THROWS_AS(TLaurent::t_power(c, -4) *
                      TLaurent::t_power(c, 1).truncated(2),
                  ramif::precision_error);
}

TEST_CASE("exact values report no truncation") {
  auto c = ctx_fp(3);
  auto a = TLaurent::t_power(c, -1) + TLaurent::t_power(c, 4);
  CHECK(a.precision() == PREC_EXACT);
  CHECK(a.coeff(100) == Poly::constant(c, 0));
}

TEST_CASE("t derivative and coefficient derivatives") {
  auto c = ctx_fp(5);
  auto x = pvar(c, "x");
  auto a = TLaurent::from_poly(x, -3) + TLaurent::from_poly(x * x, 2);
  auto da = t_derivative(a);
  CHECK(da.coeff(-4) == x * Coef::integer(5, -3));
  CHECK(da.coeff(1) == x * x * Coef::integer(5, 2));
  auto dxa = coeff_derivative(a, 0);
  CHECK(dxa.coeff(-3) == Poly::constant(c, 1));
  CHECK(dxa.coeff(2) == x * Coef::integer(5, 2));
}

TEST_CASE("laurent frobenius and p-th root") {
  auto c = ctx_fp(2);
  auto x = pvar(c, "x");
  auto a = TLaurent::from_poly(x, -1) + TLaurent::t_power(c, 3);
  auto f = frobenius_power(a, 1);
  CHECK(f.coeff(-2) == x * x);
  CHECK(f.coeff(6) == Poly::constant(c, 1));
  auto r = pth_root(f);
  REQUIRE(r.has_value());
  CHECK(*r == a);
  CHECK_FALSE(pth_root(TLaurent::t_power(c, 1)).has_value());
}

TEST_CASE("substitution composes with arithmetic") {
  auto c = ctx_fp(5, {"x", "y"});
  auto target = ctx_fp(5, std::vector<std::string>{});
  auto phi_x = TLaurent::t_power(target, 1) + TLaurent::t_power(target, 2);
  auto phi_y = TLaurent::t_power(target, 3);
  std::vector<TLaurent> images{phi_x, phi_y};

  auto f = TLaurent::from_poly(pvar(c, "x") * pvar(c, "y"), -2);
  auto g = TLaurent::from_poly(pvar(c, "x"), 0);
  CHECK(substitute(f, images) + substitute(g, images) ==
        substitute(f + g, images));
  CHECK(substitute(f, images) * substitute(g, images) ==
        substitute(f * g, images));
  CHECK(substitute(f, images).coeff(2) == Poly::constant(target, 1));
}

TEST_CASE("ring axioms on sampled triples") {
  auto c = ctx_fp(7, {"x", "y"});
  auto x = pvar(c, "x"), y = pvar(c, "y");
  TLaurent a = TLaurent::from_poly(x, -2) + TLaurent::from_poly(y * y, 1);
  TLaurent b = TLaurent::t_power(c, -1) * Coef::fp(7, 3);
  TLaurent d = TLaurent::from_poly(x * y, 4) + TLaurent::t_power(c, 0);
  CHECK((a * b) * d == a * (b * d));
  CHECK(a * (b + d) == a * b + a * d);
  CHECK(a * b == b * a);
  CHECK(valuation(a * b) == valuation(a) + valuation(b));
  CHECK(valuation(a * d) == valuation(a) + valuation(d));
}
