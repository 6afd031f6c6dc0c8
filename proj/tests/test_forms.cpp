#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <ramif/char_form.hpp>
#include <ramif/diff_form.hpp>
#include <ramif/errors.hpp>

using namespace ramif;
using namespace ramif::algebra;
using namespace ramif::forms;

namespace {

constexpr Mask DT = 1u;

Mask dvar(int i) { return Mask{1} << i; }  // i >= 1: d of the i-th variable

DiffForm monoform(const CtxPtr& c, Mask m, const Poly& coef, int t_exp) {
  DiffForm w(c, mask_size(m));
  w.add_term(m, TLaurent::from_poly(coef, t_exp));
  return w;
}

DiffForm monoform(const CtxPtr& c, Mask m, int t_exp) {
  return monoform(c, m, Poly::constant(c, 1), t_exp);
}

}  // namespace

TEST_CASE("wedge basis signs") {
  auto c = make_context(5, {"x"});
  auto dt = monoform(c, DT, 0);
  auto dx = monoform(c, dvar(1), 0);
  auto both = wedge(dt, dx);
  REQUIRE(both.terms().size() == 1);
  CHECK(both.terms().begin()->first == (DT | dvar(1)));
  CHECK(both.terms().begin()->second == TLaurent::t_power(c, 0));
  CHECK(wedge(dx, dt) == -both);
  CHECK(wedge(dx, dx).is_zero());
}

TEST_CASE("exterior derivative of a function") {
  auto c = make_context(5, {"x"});
  auto x = Poly::var(c, 0);
  DiffForm f(c, 0);
  f.add_term(0, TLaurent::from_poly(x, -2));  // x / t^2
  auto df = exterior_derivative(f);
  DiffForm expect(c, 1);
  expect.add_term(DT, TLaurent::from_poly(x * Coef::integer(5, -2), -3));
  expect.add_term(dvar(1), TLaurent::from_poly(Poly::constant(c, 1), -2));
  CHECK(df == expect);
  CHECK(exterior_derivative(df).is_zero());
  CHECK(exterior_derivative(monoform(c, DT, -3)).is_zero());
}

TEST_CASE("leibniz rule") {
  auto c = make_context(3, {"x", "y"});
  auto x = Poly::var(c, 0);
  auto y = Poly::var(c, 1);
  DiffForm w(c, 1);
  w.add_term(dvar(1), TLaurent::from_poly(y, -2));
  w.add_term(DT, TLaurent::from_poly(x * x, 1));
  DiffForm e(c, 1);
  e.add_term(dvar(2), TLaurent::from_poly(x * y, -1));
  auto lhs = exterior_derivative(wedge(w, e));
  auto rhs = wedge(exterior_derivative(w), e) - wedge(w, exterior_derivative(e));
  CHECK(lhs == rhs);
}

TEST_CASE("pole membership branches") {
  auto c = make_context(5, {"x"});
  auto dt3 = monoform(c, DT, -3);        // dt / t^3
  auto dx2 = monoform(c, dvar(1), -2);   // dx / t^2
  CHECK(pole_membership(dt3, 3, PoleMode::plain));
  CHECK(pole_membership(dt3, 3, PoleMode::log));
  CHECK_FALSE(pole_membership(dt3, 2, PoleMode::log));
  CHECK_FALSE(pole_membership(dx2, 2, PoleMode::log));
  CHECK(pole_membership(dx2, 2, PoleMode::plain));
  CHECK(pole_membership(DiffForm(c, 1), 0, PoleMode::plain));
}

TEST_CASE("membership selects the branch by divisibility") {
  auto c3 = make_context(3, {"x"});
  CHECK(omega_fas_member(monoform(c3, DT, -3), 3, 3));
  auto c5 = make_context(5, {"x"});
  CHECK_FALSE(omega_fas_member(monoform(c5, dvar(1), -2), 2, 5));
  auto c2 = make_context(2, {"x"});
  CHECK(omega_fas_member(monoform(c2, dvar(1), -2), 2, 2));
}

TEST_CASE("conductor search") {
  auto c5 = make_context(5, {"x"});
  CHECK(omega_conductor(monoform(c5, dvar(1), -2), 5) == 3);
  auto c2 = make_context(2, {"x"});
  CHECK(omega_conductor(monoform(c2, dvar(1), -2), 2) == 2);
  CHECK(omega_conductor(monoform(c2, dvar(1), 0), 2) == 0);
  CHECK(omega_conductor(DiffForm(c2, 1), 2) == 0);
}

TEST_CASE("koszul contraction extracts factors with alternating signs") {
  auto c = make_context(5, {"x", "y"});
  auto f = Poly::var(c, 0) + Poly::constant(c, 2);  // x + 2
  int n = 3;
  auto w = monoform(c, dvar(1) | dvar(2), f, -n);  // f dx^dy / t^3
  auto parts = koszul_partial(w, n);
  REQUIRE(parts.size() == 2);
  ResidueForm gx(c, 1), gy(c, 1);
  gx.add_term(dvar(2), f);
  gy.add_term(dvar(1), -f);
  CHECK(parts.at(1) == gx);
  CHECK(parts.at(2) == gy);

  auto w1 = monoform(c, DT, f, -n);
  auto parts1 = koszul_partial(w1, n);
  REQUIRE(parts1.size() == 1);
  ResidueForm gt(c, 0);
  gt.add_term(0, f);
  CHECK(parts1.at(0) == gt);

  CHECK(koszul_partial(DiffForm(c, 1), n).empty());
  CHECK_THROWS_AS(koszul_partial(monoform(c, DT, -4), 3), ramif::domain_error);
}

TEST_CASE("koszul drops terms whose remainder still carries dt") {
  auto c = make_context(5, {"x"});
  auto w = monoform(c, DT | dvar(1), -2);  // dt^dx / t^2
  auto parts = koszul_partial(w, 2);
  // extracting dx leaves a dt factor, which dies on the divisor
  REQUIRE(parts.size() == 1);
  ResidueForm gx(c, 1);
  gx.add_term(dvar(1), Poly::constant(c, 1));
  CHECK(parts.at(0) == gx);
}

TEST_CASE("xi assembly") {
  auto c = make_context(5, {"x"});
  auto x = Poly::var(c, 0);
  ResidueForm beta(c, 1), alpha(c, 0);
  alpha.add_term(0, x);
  auto hv = xi(beta, alpha);
  ResidueForm dxbar(c, 1);
  dxbar.add_term(dvar(1), Poly::constant(c, 1));
  REQUIRE(hv.plain.has_value());
  CHECK(*hv.plain == dxbar);
  REQUIRE(hv.dpart.has_value());
  CHECK(*hv.dpart == alpha);
  CHECK(hv.frob.empty());

  CHECK(xi(ResidueForm(c, 1), ResidueForm(c, 0)).is_zero());
  ResidueForm b2(c, 1);
  b2.add_term(dvar(1), x);
  auto only = xi(b2, ResidueForm(c, 0));
  CHECK(*only.plain == b2);
  CHECK_FALSE(only.dpart.has_value());
}

TEST_CASE("characteristic form: mixed entries, p = 5") {
  auto c = make_context(5, {"x"});
  auto x = Poly::var(c, 0);
  DiffForm w(c, 1);
  w.add_term(DT, TLaurent::from_poly(x, -3));
  w.add_term(dvar(1), TLaurent::from_poly(x * x, -2));
  auto cf = charform_omega(w, 3, 5);

  CharForm expect(c, 3, 1);
  ResidueForm plain(c, 1), a(c, 0);
  plain.add_term(dvar(1), x * x * Coef::fp(5, 3));
  a.add_term(0, x);
  expect.entry(0).plain = plain;
  expect.entry(0).dpart = a;
  expect.prune();
  CHECK(cf == expect);
}

TEST_CASE("characteristic form: derivative part vanishes, p = 3") {
  auto c = make_context(3, {"x"});
  auto x = Poly::var(c, 0);
  DiffForm w(c, 1);
  w.add_term(dvar(1), TLaurent::from_poly(x, -3));
  auto cf = charform_omega(w, 3, 3);

  CharForm expect(c, 3, 1);
  ResidueForm dxbar(c, 1), a(c, 0);
  dxbar.add_term(dvar(1), Poly::constant(c, 1));
  a.add_term(0, x);
  expect.entry(1).plain = dxbar;
  expect.entry(1).dpart = a;
  expect.prune();
  CHECK(cf == expect);
}

TEST_CASE("characteristic form gains a Frobenius part at (2,2)") {
  auto c = make_context(2, {"x"});
  auto x = Poly::var(c, 0);
  DiffForm w(c, 1);
  w.add_term(dvar(1), TLaurent::from_poly(x, -2));
  auto cf = charform_omega(w, 2, 2);

  CharForm expect(c, 2, 1);
  ResidueForm dxbar(c, 1), a(c, 0), xdx(c, 1);
  dxbar.add_term(dvar(1), Poly::constant(c, 1));
  a.add_term(0, x);
  xdx.add_term(dvar(1), x);
  expect.entry(1).plain = dxbar;
  expect.entry(1).dpart = a;
  expect.entry(0).frob[1] = xdx;
  expect.prune();
  CHECK(cf == expect);
}

TEST_CASE("characteristic form preconditions") {
  auto c = make_context(5, {"x"});
  CHECK_THROWS_AS(charform_omega(monoform(c, dvar(1), -2), 2, 5),
                  ramif::domain_error);  // not a member at level 2
  CHECK_THROWS_AS(charform_omega(monoform(c, dvar(1), -2), 1, 5),
                  ramif::domain_error);  // level too small
  CHECK_THROWS_AS(charform_omega(monoform(c, dvar(1), 0), 2, 3),
                  ramif::input_error);  // wrong characteristic
}

TEST_CASE("diagonal decomposition formulas") {
  auto c = make_context(5, {"x", "y"});
  auto x = Poly::var(c, 0);

  ResidueForm b(c, 1);
  b.add_term(dvar(2), x);  // x dy
  auto [gam, del] = diagonal_decomposition(b);
  REQUIRE(gam.size() == 1);
  ResidueForm gy(c, 0);
  gy.add_term(0, x);
  CHECK(gam.at(2) == gy);
  REQUIRE(del.size() == 1);
  ResidueForm dx_of(c, 1);
  dx_of.add_term(dvar(2), Poly::constant(c, 1));
  CHECK(del.at(1) == dx_of);

  auto [g0, d0] = diagonal_decomposition(ResidueForm(c, 1));
  CHECK(g0.empty());
  CHECK(d0.empty());

  ResidueForm top(c, 2);
  top.add_term(dvar(1) | dvar(2), Poly::constant(c, 1));  // dx^dy
  auto [g2, d2] = diagonal_decomposition(top);
  ResidueForm mdy(c, 1), pdx(c, 1);
  mdy.add_term(dvar(2), Poly::constant(c, -1));
  pdx.add_term(dvar(1), Poly::constant(c, 1));
  CHECK(g2.at(1) == mdy);
  CHECK(g2.at(2) == pdx);
  CHECK(d2.empty());
}

TEST_CASE("all gammas vanish only for the zero form") {
  auto c = make_context(3, {"x", "y"});
  ResidueForm b(c, 1);
  b.add_term(dvar(1), Poly::var(c, 1));
  auto [gam, del] = diagonal_decomposition(b);
  CHECK_FALSE(gam.empty());
}

TEST_CASE("curve restriction substitutes coordinates and their velocities") {
  auto c = make_context(5, {"x"});
  auto curve = make_context(5, std::vector<std::string>{});
  std::vector<TLaurent> phi{TLaurent::t_power(curve, 2)};  // x = t^2

  auto r = restrict_to_curve(monoform(c, dvar(1), -2), phi);
  DiffForm expect(curve, 1);
  expect.add_term(DT, TLaurent::t_power(curve, -1) * Coef::fp(5, 2));
  CHECK(r == expect);

  auto keep = restrict_to_curve(monoform(c, DT, -3), phi);
  DiffForm dt3(curve, 1);
  dt3.add_term(DT, TLaurent::t_power(curve, -3));
  CHECK(keep == dt3);

  std::vector<TLaurent> bad{TLaurent::t_power(curve, 0)};
  CHECK_THROWS_AS(restrict_to_curve(monoform(c, dvar(1), 0), bad),
                  ramif::input_error);

  auto reg = restrict_to_curve(monoform(c, dvar(1), 1), phi);
  CHECK(pole_membership(reg, 0, PoleMode::plain));
}

TEST_CASE("top-degree forms: both membership branches agree") {
  auto c = make_context(3, {"x"});
  for (int te = -4; te <= 0; ++te) {
    auto w = wedge(monoform(c, DT, te), monoform(c, dvar(1), 0));
    for (int n = 1; n <= 5; ++n) {
      bool plain = pole_membership(w, n, PoleMode::plain);
      bool log = pole_membership(w, n, PoleMode::log);
      CHECK(plain == log);
    }
  }
}
