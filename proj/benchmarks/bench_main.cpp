#include <benchmark/benchmark.h>

#include "ramif/dilatation.hpp"
#include "ramif/verify.hpp"

using namespace ramif;
using algebra::CtxPtr;
using algebra::TLaurent;

namespace {

CtxPtr ctx(int p) { return algebra::model_context(p, 2); }

TLaurent dense_laurent(int p, int pole, int terms) {
  verify::Rng g(42);
  TLaurent f = verify::sample_laurent(g, ctx(p), pole, terms);
  for (int k = 0; k < 3; ++k)
    f = f + verify::sample_laurent(g, ctx(p), pole, terms);
  return f;
}

void BM_LaurentMul(benchmark::State& state) {
  int pole = static_cast<int>(state.range(0));
  TLaurent a = dense_laurent(3, pole, 4).truncated(24);
  TLaurent b = dense_laurent(3, pole, 4).truncated(24);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_LaurentMul)->Arg(2)->Arg(4)->Arg(6);

void BM_LaurentUnitInverse(benchmark::State& state) {
  auto c3 = ctx(3);
  verify::Rng g(7);
  TLaurent u = TLaurent::constant(c3, 1) +
               verify::sample_laurent(g, c3, 0, 4).shifted(1).truncated(32);
  for (auto _ : state) benchmark::DoNotOptimize(algebra::unit_inverse(u));
}
BENCHMARK(BM_LaurentUnitInverse);

void BM_BuildModel(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::build_model(3, 2, n, 4));
}
BENCHMARK(BM_BuildModel)->Arg(2)->Arg(4)->Arg(6);

void BM_MembershipOracle(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto model = oracle::build_model(3, 2, n, 4);
  verify::Rng g(11);
  forms::DiffForm w = verify::sample_form(g, ctx(3), 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(oracle::as_member(w, model));
}
BENCHMARK(BM_MembershipOracle)->Arg(2)->Arg(4)->Arg(6);

void BM_MembershipClosed(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  verify::Rng g(11);
  forms::DiffForm w = verify::sample_form(g, ctx(3), 2, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(forms::omega_fas_member(w, n, 3));
}
BENCHMARK(BM_MembershipClosed)->Arg(2)->Arg(4)->Arg(6);

void BM_CharformClosed(benchmark::State& state) {
  verify::Rng g(5);
  auto c3 = ctx(3);
  forms::DiffForm w = verify::sample_form(g, c3, 1, 2);
  while (!forms::omega_fas_member(w, 3, 3) || w.is_zero())
    w = verify::sample_form(g, c3, 1, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(forms::charform_omega(w, 3, 3));
}
BENCHMARK(BM_CharformClosed);

void BM_CharformOracle(benchmark::State& state) {
  verify::Rng g(5);
  auto c3 = ctx(3);
  forms::DiffForm w = verify::sample_form(g, c3, 1, 2);
  while (!forms::omega_fas_member(w, 3, 3) || w.is_zero())
    w = verify::sample_form(g, c3, 1, 2);
  auto model = oracle::build_model(3, 2, 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::oracle_charform(w, model));
}
BENCHMARK(BM_CharformOracle);

void BM_WittMul(benchmark::State& state) {
  int len = static_cast<int>(state.range(0));
  verify::Rng g(13);
  auto c2 = ctx(2);
  witt::WittVector a = verify::sample_witt(g, c2, 2, len, 3);
  witt::WittVector b = verify::sample_witt(g, c2, 2, len, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(witt::witt_arith(a, b, witt::WittOp::mul));
}
BENCHMARK(BM_WittMul)->Arg(1)->Arg(2)->Arg(3);

void BM_Ghost(benchmark::State& state) {
  CtxPtr q = algebra::make_context(0, {"u", "v"});
  verify::Rng g(17);
  witt::WittVector a = verify::sample_witt(g, q, 3, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(witt::ghost(a));
}
BENCHMARK(BM_Ghost);

void BM_FsatConductor(benchmark::State& state) {
  verify::Rng g(19);
  witt::WittVector a = verify::sample_witt(g, ctx(3), 3, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(witt::fsat_conductor(a));
}
BENCHMARK(BM_FsatConductor);

void BM_CurveRestriction(benchmark::State& state) {
  auto c3 = ctx(3);
  verify::Rng g(23);
  witt::WittVector a = verify::sample_witt(g, c3, 3, 2, 3);
  auto line = algebra::model_context(3, 1);
  std::vector<TLaurent> phi = {TLaurent::t_power(line, 1) +
                               TLaurent::t_power(line, 2)};
  for (auto _ : state)
    benchmark::DoNotOptimize(witt::restrict_to_curve_witt(a, phi));
}
BENCHMARK(BM_CurveRestriction);

void BM_VerifySuite(benchmark::State& state) {
  verify::SuiteParams pp;
  pp.p = 3;
  pp.max_level = 3;
  pp.trials = 5;
  for (auto _ : state)
    benchmark::DoNotOptimize(verify::run_suite(verify::Suite::fas, pp, 1));
}
BENCHMARK(BM_VerifySuite);

}  // namespace

BENCHMARK_MAIN();
