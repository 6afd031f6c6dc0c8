#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ramif/dilatation.hpp"
#include "ramif/errors.hpp"
#include "ramif/io.hpp"
#include "ramif/verify.hpp"

namespace {

using namespace ramif;

// Shared flag values; 0 / -1 mean "not given" where a zero value is invalid.
struct Options {
  std::string input;
  std::string report;
  int chr = 0;
  int dim = 0;
  int witt_length = 0;
  int level = -1;  // --n / --r
  int degree = 0;
  int min_n = 1;
  int max_n = 6;
  int max_pole = 6;
  int trials = 100;
  int precision = 0;
  std::uint64_t seed = 0;
  std::string suite;
};

std::string slurp(const std::string& path) {
  if (path.empty()) throw input_error("--input is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& report) {
  if (report.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(report, std::ios::binary);
  if (!out) throw input_error("cannot open report file: " + report);
  out << text;
}

// Flags must agree with the document headers when both are present.
void cross_check(const Options& o, const algebra::CtxPtr& ctx) {
  if (o.chr != 0 && o.chr != ctx->characteristic())
    throw input_error("--char disagrees with the input header");
  if (o.dim != 0 && o.dim != static_cast<int>(ctx->arity()) + 1)
    throw input_error("--dim disagrees with the input header");
}

int require_level(const Options& o) {
  if (o.level < 0) throw input_error("--n/--r is required for this command");
  return o.level;
}

// Accepts either a plain vector (read as the trivial presentation) or a
// presented decomposition.
witt::FDecomposedWitt read_decomposition(const Options& o,
                                         const std::string& text) {
  std::string kind = io::document_kind(text);
  witt::FDecomposedWitt x;
  if (kind == "witt") {
    witt::WittVector a = io::decode_witt(text);
    cross_check(o, a.ctx());
    x.parts.emplace(0, std::move(a));
  } else if (kind == "decomposition") {
    x = io::decode_decomposition(text);
    cross_check(o, x.any().ctx());
  } else {
    throw input_error("expected a witt or decomposition document, got " +
                      kind);
  }
  if (o.witt_length != 0 && o.witt_length != x.any().length())
    throw input_error("--witt-length disagrees with the input header");
  return x;
}

int run_conductor_omega(const Options& o) {
  forms::DiffForm w = io::decode_form(slurp(o.input));
  cross_check(o, w.ctx());
  std::cout << forms::omega_conductor(w, w.ctx()->characteristic()) << "\n";
  return 0;
}

int run_conductor_witt(const Options& o) {
  witt::FDecomposedWitt x = read_decomposition(o, slurp(o.input));
  std::cout << witt::fsat_conductor(witt::recombine(x)) << "\n";
  return 0;
}

int run_charform_omega(const Options& o) {
  int n = require_level(o);
  forms::DiffForm w = io::decode_form(slurp(o.input));
  cross_check(o, w.ctx());
  auto cf = forms::charform_omega(w, n, w.ctx()->characteristic());
  emit(io::encode(cf), o.report);
  return 0;
}

int run_charform_witt(const Options& o, bool reduce) {
  int r = require_level(o);
  witt::FDecomposedWitt x = read_decomposition(o, slurp(o.input));
  auto cf = witt::charform_witt(x, r);
  if (reduce) cf = witt::charform_h1(cf);
  emit(io::encode(cf), o.report);
  return 0;
}

int check_form(const Options& o, const std::string& text) {
  int n = require_level(o);
  forms::DiffForm w = io::decode_form(text);
  cross_check(o, w.ctx());
  int p = w.ctx()->characteristic();
  int dim = static_cast<int>(w.ctx()->arity()) + 1;
  auto model = oracle::build_model(p, dim, n, std::max(w.pole_order(), 0), 1,
                                   o.precision);
  bool geo = oracle::as_member(w, model);
  bool alg = forms::omega_fas_member(w, n, p);
  bool ok = geo == alg;
  std::cout << "membership: oracle=" << (geo ? "true" : "false")
            << " closed=" << (alg ? "true" : "false") << "\n";
  if (geo && alg && n >= 2) {
    auto gcf = oracle::oracle_charform(w, model);
    auto acf = forms::charform_omega(w, n, p);
    bool same = gcf == acf;
    std::cout << "charform: agree=" << (same ? "true" : "false") << "\n";
    ok = ok && same;
  }
  return ok ? 0 : 1;
}

int check_witt(const Options& o, const std::string& text) {
  int r = require_level(o);
  witt::WittVector a = io::decode_witt(text);
  cross_check(o, a.ctx());
  bool geo = witt::fsat_member(a, r);
  bool mats = witt::matsuda_member(a, r);
  std::cout << "membership: oracle=" << (geo ? "true" : "false")
            << " matsuda=" << (mats ? "true" : "false") << "\n";
  // the component-wise step is contained in its saturation
  return (!mats || geo) ? 0 : 1;
}

int check_decomposition(const Options& o, const std::string& text) {
  int r = require_level(o);
  witt::FDecomposedWitt x = read_decomposition(o, text);
  for (const auto& [j, b] : x.parts)
    if (!witt::matsuda_member(b, r))
      throw input_error("presented part F^" + std::to_string(j) +
                        " lies outside the filtration step");
  witt::WittVector a = witt::recombine(x);
  bool geo = witt::fsat_member(a, r);
  std::cout << "membership: oracle=" << (geo ? "true" : "false")
            << " witness=true\n";
  bool ok = geo;
  if (r >= 2) {
    auto model = oracle::build_model(a.prime(),
                                     static_cast<int>(a.ctx()->arity()) + 1, r,
                                     oracle::witt_pole_order(a), a.length(),
                                     o.precision);
    auto gcf = oracle::oracle_charform(a, model);
    auto acf = witt::charform_witt(x, r);
    bool same = gcf == acf;
    std::cout << "charform: agree=" << (same ? "true" : "false") << "\n";
    ok = ok && same;
  }
  return ok ? 0 : 1;
}

int run_oracle_check(const Options& o) {
  std::string text = slurp(o.input);
  std::string kind = io::document_kind(text);
  if (kind == "form") return check_form(o, text);
  if (kind == "witt") return check_witt(o, text);
  if (kind == "decomposition") return check_decomposition(o, text);
  throw input_error("expected a form, witt, or decomposition document, got " +
                    kind);
}

int run_verify(const Options& o) {
  verify::Suite s = verify::suite_from_name(o.suite);
  verify::SuiteParams pp;
  pp.p = o.chr != 0 ? o.chr : 3;
  pp.dim = o.dim != 0 ? o.dim : 1;
  pp.witt_length = o.witt_length != 0 ? o.witt_length : 1;
  pp.min_level = o.min_n;
  pp.max_level = o.max_n;
  pp.max_pole = o.max_pole;
  pp.trials = o.trials;
  if (o.degree != 0)
    pp.degree = o.degree;
  else
    pp.degree = s == verify::Suite::topforms ? pp.dim : 1;
  auto rep = verify::run_suite(s, pp, o.seed);
  if (!o.report.empty()) emit(rep.json(), o.report);
  std::cout << rep.suite << ": " << rep.passed << "/" << rep.attempted
            << " passed";
  if (!rep.controls.empty())
    std::cout << ", " << rep.controls.size() << " controls recorded";
  std::cout << " (seed " << rep.seed << ")\n";
  return rep.all_pass() ? 0 : 1;
}

void add_io_flags(CLI::App* cmd, Options& o, bool needs_input) {
  auto* in = cmd->add_option("--input", o.input, "input JSON document");
  if (needs_input) in->required();
  cmd->add_option("--char", o.chr, "expected coefficient characteristic");
  cmd->add_option("--dim", o.dim, "expected model dimension");
  cmd->add_option("--witt-length", o.witt_length, "expected vector length");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  int rc = 0;

  CLI::App app{"ramification conductors and characteristic forms on a local "
               "model with a smooth divisor"};
  app.require_subcommand(1);

  auto* conductor = app.add_subcommand(
      "conductor", "smallest level admitting the input");
  conductor->require_subcommand(1);
  auto* co = conductor->add_subcommand("omega", "differential-form conductor");
  add_io_flags(co, o, true);
  co->callback([&] { rc = run_conductor_omega(o); });
  auto* cw = conductor->add_subcommand(
      "witt", "saturated-filtration conductor of a Witt vector");
  add_io_flags(cw, o, true);
  cw->callback([&] { rc = run_conductor_witt(o); });

  auto* charform =
      app.add_subcommand("charform", "characteristic form of a member");
  charform->require_subcommand(1);
  auto* fo = charform->add_subcommand("omega", "differential-form input");
  add_io_flags(fo, o, true);
  fo->add_option("--n,--r", o.level, "pole level")->required();
  fo->add_option("--report", o.report, "write the result here");
  fo->callback([&] { rc = run_charform_omega(o); });
  auto* fw = charform->add_subcommand("witt", "Witt-vector input");
  add_io_flags(fw, o, true);
  fw->add_option("--n,--r", o.level, "filtration index")->required();
  fw->add_option("--report", o.report, "write the result here");
  fw->callback([&] { rc = run_charform_witt(o, false); });
  auto* fh = charform->add_subcommand(
      "h1", "Witt-vector input, reduced along F -> 1");
  add_io_flags(fh, o, true);
  fh->add_option("--n,--r", o.level, "filtration index")->required();
  fh->add_option("--report", o.report, "write the result here");
  fh->callback([&] { rc = run_charform_witt(o, true); });

  auto* oracle_cmd = app.add_subcommand("oracle", "dilatation-chart oracle");
  oracle_cmd->require_subcommand(1);
  auto* oc = oracle_cmd->add_subcommand(
      "check", "compare the oracle against the closed formulas on one input");
  add_io_flags(oc, o, true);
  oc->add_option("--n,--r", o.level, "level to test")->required();
  oc->add_option("--precision", o.precision, "extra precision margin")
      ->check(CLI::NonNegativeNumber);
  oc->callback([&] { rc = run_oracle_check(o); });

  auto* verify_cmd =
      app.add_subcommand("verify", "run a property suite and report");
  verify_cmd
      ->add_option("suite", o.suite,
                   "fas|charform|kernel|witt|bk|topforms|algebra")
      ->required();
  verify_cmd->add_option("--char", o.chr, "coefficient characteristic");
  verify_cmd->add_option("--dim", o.dim, "model dimension");
  verify_cmd->add_option("--degree", o.degree, "form degree");
  verify_cmd->add_option("--witt-length", o.witt_length, "vector length");
  verify_cmd->add_option("--min-n,--min-r", o.min_n, "lowest level");
  verify_cmd->add_option("--max-n,--max-r", o.max_n, "highest level");
  verify_cmd->add_option("--max-pole", o.max_pole, "random-sample pole bound");
  verify_cmd->add_option("--trials", o.trials, "random trials per grid point");
  verify_cmd->add_option("--seed", o.seed, "run seed");
  verify_cmd->add_option("--report", o.report, "write the JSON report here");
  verify_cmd->callback([&] { rc = run_verify(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
