#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ramif/dilatation.hpp"
#include "ramif/io.hpp"

using namespace ramif;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

std::string cli_binary() {
  if (const char* env = std::getenv("RAMIF_BIN")) return env;
  return "../tools/ramif";
}

RunResult run_cli(const std::string& args) {
  std::string cmd = cli_binary() + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  RunResult r;
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, k);
  int st = pclose(f);
  if (WIFEXITED(st)) r.code = WEXITSTATUS(st);
  return r;
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() /
                 ("ramif_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string put(const fs::path& name, const std::string& text) {
  std::ofstream(name, std::ios::binary) << text;
  return name.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

forms::DiffForm dx_over_t2() {
  auto ctx = algebra::model_context(5, 2);
  forms::DiffForm w(ctx, 1);
  w.add_term(0x2, algebra::TLaurent::t_power(ctx, -2));
  return w;
}

witt::FDecomposedWitt twisted_pair() {
  auto ctx = algebra::model_context(3, 1);
  witt::WittVector b(ctx, 3,
                     {algebra::TLaurent::t_power(ctx, -1),
                      algebra::TLaurent::constant(ctx, 0)});
  witt::FDecomposedWitt x;
  x.parts.emplace(1, std::move(b));
  return x;
}

}  // namespace

TEST_CASE("conductor commands print the exact integer") {
  auto dir = scratch_dir();
  std::string form = put(dir / "dxz2.json", io::encode(dx_over_t2()));

  auto r = run_cli("conductor omega --char 5 --input " + form);
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  auto x = twisted_pair();
  std::string dec = put(dir / "dec.json", io::encode(x));
  r = run_cli("conductor witt --input " + dec);
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");

  std::string vec = put(dir / "vec.json", io::encode(witt::recombine(x)));
  r = run_cli("conductor witt --input " + vec);
  CHECK(r.code == 0);
  CHECK(r.out == "4\n");
}

TEST_CASE("charform output decodes back to the library result") {
  auto dir = scratch_dir();
  forms::DiffForm w = dx_over_t2();
  std::string form = put(dir / "dxz2.json", io::encode(w));

  auto r = run_cli("charform omega --n 3 --input " + form);
  CHECK(r.code == 0);
  CHECK(io::decode_charform(r.out) == forms::charform_omega(w, 3, 5));

  auto x = twisted_pair();
  std::string dec = put(dir / "dec.json", io::encode(x));
  r = run_cli("charform witt --r 4 --input " + dec);
  CHECK(r.code == 0);
  CHECK(io::decode_charform(r.out) == witt::charform_witt(x, 4));

  r = run_cli("charform h1 --r 4 --input " + dec);
  CHECK(r.code == 0);
  CHECK(io::decode_charform(r.out) ==
        witt::charform_h1(witt::charform_witt(x, 4)));

  // --report sends the document to a file instead of stdout
  std::string out = (dir / "cf.json").string();
  r = run_cli("charform omega --n 3 --input " + form + " --report " + out);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(io::decode_charform(slurp(out)) == forms::charform_omega(w, 3, 5));
}

TEST_CASE("oracle check agrees on members and witnesses") {
  auto dir = scratch_dir();
  std::string form = put(dir / "dxz2.json", io::encode(dx_over_t2()));

  auto r = run_cli("oracle check --n 3 --input " + form);
  CHECK(r.code == 0);
  CHECK(r.out == "membership: oracle=true closed=true\ncharform: agree=true\n");

  r = run_cli("oracle check --n 2 --input " + form);  // not a member at 2
  CHECK(r.code == 0);
  CHECK(r.out == "membership: oracle=false closed=false\n");

  auto x = twisted_pair();
  std::string dec = put(dir / "dec.json", io::encode(x));
  r = run_cli("oracle check --r 4 --input " + dec);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "membership: oracle=true witness=true\ncharform: agree=true\n");

  // below the conductor the same presentation is not a witness
  r = run_cli("oracle check --r 3 --input " + dec);
  CHECK(r.code == 2);
}

TEST_CASE("verify runs a suite and writes a stable report") {
  auto dir = scratch_dir();
  std::string rep1 = (dir / "r1.json").string();
  std::string rep2 = (dir / "r2.json").string();
  std::string args =
      "verify fas --char 3 --dim 1 --max-n 4 --trials 10 --seed 7 --report ";

  auto r = run_cli(args + rep1);
  CHECK(r.code == 0);
  CHECK(r.out == "fas: 60/60 passed (seed 7)\n");
  auto r2 = run_cli(args + rep2);
  CHECK(r2.code == 0);
  CHECK(slurp(rep1) == slurp(rep2));
  CHECK(slurp(rep1).find("\"schema\": \"ramif-report/1\"") !=
        std::string::npos);

  r = run_cli("verify nosuch");
  CHECK(r.code == 2);
}

TEST_CASE("input errors exit with code 2") {
  auto dir = scratch_dir();
  std::string bad = put(dir / "bad.json", "{\"schema\":\"ramif/witt/1\"");

  CHECK(run_cli("charform witt --r 2 --input " + bad).code == 2);
  CHECK(run_cli("conductor omega --input " + bad).code == 2);
  CHECK(run_cli("conductor omega --input " + (dir / "missing.json").string())
            .code == 2);
  CHECK(run_cli("charform omega --input " + bad).code == 2);  // --n missing
  CHECK(run_cli("conductor omega").code == 2);                // --input missing

  std::string form = put(dir / "dxz2.json", io::encode(dx_over_t2()));
  CHECK(run_cli("conductor omega --char 3 --input " + form).code == 2);
  CHECK(run_cli("conductor omega --dim 1 --input " + form).code == 2);

  auto x = twisted_pair();
  std::string dec = put(dir / "dec.json", io::encode(x));
  CHECK(run_cli("conductor witt --witt-length 3 --input " + dec).code == 2);
  CHECK(run_cli("charform witt --r 4 --input " + form).code == 2);  // wrong kind
}
