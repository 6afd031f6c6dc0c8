#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ramif/dilatation.hpp"
#include "ramif/witt.hpp"

namespace ramif::verify {

using algebra::CtxPtr;
using algebra::Poly;
using algebra::TLaurent;

// Deterministic 64-bit generator (splitmix64). Hand-rolled instead of
// <random> so that reports compare byte for byte across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [lo, hi], inclusive; requires lo <= hi.
  int range(int lo, int hi);

 private:
  std::uint64_t state_;
};

// Seed of the k-th trial of a run, derived from the run seed by counter:
// trials draw from independent streams, so they can execute in any order
// and any single trial can be replayed alone.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

// Sparse Laurent polynomial: at most max_terms monomials with t-exponents in
// [-max_pole, 3] and per-variable degrees <= 2; coefficients uniform in the
// base field (small integers over the rationals). Exact precision.
TLaurent sample_laurent(Rng& g, const CtxPtr& ctx, int max_pole,
                        int max_terms = 4);
Poly sample_poly(Rng& g, const CtxPtr& ctx, int max_terms = 3);
forms::DiffForm sample_form(Rng& g, const CtxPtr& ctx, int degree,
                            int max_pole);
forms::ResidueForm sample_residue(Rng& g, const CtxPtr& ctx, int degree);
witt::WittVector sample_witt(Rng& g, const CtxPtr& ctx, int p, int length,
                             int max_pole);
// Component poles bounded index by index so the vector lands in the r-th
// Matsuda step.  Characteristic must be positive.
witt::WittVector sample_witt_in_fil(Rng& g, const CtxPtr& ctx, int length,
                                    int r, int max_pole);

// Exhaustive single-monomial inputs with pole <= pole: every basis mask of
// the degree (resp. every component slot), t-exponents in [-pole, 0],
// x-monomials of per-variable degree <= 2, unit coefficient; the zero
// element first.
std::vector<forms::DiffForm> monomial_forms(const CtxPtr& ctx, int degree,
                                            int pole);
std::vector<witt::WittVector> monomial_witts(const CtxPtr& ctx, int length,
                                             int pole);

enum class Suite { fas, charform, kernel, witt, bk, topforms, algebra };

Suite suite_from_name(const std::string& name);
std::string suite_name(Suite s);

// Parameter grid for a suite run.  min_level/max_level bound the pole level
// n (form suites) or the filtration index r (witt).  trials counts the
// random draws per grid point, always preceded by the monomial sweep at
// pole <= 3 where the suite samples whole forms or vectors.
struct SuiteParams {
  int p = 3;
  int dim = 1;
  int degree = 1;
  int min_level = 1;
  int max_level = 6;
  int witt_length = 1;
  int max_pole = 6;
  int trials = 100;

  // Throws input_error outside the supported ranges (p in {2,3,5}, dim <= 2,
  // levels <= 6, witt length <= 3, pole <= 6; bk needs dim = 2).
  void validate(Suite s) const;
  std::string str() const;
};

// One executed check: the sampled input and both routes' outputs as strings,
// so a mismatch is self-describing and replayable by (seed, index).
struct TrialRecord {
  std::uint64_t index = 0;
  std::uint64_t subseed = 0;
  std::string point;  // grid-point label
  std::string check;  // property name
  std::string input;
  std::string lhs;
  std::string rhs;
  bool pass = false;
  bool asserted = true;  // negative controls are recorded, not asserted
};

struct SuiteReport {
  std::string suite;
  std::string params;
  std::uint64_t seed = 0;
  std::uint64_t attempted = 0;
  std::uint64_t passed = 0;
  std::vector<TrialRecord> failures;
  std::vector<TrialRecord> controls;
  // Measured but deliberately left out of json(): equal (suite, params,
  // seed) runs must serialize identically.
  double wall_ms = 0.0;

  bool all_pass() const { return attempted == passed; }
  std::string json() const;  // canonical serialization, schema ramif-report/1
};

// Batch property suites at desk scale:
//   fas       oracle membership vs. the closed pole criterion, per level
//   charform  geometric vs. closed characteristic form on members, n >= 2
//   kernel    vanishing characteristic form vs. level-(n-1) membership
//   witt      decomposition-generated vectors: oracle membership, both
//             characteristic-form routes, and the kernel property
//   bk        conductor stability along curves agreeing past the conductor
//             (contact order conductor-1 runs as an unasserted control)
//   topforms  plain and logarithmic pole criteria agree in top degree
//   algebra   ring/derivation laws, xi-injectivity, diagonal decomposition
//             non-vanishing, Witt identities, ghost homomorphism,
//             filtration sandwich, membership monotonicity
// Deterministic for fixed (suite, params, seed); per-trial sub-seeds are
// derived by counter.  Internal errors surface as failed records.
SuiteReport run_suite(Suite s, const SuiteParams& params, std::uint64_t seed);

// Re-executes the index-th trial of the identical run and returns its
// records (pass or fail); they match the in-run records bit for bit.
std::vector<TrialRecord> replay_trial(Suite s, const SuiteParams& params,
                                      std::uint64_t seed, std::uint64_t index);

}  // namespace ramif::verify
