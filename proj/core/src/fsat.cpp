#include "ramif/dilatation.hpp"
#include "ramif/errors.hpp"
#include "ramif/witt.hpp"

namespace ramif::witt {

bool fsat_member(const WittVector& a, int r) {
  if (!a.ctx()) throw input_error("witt vector without a context");
  if (r < 0) throw input_error("negative filtration level");
  if (a.ctx()->characteristic() == 0)
    throw input_error("saturated filtration needs positive characteristic");
  if (r == 0) {
    for (const auto& c : a.components())
      if (c.pole_bound() > 0) return false;
    return true;
  }
  auto model =
      oracle::build_model(a.prime(), static_cast<int>(a.ctx()->arity()) + 1, r,
                          oracle::witt_pole_order(a), a.length());
  return oracle::as_member(a, model);
}

int fsat_conductor(const WittVector& a) {
  const int bound = matsuda_conductor(a);
  for (int r = 0; r <= bound; ++r)
    if (fsat_member(a, r)) return r;
  throw internal_error("conductor search exceeded its a-priori bound");
}

}  // namespace ramif::witt
