#include "ramif/context.hpp"

#include <algorithm>
#include <set>

#include "ramif/errors.hpp"

namespace ramif::algebra {

namespace {
bool supported_characteristic(int p) {
  return p == 0 || p == 2 || p == 3 || p == 5 || p == 7;
}
}  // namespace

Context::Context(int characteristic, std::vector<std::string> vars)
    : p_(characteristic), vars_(std::move(vars)) {
  if (!supported_characteristic(p_))
    throw input_error("unsupported characteristic " + std::to_string(p_));
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.empty() || v == "t" || v == "dt")
      throw input_error("invalid variable name '" + v + "'");
    if (!seen.insert(v).second)
      throw input_error("duplicate variable name '" + v + "'");
  }
}

std::ptrdiff_t Context::index_of(const std::string& name) const {
  auto it = std::find(vars_.begin(), vars_.end(), name);
  return it == vars_.end() ? -1 : it - vars_.begin();
}

CtxPtr make_context(int characteristic, std::vector<std::string> vars) {
  return std::make_shared<const Context>(characteristic, std::move(vars));
}

CtxPtr model_context(int p, int dim) {
  if (dim < 1) throw input_error("dimension must be >= 1");
  std::vector<std::string> vars;
  for (int i = 1; i < dim; ++i) vars.push_back("x" + std::to_string(i));
  return make_context(p, std::move(vars));
}

}  // namespace ramif::algebra
