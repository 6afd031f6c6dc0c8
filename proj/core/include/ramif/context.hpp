#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace ramif::algebra {

// Coefficient-ring context: the characteristic (0 or a small prime) together
// with the ordered polynomial variables. The series variable t is not listed
// here; it belongs to TLaurent.
class Context {
 public:
  Context(int characteristic, std::vector<std::string> vars);

  int characteristic() const { return p_; }
  std::size_t arity() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var(std::size_t i) const { return vars_[i]; }
  // Index of a variable name, or -1 when absent.
  std::ptrdiff_t index_of(const std::string& name) const;

  bool operator==(const Context&) const = default;

 private:
  int p_;
  std::vector<std::string> vars_;
};

using CtxPtr = std::shared_ptr<const Context>;

CtxPtr make_context(int characteristic, std::vector<std::string> vars);

// The local model in dimension d >= 1: horizontal coordinates x1..x{d-1}
// (plus the series variable t, implicit).
CtxPtr model_context(int p, int dim);

inline bool same_context(const CtxPtr& a, const CtxPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace ramif::algebra
