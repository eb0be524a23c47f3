#pragma once

#include <string_view>

#include "doctest.h"
#include "spr/corpus.hpp"

namespace spr::test {

inline Chart xyz() { return Chart({"x", "y", "z"}, {}); }

/// Simplified expression over the chart.
inline Expr P(const Chart& c, std::string_view text) { return simplify(c.parse(text)); }

/// Exact equality of two expressions (rational-function identity over the atoms).
inline bool same(const Expr& a, const Expr& b) { return simplify(a - b).is_symbolic_zero(); }

inline bool same(const Expr& a, const Chart& c, std::string_view text) { return same(a, P(c, text)); }

inline VectorField field(const Chart& c, std::initializer_list<const char*> comps) {
  std::vector<Expr> v;
  for (const char* s : comps) v.push_back(c.parse(s));
  return VectorField(v);
}

inline SubPRStructure structure(const char* name) { return builtin(name).structure; }

}  // namespace spr::test
