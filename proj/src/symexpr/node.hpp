#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "spr/expr.hpp"

namespace spr::detail {

struct Node {
  Expr::Kind kind = Expr::Kind::Rational;
  std::vector<Expr> children;
  mpq_class value;
  int index = 0;
  std::string name;
  Function fn = Function::Sin;
  int exponent = 1;
  // Set on canonical roots (and on canonical function arguments).
  std::shared_ptr<const RatFunc> canon;
};

// Canonical form of any tree (cached when already canonical).
std::shared_ptr<const RatFunc> canonical_of(const Expr& e);
Expr from_canonical(RatFunc r);

}  // namespace spr::detail
