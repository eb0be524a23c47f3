#pragma once

// Dense matrices of symbolic expressions, plus exact elimination over the
// expression field.

#include <Eigen/Dense>
#include <span>
#include <stdexcept>

#include "spr/expr.hpp"

namespace Eigen {

template <>
struct NumTraits<spr::Expr> : GenericNumTraits<spr::Expr> {
  using Real = spr::Expr;
  using NonInteger = spr::Expr;
  using Nested = spr::Expr;
  using Literal = spr::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 5,
    MulCost = 10
  };
};

}  // namespace Eigen

namespace spr {

using ExprMatrix = Eigen::Matrix<Expr, Eigen::Dynamic, Eigen::Dynamic>;
using ExprVector = Eigen::Matrix<Expr, Eigen::Dynamic, 1>;

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[nodiscard]] ExprMatrix zero_matrix(Eigen::Index rows, Eigen::Index cols);
[[nodiscard]] ExprMatrix identity_matrix(Eigen::Index n);
[[nodiscard]] ExprMatrix diagonal_matrix(const std::vector<Expr>& d);

[[nodiscard]] ExprMatrix multiply(const ExprMatrix& a, const ExprMatrix& b);

// Fraction-free (Bareiss) elimination. Pivots are the first entries whose
// zero verdict is nonzero; with no tester only symbolic zeros are skipped.
[[nodiscard]] Expr determinant(const ExprMatrix& m, const ZeroTester* zt = nullptr);
/// Solves a * x = b; throws SingularMatrixError.
[[nodiscard]] ExprMatrix solve(const ExprMatrix& a, const ExprMatrix& b, const ZeroTester* zt = nullptr);
[[nodiscard]] ExprMatrix inverse(const ExprMatrix& a, const ZeroTester* zt = nullptr);

[[nodiscard]] Eigen::MatrixXd evaluate(const ExprMatrix& m, std::span<const double> point);

/// Keeps the worse of two verdicts (nonzero beats numeric beats symbolic).
void merge_verdict(ZeroVerdict& worst, const ZeroVerdict& v);

/// Entrywise zero test; returns the worst verdict (nonzero first, then numeric).
[[nodiscard]] ZeroVerdict zero_matrix_verdict(const ExprMatrix& m, const ZeroTester& zt);

}  // namespace spr
