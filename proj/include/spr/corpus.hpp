#pragma once

// Named example structures shared by the CLI, the acceptance runner and tests.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spr/einstein_weyl.hpp"

namespace spr {

struct UnknownBuiltin : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Builtin {
  std::string name;
  SubPRStructure structure;
  std::optional<QuotientData> quotient;
  std::optional<WeylPair> family;  // berger-lorentz only
};

/// Base names; "berger-lorentz" also accepts a rational parameter, e.g. "berger-lorentz(1/2)".
[[nodiscard]] std::vector<std::string> builtin_names();
[[nodiscard]] Builtin builtin(std::string_view name, SamplingPlan plan = {});

enum class SurfaceBase { Euclidean, Hyperbolic, Sphere, HyperbolicLorentz };
[[nodiscard]] QuotientInput surface_base(SurfaceBase base, SamplingPlan plan = {});

/// Dimension-5 Heisenberg chart (x1, y1, x2, y2, z).
[[nodiscard]] Chart heisenberg5_chart();
/// Frame (X1, Y1, X2, Y2) of the Heisenberg group with the second pair scaled by `scale`.
[[nodiscard]] std::vector<VectorField> heisenberg5_frame(const Chart& chart, const Expr& scale = Expr(1));

}  // namespace spr
