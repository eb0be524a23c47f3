#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spr/isometry.hpp"
#include "structure_doc.hpp"

namespace spr::cli {

/// A report and whether every verdict in it passed.
struct Outcome {
  nlohmann::json report = nlohmann::json::object();
  bool passed = true;
};

[[nodiscard]] Outcome cmd_invariants(const LoadedStructure& in);
[[nodiscard]] Outcome cmd_curvature(const LoadedStructure& in, const Expr& c);

struct EwOptions {
  Expr epsilon;
  std::optional<Expr> c;  // otherwise the predicted value
  bool coordinate_family = false;
};
[[nodiscard]] Outcome cmd_ew(const LoadedStructure& in, const EwOptions& opts);

struct IsometryOptions {
  std::optional<int> family;  // 1, 2 or 3 on the dimension-5 Heisenberg chart
  Expr theta = Expr(1);
  std::optional<Translation> translation;
};
[[nodiscard]] Outcome cmd_isometry(const LoadedStructure& in, const IsometryOptions& opts);

/// Runs the tasks listed in the document, in order.
[[nodiscard]] Outcome cmd_run(const LoadedStructure& in);

[[nodiscard]] Outcome cmd_selftest(const SamplingPlan& plan, const std::vector<int>& only, int property_cases,
                                   bool timing);

// Serialization helpers.
[[nodiscard]] nlohmann::json to_json(const ZeroVerdict& v);
[[nodiscard]] nlohmann::json to_json(const ExprMatrix& m);
[[nodiscard]] nlohmann::json to_json(const std::vector<Expr>& v);

/// Aligned "path  value" lines for a report.
[[nodiscard]] std::string render_text(const nlohmann::json& report);

}  // namespace spr::cli
