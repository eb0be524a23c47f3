#pragma once

// Structure documents: JSON input for the command-line front end.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "spr/corpus.hpp"

namespace spr::cli {

/// Input that does not match the document schema; `path` points at the offending node.
struct SchemaError : std::invalid_argument {
  SchemaError(const std::string& path, const std::string& what)
      : std::invalid_argument(path + ": " + what), path(path) {}
  std::string path;
};

struct LoadedStructure {
  std::string name;
  SubPRStructure structure;
  nlohmann::json tasks = nlohmann::json::array();
};

/// Validates the document shape and builds the structure. Expression syntax errors
/// are reported as SchemaError; contact or signature failures propagate as StructureError.
[[nodiscard]] LoadedStructure load_document(const nlohmann::json& doc, const SamplingPlan& plan);
[[nodiscard]] LoadedStructure load_file(const std::string& path, const SamplingPlan& plan);
[[nodiscard]] LoadedStructure load_builtin(const std::string& name, const SamplingPlan& plan);

/// Constant or function-valued expression given as a string or an integer.
[[nodiscard]] Expr expression_value(const nlohmann::json& v, const Chart& chart, const std::string& path);

/// Rational constant given as "p", "p/q" or an integer.
[[nodiscard]] Expr rational_value(const nlohmann::json& v, const std::string& path);

}  // namespace spr::cli
