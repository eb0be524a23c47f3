#pragma once

// Acceptance suite shared by the `spr selftest` command and the ctest runner.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spr/expr.hpp"

namespace spr::acceptance {

struct Criterion {
  int number = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> notes;  // one line per sub-check, prefixed "ok" or "FAIL"
  double seconds = 0.0;
};

struct Options {
  SamplingPlan plan;
  int property_cases = 1000;
};

[[nodiscard]] int criterion_count();
[[nodiscard]] std::string criterion_title(int number);

/// Runs criterion `number` (1-based); never throws, an escaping exception is a failure.
[[nodiscard]] Criterion run_criterion(int number, const Options& opts);
[[nodiscard]] std::vector<Criterion> run_all(const Options& opts);

// Randomized engine properties.

enum class Property { Jacobi, DSquared, Torsion, Compatibility, ParserRoundTrip };

[[nodiscard]] std::string_view to_string(Property p);

struct PropertyOutcome {
  int cases = 0;
  int failures = 0;
  std::string first_failure;  // description of the first failing case
};

[[nodiscard]] PropertyOutcome check_property(Property p, int cases, std::uint64_t seed, const SamplingPlan& plan);

}  // namespace spr::acceptance
