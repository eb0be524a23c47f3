// spr: command-line front end for the contact sub-pseudo-Riemannian engine.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or schema error.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace spr;
using namespace spr::cli;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::string structure_file;
  std::string builtin_name;
  std::uint64_t seed = SamplingPlan{}.seed;
  int samples = SamplingPlan{}.samples;
  double tol = SamplingPlan{}.tolerance;
  std::string json_path;
  bool timing = false;

  [[nodiscard]] SamplingPlan plan() const { return {samples, tol, seed}; }
};

void add_common(CLI::App* app, Common& c, bool needs_structure) {
  if (needs_structure) {
    auto* f = app->add_option("--structure", c.structure_file, "structure document (JSON)");
    auto* b = app->add_option("--builtin", c.builtin_name, "named example structure");
    f->excludes(b);
  }
  app->add_option("--seed", c.seed, "sampling seed");
  app->add_option("--samples", c.samples, "sample points per zero test")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "numeric zero tolerance")->check(CLI::PositiveNumber);
  app->add_option("--json", c.json_path, "write the report as JSON ('-' for stdout)");
  app->add_flag("--timing", c.timing, "include wall-clock time in the report");
}

LoadedStructure load(const Common& c) {
  if (!c.structure_file.empty()) return load_file(c.structure_file, c.plan());
  if (!c.builtin_name.empty()) return load_builtin(c.builtin_name, c.plan());
  throw CLI::RequiredError("--structure or --builtin");
}

Translation parse_translation(const std::vector<std::string>& parts) {
  if (parts.size() != 5) throw SchemaError("--translation", "expected five rationals");
  Translation t;
  for (std::size_t i = 0; i < 5; ++i) t[i] = rational_value(json(parts[i]), "--translation");
  return t;
}

int emit(const Outcome& o, const Common& c, const char* command, double seconds) {
  json report = o.report;
  report["command"] = command;
  report["engine_version"] = kVersion;
  report["seed"] = c.seed;
  report["samples"] = c.samples;
  report["tolerance"] = c.tol;
  if (c.timing) report["seconds"] = seconds;
  if (c.json_path == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    if (!c.json_path.empty()) {
      std::ofstream out(c.json_path);
      if (!out) throw SchemaError(c.json_path, "cannot write report");
      out << report.dump(2) << "\n";
    }
    std::cout << render_text(report);
  }
  return o.passed ? 0 : 1;
}

const char* kind_name(StructureError::Kind k) {
  switch (k) {
    case StructureError::Kind::FrameDependent: return "frame_dependent";
    case StructureError::Kind::NotContact: return "not_contact";
    case StructureError::Kind::SignObstruction: return "sign_obstruction";
    case StructureError::Kind::SignChange: return "sign_change";
    case StructureError::Kind::BadSignature: return "bad_signature";
    case StructureError::Kind::BadDimension: return "bad_dimension";
  }
  return "unknown";
}

int error(const std::string& kind, const std::string& what, int code) {
  std::cerr << "spr: " << kind << ": " << what << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, curvature, Einstein-Weyl and isometry checks for contact sub-pseudo-Riemannian structures"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;

  auto* inv = app.add_subcommand("invariants", "contact form, Reeb field, structure functions, h and kappa");
  add_common(inv, common, true);

  std::string c_text = "1";
  auto* curv = app.add_subcommand("curvature", "connection, Riemann, Ricci and the sectional decomposition");
  add_common(curv, common, true);
  curv->add_option("--c", c_text, "extension constant or function");

  std::string eps_text = "0";
  std::string ew_c;
  bool family_flag = false;
  auto* ew = app.add_subcommand("ew", "Einstein-Weyl check of the pair (G^c, 2 eps c alpha)");
  add_common(ew, common, true);
  ew->add_option("--epsilon", eps_text, "rational deformation parameter");
  ew->add_option("--c", ew_c, "extension constant (default: the predicted value)");
  ew->add_flag("--coordinate-family", family_flag, "also evaluate the Lorentzian coordinate family");

  int family = 0;
  std::string theta_text = "1";
  std::vector<std::string> translation;
  auto* iso = app.add_subcommand("isometry", "isometry verdicts, algebra ranks and frequencies");
  add_common(iso, common, true);
  iso->add_option("--family", family, "dimension-5 family case")->check(CLI::Range(1, 3));
  iso->add_option("--theta", theta_text, "family parameter");
  iso->add_option("--translation", translation, "five rationals t1 ... t5")->expected(5);

  auto* run = app.add_subcommand("run", "execute the tasks listed in a structure document");
  add_common(run, common, true);

  std::vector<int> only;
  int cases = 1000;
  auto* self = app.add_subcommand("selftest", "run the acceptance criteria");
  add_common(self, common, false);
  self->add_option("--only", only, "criterion numbers to run")->check(CLI::Range(1, 10));
  self->add_option("--cases", cases, "randomized cases per engine property")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "print the builtin structure names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& n : builtin_names()) std::cout << n << "\n";
      return 0;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    if (self->parsed()) {
      const Outcome o = cmd_selftest(common.plan(), only, cases, common.timing);
      return emit(o, common, "selftest", elapsed());
    }
    const LoadedStructure in = load(common);
    if (inv->parsed()) return emit(cmd_invariants(in), common, "invariants", elapsed());
    if (curv->parsed()) {
      const Expr c = expression_value(json(c_text), in.structure.chart(), "--c");
      return emit(cmd_curvature(in, c), common, "curvature", elapsed());
    }
    if (ew->parsed()) {
      EwOptions opts{rational_value(json(eps_text), "--epsilon"), std::nullopt, family_flag};
      if (!ew_c.empty()) opts.c = expression_value(json(ew_c), in.structure.chart(), "--c");
      return emit(cmd_ew(in, opts), common, "ew", elapsed());
    }
    if (iso->parsed()) {
      IsometryOptions opts;
      if (family != 0) opts.family = family;
      opts.theta = expression_value(json(theta_text), in.structure.chart(), "--theta");
      if (!translation.empty()) opts.translation = parse_translation(translation);
      return emit(cmd_isometry(in, opts), common, "isometry", elapsed());
    }
    if (run->parsed()) return emit(cmd_run(in), common, "run", elapsed());
  } catch (const CLI::Error& e) {
    return error("usage error", e.what(), 2);
  } catch (const SchemaError& e) {
    return error("schema error", e.what(), 2);
  } catch (const UnknownBuiltin& e) {
    return error("unknown builtin", e.what(), 2);
  } catch (const StructureError& e) {
    return error(std::string("structure error (") + kind_name(e.kind) + ")", e.what(), 1);
  } catch (const std::exception& e) {
    return error("error", e.what(), 1);
  }
  return 2;
}
