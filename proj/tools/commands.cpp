#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "spr/acceptance.hpp"

namespace spr::cli {

namespace {

using nlohmann::json;

json expr(const Expr& e) { return print(e); }

json entry(int i, int j, int k, const Expr& v) { return json{{"i", i}, {"j", j}, {"k", k}, {"value", print(v)}}; }

json structure_header(const LoadedStructure& in) {
  const SubPRStructure& s = in.structure;
  return json{{"name", in.name},
              {"dim", s.dim()},
              {"coords", s.chart().names()},
              {"signature", s.signature()}};
}

ZeroVerdict worst_of(const std::vector<ZeroVerdict>& vs) {
  ZeroVerdict w;
  for (const auto& v : vs) {
    if (!v.zero()) return v;
    if (v.kind == ZeroVerdict::Kind::NumericZero && (w.kind == ZeroVerdict::Kind::SymbolicZero || v.max_abs > w.max_abs))
      w = v;
  }
  return w;
}

json isometry_json(const IsometryVerdict& v) {
  return json{{"preserves_distribution", to_json(v.preserves_d)},
              {"metric", to_json(v.metric_worst)},
              {"transition", to_json(v.transition)},
              {"lambda", expr(v.lambda)},
              {"alpha_proportional", to_json(v.alpha_proportional)},
              {"lambda_one", to_json(v.lambda_one)},
              {"reeb_preserved", to_json(v.reeb_preserved)},
              {"is_isometry", v.is_isometry()},
              {"passes", v.passes()}};
}

// Full check of a candidate map: isometry verdicts plus the alpha, Reeb and G^1 consequences.
json check_map(const PointMap& f, const PointMap& finv, const SubPRStructure& s, bool& ok) {
  const IsometryVerdict v = is_isometry(f, finv, s);
  const ExtensionReport e = alpha_reeb_consequence(f, finv, s);
  json out = isometry_json(v);
  out["g1_preserved"] = to_json(e.g1_preserved);
  ok = v.passes() && e.ok();
  out["passed"] = ok;
  return out;
}

bool heisenberg5_chart_p(const Chart& c) { return c.names() == heisenberg5_chart().names(); }

std::vector<double> reference_point(const SubPRStructure& s) { return s.tester().points().front(); }

}  // namespace

json to_json(const ZeroVerdict& v) {
  json out{{"kind", std::string(to_string(v.kind))}, {"max_abs", v.max_abs}, {"samples", v.samples_used}};
  if (!v.zero()) out["witness"] = json{{"point", v.witness_point}, {"value", v.witness_value}};
  return out;
}

json to_json(const ExprMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(print(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const std::vector<Expr>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(print(e));
  return out;
}

Outcome cmd_invariants(const LoadedStructure& in) {
  const SubPRStructure& s = in.structure;
  const int m = s.dim();
  Outcome out;
  json& r = out.report;
  r["structure"] = structure_header(in);
  std::vector<Expr> alpha;
  for (int k = 0; k < m; ++k) alpha.push_back(s.alpha().get({k}));
  r["alpha"] = to_json(alpha);
  std::vector<Expr> reeb;
  for (int k = 0; k < m; ++k) reeb.push_back(s.reeb()[k]);
  r["reeb"] = to_json(reeb);
  r["normalization"] = expr(s.normalization());
  json cs = json::array();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        if (!s.c(i, j, k).is_symbolic_zero()) cs.push_back(entry(i, j, k, s.c(i, j, k)));
      }
    }
  }
  r["structure_functions"] = cs;
  const HData h = h_invariant(s);
  r["h"] = to_json(h.h);
  r["h_sharp"] = to_json(h.h_sharp);
  r["det_h_sharp"] = expr(h.det_h_sharp);
  if (s.n() == 1) r["kappa"] = expr(kappa_dim3(s));
  json pairs = json::array();
  for (int i = 1; i <= 2 * s.n(); ++i) {
    for (int j = i + 1; j <= 2 * s.n(); ++j)
      pairs.push_back(json{{"i", i}, {"j", j}, {"value", print(kappa_general(s, i, j))}});
  }
  r["kappa_pairs"] = pairs;
  const SymmetricCaseFlags f = symmetric_case_check(s);
  json sym{{"h_zero", to_json(f.h_zero)}, {"lie_omega_zero", to_json(f.lie_omega_zero)}, {"symmetric", f.symmetric}};
  if (s.n() == 1) sym["flat"] = f.flat;
  r["symmetric_case"] = sym;
  return out;
}

Outcome cmd_curvature(const LoadedStructure& in, const Expr& c) {
  const SubPRStructure& s = in.structure;
  const int m = s.dim();
  Outcome out;
  json& r = out.report;
  r["structure"] = structure_header(in);
  r["c"] = expr(c);
  const ExprMatrix g = extend_metric(s, c);
  r["metric"] = to_json(g);

  const ConnectionCoeffs lc = levi_civita(g, s);
  const ConnectionCoeffs cf = closed_form_connection(s, c);
  const ZeroVerdict agree = compare_connections(cf, lc, s.tester());
  const ConnectionReport check = verify_connection(lc, s.frame(), g, std::vector<Expr>(static_cast<std::size_t>(m)));
  json table = json::array();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        if (!lc(i, j, k).is_symbolic_zero()) table.push_back(entry(i, j, k, lc(i, j, k)));
      }
    }
  }
  std::vector<ZeroVerdict> reeb;
  for (int k = 0; k < m; ++k) reeb.push_back(s.tester()(lc(0, 0, k)));
  r["connection"] = json{{"levi_civita", table},
                         {"closed_form_agreement", to_json(agree)},
                         {"torsion", to_json(check.worst_torsion)},
                         {"compatibility", to_json(check.worst_compatibility)},
                         {"reeb_geodesic", to_json(worst_of(reeb))}};

  CurvatureData curv = riemann(lc, s.frame(), g);
  ricci(curv, g);
  json sec = json::array();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      json e{{"i", i}, {"j", j}};
      try {
        e["value"] = print(sectional(curv, g, i, j, s.tester()));
      } catch (const DegeneratePlaneError&) {
        e["value"] = "degenerate";
      }
      sec.push_back(e);
    }
  }
  r["sectional"] = sec;
  r["ricci"] = to_json(curv.ricci);
  r["ricci_sym"] = to_json(curv.ricci_sym);
  r["scalar"] = expr(curv.scalar);

  const DecompositionReport d = decomposition_residual(s, c);
  json dec = json::array();
  for (const auto& e : d.entries) {
    dec.push_back(json{{"i", e.i},
                       {"j", e.j},
                       {"curvature", print(e.curvature)},
                       {"kappa", print(e.kappa)},
                       {"h_term", print(e.h_term)},
                       {"omega_term", print(e.omega_term)},
                       {"residual", to_json(e.verdict)}});
  }
  r["decomposition"] = dec;
  out.passed = agree.zero() && check.ok() && d.ok();
  r["passed"] = out.passed;
  return out;
}

Outcome cmd_ew(const LoadedStructure& in, const EwOptions& opts) {
  const SubPRStructure& s = in.structure;
  Outcome out;
  json& r = out.report;
  r["structure"] = structure_header(in);
  r["epsilon"] = expr(opts.epsilon);

  std::optional<Expr> c = opts.c;
  try {
    const PredictedC p = predicted_ew_constant(s, opts.epsilon);
    json pj{{"reason", p.reason}};
    switch (p.kind) {
      case PredictedC::Kind::Value:
        pj["kind"] = "value";
        pj["c"] = print(p.c);
        if (!c) c = p.c;
        break;
      case PredictedC::Kind::AnyNonzero:
        pj["kind"] = "any_nonzero";
        if (!c) c = Expr(1);
        break;
      case PredictedC::Kind::NoSolution:
        pj["kind"] = "no_solution";
        break;
    }
    r["predicted"] = pj;
  } catch (const HypothesisError& e) {
    r["predicted"] = json{{"kind", "hypothesis_failed"}, {"reason", e.what()}};
  }

  out.passed = false;
  if (c) {
    r["c"] = expr(*c);
    const EWVerdict v = ew_residual(canonical_pair(s, *c, opts.epsilon));
    r["residual"] = to_json(v.residual);
    r["verdict"] = to_json(v.worst);
    r["ricci_sym"] = to_json(v.curvature.ricci_sym);
    r["scalar"] = expr(v.curvature.scalar);
    r["einstein_weyl"] = v.is_einstein_weyl();
    out.passed = v.is_einstein_weyl();
    if (s.n() == 1) {
      try {
        r["ricci_pattern"] = to_json(worst_of(ricci_pattern_check(s, *c, opts.epsilon)));
        r["ricci_pattern_expected"] = to_json(expected_ricci_pattern(s, *c, opts.epsilon));
      } catch (const HypothesisError&) {
        // the closed-form pattern needs h = 0
      }
    }
  } else {
    r["einstein_weyl"] = false;
  }

  if (opts.coordinate_family) {
    try {
      const WeylPair fam = coordinate_family(opts.epsilon, SamplingPlan{});
      const EWVerdict v = ew_residual(fam);
      r["coordinate_family"] = json{{"metric", to_json(fam.g)},
                                    {"eta", to_json(fam.eta_frame)},
                                    {"verdict", to_json(v.worst)},
                                    {"einstein_weyl", v.is_einstein_weyl()}};
    } catch (const std::invalid_argument& e) {
      r["coordinate_family"] = json{{"error", e.what()}};
    }
  }
  r["passed"] = out.passed;
  return out;
}

Outcome cmd_isometry(const LoadedStructure& in, const IsometryOptions& opts) {
  const SubPRStructure& s = in.structure;
  Outcome out;
  json& r = out.report;
  r["structure"] = structure_header(in);
  const InfinitesimalReport reeb = is_infinitesimal_isometry(s.reeb(), s);
  r["reeb_infinitesimal"] =
      json{{"preserves_distribution", to_json(reeb.preserves_d)}, {"metric", to_json(reeb.metric)}, {"ok", reeb.ok()}};

  const std::vector<double> p = reference_point(s);
  const FrequencyData fd = compatibility_and_frequencies(s, p);
  json fj{{"point", p}, {"j", to_json(fd.j)}, {"compatible", to_json(fd.compatible)}, {"analysed", fd.analysed}};
  if (fd.analysed) {
    fj["frequencies"] = fd.frequencies;
    fj["constant"] = fd.constant;
    fj["block_sizes"] = fd.block_sizes;
    fj["predicted_dim"] = fd.predicted_dim;
    fj["bound"] = fd.bound;
  }
  r["frequencies"] = fj;

  const bool heis = heisenberg5_chart_p(s.chart());
  if ((opts.family || opts.translation) && !heis)
    throw SchemaError("isometry", "families and translations need the chart (x1, y1, x2, y2, z)");
  if (heis) {
    const Translation t = opts.translation.value_or(Translation{Expr(1), Expr(2), Expr(0), Expr(-1), Expr(3)});
    const MapPair left = bch_left_translation(t, s.chart(), Variant::Corrected);
    bool ok = false;
    json tj = check_map(left.map, left.inverse, s, ok);
    out.passed = out.passed && ok;
    const MapPair right = bch_left_translation(t, s.chart(), Variant::Stated);
    bool right_ok = false;
    tj["right_translation"] = check_map(right.map, right.inverse, s, right_ok);
    tj["t"] = to_json(std::vector<Expr>(t.begin(), t.end()));
    r["translation"] = tj;
  }
  if (opts.family) {
    const int fam = *opts.family;
    if (fam < 1 || fam > 3) throw SchemaError("family", "expected 1, 2 or 3");
    json members = json::array();
    for (int i = 1; i <= family_size(fam); ++i) {
      json mj{{"index", i}, {"theta", print(opts.theta)}};
      bool stated_ok = false;
      try {
        const PointMap f = isometry_family(fam, i, opts.theta, s.chart(), Variant::Stated);
        mj["stated"] = check_map(f, affine_inverse(f, s.chart()), s, stated_ok);
      } catch (const SingularMatrixError&) {
        mj["stated"] = json{{"error", "singular Jacobian"}, {"passed", false}};
      }
      bool ok = stated_ok;
      if (family_member_ambiguous(fam, i)) {
        bool corrected_ok = false;
        const PointMap f = isometry_family(fam, i, opts.theta, s.chart(), Variant::Corrected);
        mj["corrected"] = check_map(f, affine_inverse(f, s.chart()), s, corrected_ok);
        ok = ok || corrected_ok;
      }
      mj["passed"] = ok;
      out.passed = out.passed && ok;
      members.push_back(mj);
    }
    std::vector<VectorField> gens = translation_generators(s.chart());
    for (int i = 1; i <= family_size(fam); ++i) gens.push_back(family_generator(fam, i, s.chart()));
    const auto iso = linear_isotropy_generators(s);
    gens.insert(gens.end(), iso.begin(), iso.end());
    json ranks = json::array();
    for (const auto& q : {std::vector<double>(5, 0.0), p}) {
      try {
        const AlgebraDimension ad = algebra_dimension(gens, s, q);
        ranks.push_back(json{{"point", q}, {"rank", ad.rank}, {"bound", ad.bound}, {"within_bound", ad.within_bound()}});
        out.passed = out.passed && ad.within_bound();
      } catch (const NotAnIsometry& e) {
        ranks.push_back(json{{"point", q}, {"error", e.what()}, {"generator", e.generator}});
        out.passed = false;
      }
    }
    r["family"] = json{{"case", fam}, {"members", members}, {"generators", gens.size()}, {"ranks", ranks}};
  }
  r["passed"] = out.passed;
  return out;
}

Outcome cmd_run(const LoadedStructure& in) {
  const SubPRStructure& s = in.structure;
  Outcome out;
  json results = json::array();
  for (std::size_t n = 0; n < in.tasks.size(); ++n) {
    const json& t = in.tasks[n];
    const std::string path = "tasks[" + std::to_string(n) + "]";
    const std::string kind = t.at("kind").get<std::string>();
    Outcome o;
    if (kind == "invariants") {
      o = cmd_invariants(in);
    } else if (kind == "curvature") {
      o = cmd_curvature(in, t.contains("c") ? expression_value(t.at("c"), s.chart(), path + ".c") : Expr(1));
    } else if (kind == "ew") {
      EwOptions e{rational_value(t.at("epsilon"), path + ".epsilon"), std::nullopt,
                  t.value("coordinate_family", false)};
      if (t.contains("c")) e.c = expression_value(t.at("c"), s.chart(), path + ".c");
      o = cmd_ew(in, e);
    } else {
      PointMap f;
      for (std::size_t k = 0; k < t.at("map").size(); ++k)
        f.components.push_back(expression_value(t.at("map")[k], s.chart(), path + ".map"));
      o.report["structure"] = structure_header(in);
      if (t.contains("label")) o.report["label"] = t.at("label");
      try {
        PointMap finv;
        if (t.contains("inverse")) {
          for (std::size_t k = 0; k < t.at("inverse").size(); ++k)
            finv.components.push_back(expression_value(t.at("inverse")[k], s.chart(), path + ".inverse"));
        } else {
          finv = affine_inverse(f, s.chart());
        }
        bool ok = false;
        o.report["map"] = check_map(f, finv, s, ok);
        o.passed = ok;
      } catch (const std::exception& e) {
        o.report["map"] = json{{"error", e.what()}};
        o.passed = false;
      }
      o.report["passed"] = o.passed;
    }
    out.passed = out.passed && o.passed;
    results.push_back(json{{"kind", kind}, {"report", o.report}});
  }
  out.report["structure"] = structure_header(in);
  out.report["tasks"] = results;
  out.report["passed"] = out.passed;
  return out;
}

Outcome cmd_selftest(const SamplingPlan& plan, const std::vector<int>& only, int property_cases, bool timing) {
  acceptance::Options opts{plan, property_cases};
  Outcome out;
  json crit = json::array();
  for (int k = 1; k <= acceptance::criterion_count(); ++k) {
    if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
    const acceptance::Criterion c = acceptance::run_criterion(k, opts);
    json cj{{"number", c.number}, {"title", c.title}, {"passed", c.passed}, {"notes", c.notes}};
    if (timing) cj["seconds"] = c.seconds;
    crit.push_back(cj);
    out.passed = out.passed && c.passed;
  }
  out.report["criteria"] = crit;
  out.report["passed"] = out.passed;
  return out;
}

namespace {

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& lines) {
  const auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, lines);
    return;
  }
  if (j.is_array()) {
    const bool flat = std::none_of(j.begin(), j.end(), [](const json& v) { return v.is_structured(); });
    if (flat) {
      std::string s = "[";
      for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar(j[i]);
      lines.emplace_back(path, s + "]");
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", lines);
    return;
  }
  lines.emplace_back(path, scalar(j));
}

}  // namespace

std::string render_text(const json& report) {
  std::vector<std::pair<std::string, std::string>> lines;
  flatten(report, "", lines);
  std::size_t width = 0;
  for (const auto& [k, v] : lines) width = std::max(width, std::min<std::size_t>(k.size(), 56));
  std::ostringstream os;
  for (const auto& [k, v] : lines) os << std::left << std::setw(static_cast<int>(width)) << k << "  " << v << "\n";
  return os.str();
}

}  // namespace spr::cli
