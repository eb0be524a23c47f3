#include "structure_doc.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace spr::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kTopKeys{"chart", "frame", "signature", "tasks", "name"};
const std::set<std::string> kChartKeys{"coords", "domain", "excluded"};
const std::set<std::string> kTaskKinds{"invariants", "curvature", "ew", "isometry"};

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) throw SchemaError(path, "unexpected key '" + k + "'");
  }
}

const json& required(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw SchemaError(path, std::string("missing key '") + key + "'");
  return obj.at(key);
}

Expr parse_in(const Chart& chart, const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected an expression string");
  try {
    return chart.parse(v.get<std::string>());
  } catch (const ParseError& e) {
    throw SchemaError(path, e.what());
  }
}

Chart read_chart(const json& c) {
  if (!c.is_object()) throw SchemaError("chart", "expected an object");
  only_keys(c, kChartKeys, "chart");
  const json& coords = required(c, "coords", "chart");
  if (!coords.is_array() || coords.empty()) throw SchemaError("chart.coords", "expected a non-empty array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!coords[i].is_string()) throw SchemaError("chart.coords[" + std::to_string(i) + "]", "expected a string");
    names.push_back(coords[i].get<std::string>());
  }
  std::vector<Interval> domain(names.size());
  if (c.contains("domain")) {
    const json& d = c.at("domain");
    if (!d.is_object()) throw SchemaError("chart.domain", "expected an object");
    for (const auto& [k, v] : d.items()) {
      const std::string p = "chart.domain." + k;
      const auto it = std::find(names.begin(), names.end(), k);
      if (it == names.end()) throw SchemaError(p, "not a chart coordinate");
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw SchemaError(p, "expected [lo, hi]");
      domain[static_cast<std::size_t>(it - names.begin())] = {v[0].get<double>(), v[1].get<double>()};
    }
  }
  Chart chart = [&] {
    try {
      return Chart(names, domain);
    } catch (const ConfigurationError& e) {
      throw SchemaError("chart", e.what());
    }
  }();
  if (c.contains("excluded")) {
    const json& ex = c.at("excluded");
    if (!ex.is_array()) throw SchemaError("chart.excluded", "expected an array");
    for (std::size_t i = 0; i < ex.size(); ++i)
      chart.add_excluded(simplify(parse_in(chart, ex[i], "chart.excluded[" + std::to_string(i) + "]")));
  }
  return chart;
}

void check_tasks(const json& tasks, int dim) {
  if (!tasks.is_array()) throw SchemaError("tasks", "expected an array");
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const std::string p = "tasks[" + std::to_string(i) + "]";
    const json& t = tasks[i];
    if (!t.is_object()) throw SchemaError(p, "expected an object");
    const json& kind = required(t, "kind", p);
    if (!kind.is_string() || !kTaskKinds.count(kind.get<std::string>()))
      throw SchemaError(p + ".kind", "expected one of invariants, curvature, ew, isometry");
    const std::string k = kind.get<std::string>();
    if (k == "invariants") only_keys(t, {"kind"}, p);
    if (k == "curvature") only_keys(t, {"kind", "c"}, p);
    if (k == "ew") {
      only_keys(t, {"kind", "epsilon", "c", "coordinate_family"}, p);
      (void)required(t, "epsilon", p);
    }
    if (k == "isometry") {
      only_keys(t, {"kind", "map", "inverse", "label"}, p);
      for (const char* key : {"map", "inverse"}) {
        if (!t.contains(key)) {
          if (std::string(key) == "map") throw SchemaError(p, "missing key 'map'");
          continue;
        }
        const json& m = t.at(key);
        if (!m.is_array() || static_cast<int>(m.size()) != dim)
          throw SchemaError(p + "." + key, "expected " + std::to_string(dim) + " component expressions");
      }
    }
  }
}

}  // namespace

Expr expression_value(const json& v, const Chart& chart, const std::string& path) {
  if (v.is_number_integer()) return Expr(v.get<long long>());
  return simplify(parse_in(chart, v, path));
}

Expr rational_value(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Expr(v.get<long long>());
  if (!v.is_string()) throw SchemaError(path, "expected a rational such as \"1/2\"");
  try {
    return Expr::rational(v.get<std::string>());
  } catch (const std::exception&) {
    throw SchemaError(path, "'" + v.get<std::string>() + "' is not a rational constant");
  }
}

LoadedStructure load_document(const json& doc, const SamplingPlan& plan) {
  if (!doc.is_object()) throw SchemaError("$", "expected an object");
  only_keys(doc, kTopKeys, "$");
  if (doc.contains("name") && !doc.at("name").is_string()) throw SchemaError("name", "expected a string");
  const Chart chart = read_chart(required(doc, "chart", "$"));

  const json& frame = required(doc, "frame", "$");
  if (!frame.is_array()) throw SchemaError("frame", "expected an array of fields");
  std::vector<VectorField> fields;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const std::string p = "frame[" + std::to_string(i) + "]";
    if (!frame[i].is_array() || static_cast<int>(frame[i].size()) != chart.dim())
      throw SchemaError(p, "expected " + std::to_string(chart.dim()) + " component expressions");
    std::vector<Expr> comps;
    for (std::size_t k = 0; k < frame[i].size(); ++k)
      comps.push_back(parse_in(chart, frame[i][k], p + "[" + std::to_string(k) + "]"));
    fields.emplace_back(comps);
  }

  const json& sig = required(doc, "signature", "$");
  if (!sig.is_array() || sig.size() != frame.size())
    throw SchemaError("signature", "expected one entry per frame field");
  std::vector<int> signature;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (!sig[i].is_number_integer() || (sig[i].get<int>() != 1 && sig[i].get<int>() != -1))
      throw SchemaError("signature[" + std::to_string(i) + "]", "expected 1 or -1");
    signature.push_back(sig[i].get<int>());
  }

  LoadedStructure out{doc.value("name", std::string("document")), build_structure(chart, fields, signature, plan)};
  if (doc.contains("tasks")) {
    check_tasks(doc.at("tasks"), chart.dim());
    out.tasks = doc.at("tasks");
  }
  return out;
}

LoadedStructure load_file(const std::string& path, const SamplingPlan& plan) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path, e.what());
  }
  return load_document(doc, plan);
}

LoadedStructure load_builtin(const std::string& name, const SamplingPlan& plan) {
  return {name, builtin(name, plan).structure};
}

}  // namespace spr::cli
