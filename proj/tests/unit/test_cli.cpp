#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "support.hpp"

using namespace spr;
using namespace spr::cli;
using nlohmann::json;

namespace {

const std::string kData = SPR_DATA_DIR;

// Runs the spr binary with stdout redirected to `out`; returns its exit status.
int spr_run(const std::string& args, const std::string& out = "/dev/null") {
  const std::string cmd = std::string(SPR_BINARY) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json minimal_doc() {
  return json::parse(R"({"chart": {"coords": ["x", "y", "z"]},
                         "frame": [["1", "0", "-y/2"], ["0", "1", "x/2"]],
                         "signature": [1, 1]})");
}

std::string schema_path(const json& doc) {
  try {
    (void)load_document(doc, {});
  } catch (const SchemaError& e) {
    return e.path;
  }
  return "";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("document schema") {
    const LoadedStructure ok = load_document(minimal_doc(), {});
    CHECK(ok.structure.dim() == 3);
    CHECK(ok.tasks.empty());

    json d = minimal_doc();
    d["frame"][1] = json::array({"0", "1"});
    CHECK(schema_path(d) == "frame[1]");
    d = minimal_doc();
    d["signature"] = json::array({1, 2});
    CHECK(schema_path(d) == "signature[1]");
    d = minimal_doc();
    d["signature"] = json::array({1});
    CHECK(schema_path(d) == "signature");
    d = minimal_doc();
    d["frame"][0][0] = "1 +";
    CHECK(schema_path(d) == "frame[0][0]");
    d = minimal_doc();
    d["extra"] = 1;
    CHECK(schema_path(d) == "$");
    d = minimal_doc();
    d["chart"]["domain"] = json{{"w", json::array({0, 1})}};
    CHECK(schema_path(d) == "chart.domain.w");
    d = minimal_doc();
    d["chart"]["domain"] = json{{"x", json::array({1, 0})}};
    CHECK(schema_path(d) == "chart");
    d = minimal_doc();
    d["tasks"] = json::array({json{{"kind", "lift"}}});
    CHECK(schema_path(d) == "tasks[0].kind");
    d = minimal_doc();
    d["tasks"] = json::array({json{{"kind", "ew"}}});
    CHECK(schema_path(d) == "tasks[0]");
    d = minimal_doc();
    d["tasks"] = json::array({json{{"kind", "isometry"}, {"map", json::array({"x"})}}});
    CHECK(schema_path(d) == "tasks[0].map");

    d = minimal_doc();
    d["frame"] = json::parse(R"([["1", "0", "0"], ["0", "1", "0"]])");
    CHECK_THROWS_AS((void)load_document(d, {}), StructureError);
  }

  TEST_CASE("values") {
    const Chart c = spr::test::xyz();
    CHECK(spr::test::same(expression_value(json(3), c, "c"), Expr(3)));
    CHECK(spr::test::same(expression_value(json("exp(z)"), c, "c"), c.parse("exp(z)")));
    CHECK(spr::test::same(rational_value(json("1/2"), "eps"), Expr::rational(1, 2)));
    CHECK_THROWS_AS((void)rational_value(json("x"), "eps"), SchemaError);
    CHECK_THROWS_AS((void)rational_value(json(0.5), "eps"), SchemaError);
  }

  TEST_CASE("reports") {
    const LoadedStructure flat = load_builtin("heisenberg3-riem", {});
    const Outcome inv = cmd_invariants(flat);
    CHECK(inv.report["kappa"] == "0");
    CHECK(inv.report["symmetric_case"]["flat"] == true);

    const Outcome curv = cmd_curvature(flat, Expr(1));
    CHECK(curv.passed);
    CHECK(curv.report["decomposition"][0]["curvature"] == print(Expr::rational(-3, 4)));

    const Outcome hyp = cmd_invariants(load_builtin("hyperbolic-lift", {}));
    CHECK(hyp.report["kappa"] == print(Expr(-1)));

    const Outcome ew = cmd_ew(load_builtin("hyperbolic-lift", {}), {Expr(1), std::nullopt, false});
    CHECK(ew.passed);
    CHECK(ew.report["predicted"]["c"] == print(Expr::rational(-1, 2)));
    const Outcome none = cmd_ew(flat, {Expr(1), std::nullopt, false});
    CHECK_FALSE(none.passed);
    CHECK(none.report["predicted"]["kind"] == "no_solution");

    IsometryOptions io;
    io.family = 2;
    const Outcome iso = cmd_isometry(load_builtin("heisenberg5-case2", {}), io);
    CHECK(iso.passed);
    CHECK(iso.report["family"]["ranks"][0]["rank"] == 7);

    const std::string text = render_text(json{{"b", json::array({1, 2})}, {"a", json{{"c", "x"}}}});
    CHECK(text == "a.c  x\nb    [1, 2]\n");
  }

  TEST_CASE("exit codes") {
    CHECK(spr_run("invariants --builtin heisenberg3-riem") == 0);
    CHECK(spr_run("run --structure " + kData + "/heisenberg3_lorentz.json") == 0);
    CHECK(spr_run("run --structure " + kData + "/hyperbolic_shear.json") == 1);
    CHECK(spr_run("ew --builtin heisenberg3-riem --epsilon 0") == 1);
    CHECK(spr_run("invariants --structure " + kData + "/not_contact.json") == 1);
    CHECK(spr_run("invariants --structure " + kData + "/bad_frame.json") == 2);
    CHECK(spr_run("invariants --structure " + kData + "/missing.json") == 2);
    CHECK(spr_run("invariants --builtin no-such-structure") == 2);
    CHECK(spr_run("invariants") == 2);
    CHECK(spr_run("frobnicate") == 2);
    CHECK(spr_run("ew --builtin hyperbolic-lift --epsilon x") == 2);
    CHECK(spr_run("selftest --only 1 --only 6") == 0);
  }

  TEST_CASE("selftest verdicts do not depend on the seed") {
    for (const char* seed : {"1", "2", "3"}) {
      CAPTURE(seed);
      CHECK(spr_run(std::string("selftest --seed ") + seed + " --only 3 --only 7 --only 9 --only 10 --cases 30") == 0);
    }
  }

  TEST_CASE("reports are byte-identical for a fixed seed") {
    const std::string a = "/tmp/spr_cli_test_a.json";
    const std::string b = "/tmp/spr_cli_test_b.json";
    const std::string args = "curvature --builtin twisted-heisenberg --c 2 --seed 7 --json -";
    REQUIRE(spr_run(args, a) == 0);
    REQUIRE(spr_run(args, b) == 0);
    const std::string ja = slurp(a);
    CHECK(!ja.empty());
    CHECK(ja == slurp(b));
    const json parsed = json::parse(ja);
    CHECK(parsed["seed"] == 7);
    CHECK(parsed["command"] == "curvature");
    CHECK_FALSE(parsed.contains("seconds"));
    // Keys come out sorted.
    CHECK(ja.find("\"c\"") < ja.find("\"command\""));
  }
}
