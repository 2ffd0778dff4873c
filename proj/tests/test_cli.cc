#include <filesystem>
#include <sstream>

#include "cli.h"
#include "doctest.h"
#include "maidkit/equilibria.h"
#include "maidkit/io.h"
#include "support/oracles.h"

using namespace maidkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Data(const std::string& name) {
  return std::string(MAIDKIT_DATA_DIR) + "/" + name;
}

std::filesystem::path TempDir() {
  auto dir = std::filesystem::temp_directory_path() / "maidkit_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string Write(const std::string& name, const std::string& text) {
  std::string path = (TempDir() / name).string();
  WriteFile(path, text);
  return path;
}

}  // namespace

TEST_CASE("solve prints the taxi equilibrium") {
  Run r = Cli({"solve", "--refinement=spe", Data("taxi.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out ==
        "# profile 1 (spe), utilities 1=5, 2=3\n"
        "D1 / - / e\nD2 / D1=e / c\nD2 / D1=c / e\n");
  Run ne = Cli({"solve", "--refinement", "ne", "builtin:taxi"});
  CHECK(ne.code == kExitOk);
  Maim taxi = ParseModel(ReadFile(Data("taxi.json")));
  auto parsed = ParseProfileTables(taxi, ne.out);
  CHECK(parsed == PureNash(taxi));
  for (const auto& p : parsed) CHECK(IsNash(taxi, p));
  CHECK(Cli({"--threads", "2", "solve", "--refinement=ne", "builtin:taxi"}).out == ne.out);
}

TEST_CASE("solve reports trembling-hand rejections") {
  Run r = Cli({"solve", "--refinement=thpe", Data("cyber-war.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("D1 / - / a") != std::string::npos);
  CHECK(r.out.find("/ n") == std::string::npos);
  CHECK(r.err.find("verdict no") != std::string::npos);
}

TEST_CASE("empty solution sets exit with 2") {
  const std::string pennies = R"({"name": "pennies", "agents": ["1", "2"], "nodes": [
    {"name": "D1", "kind": "decision", "owner": "1", "parents": [], "domain": ["h", "t"]},
    {"name": "D2", "kind": "decision", "owner": "2", "parents": [], "domain": ["h", "t"]},
    {"name": "U1", "kind": "utility", "owner": "1", "parents": ["D1", "D2"], "domain": [-1, 1]},
    {"name": "U2", "kind": "utility", "owner": "2", "parents": ["D1", "D2"], "domain": [-1, 1]}],
    "cpds": [
    {"node": "U1", "rows": [
      {"context": {"D1": "h", "D2": "h"}, "value": 1},
      {"context": {"D1": "h", "D2": "t"}, "value": -1},
      {"context": {"D1": "t", "D2": "h"}, "value": -1},
      {"context": {"D1": "t", "D2": "t"}, "value": 1}]},
    {"node": "U2", "rows": [
      {"context": {"D1": "h", "D2": "h"}, "value": -1},
      {"context": {"D1": "h", "D2": "t"}, "value": 1},
      {"context": {"D1": "t", "D2": "h"}, "value": 1},
      {"context": {"D1": "t", "D2": "t"}, "value": -1}]}]})";
  std::string path = Write("pennies.json", pennies);
  Run r = Cli({"solve", "--refinement=ne", path});
  CHECK(r.code == kExitEmpty);
  CHECK(r.out.empty());
  CHECK(r.err.find("pennies.json") != std::string::npos);
}

TEST_CASE("analyze job hiring") {
  Run r = Cli({"analyze", "--format=table", Data("job-hiring.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("components: 1\n") != std::string::npos);
  CHECK(r.out.find("D1 -> D2") != std::string::npos);
  CHECK(r.out.find("D2 -> D1") != std::string::npos);
  Run dot = Cli({"analyze", "builtin:job-hiring"});
  CHECK(dot.out.find("digraph condensed") != std::string::npos);
}

TEST_CASE("validate") {
  std::string empty = Write("empty.json", R"({"name": "e", "agents": [], "nodes": [], "cpds": []})");
  Run r = Cli({"validate", empty});
  CHECK(r.code == kExitOk);
  CHECK(r.err.find("no nodes") != std::string::npos);

  std::string bad = Write("bad.json", R"({"name": "b", "agents": ["1"], "nodes": [
      {"name": "A", "kind": "chance", "parents": [], "domain": ["0", "1"]}],
      "cpds": [{"node": "A", "rows": [{"context": {}, "dist": {"0": 0.3}}]}]})");
  r = Cli({"validate", bad});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("bad.json") != std::string::npos);
  CHECK(r.err.find("'A'") != std::string::npos);
  CHECK(r.err.find("row does not sum to 1") != std::string::npos);

  r = Cli({"validate", (TempDir() / "missing.json").string()});
  CHECK(r.code == kExitIo);
  CHECK(r.err.find("missing.json") != std::string::npos);

  std::string garbage = Write("garbage.json", "{\"nodes\": [");
  CHECK(Cli({"validate", garbage}).code == kExitIo);
  CHECK(Cli({"validate", "builtin:nope"}).code == kExitIo);
  CHECK(Cli({"frobnicate"}).code == kExitIo);
}

TEST_CASE("convert to a game tree") {
  Run a = Cli({"convert", "--to=efg", "--mode=full", Data("job-hiring.json")});
  Run b = Cli({"convert", "--to=efg", "--mode=full", Data("job-hiring.json")});
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  testing::EfgText parsed;
  std::string error;
  CHECK_MESSAGE(testing::ReadEfgText(a.out, &parsed, &error), error);
  Run json = Cli({"convert", "--to=efg", "--format=json", "builtin:taxi"});
  CHECK(ParseEfgDocument(json.out).NumNodes() == 7);
}

TEST_CASE("convert to a model") {
  Run r = Cli({"convert", "--to=maim", Data("absentminded-driver.json")});
  REQUIRE(r.code == kExitOk);
  Maim m = ParseModel(r.out);
  CHECK(Validate(m).empty());
  CHECK(m.graph.Find("X_D1_2") >= 0);
  std::string out = (TempDir() / "taxi-model.json").string();
  CHECK(Cli({"convert", "--to=maim", Data("taxi-tree-merged.json"), "-o", out}).code ==
        kExitOk);
  CHECK(ParseModel(ReadFile(out)).graph.Decisions().size() == 2);
}

TEST_CASE("subgames and drawing") {
  auto dir = TempDir() / "subgames";
  std::filesystem::remove_all(dir);
  Run r = Cli({"subgames", "builtin:two-stage", "--emit", dir.string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("base 5 (proper): {D2, U2}") != std::string::npos);
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    CHECK(Validate(ParseModel(ReadFile(e.path().string()))).empty());
    ++files;
  }
  CHECK(files == 8);
  Run dot = Cli({"export-dot", "builtin:cyber-war"});
  CHECK(dot.out.find("agent=\"2\"") != std::string::npos);
  CHECK(dot.out.find("fillcolor=") != std::string::npos);
}
