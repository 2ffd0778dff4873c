#include <algorithm>

#include "doctest.h"
#include "maidkit/builtin.h"
#include "maidkit/model.h"

using namespace maidkit;

namespace {

bool HasRule(const std::vector<Violation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

Maim Small() {
  Maim m;
  m.graph.AddAgent("1");
  int x = m.AddNode("X", NodeKind::kChance, -1, Domain{{"a", "b", "c"}, {}});
  int y = m.AddNode("Y", NodeKind::kChance, -1, Domain{{"0", "1"}, {}});
  int d = m.AddNode("D", NodeKind::kDecision, 0, Domain{{"l", "r"}, {}});
  int u = m.AddNode("U", NodeKind::kUtility, 0, Domain{{"0", "1"}, {0, 1}});
  m.graph.AddEdge(x, d);
  m.graph.AddEdge(y, d);
  m.graph.AddEdge(d, u);
  std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
  m.InitCpd(x).SetRow(0, third);
  Cpd& cy = m.InitCpd(y);
  cy.SetRow(0, std::vector<double>{0.5, 0.5});
  Cpd& cu = m.InitCpd(u);
  cu.SetDeterministic(0, 1);
  cu.SetDeterministic(1, 0);
  return m;
}

}  // namespace

TEST_CASE("cpd rows: first parent most significant") {
  Cpd c(5, {1, 2}, {3, 2}, 2);
  CHECK(c.num_rows() == 6);
  std::vector<int> v{2, 1};
  CHECK(c.RowIndex(v) == 5);
  std::vector<int> w{1, 0};
  CHECK(c.RowIndex(w) == 2);
  CHECK(c.RowValues(3) == std::vector<int>{1, 1});
  Assignment a(6, kUnassigned);
  a[1] = 2;
  a[2] = 0;
  CHECK(c.RowOf(a) == 4);
  c.SetDeterministic(4, 1);
  CHECK(c.at(4, 0) == 0.0);
  CHECK(c.at(4, 1) == 1.0);
}

TEST_CASE("decision contexts") {
  Maim m = Small();
  int d = m.graph.Index("D");
  CHECK(m.NumContexts(d) == 6);
  CHECK(m.FormatContext(d, 3) == "X=b,Y=1");
  Assignment a = m.ContextAssignment(d, 5);
  CHECK(a[m.graph.Index("X")] == 2);
  CHECK(a[m.graph.Index("Y")] == 1);
  CHECK(a[d] == kUnassigned);
  CHECK(Validate(m).empty());
}

TEST_CASE("validation reports each broken invariant") {
  SUBCASE("row sum") {
    Maim m = Small();
    m.cpds[m.graph.Index("Y")]->at(0, 0) = 0.7;
    CHECK(HasRule(Validate(m), "row does not sum to 1"));
    CHECK_THROWS_AS(RequireValid(m), Error);
  }
  SUBCASE("utility children") {
    Maim m = Small();
    int z = m.AddNode("Z", NodeKind::kChance, -1, Domain{{"0"}, {}});
    m.graph.AddEdge(m.graph.Index("U"), z);
    m.InitCpd(z).SetDeterministic(0, 0);
    m.InitCpd(z).SetDeterministic(1, 0);
    CHECK(HasRule(Validate(m), "utility has children"));
  }
  SUBCASE("cycle") {
    Maim m = Small();
    m.graph.AddEdge(m.graph.Index("D"), m.graph.Index("Y"));
    CHECK(HasRule(Validate(m), "graph cyclic"));
  }
  SUBCASE("missing cpd") {
    Maim m = Small();
    m.cpds[m.graph.Index("X")].reset();
    CHECK(HasRule(Validate(m), "missing cpd"));
  }
  SUBCASE("stale cpd after an edge change") {
    Maim m = Small();
    m.graph.AddEdge(m.graph.Index("X"), m.graph.Index("Y"));
    CHECK(HasRule(Validate(m), "cpd parents mismatch"));
  }
  SUBCASE("utility not deterministic") {
    Maim m = Small();
    Cpd& cu = *m.cpds[m.graph.Index("U")];
    cu.SetRow(0, std::vector<double>{0.5, 0.5});
    CHECK(HasRule(Validate(m), "utility not deterministic"));
  }
  SUBCASE("decision with cpd") {
    Maim m = Small();
    int d = m.graph.Index("D");
    m.cpds[d] = m.EmptyRule(d);
    CHECK(HasRule(Validate(m), "decision has cpd"));
  }
}

TEST_CASE("profiles") {
  Maim m = Small();
  int d = m.graph.Index("D");
  PolicyProfile p = UniformProfile(m);
  CHECK(p.IsFull(m));
  CHECK(p.Rule(d).at(4, 1) == doctest::Approx(0.5));
  CHECK_NOTHROW(CheckProfile(m, p, true));
  PolicyProfile empty;
  CHECK_THROWS_AS(CheckProfile(m, empty, true), Error);
  CHECK_NOTHROW(CheckProfile(m, empty, false));
  PolicyProfile bad = p;
  bad.rules.at(d).at(0, 0) = 0.9;
  CHECK_THROWS_AS(CheckProfile(m, bad, true), Error);
  CHECK_THROWS_AS(PureRule(m, d, {0, 1}), Error);
  DecisionRule r = PureRule(m, d, {0, 1, 0, 1, 0, 1});
  CHECK(r.at(1, 1) == 1.0);
}

TEST_CASE("built-in models are valid") {
  for (const std::string& name : builtin::Names()) {
    CAPTURE(name);
    CHECK(Validate(builtin::ByName(name)).empty());
  }
  CHECK_THROWS_AS(builtin::ByName("nope"), Error);
}
