#include "doctest.h"
#include "maidkit/builtin.h"
#include "maidkit/relevance.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace maidkit;
using namespace maidkit::testing;

namespace {

MaidGraph Chain() {
  // A -> B -> C, A <- E -> C, C -> F, B -> G <- H.
  MaidGraph g;
  for (const char* n : {"A", "B", "C", "E", "F", "G", "H"}) {
    g.AddNode(n, NodeKind::kChance);
  }
  auto e = [&](const char* a, const char* b) { g.AddEdge(g.Index(a), g.Index(b)); };
  e("A", "B");
  e("B", "C");
  e("E", "A");
  e("E", "C");
  e("C", "F");
  e("B", "G");
  e("H", "G");
  return g;
}

}  // namespace

TEST_CASE("d-separation basics") {
  MaidGraph g = Chain();
  auto i = [&](const char* n) { return g.Index(n); };
  CHECK_FALSE(DSeparated(g, {i("A")}, {i("C")}, {}));
  CHECK_FALSE(DSeparated(g, {i("A")}, {i("C")}, {i("B")}));
  CHECK(DSeparated(g, {i("A")}, {i("C")}, MakeNodeSet({i("B"), i("E")})));
  // Collider at G opens only when G or a descendant is observed.
  CHECK(DSeparated(g, {i("B")}, {i("H")}, {}));
  CHECK_FALSE(DSeparated(g, {i("B")}, {i("H")}, {i("G")}));
  // Collider at C opened through its child F.
  CHECK(DSeparated(g, {i("B")}, {i("E")}, {i("A")}));
  CHECK_FALSE(DSeparated(g, {i("B")}, {i("E")}, MakeNodeSet({i("A"), i("F")})));
  CHECK(DSeparated(g, {}, {i("E")}, {}));
}

TEST_CASE("active trails agree with path enumeration") {
  Rng rng(21);
  for (int t = 0; t < 80; ++t) {
    const int n = Uniform(rng, 2, 8);
    MaidGraph g = RandomDag(rng, n, 0.35);
    int x = Uniform(rng, 0, n - 1), y = Uniform(rng, 0, n - 1);
    if (x == y) continue;
    NodeSet w;
    for (int v = 0; v < n; ++v) {
      if (v != x && v != y && Coin(rng, 0.3)) w.push_back(v);
    }
    CAPTURE(t);
    CHECK(DSeparated(g, {x}, {y}, w) == PathDSeparated(g, x, y, w));
    NodeSet reach = Reachable(g, {x}, w);
    CHECK(Contains(reach, y) == !PathDSeparated(g, x, y, w));
  }
}

TEST_CASE("relevance graphs of the example games") {
  Maim taxi = builtin::Taxi();
  const int t1 = taxi.graph.Index("D1"), t2 = taxi.graph.Index("D2");
  RelevanceGraph rt = BuildRelevanceGraph(taxi.graph);
  CHECK(rt.HasEdge(t1, t2));
  CHECK_FALSE(rt.HasEdge(t2, t1));
  CondensedRelevanceGraph ct = Condense(taxi.graph, rt);
  REQUIRE(ct.components.size() == 2);
  // The observed decision comes last.
  CHECK(ct.components[0] == NodeSet{t2});
  CHECK(ct.Descendants(ct.ComponentOf(t1)) == std::vector<int>{ct.ComponentOf(t2)});

  Maim job = builtin::JobHiring();
  const int j1 = job.graph.Index("D1"), j2 = job.graph.Index("D2");
  RelevanceGraph rj = BuildRelevanceGraph(job.graph);
  CHECK(rj.HasEdge(j1, j2));
  CHECK(rj.HasEdge(j2, j1));
  CHECK(Condense(job.graph, rj).components.size() == 1);
  CHECK(RReachable(job.graph, j2, j1));
  CHECK(RelevantNodes(job.graph, j2) ==
        NodeSet{job.graph.Index("X"), j1, job.graph.Index("U2")});

  Maim two = builtin::TwoStage();
  RelevanceGraph r2 = BuildRelevanceGraph(two.graph);
  CHECK(r2.edges.empty());
}

TEST_CASE("semantic relevance witnesses imply graphical edges") {
  Rng rng(22);
  int witnessed = 0;
  for (int t = 0; t < 40; ++t) {
    Maim m = RandomMaim(rng, MaimShape{5, 2, 2, 2});
    if (!Validate(m).empty()) continue;
    NodeSet ds = m.graph.Decisions();
    if (ds.size() < 2) continue;
    RelevanceGraph rel = BuildRelevanceGraph(m.graph);
    for (int a : ds) {
      for (int b : ds) {
        if (a == b) continue;
        RelevanceWitness w = StrategicallyRelevantSemantic(m, a, b);
        if (w.verdict == SemanticRelevance::kYes) {
          ++witnessed;
          CHECK(rel.HasEdge(a, b));
        }
      }
    }
  }
  CHECK(witnessed > 0);
}

TEST_CASE("semantic relevance on job hiring") {
  Maim job = builtin::JobHiring();
  const int j1 = job.graph.Index("D1"), j2 = job.graph.Index("D2");
  CHECK(StrategicallyRelevantSemantic(job, j2, j1).verdict == SemanticRelevance::kYes);
  CHECK(StrategicallyRelevantSemantic(job, j1, j2).verdict == SemanticRelevance::kYes);
  CHECK_THROWS_AS(StrategicallyRelevantSemantic(job, j1, j1), Error);
}
