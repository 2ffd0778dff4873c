#include "doctest.h"
#include "maidkit/builtin.h"
#include "maidkit/inference.h"
#include "maidkit/subgames.h"
#include "support/generators.h"

using namespace maidkit;
using namespace maidkit::testing;

namespace {

NodeSet Named(const MaidGraph& g, std::vector<std::string> names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(g.Index(n));
  return MakeNodeSet(out);
}

}  // namespace

TEST_CASE("subgame bases of the example games") {
  Maim two = builtin::TwoStage();
  const MaidGraph& g = two.graph;
  auto bases = SubgameBases(g);
  REQUIRE(bases.size() == 5);
  CHECK(bases[0] == Named(g, {"X", "D1", "D2", "U1", "U2"}));
  CHECK(bases[1] == Named(g, {"D1", "D2", "U1", "U2"}));
  CHECK(bases[2] == Named(g, {"X", "D1", "U1"}));
  CHECK(bases[3] == Named(g, {"D1", "U1"}));
  CHECK(bases[4] == Named(g, {"D2", "U2"}));

  Maim taxi = builtin::Taxi();
  auto tb = SubgameBases(taxi.graph);
  REQUIRE(tb.size() == 2);
  CHECK(tb[1] == Named(taxi.graph, {"D2", "U2"}));

  CHECK(SubgameBases(builtin::JobHiring().graph).size() == 1);
  CHECK(SubgameBases(builtin::CyberWar().graph).size() == 1);
}

TEST_CASE("minimal bases per decision set") {
  Maim two = builtin::TwoStage();
  const MaidGraph& g = two.graph;
  auto minimal = MinimalForDecisions(g, SubgameBases(g));
  REQUIRE(minimal.size() == 3);
  CHECK(minimal[0] == Named(g, {"D1", "D2", "U1", "U2"}));
  CHECK(minimal[1] == Named(g, {"D1", "U1"}));
  CHECK(minimal[2] == Named(g, {"D2", "U2"}));
}

TEST_CASE("base conditions") {
  Maim two = builtin::TwoStage();
  const MaidGraph& g = two.graph;
  CHECK_FALSE(CheckSubgameBase(g, Named(g, {"D1", "U1"})));
  CHECK(CheckSubgameBase(g, Named(g, {"D1"})));
  CHECK(CloseSubgameBase(g, Named(g, {"D1"})) == Named(g, {"D1", "U1"}));
  // A directed path X -> D1 -> U1 with D1 missing.
  CHECK(CheckSubgameBase(g, Named(g, {"X", "U1"})));
  CHECK_THROWS_AS(BuildMaidSubgame(g, Named(g, {"D1"})), Error);
}

TEST_CASE("closed sets on random graphs are bases") {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    Maim m = RandomMaim(rng);
    if (!Validate(m).empty()) continue;
    for (const NodeSet& b : SubgameBases(m.graph)) {
      CHECK_FALSE(CheckSubgameBase(m.graph, b));
    }
    NodeSet seed;
    for (int v = 0; v < m.NumNodes(); ++v) {
      if (Coin(rng, 0.3)) seed.push_back(v);
    }
    if (seed.empty()) continue;
    NodeSet closed = CloseSubgameBase(m.graph, seed);
    CHECK(SetDifference(seed, closed).empty());
    CHECK_FALSE(CheckSubgameBase(m.graph, closed));
  }
}

TEST_CASE("maim subgames instantiate the boundary") {
  Maim two = builtin::TwoStage();
  const MaidGraph& g = two.graph;
  MaidSubgame sub = BuildMaidSubgame(g, Named(g, {"D2", "U2"}));
  CHECK(sub.players == std::vector<int>{1});
  CHECK(sub.ToSub(g.Index("X")) == -1);
  CHECK(MaterialBoundary(g, sub.base) == Named(g, {"D1"}));
  auto subs = BuildMaimSubgames(two, sub);
  REQUIRE(subs.size() == 2);
  for (const auto& s : subs) {
    CHECK(Validate(s.model).empty());
    CHECK(IsFeasibleSubgame(two, s));
  }
  CHECK(subs[0].FormatBoundary(two) == "D1=c");
  CHECK(subs[1].FormatBoundary(two) == "D1=d");
  // In the D1=d subgame, U2 pays 1 only for f.
  const Maim& m = subs[1].model;
  int d2 = m.graph.Index("D2");
  CHECK(ExpectedUtility(m, ToPolicy(m, {{d2, {1}}}), 1) == doctest::Approx(1.0));
  CHECK(ExpectedUtility(m, ToPolicy(m, {{d2, {0}}}), 1) == doctest::Approx(0.0));
}

TEST_CASE("utilities no decision affects become chance nodes") {
  Maim two = builtin::TwoStage();
  int u3 = two.AddNode("U3", NodeKind::kUtility, 0, Domain{{"0", "1"}, {0, 1}});
  two.graph.AddEdge(two.graph.Index("X"), u3);
  Cpd& c = two.InitCpd(u3);
  c.SetDeterministic(0, 0);
  c.SetDeterministic(1, 1);
  REQUIRE(Validate(two).empty());
  const MaidGraph& g = two.graph;
  NodeSet all = Named(g, {"X", "D1", "D2", "U1", "U2", "U3"});
  MaidSubgame sub = BuildMaidSubgame(g, all);
  CHECK(sub.dropped_utilities == NodeSet{u3});
  CHECK(sub.graph.Kind(sub.ToSub(u3)) == NodeKind::kChance);
  CHECK(sub.players == std::vector<int>{0, 1});
  auto subs = BuildMaimSubgames(two, sub);
  REQUIRE(subs.size() == 1);
  CHECK(Validate(subs[0].model).empty());
}

TEST_CASE("infeasible boundaries") {
  Maim two = builtin::TwoStage();
  two.cpds[two.graph.Index("X")]->SetRow(0, std::vector<double>{1.0, 0.0});
  const MaidGraph& g = two.graph;
  auto subs = BuildMaimSubgames(two, BuildMaidSubgame(g, Named(g, {"D1", "U1"})));
  REQUIRE(subs.size() == 2);
  CHECK(IsFeasibleSubgame(two, subs[0]));
  CHECK_FALSE(IsFeasibleSubgame(two, subs[1]));
}
