#include "doctest.h"
#include "maidkit/builtin.h"
#include "maidkit/equilibria.h"
#include "support/oracles.h"

using namespace maidkit;
using namespace maidkit::testing;

TEST_CASE("path oracle on a collider") {
  MaidGraph g;
  for (const char* n : {"A", "B", "C", "D"}) g.AddNode(n, NodeKind::kChance);
  g.AddEdge(0, 2);
  g.AddEdge(1, 2);
  g.AddEdge(2, 3);
  CHECK(PathDSeparated(g, 0, 1, {}));
  CHECK_FALSE(PathDSeparated(g, 0, 1, {2}));
  CHECK_FALSE(PathDSeparated(g, 0, 1, {3}));
  CHECK_FALSE(PathDSeparated(g, 0, 3, {}));
  CHECK(PathDSeparated(g, 0, 3, {2}));
}

TEST_CASE("brute force utilities of the example games") {
  Maim taxi = builtin::Taxi();
  PureProfile p{{0, {0}}, {1, {1, 0}}};
  CHECK(BruteUtilities(taxi, ToPolicy(taxi, p)) == std::vector<double>{5, 3});
  CHECK(StateSpace(taxi) == 2 * 2 * 4 * 4);
  Maim job = builtin::JobHiring();
  Assignment high(job.NumNodes(), kUnassigned);
  high[0] = 0;
  CHECK(BruteProbability(job, UniformProfile(job), high) == doctest::Approx(0.5));
}

TEST_CASE("tree oracles on the taxi tree") {
  Efg g = builtin::TaxiTree(false);
  CHECK(ProperEfgSubgames(g) == std::vector<int>{1, 4});
  CHECK(TreePayoffs(g, {0, 1, 0}) == std::vector<double>{5, 3});
  CHECK(TreePureNash(g).size() == 3);
  Efg one = g;
  one.infosets[1].members.push_back(4);
  one.nodes[4].infoset = 1;
  one.infosets.pop_back();
  CHECK(ProperEfgSubgames(one).empty());
}

TEST_CASE("efg reader rejects malformed text") {
  EfgText out;
  std::string err;
  const std::string head = "EFG 2 R \"g\" { \"1\" }\n\"\"\n\n";
  CHECK(ReadEfgText(head + "t \"\" 1 \"\" { 1 }\n", &out, &err));
  out = {};
  CHECK_FALSE(ReadEfgText(head + "t \"\" 1 \"\" { 1, 2 }\n", &out, &err));
  out = {};
  CHECK_FALSE(ReadEfgText(head + "p \"\" 1 1 \"\" { \"a\" \"b\" } 0\nt \"\" 1 \"\" { 1 }\n",
                          &out, &err));
  CHECK(err.find("incomplete") != std::string::npos);
  out = {};
  CHECK_FALSE(ReadEfgText(head + "c \"\" 1 \"\" { \"a\" 1/2 \"b\" 1/3 } 0\n"
                                 "t \"\" 1 \"\" { 1 }\nt \"\" 2 \"\" { 1 }\n",
                          &out, &err));
  out = {};
  CHECK_FALSE(ReadEfgText(head + "t \"\" 1 \"\" { 1 }\nt \"\" 2 \"\" { 1 }\n", &out, &err));
  out = {};
  CHECK_FALSE(ReadEfgText("EFG 3 R \"g\" { \"1\" }\n", &out, &err));
}
