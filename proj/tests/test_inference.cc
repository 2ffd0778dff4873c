#include <cmath>

#include "doctest.h"
#include "maidkit/builtin.h"
#include "maidkit/equilibria.h"
#include "maidkit/inference.h"
#include "support/generators.h"
#include "support/oracles.h"

using namespace maidkit;
using namespace maidkit::testing;

TEST_CASE("job hiring utilities by hand") {
  Maim m = builtin::JobHiring();
  const int d1 = m.graph.Index("D1"), d2 = m.graph.Index("D2");
  // High ability goes to school, low applies; the firm hires only graduates.
  PureProfile p{{d1, {0, 1}}, {d2, {0, 1}}};
  auto u = AgentUtilities(m, ToPolicy(m, p));
  CHECK(u[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(1.5).epsilon(1e-12));
  // Everyone applies and is hired: 0.5 * 5 + 0.5 * 3 and 0.5 * 3 - 0.5 * 2.
  PureProfile q{{d1, {1, 1}}, {d2, {0, 0}}};
  u = AgentUtilities(m, ToPolicy(m, q));
  CHECK(u[0] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("expected utility matches joint enumeration on random models") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    Maim m = RandomMaim(rng);
    if (!Validate(m).empty()) continue;
    PolicyProfile p = RandomProfile(rng, m);
    auto brute = BruteUtilities(m, p);
    auto fast = AgentUtilities(m, p);
    for (size_t a = 0; a < brute.size(); ++a) {
      CHECK(std::abs(brute[a] - fast[a]) <= 1e-9);
    }
  }
}

TEST_CASE("marginals match joint enumeration") {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    Maim m = RandomMaim(rng);
    if (!Validate(m).empty()) continue;
    PolicyProfile p = RandomProfile(rng, m);
    JointDistribution joint(m, p);
    const int n = m.NumNodes();
    int x = Uniform(rng, 0, n - 1);
    int e = Uniform(rng, 0, n - 1);
    if (x == e) continue;
    Assignment ev(n, kUnassigned);
    ev[e] = Uniform(rng, 0, m.Card(e) - 1);
    double pe = BruteProbability(m, p, ev);
    QueryResult q = joint.Marginal({x}, ev);
    CHECK(std::abs(q.evidence_probability - pe) <= 1e-9);
    CHECK(std::abs(joint.Probability(ev) - pe) <= 1e-9);
    if (pe <= 0) {
      CHECK_FALSE(q.defined());
      continue;
    }
    for (int v = 0; v < m.Card(x); ++v) {
      Assignment both = ev;
      both[x] = v;
      CHECK(std::abs(q.Prob({v}) - BruteProbability(m, p, both) / pe) <= 1e-9);
    }
  }
}

TEST_CASE("conditional expected utility") {
  Maim taxi = builtin::Taxi();
  const int d1 = taxi.graph.Index("D1"), d2 = taxi.graph.Index("D2");
  PureProfile p{{d1, {1}}, {d2, {1, 0}}};
  Assignment ctx(taxi.NumNodes(), kUnassigned);
  ctx[d1] = 0;
  // D1 is forced to e even though the profile says c.
  CHECK(ConditionalExpectedUtility(taxi, ToPolicy(taxi, p), 1, ctx) ==
        doctest::Approx(3.0));
  CHECK(ConditionalExpectedUtility(taxi, ToPolicy(taxi, p), 0, ctx) ==
        doctest::Approx(5.0));

  Maim sure = builtin::JobHiring(1.0);
  const int x = sure.graph.Index("X");
  Assignment low(sure.NumNodes(), kUnassigned);
  low[x] = 1;
  CHECK_THROWS_AS(ConditionalExpectedUtility(sure, UniformProfile(sure), 0, low),
                  Error);
}

TEST_CASE("feasible and null contexts") {
  Maim sure = builtin::JobHiring(1.0);
  const int d1 = sure.graph.Index("D1"), d2 = sure.graph.Index("D2");
  CHECK(IsFeasibleContext(sure, d1, 0));
  CHECK_FALSE(IsFeasibleContext(sure, d1, 1));
  CHECK(IsNullContext(sure, d1, 1));
  CHECK_FALSE(IsNullContext(sure, d1, 0));
  CHECK(IsFeasibleContext(sure, d2, 0));
  CHECK(IsFeasibleContext(sure, d2, 1));

  // A context whose completions all pay zero is null though feasible.
  Maim cyber = builtin::CyberWar();
  Assignment ctx(cyber.NumNodes(), kUnassigned);
  ctx[cyber.graph.Index("D1")] = 1;
  ctx[cyber.graph.Index("D2")] = 1;
  CHECK(IsFeasibleAssignment(cyber, ctx));
  CHECK(IsNullAssignment(cyber, ctx));
}

TEST_CASE("best responses include ties") {
  Maim taxi = builtin::Taxi();
  const int d1 = taxi.graph.Index("D1"), d2 = taxi.graph.Index("D2");
  PolicyProfile others;
  others.rules.emplace(d1, PureRule(taxi, d1, {0}));
  auto br = BestResponses(taxi, 1, others);
  REQUIRE(br.size() == 2);
  CHECK(br[0].at(d2) == std::vector<int>{1, 0});
  CHECK(br[1].at(d2) == std::vector<int>{1, 1});
  CHECK(CountPurePolicies(taxi, {d1, d2}) == 8);
  CHECK(CountPurePolicies(taxi, {d2}) == 4);
}
