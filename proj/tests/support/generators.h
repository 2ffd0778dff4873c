#ifndef MAIDKIT_TESTS_GENERATORS_H_
#define MAIDKIT_TESTS_GENERATORS_H_

#include <random>
#include <vector>

#include "maidkit/efg.h"
#include "maidkit/model.h"

namespace maidkit::testing {

using Rng = std::mt19937_64;

int Uniform(Rng& rng, int lo, int hi);  // inclusive
double Unit(Rng& rng);
bool Coin(Rng& rng, double p);

// DAG over n chance nodes named V0..V(n-1); each forward pair is an edge
// with probability p.
MaidGraph RandomDag(Rng& rng, int n, double p);

// Random CPDs (binary domains) for an all-chance DAG; some entries are
// exactly zero.
Maim RandomParametrization(Rng& rng, const MaidGraph& graph);

struct MaimShape {
  int max_nodes = 6;
  int max_decisions = 3;
  int max_parents = 2;
  int agents = 2;
};

// Random valid MAIM with binary chance and decision domains. Utility
// nodes come last and have no children.
Maim RandomMaim(Rng& rng, const MaimShape& shape = {});

// Random mixed profile (fully or partly deterministic rows).
PolicyProfile RandomProfile(Rng& rng, const Maim& model);
PureProfile RandomPureProfile(Rng& rng, const Maim& model);

// Random game tree: depth <= 3, binary branching, two players, chance
// nodes with occasional zero probabilities, player nodes of one player at
// one depth grouped into information sets at random.
Efg RandomEfg(Rng& rng);

}  // namespace maidkit::testing

#endif  // MAIDKIT_TESTS_GENERATORS_H_
