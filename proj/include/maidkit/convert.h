#ifndef MAIDKIT_CONVERT_H_
#define MAIDKIT_CONVERT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "maidkit/efg.h"
#include "maidkit/model.h"

namespace maidkit {

// Correspondence between information sets of a game and decision context
// rows of a model: infoset i <-> (decision, row).
struct NaturalMapping {
  std::vector<std::pair<int, int>> infoset_context;
};

// Behavioural strategy of the game for a policy profile of the model.
EfgStrategy PolicyToStrategy(const Efg& game, const Maim& model,
                             const NaturalMapping& mapping,
                             const PolicyProfile& profile);
// Policy profile of the model for a strategy of the game. Rows that no
// information set maps to get the first action.
PolicyProfile StrategyToPolicy(const Efg& game, const Maim& model,
                               const NaturalMapping& mapping,
                               const EfgStrategy& sigma);

enum class SplitMode { kFull, kMinimal };

// Nodes the tree splits on: chance and decision nodes (full) or decisions
// and their parents (minimal).
NodeSet SplittingNodes(const Maim& model, SplitMode mode);

// Topological orders of the splitting nodes consistent with ancestry; the
// first is the lexicographically smallest by node index. At most limit.
std::vector<std::vector<int>> SplittingOrders(const Maim& model,
                                              const NodeSet& split,
                                              int limit);

struct EfgConversion {
  Efg game;
  NaturalMapping mapping;
  std::vector<int> order;  // splitting nodes in tree order
};

// Builds the game tree splitting on the nodes in the given order (empty
// order: the lexicographically smallest).
EfgConversion MaimToEfg(const Maim& model, SplitMode mode,
                        std::vector<int> order = {});
// One conversion per topological order, at most limit of them.
std::vector<EfgConversion> MaimToEfgAll(const Maim& model, SplitMode mode,
                                        int limit = 100);

struct MaimConversion {
  Maim model;
  NaturalMapping mapping;
  // Variable of each non-terminal tree node (decision-instance chance
  // nodes for absentminded information sets).
  std::vector<int> node_variable;
};

// Canonical model of a game without absentmindedness. Throws naming the
// violated condition for an invalid intervention set or if the game is
// absentminded.
MaimConversion EfgToMaim(const Efg& game);

// Model of a game with absentmindedness: each absentminded information set
// becomes a decision carrying the rule plus one chance node per decision
// instance. Throws if no information set is absentminded.
MaimConversion AbsentmindedTransform(const Efg& game);

struct EquivalenceReport {
  int pure_checked = 0;
  int mixed_checked = 0;
  int mismatches = 0;
  double max_difference = 0.0;
  std::string first_mismatch;

  bool ok() const { return mismatches == 0; }
};

// Compares expected utilities of corresponding strategies and policies:
// every pure strategy profile when there are at most 10^4, plus `trials`
// random behavioural profiles. Rows outside the mapping are filled both
// canonically and randomly.
EquivalenceReport CheckEquivalence(const Efg& game, const Maim& model,
                                   const NaturalMapping& mapping, int trials,
                                   std::uint64_t seed = 1);

}  // namespace maidkit

#endif  // MAIDKIT_CONVERT_H_
