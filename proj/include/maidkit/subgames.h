#ifndef MAIDKIT_SUBGAMES_H_
#define MAIDKIT_SUBGAMES_H_

#include <optional>
#include <string>
#include <vector>

#include "maidkit/graph.h"
#include "maidkit/model.h"

namespace maidkit {

// Closes a node set under directed paths between its members and under
// r-reachability from its decisions.
NodeSet CloseSubgameBase(const MaidGraph& graph, NodeSet nodes);

// Empty if the set is a subgame base; otherwise names the violated
// condition and a witness.
std::optional<std::string> CheckSubgameBase(const MaidGraph& graph,
                                            const NodeSet& nodes);

// Subgame bases induced by descendant-closed sets of condensed relevance
// components, optionally extended by informational parents of their
// decisions. The full node set comes first, then larger before smaller
// bases, then lexicographic by node index.
std::vector<NodeSet> SubgameBases(const MaidGraph& graph);

// Among the bases, the one with fewest nodes for each distinct decision
// set (ties: lexicographically smallest), in the input order.
std::vector<NodeSet> MinimalForDecisions(const MaidGraph& graph,
                                         const std::vector<NodeSet>& bases);

struct MaidSubgame {
  NodeSet base;                 // parent node indices
  MaidGraph graph;              // nodes in base order, all parent agents kept
  std::vector<int> players;     // agents with a decision in the base
  NodeSet dropped_utilities;    // parent utilities re-tagged as chance
  std::vector<int> to_parent;   // subgame node -> parent node

  int ToSub(int parent_node) const;  // -1 if outside the base
};

// Throws Error naming the violated condition if base is not a subgame base.
MaidSubgame BuildMaidSubgame(const MaidGraph& graph, const NodeSet& base);

struct MaimSubgame {
  MaidSubgame maid;
  // Values of the material boundary (outside nodes with a child inside),
  // indexed by parent node; other entries kUnassigned.
  Assignment boundary;
  NodeSet material;
  Maim model;

  // Row of the parent decision's rule matching a row of the subgame rule.
  int ParentRow(const Maim& parent, int sub_decision, int sub_row) const;
  std::string FormatBoundary(const Maim& parent) const;
};

// Nodes outside the base with a child inside it.
NodeSet MaterialBoundary(const MaidGraph& graph, const NodeSet& base);

// One MAIM subgame per assignment of the material boundary, in
// lexicographic order (earlier nodes most significant).
std::vector<MaimSubgame> BuildMaimSubgames(const Maim& model,
                                           const MaidSubgame& sub);

// Whether the boundary has positive probability under some profile.
bool IsFeasibleSubgame(const Maim& model, const MaimSubgame& sub);

}  // namespace maidkit

#endif  // MAIDKIT_SUBGAMES_H_
