#ifndef MAIDKIT_RELEVANCE_H_
#define MAIDKIT_RELEVANCE_H_

#include <string>
#include <utility>
#include <vector>

#include "maidkit/graph.h"
#include "maidkit/model.h"

namespace maidkit {

// True iff every trail between x and y is blocked given w. The sets must
// be pairwise disjoint; an empty x or y is trivially separated.
bool DSeparated(const MaidGraph& graph, const NodeSet& x, const NodeSet& y,
                const NodeSet& w);

// Nodes with an active trail from some node of x given w (excluding w).
NodeSet Reachable(const MaidGraph& graph, const NodeSet& x, const NodeSet& w);

// Whether a fresh parent of `node` is d-connected to the decision owner's
// utilities below `decision`, given the decision and its parents.
bool RReachable(const MaidGraph& graph, int decision, int node);

// All nodes other than the decision that are r-reachable from it.
NodeSet RelevantNodes(const MaidGraph& graph, int decision);

struct RelevanceGraph {
  NodeSet decisions;
  // (from, to) node indices, from != to, sorted.
  std::vector<std::pair<int, int>> edges;

  bool HasEdge(int from, int to) const;
};

RelevanceGraph BuildRelevanceGraph(const MaidGraph& graph);

// Maximal strongly connected components of a relevance graph. Components
// are listed in reverse topological order of the condensation (a component
// comes after every component it points to), ties broken by the smallest
// member name.
struct CondensedRelevanceGraph {
  std::vector<NodeSet> components;
  std::vector<std::pair<int, int>> edges;  // component indices, sorted

  // Component holding the decision, or -1.
  int ComponentOf(int decision) const;
  // Components reachable from c (excluding c).
  std::vector<int> Descendants(int c) const;
};

CondensedRelevanceGraph Condense(const MaidGraph& graph,
                                 const RelevanceGraph& rel);

enum class SemanticRelevance { kYes, kNoWitnessFound };

struct RelevanceWitness {
  SemanticRelevance verdict = SemanticRelevance::kNoWitnessFound;
  // On kYes: profiles pi and pi_prime differing only at the relied-on
  // decision, and a rule for the relying decision optimal against pi only.
  PureProfile pi;
  PureProfile pi_prime;
  std::vector<int> rule;
  double profiles_examined = 0;
};

// Searches pure profiles for a witness that `relying` strategically relies
// on `relied_on`: a rule optimal against pi but not against pi_prime, where
// changing its actions in contexts pi leaves unreached does not help. Throws for a reflexive query or more than max_profiles
// pure profiles.
RelevanceWitness StrategicallyRelevantSemantic(const Maim& model, int relying,
                                               int relied_on,
                                               double max_profiles = 1e4);

}  // namespace maidkit

#endif  // MAIDKIT_RELEVANCE_H_
