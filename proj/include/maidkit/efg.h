#ifndef MAIDKIT_EFG_H_
#define MAIDKIT_EFG_H_

#include <string>
#include <vector>

#include "maidkit/graph.h"

namespace maidkit {

enum class EfgNodeKind { kChance, kPlayer, kTerminal };

struct EfgNode {
  EfgNodeKind kind = EfgNodeKind::kTerminal;
  std::string label;
  int parent = -1;
  std::vector<int> children;
  std::vector<std::string> actions;  // one per child
  std::vector<double> probs;         // chance nodes, one per child
  int player = -1;                   // player nodes (agent index)
  int infoset = -1;                  // player nodes
  std::vector<double> payoffs;       // terminal nodes, one per agent
};

struct InfoSet {
  int player = -1;
  std::string label;
  std::vector<int> members;  // tree nodes, in insertion order
};

// A finite extensive-form game. Node 0 is the root once any node exists.
// Intervention sets group non-terminal nodes that stand for one variable;
// nodes not listed in any set form singleton sets.
struct Efg {
  std::string title;
  std::vector<std::string> agents;
  std::vector<EfgNode> nodes;
  std::vector<InfoSet> infosets;
  std::vector<std::vector<int>> intervention_sets;

  int NumAgents() const { return static_cast<int>(agents.size()); }
  int NumNodes() const { return static_cast<int>(nodes.size()); }
  int NumInfoSets() const { return static_cast<int>(infosets.size()); }

  int AddInfoSet(int player, std::string label = "");
  int AddChance(std::string label);
  int AddPlayer(std::string label, int infoset);
  int AddTerminal(std::string label, std::vector<double> payoffs);
  // Appends child below parent via an edge labelled action.
  void AddChild(int parent, int child, std::string action, double prob = 0.0);

  // Actions of an information set (those of its first member).
  const std::vector<std::string>& Actions(int infoset) const;
  // Tree nodes in prefix (depth-first, child order) order.
  std::vector<int> PrefixOrder() const;
};

// Throws Error describing the first broken tree invariant.
void ValidateEfg(const Efg& game);

// Behavioural strategy profile: one distribution per information set.
using EfgStrategy = std::vector<std::vector<double>>;

EfgStrategy UniformEfgStrategy(const Efg& game);
// Expected payoff of every agent.
std::vector<double> EfgExpectedUtilities(const Efg& game,
                                         const EfgStrategy& sigma);
double EfgExpectedUtility(const Efg& game, const EfgStrategy& sigma,
                          int agent);

// Information sets reached twice on some root-to-leaf path.
std::vector<int> AbsentmindedInfoSets(const Efg& game);

// Number written as a small rational when exactly representable, else
// with 17 significant digits.
std::string FormatEfgNumber(double x);

// Gambit-style .efg (version 2) text, nodes in prefix order.
std::string ExportEfgText(const Efg& game);

}  // namespace maidkit

#endif  // MAIDKIT_EFG_H_
