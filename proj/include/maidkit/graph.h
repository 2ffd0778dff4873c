#ifndef MAIDKIT_GRAPH_H_
#define MAIDKIT_GRAPH_H_

#include <stdexcept>
#include <string>
#include <vector>

namespace maidkit {

// Thrown for malformed inputs and violated preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { kChance, kDecision, kUtility };

const char* NodeKindName(NodeKind kind);

// Sorted, duplicate-free list of node indices.
using NodeSet = std::vector<int>;

NodeSet MakeNodeSet(std::vector<int> nodes);
bool Contains(const NodeSet& set, int node);
NodeSet SetUnion(const NodeSet& a, const NodeSet& b);
NodeSet SetDifference(const NodeSet& a, const NodeSet& b);
NodeSet SetIntersection(const NodeSet& a, const NodeSet& b);

struct NodeInfo {
  std::string name;
  NodeKind kind = NodeKind::kChance;
  int owner = -1;  // agent index; -1 for chance nodes
};

// The structure of a multi-agent influence diagram: agents and a directed
// graph over chance, decision and utility nodes. Node indices follow
// declaration order. Acyclicity is not enforced on construction so that
// malformed documents can still be loaded and diagnosed.
class MaidGraph {
 public:
  MaidGraph() = default;
  explicit MaidGraph(std::vector<std::string> agents);

  int AddAgent(std::string name);
  int AddNode(std::string name, NodeKind kind, int owner = -1);
  void AddEdge(int from, int to);
  void RemoveEdge(int from, int to);

  int NumAgents() const { return static_cast<int>(agents_.size()); }
  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  const std::vector<std::string>& agents() const { return agents_; }
  const std::string& AgentName(int agent) const { return agents_.at(agent); }
  int AgentIndex(const std::string& name) const;  // throws if unknown
  int FindAgent(const std::string& name) const;   // -1 if unknown

  const NodeInfo& node(int index) const { return nodes_.at(index); }
  const std::string& Name(int index) const { return nodes_.at(index).name; }
  NodeKind Kind(int index) const { return nodes_.at(index).kind; }
  int Owner(int index) const { return nodes_.at(index).owner; }
  bool IsDecision(int index) const { return Kind(index) == NodeKind::kDecision; }
  bool IsUtility(int index) const { return Kind(index) == NodeKind::kUtility; }
  bool IsChance(int index) const { return Kind(index) == NodeKind::kChance; }

  int Index(const std::string& name) const;  // throws if unknown
  int Find(const std::string& name) const;   // -1 if unknown

  // Parents keep insertion order; this order defines CPD row layout.
  const std::vector<int>& Parents(int index) const { return parents_.at(index); }
  const std::vector<int>& Children(int index) const { return children_.at(index); }
  bool HasEdge(int from, int to) const;
  int NumEdges() const;

  NodeSet Decisions() const;
  NodeSet Utilities() const;
  NodeSet ChanceNodes() const;
  NodeSet DecisionsOf(int agent) const;
  NodeSet UtilitiesOf(int agent) const;

  // Strict ancestors / descendants.
  NodeSet Ancestors(int index) const;
  NodeSet Descendants(int index) const;
  NodeSet Descendants(const NodeSet& nodes) const;
  NodeSet Family(int index) const;  // parents plus the node itself

  bool IsAcyclic() const;
  // Kahn's algorithm, always picking the smallest available index.
  // Throws if the graph has a cycle.
  std::vector<int> TopologicalOrder() const;

 private:
  std::vector<std::string> agents_;
  std::vector<NodeInfo> nodes_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::vector<int>> children_;
};

std::string FormatNodeSet(const MaidGraph& graph, const NodeSet& nodes);

}  // namespace maidkit

#endif  // MAIDKIT_GRAPH_H_
