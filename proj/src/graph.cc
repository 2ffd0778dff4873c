#include "maidkit/graph.h"

#include <algorithm>
#include <queue>

namespace maidkit {

const char* NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kChance:
      return "chance";
    case NodeKind::kDecision:
      return "decision";
    case NodeKind::kUtility:
      return "utility";
  }
  return "unknown";
}

NodeSet MakeNodeSet(std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

bool Contains(const NodeSet& set, int node) {
  return std::binary_search(set.begin(), set.end(), node);
}

NodeSet SetUnion(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

NodeSet SetDifference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

NodeSet SetIntersection(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

MaidGraph::MaidGraph(std::vector<std::string> agents)
    : agents_(std::move(agents)) {}

int MaidGraph::AddAgent(std::string name) {
  if (FindAgent(name) >= 0) throw Error("duplicate agent '" + name + "'");
  agents_.push_back(std::move(name));
  return NumAgents() - 1;
}

int MaidGraph::AddNode(std::string name, NodeKind kind, int owner) {
  if (Find(name) >= 0) throw Error("duplicate node '" + name + "'");
  if (kind == NodeKind::kChance) {
    owner = -1;
  } else if (owner < 0 || owner >= NumAgents()) {
    throw Error("node '" + name + "' needs an owner among the agents");
  }
  nodes_.push_back(NodeInfo{std::move(name), kind, owner});
  parents_.emplace_back();
  children_.emplace_back();
  return NumNodes() - 1;
}

void MaidGraph::AddEdge(int from, int to) {
  if (from < 0 || from >= NumNodes() || to < 0 || to >= NumNodes()) {
    throw Error("edge endpoint out of range");
  }
  if (HasEdge(from, to)) return;
  parents_[to].push_back(from);
  children_[from].push_back(to);
}

void MaidGraph::RemoveEdge(int from, int to) {
  auto& p = parents_.at(to);
  p.erase(std::remove(p.begin(), p.end(), from), p.end());
  auto& c = children_.at(from);
  c.erase(std::remove(c.begin(), c.end(), to), c.end());
}

int MaidGraph::FindAgent(const std::string& name) const {
  for (int i = 0; i < NumAgents(); ++i) {
    if (agents_[i] == name) return i;
  }
  return -1;
}

int MaidGraph::AgentIndex(const std::string& name) const {
  int i = FindAgent(name);
  if (i < 0) throw Error("unknown agent '" + name + "'");
  return i;
}

int MaidGraph::Find(const std::string& name) const {
  for (int i = 0; i < NumNodes(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  return -1;
}

int MaidGraph::Index(const std::string& name) const {
  int i = Find(name);
  if (i < 0) throw Error("unknown node '" + name + "'");
  return i;
}

bool MaidGraph::HasEdge(int from, int to) const {
  const auto& p = parents_.at(to);
  return std::find(p.begin(), p.end(), from) != p.end();
}

int MaidGraph::NumEdges() const {
  int n = 0;
  for (const auto& p : parents_) n += static_cast<int>(p.size());
  return n;
}

NodeSet MaidGraph::Decisions() const {
  NodeSet out;
  for (int i = 0; i < NumNodes(); ++i) {
    if (IsDecision(i)) out.push_back(i);
  }
  return out;
}

NodeSet MaidGraph::Utilities() const {
  NodeSet out;
  for (int i = 0; i < NumNodes(); ++i) {
    if (IsUtility(i)) out.push_back(i);
  }
  return out;
}

NodeSet MaidGraph::ChanceNodes() const {
  NodeSet out;
  for (int i = 0; i < NumNodes(); ++i) {
    if (IsChance(i)) out.push_back(i);
  }
  return out;
}

NodeSet MaidGraph::DecisionsOf(int agent) const {
  NodeSet out;
  for (int i = 0; i < NumNodes(); ++i) {
    if (IsDecision(i) && Owner(i) == agent) out.push_back(i);
  }
  return out;
}

NodeSet MaidGraph::UtilitiesOf(int agent) const {
  NodeSet out;
  for (int i = 0; i < NumNodes(); ++i) {
    if (IsUtility(i) && Owner(i) == agent) out.push_back(i);
  }
  return out;
}

namespace {

NodeSet Reach(const std::vector<std::vector<int>>& adjacency,
              const std::vector<int>& starts) {
  std::vector<char> seen(adjacency.size(), 0);
  std::vector<int> stack;
  for (int s : starts) {
    for (int n : adjacency[s]) {
      if (!seen[n]) {
        seen[n] = 1;
        stack.push_back(n);
      }
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int n : adjacency[v]) {
      if (!seen[n]) {
        seen[n] = 1;
        stack.push_back(n);
      }
    }
  }
  NodeSet out;
  for (int i = 0; i < static_cast<int>(seen.size()); ++i) {
    if (seen[i]) out.push_back(i);
  }
  return out;
}

}  // namespace

NodeSet MaidGraph::Ancestors(int index) const {
  return Reach(parents_, {index});
}

NodeSet MaidGraph::Descendants(int index) const {
  return Reach(children_, {index});
}

NodeSet MaidGraph::Descendants(const NodeSet& nodes) const {
  return Reach(children_, nodes);
}

NodeSet MaidGraph::Family(int index) const {
  std::vector<int> f = parents_.at(index);
  f.push_back(index);
  return MakeNodeSet(std::move(f));
}

bool MaidGraph::IsAcyclic() const {
  std::vector<int> indegree(NumNodes());
  for (int i = 0; i < NumNodes(); ++i) {
    indegree[i] = static_cast<int>(parents_[i].size());
  }
  std::vector<int> ready;
  for (int i = 0; i < NumNodes(); ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  int visited = 0;
  while (!ready.empty()) {
    int v = ready.back();
    ready.pop_back();
    ++visited;
    for (int c : children_[v]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return visited == NumNodes();
}

std::vector<int> MaidGraph::TopologicalOrder() const {
  std::vector<int> indegree(NumNodes());
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < NumNodes(); ++i) {
    indegree[i] = static_cast<int>(parents_[i].size());
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<int> order;
  order.reserve(NumNodes());
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children_[v]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (static_cast<int>(order.size()) != NumNodes()) {
    throw Error("graph is cyclic");
  }
  return order;
}

std::string FormatNodeSet(const MaidGraph& graph, const NodeSet& nodes) {
  std::string out = "{";
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ", ";
    out += graph.Name(nodes[i]);
  }
  return out + "}";
}

}  // namespace maidkit
