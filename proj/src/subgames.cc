#include "maidkit/subgames.h"

#include <algorithm>
#include <set>

#include "maidkit/inference.h"
#include "maidkit/relevance.h"

namespace maidkit {

namespace {

// Nodes on some directed path between two members, not yet members.
NodeSet PathGaps(const MaidGraph& graph, const NodeSet& nodes) {
  NodeSet desc = graph.Descendants(nodes);
  NodeSet anc;
  for (int v : nodes) anc = SetUnion(anc, graph.Ancestors(v));
  return SetDifference(SetIntersection(desc, anc), nodes);
}

NodeSet Close(const MaidGraph& graph, const std::vector<NodeSet>& relevant,
              NodeSet nodes) {
  while (true) {
    NodeSet next = nodes;
    for (int v : nodes) {
      if (graph.IsDecision(v)) next = SetUnion(next, relevant[v]);
    }
    next = SetUnion(next, PathGaps(graph, next));
    if (next == nodes) return nodes;
    nodes = std::move(next);
  }
}

std::vector<NodeSet> RelevantTable(const MaidGraph& graph) {
  std::vector<NodeSet> relevant(graph.NumNodes());
  for (int d : graph.Decisions()) relevant[d] = RelevantNodes(graph, d);
  return relevant;
}

bool BaseOrder(const NodeSet& a, const NodeSet& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace

NodeSet CloseSubgameBase(const MaidGraph& graph, NodeSet nodes) {
  return Close(graph, RelevantTable(graph), MakeNodeSet(std::move(nodes)));
}

std::optional<std::string> CheckSubgameBase(const MaidGraph& graph,
                                            const NodeSet& nodes) {
  for (int v : nodes) {
    if (v < 0 || v >= graph.NumNodes()) return "node index out of range";
  }
  NodeSet gaps = PathGaps(graph, nodes);
  if (!gaps.empty()) {
    return "not closed under directed paths: '" + graph.Name(gaps[0]) +
           "' lies on a directed path between members";
  }
  for (int d : nodes) {
    if (!graph.IsDecision(d)) continue;
    for (int z : RelevantNodes(graph, d)) {
      if (!Contains(nodes, z)) {
        return "not closed under r-reachability: '" + graph.Name(z) +
               "' is r-reachable from '" + graph.Name(d) + "'";
      }
    }
  }
  return std::nullopt;
}

std::vector<NodeSet> SubgameBases(const MaidGraph& graph) {
  const int n = graph.NumNodes();
  NodeSet full(n);
  for (int v = 0; v < n; ++v) full[v] = v;
  std::set<NodeSet> found;
  found.insert(full);

  RelevanceGraph rel = BuildRelevanceGraph(graph);
  CondensedRelevanceGraph con = Condense(graph, rel);
  const int m = static_cast<int>(con.components.size());
  if (m > 20) throw Error("too many relevance components to enumerate");
  std::vector<unsigned> desc_mask(m, 0);
  for (int c = 0; c < m; ++c) {
    for (int d : con.Descendants(c)) desc_mask[c] |= 1u << d;
  }
  std::vector<NodeSet> relevant = RelevantTable(graph);

  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    bool closed = true;
    for (int c = 0; c < m && closed; ++c) {
      if ((mask >> c & 1) && (desc_mask[c] & ~mask)) closed = false;
    }
    if (!closed) continue;
    NodeSet decisions;
    for (int c = 0; c < m; ++c) {
      if (mask >> c & 1) decisions = SetUnion(decisions, con.components[c]);
    }
    NodeSet info;
    for (int d : decisions) {
      info = SetUnion(info, MakeNodeSet(graph.Parents(d)));
    }
    info = SetDifference(info, decisions);
    const int k = static_cast<int>(info.size());
    std::vector<unsigned> extras;
    if (k <= 12) {
      for (unsigned t = 0; t < (1u << k); ++t) extras.push_back(t);
    } else {
      extras = {0u, (1u << 12) - 1};
    }
    for (unsigned t : extras) {
      NodeSet seed = decisions;
      for (int i = 0; i < k && i < 12; ++i) {
        if (t >> i & 1) seed.push_back(info[i]);
      }
      if (k > 12 && t) seed = SetUnion(seed, info);
      found.insert(Close(graph, relevant, MakeNodeSet(seed)));
    }
  }
  std::vector<NodeSet> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), BaseOrder);
  return out;
}

std::vector<NodeSet> MinimalForDecisions(const MaidGraph& graph,
                                         const std::vector<NodeSet>& bases) {
  std::vector<NodeSet> keys;
  std::vector<int> chosen;
  for (int i = 0; i < static_cast<int>(bases.size()); ++i) {
    NodeSet key = SetIntersection(bases[i], graph.Decisions());
    auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) {
      keys.push_back(key);
      chosen.push_back(i);
      continue;
    }
    int& j = chosen[it - keys.begin()];
    const NodeSet& cur = bases[j];
    if (bases[i].size() < cur.size() ||
        (bases[i].size() == cur.size() && bases[i] < cur)) {
      j = i;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<NodeSet> out;
  for (int i : chosen) out.push_back(bases[i]);
  return out;
}

int MaidSubgame::ToSub(int parent_node) const {
  auto it = std::lower_bound(base.begin(), base.end(), parent_node);
  if (it == base.end() || *it != parent_node) return -1;
  return static_cast<int>(it - base.begin());
}

MaidSubgame BuildMaidSubgame(const MaidGraph& graph, const NodeSet& base) {
  if (auto problem = CheckSubgameBase(graph, base)) {
    throw Error("invalid subgame base " + FormatNodeSet(graph, base) + ": " +
                *problem);
  }
  MaidSubgame sub;
  sub.base = base;
  sub.to_parent = base;
  sub.graph = MaidGraph(graph.agents());
  NodeSet decisions = SetIntersection(base, graph.Decisions());
  NodeSet below = graph.Descendants(decisions);
  for (int v : base) {
    NodeKind kind = graph.Kind(v);
    int owner = graph.Owner(v);
    if (kind == NodeKind::kUtility && !Contains(below, v)) {
      kind = NodeKind::kChance;
      owner = -1;
      sub.dropped_utilities.push_back(v);
    }
    sub.graph.AddNode(graph.Name(v), kind, owner);
  }
  for (int i = 0; i < static_cast<int>(base.size()); ++i) {
    for (int p : graph.Parents(base[i])) {
      int j = sub.ToSub(p);
      if (j >= 0) sub.graph.AddEdge(j, i);
    }
  }
  for (int a = 0; a < graph.NumAgents(); ++a) {
    if (!SetIntersection(graph.DecisionsOf(a), base).empty()) {
      sub.players.push_back(a);
    }
  }
  return sub;
}

NodeSet MaterialBoundary(const MaidGraph& graph, const NodeSet& base) {
  NodeSet out;
  for (int v = 0; v < graph.NumNodes(); ++v) {
    if (Contains(base, v)) continue;
    for (int c : graph.Children(v)) {
      if (Contains(base, c)) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

namespace {

Maim SliceModel(const Maim& model, const MaidSubgame& sub,
                const Assignment& boundary) {
  const MaidGraph& g = model.graph;
  Maim out;
  out.name = model.name;
  out.graph = sub.graph;
  const int n = static_cast<int>(sub.base.size());
  out.domains.resize(n);
  out.cpds.resize(n);
  out.tied.resize(n);
  for (int i = 0; i < n; ++i) {
    const int p = sub.base[i];
    out.domains[i] = model.domains[p];
    if (g.IsDecision(p)) continue;
    const Cpd& old = *model.cpds[p];
    Cpd& cpd = out.InitCpd(i);
    const auto& sub_parents = out.graph.Parents(i);
    Assignment a = boundary;
    std::vector<char> follows;
    for (int r = 0; r < cpd.num_rows(); ++r) {
      auto values = cpd.RowValues(r);
      for (size_t k = 0; k < values.size(); ++k) {
        a[sub.to_parent[sub_parents[k]]] = values[k];
      }
      int old_row = old.RowOf(a);
      cpd.SetRow(r, old.Row(old_row));
      if (model.tied[p]) follows.push_back(model.tied[p]->follows_rule[old_row]);
    }
    if (model.tied[p]) {
      int d = sub.ToSub(model.tied[p]->decision);
      if (d < 0) {
        throw Error("decision instance '" + g.Name(p) +
                    "' is separated from its decision");
      }
      out.tied[i] = TiedRule{d, std::move(follows)};
    }
  }
  return out;
}

}  // namespace

std::vector<MaimSubgame> BuildMaimSubgames(const Maim& model,
                                           const MaidSubgame& sub) {
  NodeSet material = MaterialBoundary(model.graph, sub.base);
  std::vector<MaimSubgame> out;
  Assignment boundary(model.NumNodes(), kUnassigned);
  for (int v : material) boundary[v] = 0;
  while (true) {
    MaimSubgame ms;
    ms.maid = sub;
    ms.boundary = boundary;
    ms.material = material;
    ms.model = SliceModel(model, sub, boundary);
    out.push_back(std::move(ms));
    int i = static_cast<int>(material.size()) - 1;
    for (; i >= 0; --i) {
      int v = material[i];
      if (++boundary[v] < model.Card(v)) break;
      boundary[v] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

int MaimSubgame::ParentRow(const Maim& parent, int sub_decision,
                           int sub_row) const {
  const int d = maid.to_parent.at(sub_decision);
  Assignment a = boundary;
  DecisionRule shape = model.EmptyRule(sub_decision);
  auto values = shape.RowValues(sub_row);
  for (size_t k = 0; k < values.size(); ++k) {
    a[maid.to_parent[shape.parents()[k]]] = values[k];
  }
  return parent.EmptyRule(d).RowOf(a);
}

std::string MaimSubgame::FormatBoundary(const Maim& parent) const {
  if (material.empty()) return "-";
  std::string out;
  for (size_t i = 0; i < material.size(); ++i) {
    if (i) out += ",";
    int v = material[i];
    out += parent.graph.Name(v) + "=" + parent.domains[v].labels[boundary[v]];
  }
  return out;
}

bool IsFeasibleSubgame(const Maim& model, const MaimSubgame& sub) {
  if (sub.material.empty()) return true;
  return IsFeasibleAssignment(model, sub.boundary);
}

}  // namespace maidkit
