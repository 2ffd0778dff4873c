#include "maidkit/relevance.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

#include "maidkit/inference.h"

namespace maidkit {

namespace {

using Adjacency = std::vector<std::vector<int>>;

// Bayes-ball reachability over explicit adjacency lists.
std::vector<char> ActiveFrom(const Adjacency& parents, const Adjacency& children,
                             const NodeSet& x, const std::vector<char>& observed) {
  const int n = static_cast<int>(parents.size());
  // Observed nodes and their ancestors: colliders there are active.
  std::vector<char> anc(n, 0);
  std::vector<int> stack;
  for (int v = 0; v < n; ++v) {
    if (observed[v]) {
      anc[v] = 1;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : parents[v]) {
      if (!anc[p]) {
        anc[p] = 1;
        stack.push_back(p);
      }
    }
  }
  // visited[2v] = reached from a child (moving up), [2v+1] = from a parent.
  std::vector<char> visited(2 * n, 0);
  std::vector<char> reached(n, 0);
  std::vector<std::pair<int, bool>> frontier;
  for (int v : x) frontier.emplace_back(v, true);
  while (!frontier.empty()) {
    auto [v, up] = frontier.back();
    frontier.pop_back();
    char& seen = visited[2 * v + (up ? 0 : 1)];
    if (seen) continue;
    seen = 1;
    if (!observed[v]) reached[v] = 1;
    if (up) {
      if (observed[v]) continue;
      for (int p : parents[v]) frontier.emplace_back(p, true);
      for (int c : children[v]) frontier.emplace_back(c, false);
    } else {
      if (!observed[v]) {
        for (int c : children[v]) frontier.emplace_back(c, false);
      }
      if (anc[v]) {
        for (int p : parents[v]) frontier.emplace_back(p, true);
      }
    }
  }
  return reached;
}

Adjacency ParentLists(const MaidGraph& g) {
  Adjacency out(g.NumNodes());
  for (int v = 0; v < g.NumNodes(); ++v) out[v] = g.Parents(v);
  return out;
}

Adjacency ChildLists(const MaidGraph& g) {
  Adjacency out(g.NumNodes());
  for (int v = 0; v < g.NumNodes(); ++v) out[v] = g.Children(v);
  return out;
}

void CheckNodes(const MaidGraph& g, const NodeSet& s) {
  for (int v : s) {
    if (v < 0 || v >= g.NumNodes()) {
      throw Error("unknown node index " + std::to_string(v));
    }
  }
}

}  // namespace

NodeSet Reachable(const MaidGraph& graph, const NodeSet& x, const NodeSet& w) {
  CheckNodes(graph, x);
  CheckNodes(graph, w);
  std::vector<char> observed(graph.NumNodes(), 0);
  for (int v : w) observed[v] = 1;
  auto reached = ActiveFrom(ParentLists(graph), ChildLists(graph), x, observed);
  NodeSet out;
  for (int v = 0; v < graph.NumNodes(); ++v) {
    if (reached[v]) out.push_back(v);
  }
  return out;
}

bool DSeparated(const MaidGraph& graph, const NodeSet& x, const NodeSet& y,
                const NodeSet& w) {
  CheckNodes(graph, y);
  if (!SetIntersection(x, y).empty() || !SetIntersection(x, w).empty() ||
      !SetIntersection(y, w).empty()) {
    throw Error("d-separation query sets must be disjoint");
  }
  NodeSet reached = Reachable(graph, x, w);
  return SetIntersection(reached, y).empty();
}

bool RReachable(const MaidGraph& graph, int decision, int node) {
  if (decision < 0 || decision >= graph.NumNodes() ||
      !graph.IsDecision(decision)) {
    throw Error("r-reachability needs a decision node");
  }
  if (node < 0 || node >= graph.NumNodes()) throw Error("unknown node");
  const int agent = graph.Owner(decision);
  NodeSet targets =
      SetIntersection(graph.UtilitiesOf(agent), graph.Descendants(decision));
  if (targets.empty()) return false;
  NodeSet family = graph.Family(decision);

  const int n = graph.NumNodes();
  Adjacency parents = ParentLists(graph);
  Adjacency children = ChildLists(graph);
  parents.emplace_back();
  children.push_back({node});
  parents[node].push_back(n);
  std::vector<char> observed(n + 1, 0);
  for (int v : family) observed[v] = 1;
  auto reached = ActiveFrom(parents, children, {n}, observed);
  for (int u : targets) {
    if (reached[u]) return true;
  }
  return false;
}

NodeSet RelevantNodes(const MaidGraph& graph, int decision) {
  NodeSet out;
  for (int v = 0; v < graph.NumNodes(); ++v) {
    if (v != decision && RReachable(graph, decision, v)) out.push_back(v);
  }
  return out;
}

bool RelevanceGraph::HasEdge(int from, int to) const {
  return std::binary_search(edges.begin(), edges.end(),
                            std::make_pair(from, to));
}

RelevanceGraph BuildRelevanceGraph(const MaidGraph& graph) {
  RelevanceGraph rel;
  rel.decisions = graph.Decisions();
  for (int a : rel.decisions) {
    for (int b : rel.decisions) {
      if (a != b && RReachable(graph, a, b)) rel.edges.emplace_back(a, b);
    }
  }
  return rel;
}

int CondensedRelevanceGraph::ComponentOf(int decision) const {
  for (int c = 0; c < static_cast<int>(components.size()); ++c) {
    if (Contains(components[c], decision)) return c;
  }
  return -1;
}

std::vector<int> CondensedRelevanceGraph::Descendants(int c) const {
  std::vector<char> seen(components.size(), 0);
  std::vector<int> stack{c};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& [from, to] : edges) {
      if (from == v && !seen[to]) {
        seen[to] = 1;
        stack.push_back(to);
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(seen.size()); ++i) {
    if (seen[i] && i != c) out.push_back(i);
  }
  return out;
}

CondensedRelevanceGraph Condense(const MaidGraph& graph,
                                 const RelevanceGraph& rel) {
  const int m = static_cast<int>(rel.decisions.size());
  auto local = [&](int node) {
    return static_cast<int>(
        std::lower_bound(rel.decisions.begin(), rel.decisions.end(), node) -
        rel.decisions.begin());
  };
  std::vector<std::vector<int>> adj(m);
  for (const auto& [a, b] : rel.edges) adj[local(a)].push_back(local(b));

  // Tarjan's algorithm.
  std::vector<int> index(m, -1), low(m, 0), comp(m, -1);
  std::vector<char> on_stack(m, 0);
  std::vector<int> stack;
  int counter = 0, num_comps = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : adj[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = num_comps;
        if (w == v) break;
      }
      ++num_comps;
    }
  };
  for (int v = 0; v < m; ++v) {
    if (index[v] < 0) visit(v);
  }

  std::vector<NodeSet> members(num_comps);
  for (int v = 0; v < m; ++v) members[comp[v]].push_back(rel.decisions[v]);
  std::vector<std::string> min_name(num_comps);
  for (int c = 0; c < num_comps; ++c) {
    min_name[c] = graph.Name(members[c][0]);
    for (int d : members[c]) min_name[c] = std::min(min_name[c], graph.Name(d));
  }
  std::vector<std::vector<int>> out_edges(num_comps), in_edges(num_comps);
  for (int v = 0; v < m; ++v) {
    for (int w : adj[v]) {
      if (comp[v] == comp[w]) continue;
      out_edges[comp[v]].push_back(comp[w]);
      in_edges[comp[w]].push_back(comp[v]);
    }
  }
  // Sinks first: repeatedly take a component whose successors are placed.
  std::vector<int> remaining(num_comps);
  for (int c = 0; c < num_comps; ++c) {
    std::sort(out_edges[c].begin(), out_edges[c].end());
    out_edges[c].erase(std::unique(out_edges[c].begin(), out_edges[c].end()),
                       out_edges[c].end());
    remaining[c] = static_cast<int>(out_edges[c].size());
  }
  auto cmp = [&](int a, int b) { return min_name[a] > min_name[b]; };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int c = 0; c < num_comps; ++c) {
    if (remaining[c] == 0) ready.push(c);
  }
  std::vector<int> position(num_comps, -1);
  CondensedRelevanceGraph out;
  while (!ready.empty()) {
    int c = ready.top();
    ready.pop();
    position[c] = static_cast<int>(out.components.size());
    out.components.push_back(members[c]);
    for (int p : in_edges[c]) {
      if (--remaining[p] == 0) ready.push(p);
    }
  }
  for (int c = 0; c < num_comps; ++c) {
    for (int t : out_edges[c]) out.edges.emplace_back(position[c], position[t]);
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

namespace {

int NumRules(const Maim& model, int d) {
  double count = CountPurePolicies(model, {d});
  if (count > std::numeric_limits<int>::max()) {
    throw Error("too many pure rules for '" + model.graph.Name(d) + "'");
  }
  return static_cast<int>(count);
}

std::vector<int> DecodeRule(const Maim& model, int d, int index) {
  std::vector<int> actions(model.NumContexts(d));
  const int card = model.Card(d);
  for (int r = static_cast<int>(actions.size()) - 1; r >= 0; --r) {
    actions[r] = index % card;
    index /= card;
  }
  return actions;
}

}  // namespace

RelevanceWitness StrategicallyRelevantSemantic(const Maim& model, int relying,
                                               int relied_on,
                                               double max_profiles) {
  const MaidGraph& g = model.graph;
  if (relying == relied_on) {
    throw Error("strategic relevance of a decision to itself is not defined");
  }
  for (int d : {relying, relied_on}) {
    if (d < 0 || d >= g.NumNodes() || !g.IsDecision(d)) {
      throw Error("strategic relevance queries take decision nodes");
    }
  }
  RelevanceWitness result;
  NodeSet all = g.Decisions();
  result.profiles_examined = CountPurePolicies(model, all);
  if (result.profiles_examined > max_profiles) {
    throw Error("model has too many pure profiles for the relevance oracle");
  }
  NodeSet rest = SetDifference(all, MakeNodeSet({relying, relied_on}));
  const int agent = g.Owner(relying);
  const int k_rules = NumRules(model, relying);
  const int l_rules = NumRules(model, relied_on);
  std::vector<int> rest_index(rest.size(), 0);
  std::vector<int> rest_count;
  for (int d : rest) rest_count.push_back(NumRules(model, d));

  while (true) {
    PureProfile base;
    for (size_t i = 0; i < rest.size(); ++i) {
      base[rest[i]] = DecodeRule(model, rest[i], rest_index[i]);
    }
    // optimal[l][k]: rule k of `relying` is optimal when `relied_on` plays l.
    std::vector<std::vector<char>> optimal(l_rules,
                                           std::vector<char>(k_rules, 0));
    for (int l = 0; l < l_rules; ++l) {
      PureProfile p = base;
      p[relied_on] = DecodeRule(model, relied_on, l);
      std::vector<double> value(k_rules);
      double best = -std::numeric_limits<double>::infinity();
      for (int k = 0; k < k_rules; ++k) {
        p[relying] = DecodeRule(model, relying, k);
        value[k] = ExpectedUtility(model, ToPolicy(model, p), agent);
        best = std::max(best, value[k]);
      }
      for (int k = 0; k < k_rules; ++k) {
        optimal[l][k] = value[k] >= best - kTolerance;
      }
    }
    for (int l1 = 0; l1 < l_rules; ++l1) {
      // Contexts of `relying` reached with positive probability under l1;
      // a rule only has to keep its actions there.
      PureProfile p = base;
      p[relied_on] = DecodeRule(model, relied_on, l1);
      p[relying] = DecodeRule(model, relying, 0);
      PolicyProfile policy = ToPolicy(model, p);
      policy.rules[relying] = UniformRule(model, relying);
      JointDistribution dist(model, policy);
      std::vector<char> reached(model.NumContexts(relying));
      for (int r = 0; r < model.NumContexts(relying); ++r) {
        reached[r] = dist.Probability(model.ContextAssignment(relying, r)) > 0.0;
      }
      auto agrees = [&](int k1, int k2) {
        auto a = DecodeRule(model, relying, k1), b = DecodeRule(model, relying, k2);
        for (size_t r = 0; r < a.size(); ++r) {
          if (reached[r] && a[r] != b[r]) return false;
        }
        return true;
      };
      for (int l2 = 0; l2 < l_rules; ++l2) {
        if (l1 == l2) continue;
        for (int k = 0; k < k_rules; ++k) {
          if (!optimal[l1][k] || optimal[l2][k]) continue;
          bool repaired = false;
          for (int k2 = 0; k2 < k_rules && !repaired; ++k2) {
            repaired = optimal[l2][k2] && agrees(k, k2);
          }
          if (!repaired) {
            result.verdict = SemanticRelevance::kYes;
            result.rule = DecodeRule(model, relying, k);
            result.pi = base;
            result.pi[relied_on] = DecodeRule(model, relied_on, l1);
            result.pi[relying] = result.rule;
            result.pi_prime = base;
            result.pi_prime[relied_on] = DecodeRule(model, relied_on, l2);
            result.pi_prime[relying] = result.rule;
            return result;
          }
        }
      }
    }
    int i = static_cast<int>(rest.size()) - 1;
    for (; i >= 0; --i) {
      if (++rest_index[i] < rest_count[i]) break;
      rest_index[i] = 0;
    }
    if (i < 0) break;
  }
  return result;
}

}  // namespace maidkit
