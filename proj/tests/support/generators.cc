#include "support/generators.h"

#include <algorithm>
#include <functional>
#include <set>

namespace maidkit::testing {

int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double Unit(Rng& rng) { return std::uniform_real_distribution<double>(0, 1)(rng); }

bool Coin(Rng& rng, double p) { return Unit(rng) < p; }

MaidGraph RandomDag(Rng& rng, int n, double p) {
  MaidGraph g;
  for (int i = 0; i < n; ++i) g.AddNode("V" + std::to_string(i), NodeKind::kChance);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      if (Coin(rng, p)) g.AddEdge(i, j);
    }
  }
  return g;
}

namespace {

std::vector<double> RandomRow(Rng& rng, int k, double zero_p) {
  std::vector<double> w(k);
  double s = 0;
  for (double& x : w) {
    x = Coin(rng, zero_p) ? 0.0 : 0.05 + Unit(rng);
    s += x;
  }
  if (s == 0) {
    w[Uniform(rng, 0, k - 1)] = 1.0;
    return w;
  }
  for (double& x : w) x /= s;
  return w;
}

}  // namespace

Maim RandomParametrization(Rng& rng, const MaidGraph& graph) {
  Maim m;
  m.name = "random";
  for (int v = 0; v < graph.NumNodes(); ++v) {
    m.AddNode(graph.Name(v), NodeKind::kChance, -1, Domain{{"0", "1"}, {}});
  }
  for (int v = 0; v < graph.NumNodes(); ++v) {
    for (int p : graph.Parents(v)) m.graph.AddEdge(p, v);
  }
  for (int v = 0; v < graph.NumNodes(); ++v) {
    Cpd& cpd = m.InitCpd(v);
    for (int r = 0; r < cpd.num_rows(); ++r) cpd.SetRow(r, RandomRow(rng, 2, 0.1));
  }
  return m;
}

Maim RandomMaim(Rng& rng, const MaimShape& shape) {
  Maim m;
  m.name = "random";
  for (int a = 0; a < shape.agents; ++a) m.graph.AddAgent(std::to_string(a + 1));
  const int n = Uniform(rng, 3, shape.max_nodes);
  const int n_util = Uniform(rng, 1, std::min(2, n - 1));
  const int n_inner = n - n_util;
  const int n_dec = Uniform(rng, 1, std::min(shape.max_decisions, n_inner));
  std::vector<NodeKind> kinds(n_inner, NodeKind::kChance);
  for (int i = 0; i < n_dec; ++i) kinds[i] = NodeKind::kDecision;
  std::shuffle(kinds.begin(), kinds.end(), rng);
  int dc = 0, xc = 0;
  for (int i = 0; i < n_inner; ++i) {
    if (kinds[i] == NodeKind::kDecision) {
      m.AddNode("D" + std::to_string(++dc), NodeKind::kDecision,
                Uniform(rng, 0, shape.agents - 1), Domain{{"a", "b"}, {}});
    } else {
      m.AddNode("X" + std::to_string(++xc), NodeKind::kChance, -1,
                Domain{{"0", "1"}, {}});
    }
  }
  for (int j = 1; j < n_inner; ++j) {
    std::vector<int> cand(j);
    for (int i = 0; i < j; ++i) cand[i] = i;
    std::shuffle(cand.begin(), cand.end(), rng);
    int k = Uniform(rng, 0, std::min(j, shape.max_parents));
    // Parent order sets the CPD row layout; keep it unsorted at times.
    if (Coin(rng, 0.5)) std::sort(cand.begin(), cand.begin() + k);
    for (int t = 0; t < k; ++t) m.graph.AddEdge(cand[t], j);
  }
  std::vector<int> owners;
  for (int u = 0; u < n_util; ++u) {
    owners.push_back(u == 0 ? 0 : Uniform(rng, 0, shape.agents - 1));
  }
  for (int u = 0; u < n_util; ++u) {
    std::vector<int> cand(n_inner);
    for (int i = 0; i < n_inner; ++i) cand[i] = i;
    std::shuffle(cand.begin(), cand.end(), rng);
    int k = Uniform(rng, 1, std::min(n_inner, shape.max_parents + 1));
    std::vector<int> parents(cand.begin(), cand.begin() + k);
    // Most utilities see at least one decision.
    if (Coin(rng, 0.8)) {
      bool has = false;
      for (int p : parents) has |= kinds[p] == NodeKind::kDecision;
      if (!has) {
        for (int i = 0; i < n_inner; ++i) {
          if (kinds[i] == NodeKind::kDecision) {
            parents.push_back(i);
            break;
          }
        }
      }
    }
    if (Coin(rng, 0.5)) std::sort(parents.begin(), parents.end());
    int rows = 1 << parents.size();
    std::vector<double> table(rows);
    for (double& x : table) x = Uniform(rng, -2, 3);
    std::set<double> distinct(table.begin(), table.end());
    Domain dom;
    for (double x : distinct) {
      dom.values.push_back(x);
      dom.labels.push_back(FormatEfgNumber(x));
    }
    std::string name = "U" + std::to_string(u + 1);
    int node = m.AddNode(name, NodeKind::kUtility, owners[u], dom);
    for (int p : parents) m.graph.AddEdge(p, node);
    Cpd& cpd = m.InitCpd(node);
    for (int r = 0; r < rows; ++r) {
      int k = static_cast<int>(std::find(dom.values.begin(), dom.values.end(),
                                         table[r]) -
                               dom.values.begin());
      cpd.SetDeterministic(r, k);
    }
  }
  for (int v = 0; v < n_inner; ++v) {
    if (kinds[v] != NodeKind::kChance) continue;
    Cpd& cpd = m.InitCpd(v);
    for (int r = 0; r < cpd.num_rows(); ++r) cpd.SetRow(r, RandomRow(rng, 2, 0.15));
  }
  return m;
}

PolicyProfile RandomProfile(Rng& rng, const Maim& model) {
  PolicyProfile p;
  for (int d : model.graph.Decisions()) {
    DecisionRule rule = model.EmptyRule(d);
    for (int r = 0; r < rule.num_rows(); ++r) {
      rule.SetRow(r, RandomRow(rng, rule.child_card(), 0.2));
    }
    p.rules.emplace(d, std::move(rule));
  }
  return p;
}

PureProfile RandomPureProfile(Rng& rng, const Maim& model) {
  PureProfile p;
  for (int d : model.graph.Decisions()) {
    std::vector<int> actions(model.NumContexts(d));
    for (int& a : actions) a = Uniform(rng, 0, model.Card(d) - 1);
    p[d] = actions;
  }
  return p;
}

Efg RandomEfg(Rng& rng) {
  Efg g;
  g.title = "random";
  g.agents = {"1", "2"};
  const int depth = Uniform(rng, 1, 3);
  auto make_payoff = [&]() {
    return std::vector<double>{static_cast<double>(Uniform(rng, -2, 3)),
                               static_cast<double>(Uniform(rng, -2, 3))};
  };

  // Decide node kinds per level first, then infosets.
  struct Node {
    int kind;  // 0 chance, 1 player, 2 terminal
    int player;
    int parent;
    int slot;
  };
  std::vector<std::vector<Node>> levels;
  levels.push_back({Node{Uniform(rng, 0, 2) == 0 ? 0 : 1, Uniform(rng, 0, 1), -1, 0}});
  for (int d = 1; d <= depth; ++d) {
    std::vector<Node> next;
    for (size_t i = 0; i < levels[d - 1].size(); ++i) {
      const Node& par = levels[d - 1][i];
      if (par.kind == 2) continue;
      for (int c = 0; c < 2; ++c) {
        Node n;
        n.parent = static_cast<int>(i);
        n.slot = c;
        if (d == depth || Coin(rng, 0.25)) {
          n.kind = 2;
        } else {
          n.kind = Coin(rng, 0.3) ? 0 : 1;
        }
        n.player = Uniform(rng, 0, 1);
        next.push_back(n);
      }
    }
    if (next.empty()) break;
    levels.push_back(next);
  }
  // Information sets: random partition per (depth, player).
  std::vector<std::vector<int>> infoset_of(levels.size());
  for (size_t d = 0; d < levels.size(); ++d) {
    infoset_of[d].assign(levels[d].size(), -1);
    for (int pl = 0; pl < 2; ++pl) {
      std::vector<int> open;
      for (size_t i = 0; i < levels[d].size(); ++i) {
        if (levels[d][i].kind != 1 || levels[d][i].player != pl) continue;
        if (!open.empty() && Coin(rng, 0.5)) {
          infoset_of[d][i] = open[Uniform(rng, 0, static_cast<int>(open.size()) - 1)];
        } else {
          int is = g.AddInfoSet(pl, "I" + std::to_string(g.NumInfoSets() + 1));
          open.push_back(is);
          infoset_of[d][i] = is;
        }
      }
    }
  }
  // Create tree nodes in prefix order.
  std::vector<std::vector<std::vector<int>>> kids(levels.size());
  for (size_t d = 0; d < levels.size(); ++d) kids[d].assign(levels[d].size(), {});
  for (size_t d = 1; d < levels.size(); ++d) {
    for (size_t i = 0; i < levels[d].size(); ++i) {
      kids[d - 1][levels[d][i].parent].push_back(static_cast<int>(i));
    }
  }
  std::function<int(size_t, int)> build = [&](size_t d, int i) -> int {
    const Node& n = levels[d][i];
    int id;
    if (n.kind == 2) return g.AddTerminal("", make_payoff());
    if (n.kind == 0) {
      id = g.AddChance("");
    } else {
      id = g.AddPlayer("", infoset_of[d][i]);
    }
    std::vector<double> probs;
    if (n.kind == 0) {
      double p = Coin(rng, 0.15) ? (Coin(rng, 0.5) ? 0.0 : 1.0) : 0.1 + 0.8 * Unit(rng);
      probs = {p, 1.0 - p};
    }
    const char* names[2] = {"l", "r"};
    for (int c = 0; c < 2; ++c) {
      int child = build(d + 1, kids[d][i][c]);
      g.AddChild(id, child, names[c], n.kind == 0 ? probs[c] : 0.0);
    }
    return id;
  };
  build(0, 0);
  // Drop information sets left empty.
  std::vector<int> remap(g.NumInfoSets(), -1);
  std::vector<InfoSet> kept;
  for (int i = 0; i < g.NumInfoSets(); ++i) {
    if (g.infosets[i].members.empty()) continue;
    remap[i] = static_cast<int>(kept.size());
    kept.push_back(g.infosets[i]);
  }
  g.infosets = kept;
  for (auto& node : g.nodes) {
    if (node.infoset >= 0) node.infoset = remap[node.infoset];
  }
  return g;
}

}  // namespace maidkit::testing
