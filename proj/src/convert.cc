#include "maidkit/convert.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "maidkit/inference.h"

namespace maidkit {

EfgStrategy PolicyToStrategy(const Efg& game, const Maim& model,
                             const NaturalMapping& mapping,
                             const PolicyProfile& profile) {
  EfgStrategy sigma(game.NumInfoSets());
  for (int i = 0; i < game.NumInfoSets(); ++i) {
    auto [d, row] = mapping.infoset_context.at(i);
    auto r = profile.Rule(d).Row(row);
    sigma[i].assign(r.begin(), r.end());
    if (sigma[i].size() != game.Actions(i).size()) {
      throw Error("mapped decision domain differs from the information set");
    }
  }
  (void)model;
  return sigma;
}

PolicyProfile StrategyToPolicy(const Efg& game, const Maim& model,
                               const NaturalMapping& mapping,
                               const EfgStrategy& sigma) {
  PolicyProfile profile;
  for (int d : model.graph.Decisions()) {
    DecisionRule rule = model.EmptyRule(d);
    for (int r = 0; r < rule.num_rows(); ++r) rule.SetDeterministic(r, 0);
    profile.rules.emplace(d, std::move(rule));
  }
  if (static_cast<int>(mapping.infoset_context.size()) != game.NumInfoSets() ||
      static_cast<int>(sigma.size()) != game.NumInfoSets()) {
    throw Error("mapping and strategy must cover every information set");
  }
  for (int i = 0; i < game.NumInfoSets(); ++i) {
    auto [d, row] = mapping.infoset_context[i];
    profile.rules.at(d).SetRow(row, sigma[i]);
  }
  return profile;
}

NodeSet SplittingNodes(const Maim& model, SplitMode mode) {
  const MaidGraph& g = model.graph;
  NodeSet out = g.Decisions();
  if (mode == SplitMode::kFull) return SetUnion(out, g.ChanceNodes());
  for (int d : g.Decisions()) out = SetUnion(out, MakeNodeSet(g.Parents(d)));
  return out;
}

std::vector<std::vector<int>> SplittingOrders(const Maim& model,
                                              const NodeSet& split,
                                              int limit) {
  const int m = static_cast<int>(split.size());
  std::vector<std::vector<int>> preds(m);
  for (int j = 0; j < m; ++j) {
    NodeSet anc = model.graph.Ancestors(split[j]);
    for (int i = 0; i < m; ++i) {
      if (Contains(anc, split[i])) preds[j].push_back(i);
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> order;
  std::vector<char> used(m, 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(out.size()) >= limit) return;
    if (static_cast<int>(order.size()) == m) {
      out.push_back(order);
      return;
    }
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      bool ready = true;
      for (int p : preds[j]) {
        if (!used[p]) ready = false;
      }
      if (!ready) continue;
      used[j] = 1;
      order.push_back(split[j]);
      rec();
      order.pop_back();
      used[j] = 0;
      if (static_cast<int>(out.size()) >= limit) return;
    }
  };
  rec();
  return out;
}

EfgConversion MaimToEfg(const Maim& model, SplitMode mode,
                        std::vector<int> order) {
  RequireValid(model);
  const MaidGraph& g = model.graph;
  NodeSet split = SplittingNodes(model, mode);
  if (order.empty()) {
    order = SplittingOrders(model, split, 1).at(0);
  } else if (MakeNodeSet(order) != split ||
             order.size() != split.size()) {
    throw Error("order must list each splitting node once");
  }
  for (size_t k = 0; k < order.size(); ++k) {
    for (size_t j = k + 1; j < order.size(); ++j) {
      if (Contains(g.Ancestors(order[k]), order[j])) {
        throw Error("order is not topological");
      }
    }
  }

  EfgConversion out;
  out.order = order;
  Efg& game = out.game;
  game.title = model.name;
  game.agents = g.agents();
  JointDistribution dist(model, UniformProfile(model));
  Assignment mu(model.NumNodes(), kUnassigned);
  std::map<std::pair<int, int>, int> infoset_of;

  std::function<int(size_t)> build = [&](size_t k) -> int {
    if (k == order.size()) {
      std::vector<double> payoffs(g.NumAgents());
      for (int a = 0; a < g.NumAgents(); ++a) {
        payoffs[a] = dist.ExpectedUtility(a, mu);
      }
      return game.AddTerminal("", std::move(payoffs));
    }
    const int s = order[k];
    const auto& labels = model.domains[s].labels;
    if (g.IsChance(s)) {
      QueryResult q = dist.Marginal({s}, mu);
      int node = game.AddChance(g.Name(s));
      for (int v = 0; v < model.Card(s); ++v) {
        double p = q.table.values()[v];
        if (!(p > 0.0)) continue;
        mu[s] = v;
        int child = build(k + 1);
        game.AddChild(node, child, labels[v], p);
      }
      mu[s] = kUnassigned;
      return node;
    }
    int row = model.EmptyRule(s).RowOf(mu);
    auto [it, inserted] =
        infoset_of.emplace(std::make_pair(s, row), game.NumInfoSets());
    if (inserted) {
      game.AddInfoSet(g.Owner(s), g.Name(s) + "|" + model.FormatContext(s, row));
      out.mapping.infoset_context.emplace_back(s, row);
    }
    int node = game.AddPlayer(g.Name(s), it->second);
    for (int v = 0; v < model.Card(s); ++v) {
      mu[s] = v;
      int child = build(k + 1);
      game.AddChild(node, child, labels[v]);
    }
    mu[s] = kUnassigned;
    return node;
  };
  build(0);
  return out;
}

std::vector<EfgConversion> MaimToEfgAll(const Maim& model, SplitMode mode,
                                        int limit) {
  std::vector<EfgConversion> out;
  for (auto& order :
       SplittingOrders(model, SplittingNodes(model, mode), limit)) {
    out.push_back(MaimToEfg(model, mode, order));
  }
  return out;
}

namespace {

constexpr char kNull[] = "\xe2\x8a\xa5";  // the null value, U+22A5

struct Variable {
  NodeKind kind = NodeKind::kChance;
  int owner = -1;
  std::string name;
  std::vector<std::string> labels;
  std::vector<int> members;  // tree nodes (chance vars, instances)
  std::vector<int> infosets;  // decision vars
  int carrier = -1;           // instance vars: the rule-carrying decision
  std::vector<int> parents;   // variable ids, ascending
  // Utility vars: leaves with the agent's payoff.
  std::vector<int> leaves;
  std::vector<double> values;
  bool has_null = false;
};

std::string Suffix(int k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return std::to_string(k + 1);
}

// Calls f(row) for every row of a table over `cards` matching `pattern`
// (pattern entry -1 matches any value).
template <typename F>
void ForMatchingRows(const std::vector<int>& cards, const std::vector<int>& pattern,
                     F f) {
  std::vector<int> idx(cards.size());
  for (size_t i = 0; i < cards.size(); ++i) idx[i] = pattern[i] < 0 ? 0 : pattern[i];
  while (true) {
    int row = 0;
    for (size_t i = 0; i < cards.size(); ++i) row = row * cards[i] + idx[i];
    f(row);
    int i = static_cast<int>(cards.size()) - 1;
    for (; i >= 0; --i) {
      if (pattern[i] >= 0) continue;
      if (++idx[i] < cards[i]) break;
      idx[i] = 0;
    }
    if (i < 0) break;
  }
}

MaimConversion BuildModel(const Efg& game, bool absentminded_mode) {
  ValidateEfg(game);
  const int n = game.NumNodes();
  std::vector<int> absent = AbsentmindedInfoSets(game);
  std::vector<char> is_absent(game.NumInfoSets(), 0);
  for (int i : absent) is_absent[i] = 1;
  if (!absentminded_mode && !absent.empty()) {
    throw Error("information set '" + game.infosets[absent[0]].label +
                "' is visited twice on a path (absentmindedness); use the "
                "absentminded transform");
  }
  if (absentminded_mode && absent.empty()) {
    throw Error("game has no absentminded information set; use efg_to_maim");
  }

  // Intervention sets: explicit ones, then singletons.
  std::vector<int> set_of(n, -1);
  std::vector<std::vector<int>> sets;
  for (const auto& listed : game.intervention_sets) {
    const int j = static_cast<int>(sets.size());
    if (listed.empty()) throw Error("intervention set is empty");
    std::vector<int> members;
    for (int z : listed) {
      if (z < 0 || z >= n) throw Error("intervention set names an unknown node");
      const EfgNode& node = game.nodes[z];
      if (node.kind == EfgNodeKind::kTerminal) {
        throw Error("intervention set contains a terminal node");
      }
      if (set_of[z] >= 0 && set_of[z] != j) {
        throw Error("tree node " + std::to_string(z) +
                    " is in two intervention sets");
      }
      if (node.kind != game.nodes[listed[0]].kind ||
          node.player != game.nodes[listed[0]].player) {
        throw Error("intervention set mixes chance nodes and information "
                    "sets, or players");
      }
      if (set_of[z] < 0) members.push_back(z);
      set_of[z] = j;
    }
    for (int z : members) {
      const EfgNode& node = game.nodes[z];
      if (node.kind != EfgNodeKind::kPlayer) continue;
      for (int w : game.infosets[node.infoset].members) {
        if (std::find(listed.begin(), listed.end(), w) == listed.end()) {
          throw Error("intervention set splits information set '" +
                      game.infosets[node.infoset].label + "'");
        }
      }
      if (is_absent[node.infoset] && members.size() !=
                                         game.infosets[node.infoset].members.size()) {
        throw Error("absentminded information sets cannot share an "
                    "intervention set");
      }
    }
    sets.push_back(members);
  }
  for (int z : game.PrefixOrder()) {
    const EfgNode& node = game.nodes[z];
    if (node.kind == EfgNodeKind::kTerminal || set_of[z] >= 0) continue;
    std::vector<int> members{z};
    if (node.kind == EfgNodeKind::kPlayer) {
      members = game.infosets[node.infoset].members;
    }
    for (int w : members) set_of[w] = static_cast<int>(sets.size());
    sets.push_back(members);
  }
  for (const auto& s : sets) {
    for (int z : s) {
      if (game.nodes[z].children.size() != game.nodes[s[0]].children.size()) {
        throw Error("intervention set members have different numbers of "
                    "children");
      }
    }
  }

  // Variables in order of first appearance.
  std::vector<Variable> vars;
  std::vector<int> set_var(sets.size(), -1);
  std::vector<int> node_var(n, -1);
  auto absent_set = [&](int j) {
    int z = sets[j][0];
    return game.nodes[z].kind == EfgNodeKind::kPlayer &&
           is_absent[game.nodes[z].infoset];
  };
  for (int z : game.PrefixOrder()) {
    const EfgNode& node = game.nodes[z];
    if (node.kind == EfgNodeKind::kTerminal) continue;
    const int j = set_of[z];
    if (set_var[j] < 0) {
      Variable v;
      v.kind = node.kind == EfgNodeKind::kChance ? NodeKind::kChance
                                                  : NodeKind::kDecision;
      v.owner = node.kind == EfgNodeKind::kChance ? -1 : node.player;
      v.labels = node.actions;
      if (v.kind == NodeKind::kChance) v.members = sets[j];
      if (v.kind == NodeKind::kDecision) {
        for (int w : sets[j]) {
          int is = game.nodes[w].infoset;
          if (std::find(v.infosets.begin(), v.infosets.end(), is) ==
              v.infosets.end()) {
            v.infosets.push_back(is);
          }
        }
      }
      set_var[j] = static_cast<int>(vars.size());
      vars.push_back(std::move(v));
    }
    if (absent_set(j)) {
      Variable inst;
      inst.kind = NodeKind::kChance;
      inst.labels = node.actions;
      inst.members = {z};
      inst.carrier = set_var[j];
      node_var[z] = static_cast<int>(vars.size());
      vars.push_back(std::move(inst));
    } else {
      node_var[z] = set_var[j];
    }
  }

  // Paths as (variable, child index) lists.
  std::vector<std::vector<std::pair<int, int>>> path(n);
  for (int z : game.PrefixOrder()) {
    const EfgNode& node = game.nodes[z];
    if (node.kind == EfgNodeKind::kTerminal) continue;
    const int v = node_var[z];
    for (const auto& [w, val] : path[z]) {
      if (w == v) {
        throw Error("a path from the root passes through intervention set "
                    "of tree node " + std::to_string(z) + " more than once");
      }
    }
    for (size_t k = 0; k < node.children.size(); ++k) {
      auto& p = path[node.children[k]];
      p = path[z];
      p.emplace_back(v, static_cast<int>(k));
    }
  }
  auto value_on = [&](int z, int var) {
    for (const auto& [w, val] : path[z]) {
      if (w == var) return val;
    }
    return -1;
  };

  // Decision parents: variables with one common value on every path into
  // the information set.
  std::vector<std::vector<int>> infoset_context(game.NumInfoSets());
  for (int vi = 0; vi < static_cast<int>(vars.size()); ++vi) {
    Variable& var = vars[vi];
    if (var.kind != NodeKind::kDecision) continue;
    std::vector<int> common;
    for (size_t k = 0; k < var.infosets.size(); ++k) {
      const InfoSet& is = game.infosets[var.infosets[k]];
      std::map<int, int> agreed;
      for (const auto& [w, val] : path[is.members[0]]) agreed[w] = val;
      for (int z : is.members) {
        std::map<int, int> here;
        for (const auto& [w, val] : path[z]) here[w] = val;
        for (auto it = agreed.begin(); it != agreed.end();) {
          auto h = here.find(it->first);
          if (h == here.end() || h->second != it->second) {
            it = agreed.erase(it);
          } else {
            ++it;
          }
        }
      }
      std::vector<int> mu;
      for (const auto& [w, val] : agreed) mu.push_back(w);
      if (k == 0) {
        common = mu;
      } else if (mu != common) {
        throw Error("information sets in one intervention set do not share "
                    "the same knowledge of the path (differing observed "
                    "variables)");
      }
      std::vector<int> values;
      for (int w : mu) values.push_back(agreed[w]);
      infoset_context[var.infosets[k]] = values;
    }
    var.parents = common;
    for (size_t a = 0; a < var.infosets.size(); ++a) {
      for (size_t b = a + 1; b < var.infosets.size(); ++b) {
        if (infoset_context[var.infosets[a]] ==
            infoset_context[var.infosets[b]]) {
          throw Error("information sets in one intervention set share a "
                      "context and cannot be told apart");
        }
      }
    }
  }
  // Chance parents: every variable on a path into a member.
  for (auto& var : vars) {
    if (var.kind != NodeKind::kChance) continue;
    std::set<int> ps;
    if (var.carrier >= 0) ps.insert(var.carrier);
    for (int z : var.members) {
      for (const auto& [w, val] : path[z]) ps.insert(w);
    }
    var.parents.assign(ps.begin(), ps.end());
  }

  // Utility variables: one per (agent, set of path variables), with
  // decision instances folded into their carrier while grouping.
  std::map<std::pair<int, std::vector<int>>, int> utility_of;
  const int first_utility = static_cast<int>(vars.size());
  for (int z : game.PrefixOrder()) {
    const EfgNode& node = game.nodes[z];
    if (node.kind != EfgNodeKind::kTerminal) continue;
    std::set<int> key_set;
    for (const auto& [w, val] : path[z]) {
      key_set.insert(vars[w].carrier >= 0 ? vars[w].carrier : w);
    }
    std::vector<int> key(key_set.begin(), key_set.end());
    for (int a = 0; a < game.NumAgents(); ++a) {
      auto [it, inserted] = utility_of.emplace(
          std::make_pair(a, key), static_cast<int>(vars.size()));
      if (inserted) {
        Variable u;
        u.kind = NodeKind::kUtility;
        u.owner = a;
        vars.push_back(std::move(u));
      }
      vars[it->second].leaves.push_back(z);
    }
  }
  for (const auto& [key, vi] : utility_of) {
    Variable& u = vars[vi];
    std::set<int> ps;
    for (int w : key.second) {
      if (vars[w].kind == NodeKind::kDecision) {
        bool carrier = false;
        for (int leaf : u.leaves) {
          for (const auto& [x, val] : path[leaf]) {
            if (vars[x].carrier == w) {
              ps.insert(x);
              carrier = true;
            }
          }
        }
        if (carrier) continue;
      }
      ps.insert(w);
    }
    u.parents.assign(ps.begin(), ps.end());
  }

  // Names.
  std::vector<int> decisions_per_agent(game.NumAgents(), 0);
  std::vector<int> utilities_per_agent(game.NumAgents(), 0);
  int chance_count = 0;
  for (const auto& v : vars) {
    if (v.kind == NodeKind::kDecision) ++decisions_per_agent[v.owner];
    if (v.kind == NodeKind::kUtility) ++utilities_per_agent[v.owner];
    if (v.kind == NodeKind::kChance && v.carrier < 0) ++chance_count;
  }
  std::vector<int> seen_d(game.NumAgents(), 0), seen_u(game.NumAgents(), 0);
  int seen_x = 0;
  std::map<int, int> instance_count;
  for (auto& v : vars) {
    if (v.kind == NodeKind::kDecision) {
      v.name = "D" + game.agents[v.owner];
      if (decisions_per_agent[v.owner] > 1) {
        v.name += "_" + Suffix(seen_d[v.owner]++);
      }
    } else if (v.kind == NodeKind::kUtility) {
      v.name = "U" + game.agents[v.owner];
      if (utilities_per_agent[v.owner] > 1) {
        v.name += "_" + Suffix(seen_u[v.owner]++);
      }
    } else if (v.carrier >= 0) {
      v.name = "X_" + vars[v.carrier].name + "_" +
               std::to_string(++instance_count[v.carrier]);
    } else {
      v.name = chance_count > 1 ? "X" + std::to_string(++seen_x) : "X";
    }
  }

  // Utility domains: payoffs in ascending order (0 added for off-tree
  // rows later).
  for (int vi = first_utility; vi < static_cast<int>(vars.size()); ++vi) {
    Variable& u = vars[vi];
    std::set<double> vals;
    for (int leaf : u.leaves) vals.insert(game.nodes[leaf].payoffs[u.owner]);
    u.values.assign(vals.begin(), vals.end());
  }

  // Assemble the model; CPDs in variable order so parents' null values
  // are known.
  MaimConversion out;
  Maim& model = out.model;
  model.name = game.title;
  model.graph = MaidGraph(game.agents);
  const int nv = static_cast<int>(vars.size());
  auto null_index = [&](int w) {
    if (!vars[w].has_null) {
      throw Error("internal: variable '" + vars[w].name + "' lacks a null value");
    }
    return static_cast<int>(vars[w].labels.size()) - 1;
  };
  auto spec_for = [&](const Variable& var, int z) {
    std::vector<int> pattern;
    for (int w : var.parents) {
      int val = value_on(z, w);
      if (val < 0) {
        val = vars[w].kind == NodeKind::kChance ? null_index(w) : -1;
      }
      pattern.push_back(val);
    }
    return pattern;
  };
  std::vector<Cpd> cpds(nv);
  std::vector<std::optional<TiedRule>> ties(nv);
  for (int vi = 0; vi < nv; ++vi) {
    Variable& var = vars[vi];
    std::vector<int> cards;
    for (int w : var.parents) cards.push_back(static_cast<int>(vars[w].labels.size()));
    if (var.kind == NodeKind::kUtility) {
      var.labels.clear();
      for (double x : var.values) var.labels.push_back(FormatEfgNumber(x));
    }
    if (var.kind == NodeKind::kDecision) continue;
    int rows = 1;
    for (int c : cards) rows *= c;
    const int card = static_cast<int>(var.labels.size());
    std::vector<double> table(static_cast<size_t>(rows) * card, 0.0);
    std::vector<char> covered(rows, 0);
    std::vector<char> follows(rows, 0);
    if (var.kind == NodeKind::kChance) {
      for (int z : var.members) {
        const EfgNode& node = game.nodes[z];
        ForMatchingRows(cards, spec_for(var, z), [&](int row) {
          covered[row] = 1;
          if (var.carrier >= 0) {
            follows[row] = 1;
            return;
          }
          for (int k = 0; k < card; ++k) {
            table[static_cast<size_t>(row) * card + k] += node.probs[k];
          }
        });
      }
    } else {
      for (int leaf : var.leaves) {
        double x = game.nodes[leaf].payoffs[var.owner];
        int k = static_cast<int>(
            std::lower_bound(var.values.begin(), var.values.end(), x) -
            var.values.begin());
        ForMatchingRows(cards, spec_for(var, leaf), [&](int row) {
          if (covered[row]) {
            throw Error("leaves of '" + var.name + "' share a context");
          }
          covered[row] = 1;
          table[static_cast<size_t>(row) * card + k] = 1.0;
        });
      }
    }
    for (int r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (int k = 0; k < card; ++k) sum += table[static_cast<size_t>(r) * card + k];
      if (sum > 1.0 + 1e-9) {
        throw Error("members of the intervention set of '" + var.name +
                    "' share a context");
      }
    }
    bool off_tree = std::find(covered.begin(), covered.end(), 0) != covered.end();
    int extra = -1;
    if (off_tree) {
      if (var.kind == NodeKind::kChance) {
        var.labels.push_back(kNull);
        var.has_null = true;
        extra = card;
      } else {
        auto it = std::lower_bound(var.values.begin(), var.values.end(), 0.0);
        if (it == var.values.end() || *it != 0.0) {
          int pos = static_cast<int>(it - var.values.begin());
          var.values.insert(it, 0.0);
          var.labels.insert(var.labels.begin() + pos, "0");
          // Shift existing entries right of the new column.
          std::vector<double> grown(static_cast<size_t>(rows) * (card + 1), 0.0);
          for (int r = 0; r < rows; ++r) {
            for (int k = 0; k < card; ++k) {
              grown[static_cast<size_t>(r) * (card + 1) + (k < pos ? k : k + 1)] =
                  table[static_cast<size_t>(r) * card + k];
            }
          }
          table = std::move(grown);
        }
        extra = static_cast<int>(
            std::lower_bound(var.values.begin(), var.values.end(), 0.0) -
            var.values.begin());
      }
    }
    const int new_card = static_cast<int>(var.labels.size());
    if (var.kind == NodeKind::kChance && off_tree) {
      std::vector<double> grown(static_cast<size_t>(rows) * new_card, 0.0);
      for (int r = 0; r < rows; ++r) {
        for (int k = 0; k < card; ++k) {
          grown[static_cast<size_t>(r) * new_card + k] =
              table[static_cast<size_t>(r) * card + k];
        }
      }
      table = std::move(grown);
    }
    for (int r = 0; r < rows; ++r) {
      if (!covered[r]) table[static_cast<size_t>(r) * new_card + extra] = 1.0;
    }
    std::vector<int> parents = var.parents;
    Cpd cpd(vi, parents, cards, new_card);
    for (int r = 0; r < rows; ++r) {
      cpd.SetRow(r, std::span<const double>(
                        table.data() + static_cast<size_t>(r) * new_card,
                        static_cast<size_t>(new_card)));
    }
    cpds[vi] = std::move(cpd);
    if (var.carrier >= 0) ties[vi] = TiedRule{var.carrier, follows};
  }

  for (int vi = 0; vi < nv; ++vi) {
    const Variable& var = vars[vi];
    Domain dom;
    dom.labels = var.labels;
    if (var.kind == NodeKind::kUtility) dom.values = var.values;
    model.AddNode(var.name, var.kind, var.owner, std::move(dom));
  }
  for (int vi = 0; vi < nv; ++vi) {
    for (int w : vars[vi].parents) model.graph.AddEdge(w, vi);
    if (vars[vi].kind != NodeKind::kDecision) {
      model.cpds[vi] = std::move(cpds[vi]);
      model.tied[vi] = std::move(ties[vi]);
    }
  }
  RequireValid(model);

  out.mapping.infoset_context.resize(game.NumInfoSets());
  for (int vi = 0; vi < nv; ++vi) {
    const Variable& var = vars[vi];
    if (var.kind != NodeKind::kDecision) continue;
    DecisionRule shape = model.EmptyRule(vi);
    for (int is : var.infosets) {
      out.mapping.infoset_context[is] = {vi,
                                         shape.RowIndex(infoset_context[is])};
    }
  }
  out.node_variable = node_var;
  return out;
}

}  // namespace

MaimConversion EfgToMaim(const Efg& game) { return BuildModel(game, false); }

MaimConversion AbsentmindedTransform(const Efg& game) {
  return BuildModel(game, true);
}

EquivalenceReport CheckEquivalence(const Efg& game, const Maim& model,
                                   const NaturalMapping& mapping, int trials,
                                   std::uint64_t seed) {
  EquivalenceReport report;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::set<std::pair<int, int>> mapped(mapping.infoset_context.begin(),
                                       mapping.infoset_context.end());
  auto random_row = [&](int k) {
    std::vector<double> w(k);
    double s = 0.0;
    for (double& x : w) s += (x = unit(rng) + 1e-3);
    for (double& x : w) x /= s;
    return w;
  };
  auto compare = [&](const EfgStrategy& sigma) {
    std::vector<double> ug = EfgExpectedUtilities(game, sigma);
    PolicyProfile canonical = StrategyToPolicy(game, model, mapping, sigma);
    PolicyProfile scrambled = canonical;
    for (auto& [d, rule] : scrambled.rules) {
      for (int r = 0; r < rule.num_rows(); ++r) {
        if (!mapped.count({d, r})) rule.SetRow(r, random_row(rule.child_card()));
      }
    }
    for (const PolicyProfile* p : {&canonical, &scrambled}) {
      JointDistribution dist(model, *p);
      for (int a = 0; a < game.NumAgents(); ++a) {
        double um = dist.ExpectedUtility(a);
        double diff = std::abs(um - ug[a]);
        report.max_difference = std::max(report.max_difference, diff);
        if (diff > 1e-9 * std::max(1.0, std::abs(ug[a]))) {
          if (report.mismatches++ == 0) {
            report.first_mismatch = "agent " + game.agents[a] + ": game " +
                                    std::to_string(ug[a]) + " vs model " +
                                    std::to_string(um);
          }
        }
      }
    }
  };

  double pure = 1.0;
  for (int i = 0; i < game.NumInfoSets(); ++i) pure *= game.Actions(i).size();
  if (pure <= 1e4) {
    std::vector<int> idx(game.NumInfoSets(), 0);
    while (true) {
      EfgStrategy sigma(game.NumInfoSets());
      for (int i = 0; i < game.NumInfoSets(); ++i) {
        sigma[i].assign(game.Actions(i).size(), 0.0);
        sigma[i][idx[i]] = 1.0;
      }
      compare(sigma);
      ++report.pure_checked;
      int i = game.NumInfoSets() - 1;
      for (; i >= 0; --i) {
        if (++idx[i] < static_cast<int>(game.Actions(i).size())) break;
        idx[i] = 0;
      }
      if (i < 0) break;
    }
  }
  for (int t = 0; t < trials; ++t) {
    EfgStrategy sigma(game.NumInfoSets());
    for (int i = 0; i < game.NumInfoSets(); ++i) {
      sigma[i] = random_row(static_cast<int>(game.Actions(i).size()));
    }
    compare(sigma);
    ++report.mixed_checked;
  }
  return report;
}

}  // namespace maidkit
