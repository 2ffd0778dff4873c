#include "maidkit/efg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace maidkit {

int Efg::AddInfoSet(int player, std::string label) {
  if (player < 0 || player >= NumAgents()) {
    throw Error("information set owner out of range");
  }
  infosets.push_back(InfoSet{player, std::move(label), {}});
  return NumInfoSets() - 1;
}

int Efg::AddChance(std::string label) {
  EfgNode n;
  n.kind = EfgNodeKind::kChance;
  n.label = std::move(label);
  nodes.push_back(std::move(n));
  return NumNodes() - 1;
}

int Efg::AddPlayer(std::string label, int infoset) {
  EfgNode n;
  n.kind = EfgNodeKind::kPlayer;
  n.label = std::move(label);
  n.infoset = infoset;
  n.player = infosets.at(infoset).player;
  nodes.push_back(std::move(n));
  infosets[infoset].members.push_back(NumNodes() - 1);
  return NumNodes() - 1;
}

int Efg::AddTerminal(std::string label, std::vector<double> payoffs) {
  EfgNode n;
  n.kind = EfgNodeKind::kTerminal;
  n.label = std::move(label);
  n.payoffs = std::move(payoffs);
  nodes.push_back(std::move(n));
  return NumNodes() - 1;
}

void Efg::AddChild(int parent, int child, std::string action, double prob) {
  EfgNode& p = nodes.at(parent);
  if (nodes.at(child).parent >= 0) throw Error("tree node already has a parent");
  p.children.push_back(child);
  p.actions.push_back(std::move(action));
  if (p.kind == EfgNodeKind::kChance) p.probs.push_back(prob);
  nodes[child].parent = parent;
}

const std::vector<std::string>& Efg::Actions(int infoset) const {
  const InfoSet& s = infosets.at(infoset);
  if (s.members.empty()) throw Error("information set has no members");
  return nodes.at(s.members[0]).actions;
}

std::vector<int> Efg::PrefixOrder() const {
  std::vector<int> order;
  if (nodes.empty()) return order;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& ch = nodes[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

void ValidateEfg(const Efg& game) {
  const int n = game.NumNodes();
  if (n == 0) throw Error("game tree has no nodes");
  if (game.nodes[0].parent != -1) throw Error("root node has a parent");
  std::vector<int> seen(n, 0);
  for (int v : game.PrefixOrder()) {
    if (v < 0 || v >= n) throw Error("child index out of range");
    if (seen[v]++) throw Error("tree node reached twice; not a tree");
  }
  for (int v = 0; v < n; ++v) {
    const EfgNode& node = game.nodes[v];
    const std::string where = "tree node " + std::to_string(v) +
                              (node.label.empty() ? "" : " '" + node.label + "'");
    if (!seen[v]) throw Error(where + " is not reachable from the root");
    for (int c : node.children) {
      if (game.nodes[c].parent != v) throw Error(where + ": child parent link broken");
    }
    if (node.actions.size() != node.children.size()) {
      throw Error(where + ": needs one action label per child");
    }
    switch (node.kind) {
      case EfgNodeKind::kTerminal:
        if (!node.children.empty()) throw Error(where + ": terminal has children");
        if (static_cast<int>(node.payoffs.size()) != game.NumAgents()) {
          throw Error(where + ": payoff vector needs one entry per agent");
        }
        break;
      case EfgNodeKind::kChance: {
        if (node.children.empty()) throw Error(where + ": chance node without children");
        if (node.probs.size() != node.children.size()) {
          throw Error(where + ": needs one probability per child");
        }
        double sum = 0.0;
        for (double p : node.probs) {
          if (!(p >= 0.0 && p <= 1.0)) throw Error(where + ": probability outside [0, 1]");
          sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
          throw Error(where + ": chance probabilities do not sum to 1");
        }
        break;
      }
      case EfgNodeKind::kPlayer: {
        if (node.children.empty()) throw Error(where + ": decision node without children");
        if (node.infoset < 0 || node.infoset >= game.NumInfoSets()) {
          throw Error(where + ": information set out of range");
        }
        const InfoSet& s = game.infosets[node.infoset];
        if (s.player != node.player) {
          throw Error(where + ": owner differs from its information set");
        }
        if (std::find(s.members.begin(), s.members.end(), v) == s.members.end()) {
          throw Error(where + ": missing from its information set");
        }
        if (game.nodes[s.members[0]].actions != node.actions) {
          throw Error(where + ": actions differ within its information set");
        }
        break;
      }
    }
  }
  for (int i = 0; i < game.NumInfoSets(); ++i) {
    const InfoSet& s = game.infosets[i];
    if (s.members.empty()) {
      throw Error("information set " + std::to_string(i) + " has no members");
    }
    for (int m : s.members) {
      if (m < 0 || m >= n || game.nodes[m].infoset != i) {
        throw Error("information set " + std::to_string(i) +
                    " lists a node that is not in it");
      }
    }
  }
}

EfgStrategy UniformEfgStrategy(const Efg& game) {
  EfgStrategy sigma(game.NumInfoSets());
  for (int i = 0; i < game.NumInfoSets(); ++i) {
    size_t k = game.Actions(i).size();
    sigma[i].assign(k, 1.0 / k);
  }
  return sigma;
}

std::vector<double> EfgExpectedUtilities(const Efg& game,
                                         const EfgStrategy& sigma) {
  if (static_cast<int>(sigma.size()) != game.NumInfoSets()) {
    throw Error("strategy must cover every information set");
  }
  for (int i = 0; i < game.NumInfoSets(); ++i) {
    if (sigma[i].size() != game.Actions(i).size()) {
      throw Error("strategy row size differs from the information set's actions");
    }
  }
  std::vector<double> total(game.NumAgents(), 0.0);
  if (game.nodes.empty()) return total;
  std::vector<std::pair<int, double>> stack{{0, 1.0}};
  while (!stack.empty()) {
    auto [v, p] = stack.back();
    stack.pop_back();
    const EfgNode& node = game.nodes[v];
    if (node.kind == EfgNodeKind::kTerminal) {
      for (int a = 0; a < game.NumAgents(); ++a) total[a] += p * node.payoffs[a];
      continue;
    }
    for (size_t k = 0; k < node.children.size(); ++k) {
      double q = node.kind == EfgNodeKind::kChance ? node.probs[k]
                                                   : sigma[node.infoset][k];
      if (q > 0.0) stack.emplace_back(node.children[k], p * q);
    }
  }
  return total;
}

double EfgExpectedUtility(const Efg& game, const EfgStrategy& sigma,
                          int agent) {
  if (agent < 0 || agent >= game.NumAgents()) throw Error("unknown agent");
  return EfgExpectedUtilities(game, sigma)[agent];
}

std::vector<int> AbsentmindedInfoSets(const Efg& game) {
  std::vector<char> flagged(game.NumInfoSets(), 0);
  std::vector<int> on_path(game.NumInfoSets(), 0);
  // Iterative DFS with explicit exit markers.
  std::vector<std::pair<int, bool>> stack;
  if (!game.nodes.empty()) stack.emplace_back(0, false);
  while (!stack.empty()) {
    auto [v, exiting] = stack.back();
    stack.pop_back();
    const EfgNode& node = game.nodes[v];
    if (exiting) {
      if (node.infoset >= 0) --on_path[node.infoset];
      continue;
    }
    if (node.kind == EfgNodeKind::kPlayer) {
      if (on_path[node.infoset]++ > 0) flagged[node.infoset] = 1;
    }
    stack.emplace_back(v, true);
    for (int c : node.children) stack.emplace_back(c, false);
  }
  std::vector<int> out;
  for (int i = 0; i < game.NumInfoSets(); ++i) {
    if (flagged[i]) out.push_back(i);
  }
  return out;
}

std::string FormatEfgNumber(double x) {
  if (x == 0.0) return "0";
  for (long long q = 1; q <= 1000; ++q) {
    double scaled = x * static_cast<double>(q);
    if (std::abs(scaled) > 9e15) break;
    long long n = std::llround(scaled);
    if (static_cast<double>(n) / static_cast<double>(q) == x) {
      if (q == 1) return std::to_string(n);
      return std::to_string(n) + "/" + std::to_string(q);
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ExportEfgText(const Efg& game) {
  ValidateEfg(game);
  std::ostringstream os;
  os << "EFG 2 R " << Quote(game.title) << " {";
  for (const auto& a : game.agents) os << " " << Quote(a);
  os << " }\n" << Quote("") << "\n\n";
  std::map<int, int> iset_number;
  std::vector<int> next_iset(game.NumAgents(), 0);
  int next_chance = 0, next_outcome = 0;
  for (int v : game.PrefixOrder()) {
    const EfgNode& node = game.nodes[v];
    switch (node.kind) {
      case EfgNodeKind::kChance:
        os << "c " << Quote(node.label) << " " << ++next_chance << " "
           << Quote("") << " {";
        for (size_t k = 0; k < node.children.size(); ++k) {
          os << " " << Quote(node.actions[k]) << " "
             << FormatEfgNumber(node.probs[k]);
        }
        os << " } 0\n";
        break;
      case EfgNodeKind::kPlayer: {
        auto it = iset_number.find(node.infoset);
        if (it == iset_number.end()) {
          it = iset_number.emplace(node.infoset, ++next_iset[node.player]).first;
        }
        os << "p " << Quote(node.label) << " " << node.player + 1 << " "
           << it->second << " " << Quote("") << " {";
        for (const auto& a : node.actions) os << " " << Quote(a);
        os << " } 0\n";
        break;
      }
      case EfgNodeKind::kTerminal:
        os << "t " << Quote(node.label) << " " << ++next_outcome << " "
           << Quote("") << " {";
        for (size_t i = 0; i < node.payoffs.size(); ++i) {
          os << (i ? ", " : " ") << FormatEfgNumber(node.payoffs[i]);
        }
        os << " }\n";
        break;
    }
  }
  return os.str();
}

}  // namespace maidkit
