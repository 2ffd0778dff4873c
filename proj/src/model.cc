#include "maidkit/model.h"

#include <cmath>
#include <sstream>

namespace maidkit {

int Domain::Find(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels[i] == label) return i;
  }
  return -1;
}

Cpd::Cpd(int child, std::vector<int> parents, std::vector<int> parent_cards,
         int child_card)
    : child_(child),
      parents_(std::move(parents)),
      parent_cards_(std::move(parent_cards)),
      child_card_(child_card) {
  if (parents_.size() != parent_cards_.size()) {
    throw Error("cpd parent cardinalities do not match parents");
  }
  num_rows_ = 1;
  for (int c : parent_cards_) num_rows_ *= c;
  probs_.assign(static_cast<size_t>(num_rows_) * child_card_, 0.0);
}

int Cpd::RowIndex(std::span<const int> parent_values) const {
  int row = 0;
  for (size_t i = 0; i < parents_.size(); ++i) {
    row = row * parent_cards_[i] + parent_values[i];
  }
  return row;
}

int Cpd::RowOf(const Assignment& assignment) const {
  int row = 0;
  for (size_t i = 0; i < parents_.size(); ++i) {
    row = row * parent_cards_[i] + assignment[parents_[i]];
  }
  return row;
}

std::vector<int> Cpd::RowValues(int row) const {
  std::vector<int> values(parents_.size());
  for (int i = static_cast<int>(parents_.size()) - 1; i >= 0; --i) {
    values[i] = row % parent_cards_[i];
    row /= parent_cards_[i];
  }
  return values;
}

void Cpd::SetRow(int row, std::span<const double> dist) {
  if (static_cast<int>(dist.size()) != child_card_) {
    throw Error("distribution size does not match the child domain");
  }
  std::copy(dist.begin(), dist.end(), MutableRow(row).begin());
}

void Cpd::SetDeterministic(int row, int value) {
  auto r = MutableRow(row);
  std::fill(r.begin(), r.end(), 0.0);
  r[value] = 1.0;
}

std::vector<int> Maim::Cards(const std::vector<int>& nodes) const {
  std::vector<int> cards;
  cards.reserve(nodes.size());
  for (int n : nodes) cards.push_back(Card(n));
  return cards;
}

int Maim::AddNode(std::string node_name, NodeKind kind, int owner,
                  Domain domain) {
  int index = graph.AddNode(std::move(node_name), kind, owner);
  domains.push_back(std::move(domain));
  cpds.emplace_back();
  tied.emplace_back();
  return index;
}

Cpd& Maim::InitCpd(int node) {
  const auto& parents = graph.Parents(node);
  cpds.at(node) = Cpd(node, parents, Cards(parents), Card(node));
  return *cpds[node];
}

int Maim::NumContexts(int decision) const {
  int rows = 1;
  for (int p : graph.Parents(decision)) rows *= Card(p);
  return rows;
}

DecisionRule Maim::EmptyRule(int decision) const {
  const auto& parents = graph.Parents(decision);
  return DecisionRule(decision, parents, Cards(parents), Card(decision));
}

Assignment Maim::ContextAssignment(int decision, int row) const {
  Assignment a(NumNodes(), kUnassigned);
  DecisionRule shape = EmptyRule(decision);
  auto values = shape.RowValues(row);
  for (size_t i = 0; i < values.size(); ++i) {
    a[shape.parents()[i]] = values[i];
  }
  return a;
}

std::string Maim::FormatContext(int decision, int row) const {
  const auto& parents = graph.Parents(decision);
  if (parents.empty()) return "-";
  DecisionRule shape = EmptyRule(decision);
  auto values = shape.RowValues(row);
  std::string out;
  for (size_t i = 0; i < parents.size(); ++i) {
    if (i) out += ",";
    out += graph.Name(parents[i]) + "=" +
           domains[parents[i]].labels[values[i]];
  }
  return out;
}

namespace {

void Add(std::vector<Violation>& out, std::string node, std::string rule,
         std::string detail) {
  out.push_back(Violation{std::move(node), std::move(rule), std::move(detail)});
}

}  // namespace

std::vector<Violation> Validate(const Maim& model) {
  std::vector<Violation> out;
  const MaidGraph& g = model.graph;
  const int n = g.NumNodes();
  if (static_cast<int>(model.domains.size()) != n ||
      static_cast<int>(model.cpds.size()) != n ||
      static_cast<int>(model.tied.size()) != n) {
    Add(out, "", "model shape", "per-node tables do not match node count");
    return out;
  }
  if (!g.IsAcyclic()) Add(out, "", "graph cyclic", "the edge set has a cycle");

  for (int v = 0; v < n; ++v) {
    const std::string& name = g.Name(v);
    const Domain& dom = model.domains[v];
    if (!g.IsChance(v) && (g.Owner(v) < 0 || g.Owner(v) >= g.NumAgents())) {
      Add(out, name, "missing owner", "decision and utility nodes need one");
    }
    if (dom.size() == 0) Add(out, name, "empty domain", "");
    if (g.IsUtility(v)) {
      if (!g.Children(v).empty()) {
        Add(out, name, "utility has children", "utility nodes must be sinks");
      }
      if (static_cast<int>(dom.values.size()) != dom.size()) {
        Add(out, name, "utility domain not numeric",
            "every utility value needs a real number");
      }
    }
    if (g.IsDecision(v)) {
      if (model.cpds[v]) {
        Add(out, name, "decision has cpd", "decision rules come from profiles");
      }
      continue;
    }
    if (!model.cpds[v]) {
      Add(out, name, "missing cpd", "chance and utility nodes need a CPD");
      continue;
    }
    const Cpd& cpd = *model.cpds[v];
    if (cpd.child() != v || cpd.parents() != g.Parents(v) ||
        cpd.parent_cards() != model.Cards(g.Parents(v)) ||
        cpd.child_card() != dom.size()) {
      Add(out, name, "cpd parents mismatch",
          "CPD parents or cardinalities differ from the graph");
      continue;
    }
    const TiedRule* tie = model.tied[v] ? &*model.tied[v] : nullptr;
    if (tie) {
      bool ok = tie->decision >= 0 && tie->decision < n &&
                g.IsDecision(tie->decision) && g.IsChance(v) &&
                static_cast<int>(tie->follows_rule.size()) == cpd.num_rows() &&
                dom.size() >= model.Card(tie->decision);
      if (ok) {
        for (int p : g.Parents(tie->decision)) {
          if (!g.HasEdge(p, v)) ok = false;
        }
      }
      if (!ok) {
        Add(out, name, "tied rule malformed",
            "instance node must be a chance child sharing the decision's "
            "parents");
        tie = nullptr;
      }
    }
    for (int r = 0; r < cpd.num_rows(); ++r) {
      if (tie && tie->follows_rule[r]) continue;
      double sum = 0.0;
      int ones = 0;
      bool in_range = true;
      for (double p : cpd.Row(r)) {
        if (!(p >= -kTolerance && p <= 1.0 + kTolerance)) in_range = false;
        sum += p;
        if (std::abs(p - 1.0) <= kTolerance) ++ones;
      }
      if (!in_range) {
        Add(out, name, "probability out of range",
            "row " + std::to_string(r) + " has an entry outside [0, 1]");
      }
      if (std::abs(sum - 1.0) > kTolerance) {
        std::ostringstream os;
        os << "row " << r << " sums to " << sum;
        Add(out, name, "row does not sum to 1", os.str());
      } else if (g.IsUtility(v) && ones != 1) {
        Add(out, name, "utility not deterministic",
            "row " + std::to_string(r) + " is not a point mass");
      }
    }
  }
  return out;
}

std::string FormatViolation(const Violation& v) {
  std::string out = v.node.empty() ? "model" : "node '" + v.node + "'";
  out += ": " + v.rule;
  if (!v.detail.empty()) out += " (" + v.detail + ")";
  return out;
}

void RequireValid(const Maim& model) {
  auto violations = Validate(model);
  if (violations.empty()) return;
  std::string msg = "invalid model";
  if (!model.name.empty()) msg += " '" + model.name + "'";
  for (const auto& v : violations) msg += "; " + FormatViolation(v);
  throw Error(msg);
}

bool PolicyProfile::IsFull(const Maim& model) const {
  for (int d : model.graph.Decisions()) {
    if (!Covers(d)) return false;
  }
  return true;
}

const DecisionRule& PolicyProfile::Rule(int decision) const {
  auto it = rules.find(decision);
  if (it == rules.end()) {
    throw Error("profile has no rule for decision " + std::to_string(decision));
  }
  return it->second;
}

DecisionRule UniformRule(const Maim& model, int decision) {
  DecisionRule rule = model.EmptyRule(decision);
  const double p = 1.0 / model.Card(decision);
  for (int r = 0; r < rule.num_rows(); ++r) {
    for (double& x : rule.MutableRow(r)) x = p;
  }
  return rule;
}

PolicyProfile UniformProfile(const Maim& model) {
  PolicyProfile profile;
  for (int d : model.graph.Decisions()) {
    profile.rules.emplace(d, UniformRule(model, d));
  }
  return profile;
}

DecisionRule PureRule(const Maim& model, int decision,
                      const std::vector<int>& actions) {
  DecisionRule rule = model.EmptyRule(decision);
  if (static_cast<int>(actions.size()) != rule.num_rows()) {
    throw Error("pure rule for '" + model.graph.Name(decision) +
                "' needs one action per context");
  }
  for (int r = 0; r < rule.num_rows(); ++r) rule.SetDeterministic(r, actions[r]);
  return rule;
}

PolicyProfile ToPolicy(const Maim& model, const PureProfile& pure) {
  PolicyProfile profile;
  for (const auto& [d, actions] : pure) {
    profile.rules.emplace(d, PureRule(model, d, actions));
  }
  return profile;
}

void CheckProfile(const Maim& model, const PolicyProfile& profile,
                  bool require_full) {
  const MaidGraph& g = model.graph;
  for (const auto& [d, rule] : profile.rules) {
    if (d < 0 || d >= g.NumNodes() || !g.IsDecision(d)) {
      throw Error("profile assigns a rule to non-decision node " +
                  std::to_string(d));
    }
    if (rule.parents() != g.Parents(d) ||
        rule.parent_cards() != model.Cards(g.Parents(d)) ||
        rule.child_card() != model.Card(d)) {
      throw Error("rule for '" + g.Name(d) +
                  "' is not shaped over the decision's parents");
    }
    for (int r = 0; r < rule.num_rows(); ++r) {
      double sum = 0.0;
      for (double p : rule.Row(r)) sum += p;
      if (std::abs(sum - 1.0) > kTolerance) {
        throw Error("rule for '" + g.Name(d) + "' row " + std::to_string(r) +
                    " does not sum to 1");
      }
    }
  }
  if (require_full) {
    for (int d : g.Decisions()) {
      if (!profile.Covers(d)) {
        throw Error("missing rule for decision '" + g.Name(d) + "'");
      }
    }
  }
}

}  // namespace maidkit
