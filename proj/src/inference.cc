#include "maidkit/inference.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace maidkit {

JointDistribution::JointDistribution(const Maim& model,
                                     const PolicyProfile& profile)
    : graph_(model.graph) {
  CheckProfile(model, profile, /*require_full=*/true);
  const int n = model.NumNodes();
  cards_.resize(n);
  utility_values_.resize(n);
  for (int v = 0; v < n; ++v) {
    cards_[v] = model.Card(v);
    if (graph_.IsUtility(v)) utility_values_[v] = model.domains[v].values;
  }
  cpds_.reserve(n);
  for (int v = 0; v < n; ++v) {
    if (graph_.IsDecision(v)) {
      cpds_.push_back(profile.Rule(v));
      continue;
    }
    if (!model.cpds[v]) {
      throw Error("node '" + graph_.Name(v) + "' has no CPD");
    }
    cpds_.push_back(*model.cpds[v]);
    if (!model.tied[v]) continue;
    const TiedRule& tie = *model.tied[v];
    const DecisionRule& rule = profile.Rule(tie.decision);
    Cpd& cpd = cpds_.back();
    Assignment a(n, kUnassigned);
    for (int r = 0; r < cpd.num_rows(); ++r) {
      if (!tie.follows_rule[r]) continue;
      auto values = cpd.RowValues(r);
      for (size_t i = 0; i < values.size(); ++i) a[cpd.parents()[i]] = values[i];
      int rule_row = rule.RowOf(a);
      auto dst = cpd.MutableRow(r);
      std::fill(dst.begin(), dst.end(), 0.0);
      auto src = rule.Row(rule_row);
      std::copy(src.begin(), src.end(), dst.begin());
    }
  }
  topo_position_.resize(n);
  auto order = graph_.TopologicalOrder();
  for (int i = 0; i < n; ++i) topo_position_[order[i]] = i;
}

QueryResult JointDistribution::Marginal(const NodeSet& targets,
                                        const Assignment& evidence) const {
  const int n = graph_.NumNodes();
  if (static_cast<int>(evidence.size()) != n) {
    throw Error("evidence must hold one entry per node");
  }
  for (int t : targets) {
    if (t < 0 || t >= n) throw Error("unknown target node");
    if (evidence[t] != kUnassigned) {
      throw Error("target '" + graph_.Name(t) + "' is also observed");
    }
  }
  std::vector<char> relevant(n, 0);
  std::vector<int> stack;
  auto mark = [&](int v) {
    if (!relevant[v]) {
      relevant[v] = 1;
      stack.push_back(v);
    }
  };
  for (int t : targets) mark(t);
  for (int v = 0; v < n; ++v) {
    if (evidence[v] == kUnassigned) continue;
    if (evidence[v] < 0 || evidence[v] >= cards_[v]) {
      throw Error("evidence value out of domain for '" + graph_.Name(v) + "'");
    }
    mark(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int p : graph_.Parents(v)) mark(p);
  }

  std::vector<Factor> factors;
  std::vector<int> eliminate;
  for (int v = 0; v < n; ++v) {
    if (!relevant[v]) continue;
    Factor f = Factor::FromCpd(cpds_[v]);
    const std::vector<int> vars = f.vars();
    for (int w : vars) {
      if (evidence[w] != kUnassigned) f = Reduce(f, w, evidence[w]);
    }
    factors.push_back(std::move(f));
    if (evidence[v] == kUnassigned && !Contains(targets, v)) {
      eliminate.push_back(v);
    }
  }
  std::sort(eliminate.begin(), eliminate.end(), [&](int a, int b) {
    return topo_position_[a] > topo_position_[b];
  });
  for (int var : eliminate) {
    Factor prod;
    std::vector<Factor> rest;
    for (auto& f : factors) {
      if (f.Has(var)) {
        prod = Multiply(prod, f);
      } else {
        rest.push_back(std::move(f));
      }
    }
    rest.push_back(SumOut(prod, var));
    factors = std::move(rest);
  }
  Factor result;
  for (const auto& f : factors) result = Multiply(result, f);

  QueryResult out;
  out.evidence_probability = result.Normalize();
  if (out.defined()) out.table = std::move(result);
  return out;
}

double JointDistribution::Probability(const Assignment& evidence) const {
  return Marginal({}, evidence).evidence_probability;
}

double JointDistribution::ExpectedUtility(int agent,
                                          const Assignment& evidence) const {
  if (agent < 0 || agent >= graph_.NumAgents()) {
    throw Error("unknown agent " + std::to_string(agent));
  }
  double total = 0.0;
  for (int u : graph_.UtilitiesOf(agent)) {
    QueryResult q = Marginal({u}, evidence);
    if (!q.defined()) throw Error("evidence has probability zero");
    const auto& vals = utility_values_[u];
    for (int k = 0; k < cards_[u]; ++k) total += vals[k] * q.table.values()[k];
  }
  return total;
}

double JointDistribution::ExpectedUtility(int agent) const {
  return ExpectedUtility(agent, Assignment(graph_.NumNodes(), kUnassigned));
}

double JointDistribution::JointProbability(const Assignment& full) const {
  double p = 1.0;
  for (int v = 0; v < graph_.NumNodes(); ++v) {
    p *= cpds_[v].at(cpds_[v].RowOf(full), full[v]);
    if (p == 0.0) break;
  }
  return p;
}

JointDistribution Induce(const Maim& model, const PolicyProfile& profile) {
  return JointDistribution(model, profile);
}

double ExpectedUtility(const Maim& model, const PolicyProfile& profile,
                       int agent) {
  return Induce(model, profile).ExpectedUtility(agent);
}

double ConditionalExpectedUtility(const Maim& model,
                                  const PolicyProfile& profile, int agent,
                                  const Assignment& context) {
  if (static_cast<int>(context.size()) != model.NumNodes()) {
    throw Error("context must hold one entry per node");
  }
  PolicyProfile clamped = profile;
  for (int d : model.graph.Decisions()) {
    if (context[d] == kUnassigned) continue;
    if (context[d] < 0 || context[d] >= model.Card(d)) {
      throw Error("context value out of domain for '" + model.graph.Name(d) +
                  "'");
    }
    DecisionRule rule = model.EmptyRule(d);
    for (int r = 0; r < rule.num_rows(); ++r) {
      rule.SetDeterministic(r, context[d]);
    }
    clamped.rules.insert_or_assign(d, std::move(rule));
  }
  JointDistribution dist(model, clamped);
  if (dist.Probability(context) <= 0.0) {
    throw Error("context has probability zero under the profile");
  }
  return dist.ExpectedUtility(agent, context);
}

std::vector<PureProfile> BestResponses(const Maim& model, int agent,
                                       const PolicyProfile& others) {
  const MaidGraph& g = model.graph;
  if (agent < 0 || agent >= g.NumAgents()) {
    throw Error("unknown agent " + std::to_string(agent));
  }
  NodeSet mine = g.DecisionsOf(agent);
  for (int d : g.Decisions()) {
    if (Contains(mine, d) == others.Covers(d)) {
      throw Error("opponent profile must cover exactly the other agents' "
                  "decisions; check '" + g.Name(d) + "'");
    }
  }
  if (CountPurePolicies(model, mine) > 1e6) {
    throw Error("too many pure policies for agent " + g.AgentName(agent));
  }
  std::vector<std::pair<int, int>> slots;
  for (int d : mine) {
    for (int r = 0; r < model.NumContexts(d); ++r) slots.emplace_back(d, r);
  }
  PureProfile current;
  for (int d : mine) current[d].assign(model.NumContexts(d), 0);

  std::vector<PureProfile> best;
  double best_value = -std::numeric_limits<double>::infinity();
  while (true) {
    PolicyProfile profile = others;
    for (const auto& [d, actions] : current) {
      profile.rules.emplace(d, PureRule(model, d, actions));
    }
    double value = ExpectedUtility(model, profile, agent);
    if (value > best_value + kTolerance) {
      best_value = value;
      best.clear();
      best.push_back(current);
    } else if (value >= best_value - kTolerance) {
      best.push_back(current);
      best_value = std::max(best_value, value);
    }
    int i = static_cast<int>(slots.size()) - 1;
    for (; i >= 0; --i) {
      auto [d, r] = slots[i];
      if (++current[d][r] < model.Card(d)) break;
      current[d][r] = 0;
    }
    if (i < 0) break;
  }
  return best;
}

bool IsFeasibleAssignment(const Maim& model, const Assignment& context) {
  JointDistribution dist(model, UniformProfile(model));
  return dist.Probability(context) > 0.0;
}

bool IsNullAssignment(const Maim& model, const Assignment& context) {
  JointDistribution dist(model, UniformProfile(model));
  if (dist.Probability(context) <= 0.0) return true;
  for (int u : model.graph.Utilities()) {
    if (context[u] != kUnassigned) {
      if (model.UtilityValue(u, context[u]) != 0.0) return false;
      continue;
    }
    QueryResult q = dist.Marginal({u}, context);
    for (int k = 0; k < model.Card(u); ++k) {
      if (q.table.values()[k] > 0.0 && model.UtilityValue(u, k) != 0.0) {
        return false;
      }
    }
  }
  return true;
}

bool IsFeasibleContext(const Maim& model, int decision, int row) {
  return IsFeasibleAssignment(model, model.ContextAssignment(decision, row));
}

bool IsNullContext(const Maim& model, int decision, int row) {
  return IsNullAssignment(model, model.ContextAssignment(decision, row));
}

double CountPurePolicies(const Maim& model, const NodeSet& decisions) {
  double count = 1.0;
  for (int d : decisions) {
    count *= std::pow(static_cast<double>(model.Card(d)),
                      static_cast<double>(model.NumContexts(d)));
    if (count > 1e18) return 1e18;
  }
  return count;
}

}  // namespace maidkit
