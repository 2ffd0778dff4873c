#ifndef MAIDKIT_INFERENCE_H_
#define MAIDKIT_INFERENCE_H_

#include <vector>

#include "maidkit/factor.h"
#include "maidkit/model.h"

namespace maidkit {

// Result of a marginal query. When the evidence has probability zero the
// table is left empty and defined() is false.
struct QueryResult {
  Factor table;
  double evidence_probability = 0.0;

  bool defined() const { return evidence_probability > 0.0; }
  // Probability of the target values given in table.vars() order.
  double Prob(const std::vector<int>& values) const { return table.At(values); }
};

// The Bayesian network M(pi): every node carries a CPD, decisions taking
// theirs from a full policy profile. Holds its own copy of the graph and
// tables.
class JointDistribution {
 public:
  JointDistribution(const Maim& model, const PolicyProfile& profile);

  const MaidGraph& graph() const { return graph_; }
  const std::vector<int>& cards() const { return cards_; }
  const Cpd& NodeCpd(int node) const { return cpds_.at(node); }
  const std::vector<double>& utility_values(int node) const {
    return utility_values_.at(node);
  }

  // Pr(targets | evidence) by variable elimination. Evidence holds one
  // value per node or kUnassigned; targets must not be observed.
  QueryResult Marginal(const NodeSet& targets, const Assignment& evidence) const;
  double Probability(const Assignment& evidence) const;

  // Sum over the agent's utility nodes of their expected values, given
  // evidence with positive probability.
  double ExpectedUtility(int agent, const Assignment& evidence) const;
  double ExpectedUtility(int agent) const;

  // Product of all CPD entries for a full assignment.
  double JointProbability(const Assignment& full) const;

 private:
  MaidGraph graph_;
  std::vector<int> cards_;
  std::vector<Cpd> cpds_;
  std::vector<std::vector<double>> utility_values_;
  std::vector<int> topo_position_;
};

// Builds M(pi). Throws if the profile is not full or a rule is misshapen.
JointDistribution Induce(const Maim& model, const PolicyProfile& profile);

double ExpectedUtility(const Maim& model, const PolicyProfile& profile,
                       int agent);

// Expected utility given a decision context. Decisions fixed by the context
// are set to the given values (their rules are replaced by point masses);
// the remaining context is conditioned on. Throws if that conditioning
// event has probability zero.
double ConditionalExpectedUtility(const Maim& model,
                                  const PolicyProfile& profile, int agent,
                                  const Assignment& context);

// All pure policies of the agent maximizing its expected utility against
// the other agents' rules, ties within kTolerance included, in
// lexicographic order. Each entry covers only the agent's decisions.
std::vector<PureProfile> BestResponses(const Maim& model, int agent,
                                       const PolicyProfile& others);

// Feasibility and nullity of a decision context given as a row of the
// decision's rule.
bool IsFeasibleContext(const Maim& model, int decision, int row);
bool IsNullContext(const Maim& model, int decision, int row);
// Same tests for an arbitrary partial assignment.
bool IsFeasibleAssignment(const Maim& model, const Assignment& context);
bool IsNullAssignment(const Maim& model, const Assignment& context);

// Number of pure policies over the given decisions (saturates at max).
double CountPurePolicies(const Maim& model, const NodeSet& decisions);

}  // namespace maidkit

#endif  // MAIDKIT_INFERENCE_H_
