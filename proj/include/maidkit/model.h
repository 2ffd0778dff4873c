#ifndef MAIDKIT_MODEL_H_
#define MAIDKIT_MODEL_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maidkit/graph.h"

namespace maidkit {

// Absolute tolerance for "sums to one", probability positivity and
// utility ties.
inline constexpr double kTolerance = 1e-9;

// Value index per node; kUnassigned marks nodes outside the assignment.
using Assignment = std::vector<int>;
inline constexpr int kUnassigned = -1;

struct Domain {
  std::vector<std::string> labels;
  std::vector<double> values;  // utility nodes only, parallel to labels

  int size() const { return static_cast<int>(labels.size()); }
  int Find(const std::string& label) const;  // -1 if absent
};

// A conditional probability table Pr(child | parents). Rows enumerate the
// parent assignments lexicographically with the first parent most
// significant; each row is a distribution over the child's domain.
class Cpd {
 public:
  Cpd() = default;
  Cpd(int child, std::vector<int> parents, std::vector<int> parent_cards,
      int child_card);

  int child() const { return child_; }
  const std::vector<int>& parents() const { return parents_; }
  const std::vector<int>& parent_cards() const { return parent_cards_; }
  int child_card() const { return child_card_; }
  int num_rows() const { return num_rows_; }

  double at(int row, int value) const {
    return probs_[static_cast<size_t>(row) * child_card_ + value];
  }
  double& at(int row, int value) {
    return probs_[static_cast<size_t>(row) * child_card_ + value];
  }
  std::span<const double> Row(int row) const {
    return {probs_.data() + static_cast<size_t>(row) * child_card_,
            static_cast<size_t>(child_card_)};
  }
  std::span<double> MutableRow(int row) {
    return {probs_.data() + static_cast<size_t>(row) * child_card_,
            static_cast<size_t>(child_card_)};
  }
  const std::vector<double>& probs() const { return probs_; }

  // Row of the parent values, given in parents() order.
  int RowIndex(std::span<const int> parent_values) const;
  // Row selected by a full assignment indexed by node.
  int RowOf(const Assignment& assignment) const;
  // Parent values of a row, in parents() order.
  std::vector<int> RowValues(int row) const;

  void SetRow(int row, std::span<const double> dist);
  void SetDeterministic(int row, int value);

 private:
  int child_ = -1;
  std::vector<int> parents_;
  std::vector<int> parent_cards_;
  int child_card_ = 0;
  int num_rows_ = 1;
  std::vector<double> probs_;
};

// A decision rule is a CPD chosen by the deciding agent.
using DecisionRule = Cpd;

// Chance node whose rows (where flagged) follow the rule of a decision
// instead of a fixed distribution; used for decision instances of an
// absentminded information set. The decision's parents must be among the
// node's parents and the node's first values mirror the decision domain.
struct TiedRule {
  int decision = -1;
  std::vector<char> follows_rule;  // per row of the node's CPD
};

// A multi-agent influence model: a MAID plus domains and CPDs for every
// chance and utility node. Fields are public; Validate() reports broken
// invariants.
struct Maim {
  std::string name;
  MaidGraph graph;
  std::vector<Domain> domains;
  std::vector<std::optional<Cpd>> cpds;  // empty for decisions
  std::vector<std::optional<TiedRule>> tied;

  int NumNodes() const { return graph.NumNodes(); }
  int Card(int node) const { return domains.at(node).size(); }
  std::vector<int> Cards(const std::vector<int>& nodes) const;

  // Adds a node with its domain; edges and CPDs are attached later.
  int AddNode(std::string node_name, NodeKind kind, int owner,
              Domain domain);
  // Allocates an all-zero CPD over the node's current graph parents.
  Cpd& InitCpd(int node);

  // Number of decision contexts (rows) of a decision.
  int NumContexts(int decision) const;
  // Empty rule shaped for the decision: rows over its parents.
  DecisionRule EmptyRule(int decision) const;
  // Parent assignment of a decision context row, as a node-indexed
  // assignment.
  Assignment ContextAssignment(int decision, int row) const;
  std::string FormatContext(int decision, int row) const;

  double UtilityValue(int node, int value) const {
    return domains.at(node).values.at(value);
  }
};

struct Violation {
  std::string node;  // empty for model-wide problems
  std::string rule;
  std::string detail;
};

// Empty iff all model invariants hold.
std::vector<Violation> Validate(const Maim& model);
std::string FormatViolation(const Violation& v);
// Throws Error listing the violations if the model is invalid.
void RequireValid(const Maim& model);

// Decision rules for some subset of the decisions.
struct PolicyProfile {
  std::map<int, DecisionRule> rules;

  bool Covers(int decision) const { return rules.count(decision) > 0; }
  bool IsFull(const Maim& model) const;
  const DecisionRule& Rule(int decision) const;
};

// Fully mixed profile assigning the uniform rule to every decision.
PolicyProfile UniformProfile(const Maim& model);
DecisionRule UniformRule(const Maim& model, int decision);
// Rule playing actions[row] with probability one in each row.
DecisionRule PureRule(const Maim& model, int decision,
                      const std::vector<int>& actions);

// Pure profile: one action index per context row, for some decisions.
using PureProfile = std::map<int, std::vector<int>>;
PolicyProfile ToPolicy(const Maim& model, const PureProfile& pure);

// Checks that every rule is shaped for its decision and rows sum to one.
// Throws Error otherwise.
void CheckProfile(const Maim& model, const PolicyProfile& profile,
                  bool require_full);

}  // namespace maidkit

#endif  // MAIDKIT_MODEL_H_
