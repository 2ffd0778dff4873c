#ifndef MAIDKIT_FACTOR_H_
#define MAIDKIT_FACTOR_H_

#include <vector>

#include "maidkit/model.h"

namespace maidkit {

// A non-negative table over a sorted set of variables. Entries are laid
// out with the first variable most significant.
class Factor {
 public:
  Factor() : values_(1, 1.0) {}
  Factor(NodeSet vars, std::vector<int> cards);
  Factor(NodeSet vars, std::vector<int> cards, std::vector<double> values);

  // Factor of a CPD: vars are the child and its parents.
  static Factor FromCpd(const Cpd& cpd);

  const NodeSet& vars() const { return vars_; }
  const std::vector<int>& cards() const { return cards_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  size_t size() const { return values_.size(); }

  bool Has(int var) const { return Contains(vars_, var); }
  // Entry for values given per var in vars() order.
  double At(const std::vector<int>& var_values) const;
  size_t Offset(const std::vector<int>& var_values) const;
  std::vector<int> ValuesOf(size_t offset) const;

  double Sum() const;
  // Divides by the total; returns the total.
  double Normalize();

 private:
  NodeSet vars_;
  std::vector<int> cards_;
  std::vector<double> values_;
};

Factor Multiply(const Factor& a, const Factor& b);
Factor SumOut(const Factor& f, int var);
// Fixes var to value and drops it.
Factor Reduce(const Factor& f, int var, int value);

}  // namespace maidkit

#endif  // MAIDKIT_FACTOR_H_
