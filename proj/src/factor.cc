#include "maidkit/factor.h"

#include <algorithm>
#include <numeric>

namespace maidkit {

namespace {

size_t TableSize(const std::vector<int>& cards) {
  size_t n = 1;
  for (int c : cards) n *= static_cast<size_t>(c);
  return n;
}

// Strides of `vars` (with `cards`) as seen from the layout of `into`;
// zero where the variable is absent.
std::vector<size_t> StridesIn(const NodeSet& into, const NodeSet& vars,
                              const std::vector<int>& cards) {
  std::vector<size_t> own(vars.size());
  size_t s = 1;
  for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i) {
    own[i] = s;
    s *= cards[i];
  }
  std::vector<size_t> out(into.size(), 0);
  size_t j = 0;
  for (size_t i = 0; i < into.size(); ++i) {
    while (j < vars.size() && vars[j] < into[i]) ++j;
    if (j < vars.size() && vars[j] == into[i]) out[i] = own[j];
  }
  return out;
}

}  // namespace

Factor::Factor(NodeSet vars, std::vector<int> cards)
    : vars_(std::move(vars)), cards_(std::move(cards)) {
  values_.assign(TableSize(cards_), 0.0);
}

Factor::Factor(NodeSet vars, std::vector<int> cards, std::vector<double> values)
    : vars_(std::move(vars)),
      cards_(std::move(cards)),
      values_(std::move(values)) {
  if (values_.size() != TableSize(cards_)) {
    throw Error("factor table size does not match cardinalities");
  }
}

Factor Factor::FromCpd(const Cpd& cpd) {
  // CPD layout: parents (in parent order) then child.
  std::vector<int> order = cpd.parents();
  order.push_back(cpd.child());
  std::vector<int> order_cards = cpd.parent_cards();
  order_cards.push_back(cpd.child_card());
  NodeSet vars = MakeNodeSet(order);
  if (vars.size() != order.size()) throw Error("cpd repeats a variable");
  std::vector<int> cards(vars.size());
  for (size_t i = 0; i < order.size(); ++i) {
    auto pos = std::lower_bound(vars.begin(), vars.end(), order[i]) -
               vars.begin();
    cards[pos] = order_cards[i];
  }
  Factor f(vars, cards);
  std::vector<size_t> own(vars.size());
  size_t stride = 1;
  for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i) {
    own[i] = stride;
    stride *= cards[i];
  }
  std::vector<size_t> strides(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    strides[i] = own[std::lower_bound(vars.begin(), vars.end(), order[i]) - vars.begin()];
  }
  std::vector<int> idx(order.size(), 0);
  const auto& probs = cpd.probs();
  for (size_t k = 0; k < probs.size(); ++k) {
    size_t off = 0;
    for (size_t i = 0; i < idx.size(); ++i) off += idx[i] * strides[i];
    f.values_[off] = probs[k];
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
      if (++idx[i] < order_cards[i]) break;
      idx[i] = 0;
    }
  }
  return f;
}

size_t Factor::Offset(const std::vector<int>& var_values) const {
  size_t off = 0;
  for (size_t i = 0; i < vars_.size(); ++i) {
    off = off * cards_[i] + var_values[i];
  }
  return off;
}

double Factor::At(const std::vector<int>& var_values) const {
  return values_[Offset(var_values)];
}

std::vector<int> Factor::ValuesOf(size_t offset) const {
  std::vector<int> out(vars_.size());
  for (int i = static_cast<int>(vars_.size()) - 1; i >= 0; --i) {
    out[i] = static_cast<int>(offset % cards_[i]);
    offset /= cards_[i];
  }
  return out;
}

double Factor::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

double Factor::Normalize() {
  double total = Sum();
  if (total > 0.0) {
    for (double& v : values_) v /= total;
  }
  return total;
}

Factor Multiply(const Factor& a, const Factor& b) {
  NodeSet vars = SetUnion(a.vars(), b.vars());
  std::vector<int> cards(vars.size());
  for (size_t i = 0; i < vars.size(); ++i) {
    auto ia = std::lower_bound(a.vars().begin(), a.vars().end(), vars[i]);
    if (ia != a.vars().end() && *ia == vars[i]) {
      cards[i] = a.cards()[ia - a.vars().begin()];
    } else {
      auto ib = std::lower_bound(b.vars().begin(), b.vars().end(), vars[i]);
      cards[i] = b.cards()[ib - b.vars().begin()];
    }
  }
  Factor out(vars, cards);
  auto sa = StridesIn(vars, a.vars(), a.cards());
  auto sb = StridesIn(vars, b.vars(), b.cards());
  std::vector<int> idx(vars.size(), 0);
  size_t oa = 0, ob = 0;
  auto& ov = out.values();
  for (size_t k = 0; k < ov.size(); ++k) {
    ov[k] = a.values()[oa] * b.values()[ob];
    for (int i = static_cast<int>(idx.size()) - 1; i >= 0; --i) {
      if (++idx[i] < cards[i]) {
        oa += sa[i];
        ob += sb[i];
        break;
      }
      oa -= sa[i] * (cards[i] - 1);
      ob -= sb[i] * (cards[i] - 1);
      idx[i] = 0;
    }
  }
  return out;
}

Factor SumOut(const Factor& f, int var) {
  auto it = std::lower_bound(f.vars().begin(), f.vars().end(), var);
  if (it == f.vars().end() || *it != var) return f;
  size_t pos = it - f.vars().begin();
  NodeSet vars = f.vars();
  std::vector<int> cards = f.cards();
  const int card = cards[pos];
  vars.erase(vars.begin() + pos);
  cards.erase(cards.begin() + pos);
  Factor out(vars, cards);
  size_t inner = 1;
  for (size_t i = pos + 1; i < f.cards().size(); ++i) inner *= f.cards()[i];
  size_t outer = out.size() / inner;
  for (size_t o = 0; o < outer; ++o) {
    for (int v = 0; v < card; ++v) {
      const double* src = f.values().data() + (o * card + v) * inner;
      double* dst = out.values().data() + o * inner;
      for (size_t i = 0; i < inner; ++i) dst[i] += src[i];
    }
  }
  return out;
}

Factor Reduce(const Factor& f, int var, int value) {
  auto it = std::lower_bound(f.vars().begin(), f.vars().end(), var);
  if (it == f.vars().end() || *it != var) return f;
  size_t pos = it - f.vars().begin();
  NodeSet vars = f.vars();
  std::vector<int> cards = f.cards();
  const int card = cards[pos];
  vars.erase(vars.begin() + pos);
  cards.erase(cards.begin() + pos);
  Factor out(vars, cards);
  size_t inner = 1;
  for (size_t i = pos + 1; i < f.cards().size(); ++i) inner *= f.cards()[i];
  size_t outer = out.size() / inner;
  for (size_t o = 0; o < outer; ++o) {
    const double* src = f.values().data() + (o * card + value) * inner;
    std::copy(src, src + inner, out.values().data() + o * inner);
  }
  return out;
}

}  // namespace maidkit
