#include "maidkit/equilibria.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

#include "maidkit/inference.h"
#include "maidkit/relevance.h"
#include "maidkit/subgames.h"

namespace maidkit {

namespace {

using NullMap = std::map<int, std::vector<char>>;

struct Slot {
  int decision;
  int row;
  int card;
};

// Non-null context rows of the given decisions, in decision then row order.
std::vector<Slot> SlotsFor(const Maim& model, const NodeSet& decisions,
                           const NullMap* null) {
  std::vector<Slot> slots;
  for (int d : decisions) {
    for (int r = 0; r < model.NumContexts(d); ++r) {
      if (null && null->at(d)[r]) continue;
      slots.push_back(Slot{d, r, model.Card(d)});
    }
  }
  return slots;
}

double SpaceSize(const std::vector<Slot>& slots) {
  double n = 1;
  for (const auto& s : slots) n *= s.card;
  return n;
}

// Writes the digits of index (first slot most significant) into profile.
void Decode(const std::vector<Slot>& slots, size_t index, PureProfile& out) {
  for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
    out[slots[i].decision][slots[i].row] =
        static_cast<int>(index % slots[i].card);
    index /= slots[i].card;
  }
}

PureProfile ZeroProfile(const Maim& model) {
  PureProfile p;
  for (int d : model.graph.Decisions()) p[d].assign(model.NumContexts(d), 0);
  return p;
}

// table[index * agents + a]: utility of agent a when the slots take the
// index's digits and every other decision follows `base`.
template <typename Eval>
std::vector<double> UtilityTable(const std::vector<Slot>& slots,
                                 const PureProfile& base, int agents,
                                 int threads, Eval eval) {
  const size_t total = static_cast<size_t>(SpaceSize(slots));
  std::vector<double> table(total * agents);
  auto work = [&](size_t begin, size_t end) {
    PureProfile p = base;
    for (size_t i = begin; i < end; ++i) {
      Decode(slots, i, p);
      std::vector<double> u = eval(p);
      std::copy(u.begin(), u.end(), table.begin() + i * agents);
    }
  };
  threads = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (threads == 1) {
    work(0, total);
    return table;
  }
  std::vector<std::thread> pool;
  size_t chunk = (total + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    size_t b = t * chunk, e = std::min(total, b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
  return table;
}

// mask[index]: no agent (among `agents_to_check`) can gain by changing
// only the slots it owns.
std::vector<char> NashMask(const Maim& model, const std::vector<Slot>& slots,
                           const std::vector<double>& table, int agents) {
  const size_t total = static_cast<size_t>(SpaceSize(slots));
  std::vector<size_t> stride(slots.size());
  size_t s = 1;
  for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
    stride[i] = s;
    s *= slots[i].card;
  }
  std::vector<char> mask(total, 1);
  for (int a = 0; a < agents; ++a) {
    std::vector<int> own;
    for (int i = 0; i < static_cast<int>(slots.size()); ++i) {
      if (model.graph.Owner(slots[i].decision) == a) own.push_back(i);
    }
    if (own.empty()) continue;
    auto key = [&](size_t index) {
      size_t k = index;
      for (int i : own) k -= ((index / stride[i]) % slots[i].card) * stride[i];
      return k;
    };
    std::unordered_map<size_t, double> best;
    for (size_t i = 0; i < total; ++i) {
      double v = table[i * agents + a];
      auto [it, inserted] = best.emplace(key(i), v);
      if (!inserted) it->second = std::max(it->second, v);
    }
    for (size_t i = 0; i < total; ++i) {
      if (table[i * agents + a] < best[key(i)] - kTolerance) mask[i] = 0;
    }
  }
  return mask;
}

// Whether the agent can gain more than kTolerance by a pure deviation
// on the given slots.
bool HasProfitableDeviation(const Maim& model, const PureProfile& profile,
                            int agent, const std::vector<Slot>& slots) {
  double current = ExpectedUtility(model, ToPolicy(model, profile), agent);
  const size_t total = static_cast<size_t>(SpaceSize(slots));
  PureProfile p = profile;
  for (size_t i = 0; i < total; ++i) {
    Decode(slots, i, p);
    if (ExpectedUtility(model, ToPolicy(model, p), agent) >
        current + kTolerance) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::map<int, std::vector<char>> NullContexts(const Maim& model) {
  NullMap null;
  for (int d : model.graph.Decisions()) {
    auto& rows = null[d];
    rows.resize(model.NumContexts(d));
    for (int r = 0; r < model.NumContexts(d); ++r) {
      rows[r] = IsNullContext(model, d, r);
    }
  }
  return null;
}

PureProfile Canonicalize(const Maim& model, const PureProfile& profile) {
  PureProfile out = profile;
  NullMap null = NullContexts(model);
  for (auto& [d, actions] : out) {
    for (size_t r = 0; r < actions.size(); ++r) {
      if (null.at(d)[r]) actions[r] = 0;
    }
  }
  return out;
}

std::vector<double> AgentUtilities(const Maim& model,
                                   const PolicyProfile& profile) {
  JointDistribution dist(model, profile);
  std::vector<double> out(model.graph.NumAgents());
  for (int a = 0; a < model.graph.NumAgents(); ++a) {
    out[a] = dist.ExpectedUtility(a);
  }
  return out;
}

std::vector<PureProfile> PureNash(const Maim& model,
                                  const NashOptions& options) {
  RequireValid(model);
  NullMap null = NullContexts(model);
  auto slots = SlotsFor(model, model.graph.Decisions(), &null);
  if (SpaceSize(slots) > options.max_profiles) {
    throw Error("pure profile count exceeds the enumeration bound");
  }
  const int agents = model.graph.NumAgents();
  PureProfile base = ZeroProfile(model);
  auto table = UtilityTable(slots, base, agents, options.threads,
                            [&](const PureProfile& p) {
                              return AgentUtilities(model, ToPolicy(model, p));
                            });
  auto mask = NashMask(model, slots, table, agents);
  std::vector<PureProfile> out;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    PureProfile p = base;
    Decode(slots, i, p);
    out.push_back(std::move(p));
  }
  return out;
}

bool IsNash(const Maim& model, const PureProfile& profile) {
  NullMap null = NullContexts(model);
  for (int a = 0; a < model.graph.NumAgents(); ++a) {
    auto slots = SlotsFor(model, model.graph.DecisionsOf(a), &null);
    if (HasProfitableDeviation(model, profile, a, slots)) return false;
  }
  return true;
}

namespace {

// A MAIM subgame together with the parent row of every subgame rule row.
struct SubgameView {
  MaimSubgame ms;
  std::map<int, std::vector<int>> parent_rows;  // sub decision -> rows
};

std::vector<SubgameView> FeasibleViews(const Maim& model, const NodeSet& base) {
  MaidSubgame sub = BuildMaidSubgame(model.graph, base);
  std::vector<SubgameView> out;
  for (auto& ms : BuildMaimSubgames(model, sub)) {
    if (!IsFeasibleSubgame(model, ms)) continue;
    SubgameView view;
    for (int i : ms.model.graph.Decisions()) {
      auto& rows = view.parent_rows[i];
      for (int r = 0; r < ms.model.NumContexts(i); ++r) {
        rows.push_back(ms.ParentRow(model, i, r));
      }
    }
    view.ms = std::move(ms);
    out.push_back(std::move(view));
  }
  return out;
}

PureProfile ToSubPure(const SubgameView& view, const PureProfile& parent) {
  PureProfile out;
  for (const auto& [i, rows] : view.parent_rows) {
    const auto& actions = parent.at(view.ms.maid.to_parent[i]);
    auto& sub = out[i];
    for (int pr : rows) sub.push_back(actions[pr]);
  }
  return out;
}

NodeSet ChooseBase(const MaidGraph& graph, const std::vector<NodeSet>& bases,
                   const NodeSet& target) {
  const NodeSet decisions = graph.Decisions();
  const NodeSet* best = nullptr;
  bool exact = false;
  for (const auto& b : bases) {
    NodeSet bd = SetIntersection(b, decisions);
    if (!SetDifference(target, bd).empty()) continue;
    bool is_exact = bd == target;
    if (best == nullptr || (is_exact && !exact) ||
        (is_exact == exact && (b.size() < best->size() ||
                               (b.size() == best->size() && b < *best)))) {
      best = &b;
      exact = is_exact;
    }
  }
  return *best;
}

std::string ProfileLabel(const Maim& model, const PureProfile& p,
                         const NodeSet& fixed) {
  std::string out;
  for (int d : fixed) {
    for (size_t r = 0; r < p.at(d).size(); ++r) {
      if (!out.empty()) out += "; ";
      out += model.graph.Name(d) + "|" + model.FormatContext(d, r) + "=" +
             model.domains[d].labels[p.at(d)[r]];
    }
  }
  return out.empty() ? "(empty)" : out;
}

}  // namespace

SpeResult SolveSpe(const Maim& model, const NashOptions& options) {
  RequireValid(model);
  SpeResult result;
  const MaidGraph& g = model.graph;
  if (g.Decisions().empty()) {
    result.profiles.push_back(PureProfile{});
    return result;
  }
  NullMap null = NullContexts(model);
  auto bases = SubgameBases(g);
  auto con = Condense(g, BuildRelevanceGraph(g));
  std::vector<PureProfile> partials{ZeroProfile(model)};
  NodeSet fixed;
  const int agents = g.NumAgents();

  for (int c = 0; c < static_cast<int>(con.components.size()); ++c) {
    NodeSet target = con.components[c];
    for (int dc : con.Descendants(c)) {
      target = SetUnion(target, con.components[dc]);
    }
    if (SetDifference(target, fixed).empty()) continue;
    NodeSet base = ChooseBase(g, bases, target);
    NodeSet dnew = SetDifference(SetIntersection(base, g.Decisions()), fixed);
    auto views = FeasibleViews(model, base);
    std::vector<PureProfile> next;

    for (size_t pi = 0; pi < partials.size(); ++pi) {
      const PureProfile& partial = partials[pi];
      if (dnew.size() == 1) {
        const int d = dnew[0];
        const int card = model.Card(d);
        const int rows = model.NumContexts(d);
        std::vector<std::vector<char>> allowed(rows,
                                               std::vector<char>(card, 1));
        for (int r = 0; r < rows; ++r) {
          if (null.at(d)[r]) {
            std::fill(allowed[r].begin(), allowed[r].end(), 0);
            allowed[r][0] = 1;
          }
        }
        for (const auto& view : views) {
          const Maim& sm = view.ms.model;
          const int sd = view.ms.maid.ToSub(d);
          const int agent = g.Owner(d);
          PureProfile sp = ToSubPure(view, partial);
          const auto& prow = view.parent_rows.at(sd);
          for (int sr = 0; sr < static_cast<int>(prow.size()); ++sr) {
            if (null.at(d)[prow[sr]]) continue;
            std::vector<double> value(card);
            for (int a = 0; a < card; ++a) {
              sp[sd][sr] = a;
              value[a] = ExpectedUtility(sm, ToPolicy(sm, sp), agent);
            }
            sp[sd][sr] = partial.at(d)[prow[sr]];
            double best = *std::max_element(value.begin(), value.end());
            for (int a = 0; a < card; ++a) {
              if (value[a] < best - kTolerance) allowed[prow[sr]][a] = 0;
            }
          }
        }
        bool dead = false;
        for (int r = 0; r < rows; ++r) {
          if (std::find(allowed[r].begin(), allowed[r].end(), 1) ==
              allowed[r].end()) {
            dead = true;
            result.diagnostics.push_back(
                "no optimal action for '" + g.Name(d) + "' in context " +
                model.FormatContext(d, r) + " consistent with every subgame "
                "after " + ProfileLabel(model, partial, fixed));
          }
        }
        if (dead) continue;
        std::vector<int> choice(rows, 0);
        for (int r = 0; r < rows; ++r) {
          while (!allowed[r][choice[r]]) ++choice[r];
        }
        while (true) {
          PureProfile p = partial;
          p[d] = choice;
          next.push_back(std::move(p));
          if (next.size() > options.max_profiles) {
            throw Error("tie queue exceeds the enumeration bound");
          }
          int r = rows - 1;
          for (; r >= 0; --r) {
            int a = choice[r] + 1;
            while (a < card && !allowed[r][a]) ++a;
            if (a < card) {
              choice[r] = a;
              break;
            }
            choice[r] = 0;
            while (!allowed[r][choice[r]]) ++choice[r];
          }
          if (r < 0) break;
        }
        continue;
      }

      auto slots = SlotsFor(model, dnew, &null);
      if (SpaceSize(slots) > options.max_profiles) {
        throw Error("component " + FormatNodeSet(g, dnew) +
                    " has too many joint pure rules to enumerate");
      }
      std::vector<char> keep(static_cast<size_t>(SpaceSize(slots)), 1);
      for (const auto& view : views) {
        const Maim& sm = view.ms.model;
        auto table = UtilityTable(
            slots, partial, agents, options.threads,
            [&](const PureProfile& p) {
              return AgentUtilities(sm, ToPolicy(sm, ToSubPure(view, p)));
            });
        auto mask = NashMask(model, slots, table, agents);
        for (size_t i = 0; i < keep.size(); ++i) keep[i] &= mask[i];
      }
      bool any = false;
      for (size_t i = 0; i < keep.size(); ++i) {
        if (!keep[i]) continue;
        any = true;
        PureProfile p = partial;
        Decode(slots, i, p);
        next.push_back(std::move(p));
      }
      if (!any) {
        result.diagnostics.push_back(
            "no pure SPE through this branch: component " +
            FormatNodeSet(g, dnew) + " has no pure local equilibrium after " +
            ProfileLabel(model, partial, fixed));
      }
    }
    partials = std::move(next);
    fixed = SetUnion(fixed, dnew);
    if (partials.empty()) {
      result.diagnostics.push_back("all branches died; no pure SPE");
      return result;
    }
  }
  result.profiles = std::move(partials);
  return result;
}

bool IsSubgamePerfect(const Maim& model, const PureProfile& profile) {
  PureProfile canon = Canonicalize(model, profile);
  for (const auto& base : SubgameBases(model.graph)) {
    for (const auto& view : FeasibleViews(model, base)) {
      const Maim& sm = view.ms.model;
      PureProfile sp = ToSubPure(view, canon);
      for (int a : view.ms.maid.players) {
        auto slots = SlotsFor(sm, sm.graph.DecisionsOf(a), nullptr);
        if (HasProfitableDeviation(sm, sp, a, slots)) return false;
      }
    }
  }
  return true;
}

double PerturbationVector::Get(int decision, int row, int action) const {
  auto it = epsilon.find({decision, row, action});
  return it == epsilon.end() ? 0.0 : it->second;
}

PerturbationVector UniformPerturbation(const Maim& model, double eps) {
  PerturbationVector delta;
  for (int d : model.graph.Decisions()) {
    if (model.Card(d) < 2) continue;
    for (int r = 0; r < model.NumContexts(d); ++r) {
      for (int a = 0; a < model.Card(d); ++a) delta.epsilon[{d, r, a}] = eps;
    }
  }
  return delta;
}

PerturbedMaim Perturb(const Maim& model, PerturbationVector delta) {
  std::map<std::pair<int, int>, double> sums;
  for (const auto& [key, eps] : delta.epsilon) {
    auto [d, r, a] = key;
    if (d < 0 || d >= model.NumNodes() || !model.graph.IsDecision(d) ||
        r < 0 || r >= model.NumContexts(d) || a < 0 || a >= model.Card(d)) {
      throw Error("perturbation entry does not name a decision action");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
      throw Error("perturbation entries must lie in (0, 1)");
    }
    sums[{d, r}] += eps;
  }
  for (const auto& [key, sum] : sums) {
    if (sum > 1.0 + kTolerance) {
      throw Error("perturbation entries for '" +
                  model.graph.Name(key.first) + "' in context " +
                  model.FormatContext(key.first, key.second) +
                  " sum above 1");
    }
  }
  return PerturbedMaim{model, std::move(delta)};
}

DecisionRule AdmissibleRule(const PerturbedMaim& pm, int decision,
                            const std::vector<int>& intent) {
  DecisionRule rule = pm.model.EmptyRule(decision);
  const int card = pm.model.Card(decision);
  for (int r = 0; r < rule.num_rows(); ++r) {
    double rest = 0.0;
    for (int a = 0; a < card; ++a) {
      if (a == intent.at(r)) continue;
      double eps = pm.delta.Get(decision, r, a);
      rule.at(r, a) = eps;
      rest += eps;
    }
    rule.at(r, intent[r]) = 1.0 - rest;
  }
  return rule;
}

PolicyProfile AdmissibleProfile(const PerturbedMaim& pm,
                                const PureProfile& intent) {
  PolicyProfile profile;
  for (const auto& [d, actions] : intent) {
    profile.rules.emplace(d, AdmissibleRule(pm, d, actions));
  }
  return profile;
}

bool IsPerturbedNash(const PerturbedMaim& pm, const PureProfile& intent,
                     double* max_gain) {
  const Maim& model = pm.model;
  double gain = 0.0;
  for (int a = 0; a < model.graph.NumAgents(); ++a) {
    double current = ExpectedUtility(model, AdmissibleProfile(pm, intent), a);
    auto slots = SlotsFor(model, model.graph.DecisionsOf(a), nullptr);
    const size_t total = static_cast<size_t>(SpaceSize(slots));
    PureProfile p = intent;
    for (size_t i = 0; i < total; ++i) {
      Decode(slots, i, p);
      double v = ExpectedUtility(model, AdmissibleProfile(pm, p), a);
      gain = std::max(gain, v - current);
    }
  }
  if (max_gain) *max_gain = gain;
  return gain <= kTolerance;
}

const char* ThpeVerdictName(ThpeVerdict v) {
  switch (v) {
    case ThpeVerdict::kYes:
      return "yes";
    case ThpeVerdict::kNo:
      return "no";
    case ThpeVerdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::vector<double> DefaultThpeSchedule() {
  std::vector<double> out;
  for (int k = 3; k <= 12; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

ThpeResult CheckThpe(const Maim& model, const PureProfile& profile,
                     const std::vector<double>& schedule) {
  RequireValid(model);
  PureProfile canon = Canonicalize(model, profile);
  if (!IsNash(model, canon)) {
    throw Error("profile is not a Nash equilibrium");
  }
  ThpeResult result;
  NullMap null = NullContexts(model);

  // Candidate witnesses: every non-null (decision, row, other action).
  std::vector<ThpeWitness> candidates;
  for (int d : model.graph.Decisions()) {
    for (int r = 0; r < model.NumContexts(d); ++r) {
      if (null.at(d)[r]) continue;
      for (int a = 0; a < model.Card(d); ++a) {
        if (a == canon.at(d)[r]) continue;
        ThpeWitness w;
        w.agent = model.graph.Owner(d);
        w.decision = d;
        w.row = r;
        w.action = a;
        candidates.push_back(w);
      }
    }
  }
  std::vector<char> strict(candidates.size(), 1);
  bool all_nash = true;
  for (double eps : schedule) {
    PerturbedMaim pm = Perturb(model, UniformPerturbation(model, eps));
    result.perturbed_entries = static_cast<int>(pm.delta.epsilon.size());
    ThpeStep step;
    step.eps = eps;
    step.intent_is_nash = IsPerturbedNash(pm, canon, &step.max_gain);
    all_nash = all_nash && step.intent_is_nash;
    result.steps.push_back(step);

    PolicyProfile admissible = AdmissibleProfile(pm, canon);
    for (size_t i = 0; i < candidates.size(); ++i) {
      auto& w = candidates[i];
      PolicyProfile p = admissible;
      DecisionRule& rule = p.rules.at(w.decision);
      rule.SetDeterministic(w.row, w.action);
      double dev = ExpectedUtility(model, p, w.agent);
      rule.SetDeterministic(w.row, canon.at(w.decision)[w.row]);
      double base = ExpectedUtility(model, p, w.agent);
      w.deviation_value.push_back(dev);
      w.profile_value.push_back(base);
      if (!(dev > base + kTolerance)) strict[i] = 0;
    }
  }
  if (schedule.empty()) strict.assign(candidates.size(), 0);
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (strict[i]) result.witnesses.push_back(candidates[i]);
  }
  if (all_nash) {
    result.verdict = ThpeVerdict::kYes;
  } else if (!result.witnesses.empty()) {
    result.verdict = ThpeVerdict::kNo;
  }
  return result;
}

bool UndominatedCheck2p(const Maim& model, const PureProfile& profile) {
  if (model.graph.NumAgents() != 2) {
    throw Error("the dominance check needs exactly 2 agents");
  }
  NullMap null = NullContexts(model);
  PureProfile canon = Canonicalize(model, profile);
  for (int a = 0; a < 2; ++a) {
    auto own = SlotsFor(model, model.graph.DecisionsOf(a), &null);
    auto opp = SlotsFor(model, model.graph.DecisionsOf(1 - a), &null);
    const size_t n_own = static_cast<size_t>(SpaceSize(own));
    const size_t n_opp = static_cast<size_t>(SpaceSize(opp));
    if (static_cast<double>(n_own) * n_opp > 1e6) {
      throw Error("too many pure policies for the dominance check");
    }
    std::vector<double> u(n_own * n_opp);
    PureProfile p = canon;
    for (size_t o = 0; o < n_opp; ++o) {
      Decode(opp, o, p);
      for (size_t s = 0; s < n_own; ++s) {
        Decode(own, s, p);
        u[s * n_opp + o] = ExpectedUtility(model, ToPolicy(model, p), a);
      }
    }
    // Index of the profile's own policy.
    size_t mine = 0;
    for (const auto& slot : own) {
      mine = mine * slot.card + canon.at(slot.decision)[slot.row];
    }
    for (size_t s = 0; s < n_own; ++s) {
      if (s == mine) continue;
      bool weakly = true, strictly = false;
      for (size_t o = 0; o < n_opp && weakly; ++o) {
        double diff = u[s * n_opp + o] - u[mine * n_opp + o];
        if (diff < -kTolerance) weakly = false;
        if (diff > kTolerance) strictly = true;
      }
      if (weakly && strictly) return false;
    }
  }
  return true;
}

std::string FormatPureProfile(const Maim& model, const PureProfile& profile) {
  std::string out;
  for (const auto& [d, actions] : profile) {
    for (size_t r = 0; r < actions.size(); ++r) {
      out += model.graph.Name(d) + " / " + model.FormatContext(d, r) + " / " +
             model.domains[d].labels[actions[r]] + "\n";
    }
  }
  return out;
}

}  // namespace maidkit
