#ifndef MAIDKIT_EQUILIBRIA_H_
#define MAIDKIT_EQUILIBRIA_H_

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "maidkit/model.h"

namespace maidkit {

// Null decision contexts per decision: null[d][row].
std::map<int, std::vector<char>> NullContexts(const Maim& model);

// Sets every null context row to the first action.
PureProfile Canonicalize(const Maim& model, const PureProfile& profile);

// Expected utility of every agent under one profile.
std::vector<double> AgentUtilities(const Maim& model,
                                   const PolicyProfile& profile);

struct NashOptions {
  double max_profiles = 1e6;
  int threads = 1;
};

// All pure NEs with null contexts canonicalized, ordered lexicographically
// (decisions in declaration order, rows in rule order).
std::vector<PureProfile> PureNash(const Maim& model,
                                  const NashOptions& options = {});

// No agent gains more than kTolerance from a pure deviation.
bool IsNash(const Maim& model, const PureProfile& profile);

struct SpeResult {
  std::vector<PureProfile> profiles;
  std::vector<std::string> diagnostics;
};

// Pure subgame-perfect equilibria by backward induction over the condensed
// relevance graph, forking on ties.
SpeResult SolveSpe(const Maim& model, const NashOptions& options = {});

// Direct check: the profile is an NE of every feasible MAIM subgame of
// every subgame base.
bool IsSubgamePerfect(const Maim& model, const PureProfile& profile);

// Minimum probabilities per (decision, context row, action).
struct PerturbationVector {
  std::map<std::tuple<int, int, int>, double> epsilon;

  double Get(int decision, int row, int action) const;
};

// Every (decision, row, action) entry set to eps.
PerturbationVector UniformPerturbation(const Maim& model, double eps);

struct PerturbedMaim {
  Maim model;
  PerturbationVector delta;
};

// Throws if an entry is outside (0, 1) or some context's entries sum
// above one.
PerturbedMaim Perturb(const Maim& model, PerturbationVector delta);

// The admissible rule closest to the pure intent: the intended action gets
// 1 minus the other entries' minimum probabilities.
DecisionRule AdmissibleRule(const PerturbedMaim& pm, int decision,
                            const std::vector<int>& intent);
PolicyProfile AdmissibleProfile(const PerturbedMaim& pm,
                                const PureProfile& intent);

// Whether the intent's admissible profile is an equilibrium among
// admissible profiles of the perturbed model; optionally reports the
// largest gain any agent could obtain.
bool IsPerturbedNash(const PerturbedMaim& pm, const PureProfile& intent,
                     double* max_gain = nullptr);

enum class ThpeVerdict { kYes, kNo, kInconclusive };
const char* ThpeVerdictName(ThpeVerdict v);

struct ThpeStep {
  double eps = 0;
  bool intent_is_nash = false;
  double max_gain = 0;
};

// A context where a pure action strictly beats the profile's action
// against the perturbed intent, at every tested eps.
struct ThpeWitness {
  int agent = -1;
  int decision = -1;
  int row = -1;
  int action = -1;
  std::vector<double> deviation_value;  // per step
  std::vector<double> profile_value;    // per step
};

struct ThpeResult {
  ThpeVerdict verdict = ThpeVerdict::kInconclusive;
  std::vector<ThpeStep> steps;
  std::vector<ThpeWitness> witnesses;
  int perturbed_entries = 0;  // convergence constant C
};

// Default schedule eps_k = 2^-k for k = 3..12.
std::vector<double> DefaultThpeSchedule();

// Throws if the profile is not an NE.
ThpeResult CheckThpe(const Maim& model, const PureProfile& profile,
                     const std::vector<double>& schedule =
                         DefaultThpeSchedule());

// Two-agent check that neither agent's part of the profile is weakly
// dominated by another pure policy. Throws unless the model has 2 agents.
bool UndominatedCheck2p(const Maim& model, const PureProfile& profile);

// Table lines "decision / context / action".
std::string FormatPureProfile(const Maim& model, const PureProfile& profile);

}  // namespace maidkit

#endif  // MAIDKIT_EQUILIBRIA_H_
