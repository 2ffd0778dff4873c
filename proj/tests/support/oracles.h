#ifndef MAIDKIT_TESTS_ORACLES_H_
#define MAIDKIT_TESTS_ORACLES_H_

#include <string>
#include <vector>

#include "maidkit/efg.h"
#include "maidkit/model.h"

namespace maidkit::testing {

// Number of joint assignments of all nodes (saturating at 1e18).
double StateSpace(const Maim& model);

// Probability of a full assignment: product of CPD and rule entries.
double BruteJoint(const Maim& model, const PolicyProfile& profile,
                  const Assignment& full);
// Sum of BruteJoint over completions of a partial assignment.
double BruteProbability(const Maim& model, const PolicyProfile& profile,
                        const Assignment& partial);
// Expected utility per agent by summing over every joint assignment.
std::vector<double> BruteUtilities(const Maim& model,
                                   const PolicyProfile& profile);

// d-separation by listing every simple undirected path between x and y
// and testing each for an active interior.
bool PathDSeparated(const MaidGraph& graph, int x, int y, const NodeSet& w);

// Whether Pr(x | y, w) = Pr(x | w) wherever Pr(y, w) > 0, by brute force.
bool ConditionallyIndependent(const Maim& model, int x, int y,
                              const NodeSet& w, double tol);

// Non-root, non-terminal tree nodes whose subtree holds every information
// set it touches in full.
std::vector<int> ProperEfgSubgames(const Efg& game);

// Payoffs under a pure strategy (one action per information set), by a
// recursive walk.
std::vector<double> TreePayoffs(const Efg& game, const std::vector<int>& pure);
// All pure Nash equilibria of the tree, in lexicographic order.
std::vector<std::vector<int>> TreePureNash(const Efg& game);

// Parsed view of a .efg file.
struct EfgTextNode {
  char kind = 't';
  std::string label;
  int player = 0;     // p lines
  int number = 0;     // chance/iset/outcome number
  std::vector<std::string> actions;
  std::vector<double> probs;
  std::vector<double> payoffs;
};

struct EfgText {
  std::string title;
  std::vector<std::string> players;
  std::vector<EfgTextNode> nodes;  // prefix order
};

// Minimal reader for the version 2 .efg grammar. Returns false with a
// message for any deviation, including a node sequence that does not
// form exactly one tree.
bool ReadEfgText(const std::string& text, EfgText* out, std::string* error);

}  // namespace maidkit::testing

#endif  // MAIDKIT_TESTS_ORACLES_H_
