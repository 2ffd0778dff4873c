#include "maidkit/builtin.h"

#include <algorithm>
#include <set>

namespace maidkit::builtin {

namespace {

int Chance(Maim& m, const std::string& name, std::vector<std::string> labels) {
  return m.AddNode(name, NodeKind::kChance, -1, Domain{std::move(labels), {}});
}

int Decision(Maim& m, const std::string& name, int owner,
             std::vector<std::string> labels) {
  return m.AddNode(name, NodeKind::kDecision, owner, Domain{std::move(labels), {}});
}

// Utility node with a deterministic table: values[row] over the parents'
// rows (first parent most significant).
int Utility(Maim& m, const std::string& name, int owner,
            const std::vector<int>& parents, const std::vector<double>& values) {
  std::set<double> distinct(values.begin(), values.end());
  Domain dom;
  for (double x : distinct) {
    dom.values.push_back(x);
    dom.labels.push_back(FormatEfgNumber(x));
  }
  int u = m.AddNode(name, NodeKind::kUtility, owner, dom);
  for (int p : parents) m.graph.AddEdge(p, u);
  Cpd& cpd = m.InitCpd(u);
  for (size_t r = 0; r < values.size(); ++r) {
    int k = static_cast<int>(std::find(dom.values.begin(), dom.values.end(),
                                       values[r]) -
                             dom.values.begin());
    cpd.SetDeterministic(static_cast<int>(r), k);
  }
  return u;
}

Maim TwoPlayer(const std::string& name) {
  Maim m;
  m.name = name;
  m.graph.AddAgent("1");
  m.graph.AddAgent("2");
  return m;
}

}  // namespace

Maim Taxi() {
  Maim m = TwoPlayer("taxi");
  int d1 = Decision(m, "D1", 0, {"e", "c"});
  int d2 = Decision(m, "D2", 1, {"e", "c"});
  m.graph.AddEdge(d1, d2);
  // Rows over (D1, D2): ee, ec, ce, cc.
  Utility(m, "U1", 0, {d1, d2}, {2, 5, 3, 1});
  Utility(m, "U2", 1, {d1, d2}, {2, 3, 5, 1});
  return m;
}

Maim CyberWar() {
  Maim m = TwoPlayer("cyber-war");
  int d1 = Decision(m, "D1", 0, {"a", "n"});
  int d2 = Decision(m, "D2", 1, {"a", "n"});
  // Rows over (D1, D2): aa, an, na, nn.
  Utility(m, "U1", 0, {d1, d2}, {-2, 0, -4, 0});
  Utility(m, "U2", 1, {d1, d2}, {-2, -4, 0, 0});
  return m;
}

Maim JobHiring(double p_high) {
  Maim m = TwoPlayer("job-hiring");
  int x = Chance(m, "X", {"h", "l"});
  int d1 = Decision(m, "D1", 0, {"g", "a"});
  int d2 = Decision(m, "D2", 1, {"j", "r"});
  m.graph.AddEdge(x, d1);
  m.graph.AddEdge(d1, d2);
  Cpd& px = m.InitCpd(x);
  px.SetRow(0, std::vector<double>{p_high, 1.0 - p_high});
  // Rows over (X, D1, D2): hgj, hgr, haj, har, lgj, lgr, laj, lar.
  Utility(m, "U1", 0, {x, d1, d2}, {4, -1, 5, 0, 2, -2, 3, 0});
  Utility(m, "U2", 1, {x, d2}, {3, -1, -2, 0});
  return m;
}

Maim TwoStage() {
  Maim m = TwoPlayer("two-stage");
  int x = Chance(m, "X", {"a", "b"});
  int d1 = Decision(m, "D1", 0, {"c", "d"});
  int d2 = Decision(m, "D2", 1, {"e", "f"});
  m.graph.AddEdge(x, d1);
  m.graph.AddEdge(d1, d2);
  Cpd& px = m.InitCpd(x);
  px.SetRow(0, std::vector<double>{0.5, 0.5});
  Utility(m, "U1", 0, {x, d1}, {1, 0, 0, 1});
  Utility(m, "U2", 1, {d1, d2}, {1, 0, 0, 1});
  return m;
}

Efg AbsentmindedDriver() {
  Efg g;
  g.title = "absentminded-driver";
  g.agents = {"1"};
  int is = g.AddInfoSet(0, "I");
  int first = g.AddPlayer("first", is);
  int exit1 = g.AddTerminal("", {0});
  int second = g.AddPlayer("second", is);
  int exit2 = g.AddTerminal("", {4});
  int cont = g.AddTerminal("", {1});
  g.AddChild(first, exit1, "e");
  g.AddChild(first, second, "c");
  g.AddChild(second, exit2, "e");
  g.AddChild(second, cont, "c");
  return g;
}

Efg TaxiTree(bool merged) {
  Efg g;
  g.title = "taxi";
  g.agents = {"1", "2"};
  int i1 = g.AddInfoSet(0, "D1");
  int root = g.AddPlayer("D1", i1);
  // Payoffs over (D1, D2): ee, ec, ce, cc.
  const double p1[2][2] = {{2, 5}, {3, 1}};
  const double p2[2][2] = {{2, 3}, {5, 1}};
  const char* acts[2] = {"e", "c"};
  std::vector<int> seconds;
  for (int a = 0; a < 2; ++a) {
    int is = g.AddInfoSet(1, std::string("D2|") + acts[a]);
    int node = g.AddPlayer("D2", is);
    seconds.push_back(node);
    g.AddChild(root, node, acts[a]);
    for (int b = 0; b < 2; ++b) {
      int leaf = g.AddTerminal("", {p1[a][b], p2[a][b]});
      g.AddChild(node, leaf, acts[b]);
    }
  }
  if (merged) g.intervention_sets.push_back(seconds);
  return g;
}

std::vector<std::string> Names() {
  return {"taxi", "cyber-war", "job-hiring", "two-stage"};
}

Maim ByName(const std::string& name) {
  if (name == "taxi") return Taxi();
  if (name == "cyber-war") return CyberWar();
  if (name == "job-hiring") return JobHiring();
  if (name == "two-stage") return TwoStage();
  throw Error("unknown builtin model '" + name + "'");
}

}  // namespace maidkit::builtin
