#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maidkit/builtin.h"
#include "maidkit/convert.h"
#include "maidkit/equilibria.h"
#include "maidkit/inference.h"
#include "maidkit/io.h"
#include "maidkit/relevance.h"
#include "maidkit/subgames.h"

namespace py = pybind11;
using namespace maidkit;

namespace {

using Table = std::map<std::string, std::vector<std::string>>;

std::vector<std::string> Names(const MaidGraph& g, const NodeSet& nodes) {
  std::vector<std::string> out;
  for (int v : nodes) out.push_back(g.Name(v));
  return out;
}

NodeSet Indices(const MaidGraph& g, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) out.push_back(g.Index(n));
  return MakeNodeSet(out);
}

Table ToTable(const Maim& m, const PureProfile& p) {
  Table out;
  for (const auto& [d, actions] : p) {
    auto& row = out[m.graph.Name(d)];
    for (int a : actions) row.push_back(m.domains[d].labels[a]);
  }
  return out;
}

PureProfile FromTable(const Maim& m, const Table& t) {
  PureProfile out;
  for (int d : m.graph.Decisions()) {
    auto it = t.find(m.graph.Name(d));
    if (it == t.end()) throw Error("profile omits decision '" + m.graph.Name(d) + "'");
    if (static_cast<int>(it->second.size()) != m.NumContexts(d)) {
      throw Error("profile for '" + m.graph.Name(d) + "' needs " +
                  std::to_string(m.NumContexts(d)) + " actions");
    }
    auto& actions = out[d];
    for (const auto& label : it->second) {
      int a = m.domains[d].Find(label);
      if (a < 0) throw Error("'" + label + "' is not an action of '" + m.graph.Name(d) + "'");
      actions.push_back(a);
    }
  }
  for (const auto& [name, rows] : t) m.graph.Index(name);
  return out;
}

// Pure tables map a decision to action labels; mixed ones to one
// distribution per context.
PolicyProfile ToPolicy(const Maim& m, const py::dict& profile) {
  PolicyProfile out;
  for (int d : m.graph.Decisions()) {
    const std::string& name = m.graph.Name(d);
    if (!profile.contains(name)) throw Error("profile omits decision '" + name + "'");
    py::list rows = profile[py::str(name)];
    if (static_cast<int>(rows.size()) != m.NumContexts(d)) {
      throw Error("profile for '" + name + "' needs " +
                  std::to_string(m.NumContexts(d)) + " rows");
    }
    DecisionRule rule = m.EmptyRule(d);
    for (int r = 0; r < rule.num_rows(); ++r) {
      py::handle row = rows[r];
      if (py::isinstance<py::str>(row)) {
        int a = m.domains[d].Find(row.cast<std::string>());
        if (a < 0) throw Error("unknown action for '" + name + "'");
        rule.SetDeterministic(r, a);
      } else {
        rule.SetRow(r, row.cast<std::vector<double>>());
      }
    }
    out.rules.emplace(d, std::move(rule));
  }
  CheckProfile(m, out, true);
  return out;
}

std::vector<Table> Tables(const Maim& m, const std::vector<PureProfile>& ps) {
  std::vector<Table> out;
  for (const auto& p : ps) out.push_back(ToTable(m, p));
  return out;
}

py::list NodeList(const Maim& m) {
  const MaidGraph& g = m.graph;
  py::list out;
  for (int v = 0; v < g.NumNodes(); ++v) {
    py::dict d;
    d["name"] = g.Name(v);
    d["kind"] = NodeKindName(g.Kind(v));
    d["owner"] = g.Owner(v) < 0 ? py::object(py::none()) : py::object(py::str(g.AgentName(g.Owner(v))));
    d["parents"] = Names(g, MakeNodeSet(g.Parents(v)));
    d["domain"] = m.domains[v].labels;
    out.append(d);
  }
  return out;
}

Maim ModelFromTree(const std::string& text) {
  Efg game = ParseEfgDocument(text);
  return AbsentmindedInfoSets(game).empty() ? EfgToMaim(game).model
                                            : AbsentmindedTransform(game).model;
}

}  // namespace

PYBIND11_MODULE(_maidkit, m) {
  m.doc() = "Multi-agent influence models: inference, relevance, subgames, equilibria";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());

  py::class_<Maim>(m, "Model")
      .def_static("from_json", [](const std::string& text) { return ParseModel(text); },
                  py::arg("text"))
      .def_static("load", [](const std::string& path) { return ParseModel(ReadFile(path), path); },
                  py::arg("path"))
      .def_static("builtin", &builtin::ByName, py::arg("name"))
      .def_static("from_tree_json", &ModelFromTree, py::arg("text"),
                  "Model of a game tree document; absentminded trees get one chance "
                  "node per decision instance.")
      .def("to_json", &WriteModel)
      .def_readwrite("name", &Maim::name)
      .def_property_readonly("agents", [](const Maim& self) { return self.graph.agents(); })
      .def_property_readonly("nodes", &NodeList)
      .def_property_readonly("decisions",
                             [](const Maim& self) { return Names(self.graph, self.graph.Decisions()); })
      .def("contexts",
           [](const Maim& self, const std::string& decision) {
             int d = self.graph.Index(decision);
             std::vector<std::string> out;
             for (int r = 0; r < self.NumContexts(d); ++r) out.push_back(self.FormatContext(d, r));
             return out;
           },
           py::arg("decision"))
      .def("validate",
           [](const Maim& self) {
             std::vector<std::string> out;
             for (const auto& v : Validate(self)) out.push_back(FormatViolation(v));
             return out;
           })
      .def("__repr__", [](const Maim& self) {
        return "<Model '" + self.name + "' with " + std::to_string(self.NumNodes()) + " nodes>";
      });

  m.def("builtin_names", &builtin::Names);

  m.def("expected_utilities",
        [](const Maim& model, const py::dict& profile) {
          return AgentUtilities(model, ToPolicy(model, profile));
        },
        py::arg("model"), py::arg("profile"),
        "Expected utility per agent. Profile rows are action labels or "
        "distributions over the decision's domain.");

  m.def("pure_nash",
        [](const Maim& model, int threads) {
          NashOptions opt;
          opt.threads = threads;
          return Tables(model, PureNash(model, opt));
        },
        py::arg("model"), py::arg("threads") = 1);
  m.def("subgame_perfect",
        [](const Maim& model, int threads) {
          NashOptions opt;
          opt.threads = threads;
          return Tables(model, SolveSpe(model, opt).profiles);
        },
        py::arg("model"), py::arg("threads") = 1);
  m.def("is_nash", [](const Maim& model, const Table& p) { return IsNash(model, FromTable(model, p)); },
        py::arg("model"), py::arg("profile"));
  m.def("is_subgame_perfect",
        [](const Maim& model, const Table& p) { return IsSubgamePerfect(model, FromTable(model, p)); },
        py::arg("model"), py::arg("profile"));
  m.def("trembling_hand",
        [](const Maim& model, const Table& p) {
          ThpeResult r = CheckThpe(model, FromTable(model, p));
          py::list witnesses;
          for (const auto& w : r.witnesses) {
            py::dict d;
            d["decision"] = model.graph.Name(w.decision);
            d["context"] = model.FormatContext(w.decision, w.row);
            d["action"] = model.domains[w.decision].labels[w.action];
            d["deviation_value"] = w.deviation_value;
            d["profile_value"] = w.profile_value;
            witnesses.append(d);
          }
          std::vector<double> eps;
          for (const auto& s : r.steps) eps.push_back(s.eps);
          py::dict out;
          out["verdict"] = ThpeVerdictName(r.verdict);
          out["eps"] = eps;
          out["witnesses"] = witnesses;
          return out;
        },
        py::arg("model"), py::arg("profile"));

  m.def("d_separated",
        [](const Maim& model, const std::vector<std::string>& x,
           const std::vector<std::string>& y, const std::vector<std::string>& w) {
          const MaidGraph& g = model.graph;
          return DSeparated(g, Indices(g, x), Indices(g, y), Indices(g, w));
        },
        py::arg("model"), py::arg("x"), py::arg("y"), py::arg("given") = std::vector<std::string>{});
  m.def("relevance_edges",
        [](const Maim& model) {
          std::vector<std::pair<std::string, std::string>> out;
          for (const auto& [a, b] : BuildRelevanceGraph(model.graph).edges) {
            out.emplace_back(model.graph.Name(a), model.graph.Name(b));
          }
          return out;
        },
        py::arg("model"));
  m.def("relevance_components",
        [](const Maim& model) {
          auto cond = Condense(model.graph, BuildRelevanceGraph(model.graph));
          std::vector<std::vector<std::string>> out;
          for (const auto& c : cond.components) out.push_back(Names(model.graph, c));
          return out;
        },
        py::arg("model"));
  m.def("subgame_bases",
        [](const Maim& model) {
          std::vector<std::vector<std::string>> out;
          for (const auto& b : SubgameBases(model.graph)) out.push_back(Names(model.graph, b));
          return out;
        },
        py::arg("model"));

  m.def("to_efg",
        [](const Maim& model, const std::string& mode, const std::string& format) {
          if (mode != "minimal" && mode != "full") throw Error("mode must be minimal or full");
          Efg game = MaimToEfg(model, mode == "full" ? SplitMode::kFull : SplitMode::kMinimal).game;
          if (format == "json") return WriteEfgDocument(game);
          if (format != "efg") throw Error("format must be efg or json");
          return ExportEfgText(game);
        },
        py::arg("model"), py::arg("mode") = "minimal", py::arg("format") = "efg");
  m.def("maid_dot", &MaidDot, py::arg("model"));
}
