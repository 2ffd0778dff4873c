#include "maidkit/io.h"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace maidkit {

using nlohmann::json;
using nlohmann::ordered_json;

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot write file");
  out << text;
  if (!out) throw ParseError(path + ": write failed");
}

namespace {

std::string Label(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw ParseError("expected a string or number, got " + v.dump());
}

json ParseJson(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

const json& Field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

// Value index in a domain by label, or by number for numeric domains.
int FindValue(const Domain& dom, const json& v) {
  if (v.is_number() && !dom.values.empty()) {
    double x = v.get<double>();
    for (int k = 0; k < dom.size(); ++k) {
      if (dom.values[k] == x) return k;
    }
    return -1;
  }
  std::string s = Label(v);
  int k = dom.Find(s);
  if (k < 0 && !dom.values.empty()) {
    try {
      size_t used = 0;
      double x = std::stod(s, &used);
      if (used == s.size()) {
        for (int i = 0; i < dom.size(); ++i) {
          if (dom.values[i] == x) return i;
        }
      }
    } catch (const std::exception&) {
    }
  }
  return k;
}

NodeKind ParseKind(const std::string& s, const std::string& where) {
  if (s == "chance") return NodeKind::kChance;
  if (s == "decision") return NodeKind::kDecision;
  if (s == "utility") return NodeKind::kUtility;
  throw ParseError(where + ": unknown kind '" + s + "'");
}

// Integral values are written without a fractional part.
nlohmann::ordered_json NumberJson(double x) {
  if (std::abs(x) < 9e15 && x == std::floor(x)) {
    return static_cast<long long>(x);
  }
  return x;
}

const char* KindName(NodeKind k) {
  switch (k) {
    case NodeKind::kChance: return "chance";
    case NodeKind::kDecision: return "decision";
    case NodeKind::kUtility: return "utility";
  }
  return "chance";
}

}  // namespace

Maim ParseModel(const std::string& text, const std::string& source) {
  json doc = ParseJson(text, source);
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
  Maim model;
  if (doc.contains("name")) model.name = Label(doc["name"]);
  try {
    for (const auto& a : doc.value("agents", json::array())) {
      model.graph.AddAgent(Label(a));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(source + ": agents: " + e.what());
  }
  const json nodes = doc.value("nodes", json::array());
  if (!nodes.is_array()) throw ParseError(source + ": \"nodes\" must be a list");
  for (size_t i = 0; i < nodes.size(); ++i) {
    const json& n = nodes[i];
    std::string where = source + ": nodes[" + std::to_string(i) + "]";
    if (!n.is_object()) throw ParseError(where + ": expected an object");
    std::string name = Label(Field(n, "name", where));
    where = source + ": node '" + name + "'";
    NodeKind kind = ParseKind(Field(n, "kind", where).get<std::string>(), where);
    int owner = -1;
    if (n.contains("owner") && !n["owner"].is_null()) {
      std::string o = Label(n["owner"]);
      owner = model.graph.FindAgent(o);
      if (owner < 0) throw ParseError(where + ": unknown owner '" + o + "'");
    }
    Domain dom;
    for (const auto& v : n.value("domain", json::array())) {
      dom.labels.push_back(Label(v));
      if (kind == NodeKind::kUtility) {
        if (v.is_number()) {
          dom.values.push_back(v.get<double>());
        } else {
          try {
            size_t used = 0;
            std::string s = v.get<std::string>();
            double x = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            dom.values.push_back(x);
          } catch (const std::exception&) {
            throw ParseError(where + ": utility domain not numeric: " + v.dump());
          }
        }
      }
    }
    if (model.graph.Find(name) >= 0) {
      throw ParseError(where + ": duplicate node name");
    }
    try {
      model.AddNode(name, kind, owner, std::move(dom));
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  for (size_t i = 0; i < nodes.size(); ++i) {
    const std::string name = Label(nodes[i]["name"]);
    const std::string where = source + ": node '" + name + "'";
    for (const auto& p : nodes[i].value("parents", json::array())) {
      int pi = model.graph.Find(Label(p));
      if (pi < 0) throw ParseError(where + ": unknown parent '" + Label(p) + "'");
      if (model.graph.HasEdge(pi, static_cast<int>(i))) {
        throw ParseError(where + ": parent '" + Label(p) + "' listed twice");
      }
      model.graph.AddEdge(pi, static_cast<int>(i));
    }
  }
  for (const auto& c : doc.value("cpds", json::array())) {
    std::string nname = Label(Field(c, "node", source + ": cpds"));
    const std::string where = source + ": cpd of '" + nname + "'";
    int v = model.graph.Find(nname);
    if (v < 0) throw ParseError(where + ": unknown node");
    if (model.graph.IsDecision(v)) {
      throw ParseError(where + ": decision has cpd (decisions carry no cpd)");
    }
    if (model.cpds[v]) throw ParseError(where + ": given twice");
    Cpd& cpd = model.InitCpd(v);
    std::vector<char> follows(cpd.num_rows(), 0);
    std::vector<char> seen(cpd.num_rows(), 0);
    const auto& parents = model.graph.Parents(v);
    for (const auto& row : c.value("rows", json::array())) {
      json ctx = row.value("context", json::object());
      if (!ctx.is_object()) throw ParseError(where + ": context must be an object");
      std::vector<int> values(parents.size(), -1);
      for (auto it = ctx.begin(); it != ctx.end(); ++it) {
        int p = model.graph.Find(it.key());
        auto pos = std::find(parents.begin(), parents.end(), p);
        if (pos == parents.end()) {
          throw ParseError(where + ": context names non-parent '" + it.key() + "'");
        }
        int k = FindValue(model.domains[p], it.value());
        if (k < 0) {
          throw ParseError(where + ": value " + it.value().dump() +
                           " not in the domain of '" + it.key() + "'");
        }
        values[pos - parents.begin()] = k;
      }
      for (size_t i = 0; i < parents.size(); ++i) {
        if (values[i] < 0) {
          throw ParseError(where + ": context " + ctx.dump() + " omits parent '" +
                           model.graph.Name(parents[i]) + "'");
        }
      }
      int r = cpd.RowIndex(values);
      if (seen[r]++) throw ParseError(where + ": context " + ctx.dump() + " given twice");
      if (row.value("follows_rule", false)) {
        follows[r] = 1;
        continue;
      }
      if (row.contains("value")) {
        int k = FindValue(model.domains[v], row["value"]);
        if (k < 0) {
          throw ParseError(where + ": value " + row["value"].dump() +
                           " not in its domain");
        }
        cpd.SetDeterministic(r, k);
        continue;
      }
      const json& dist = Field(row, "dist", where);
      if (!dist.is_object()) throw ParseError(where + ": dist must be an object");
      for (auto it = dist.begin(); it != dist.end(); ++it) {
        int k = FindValue(model.domains[v], json(it.key()));
        if (k < 0) {
          throw ParseError(where + ": value '" + it.key() + "' not in its domain");
        }
        if (!it.value().is_number()) {
          throw ParseError(where + ": probability of '" + it.key() +
                           "' is not a number");
        }
        cpd.at(r, k) = it.value().get<double>();
      }
    }
    if (c.contains("tied_to")) {
      int d = model.graph.Find(Label(c["tied_to"]));
      if (d < 0) throw ParseError(where + ": unknown tied_to decision");
      model.tied[v] = TiedRule{d, follows};
    } else if (std::find(follows.begin(), follows.end(), 1) != follows.end()) {
      throw ParseError(where + ": follows_rule rows need \"tied_to\"");
    }
  }
  return model;
}

std::string WriteModel(const Maim& model) {
  const MaidGraph& g = model.graph;
  ordered_json doc;
  doc["name"] = model.name;
  doc["agents"] = g.agents();
  ordered_json nodes = ordered_json::array();
  auto value_json = [&](int node, int k) -> ordered_json {
    if (g.IsUtility(node)) return NumberJson(model.UtilityValue(node, k));
    return model.domains[node].labels[k];
  };
  for (int v = 0; v < g.NumNodes(); ++v) {
    ordered_json n;
    n["name"] = g.Name(v);
    n["kind"] = KindName(g.Kind(v));
    if (g.Owner(v) >= 0) n["owner"] = g.AgentName(g.Owner(v));
    ordered_json ps = ordered_json::array();
    for (int p : g.Parents(v)) ps.push_back(g.Name(p));
    n["parents"] = ps;
    ordered_json dom = ordered_json::array();
    for (int k = 0; k < model.Card(v); ++k) dom.push_back(value_json(v, k));
    n["domain"] = dom;
    nodes.push_back(n);
  }
  doc["nodes"] = nodes;
  ordered_json cpds = ordered_json::array();
  for (int v = 0; v < g.NumNodes(); ++v) {
    if (!model.cpds[v]) continue;
    const Cpd& cpd = *model.cpds[v];
    ordered_json c;
    c["node"] = g.Name(v);
    const auto& tie = model.tied[v];
    if (tie) c["tied_to"] = g.Name(tie->decision);
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < cpd.num_rows(); ++r) {
      ordered_json row;
      ordered_json ctx = ordered_json::object();
      auto vals = cpd.RowValues(r);
      for (size_t i = 0; i < cpd.parents().size(); ++i) {
        int p = cpd.parents()[i];
        ctx[g.Name(p)] = value_json(p, vals[i]);
      }
      row["context"] = ctx;
      if (tie && r < static_cast<int>(tie->follows_rule.size()) &&
          tie->follows_rule[r]) {
        row["follows_rule"] = true;
      } else if (g.IsUtility(v)) {
        int k = 0;
        for (int i = 0; i < cpd.child_card(); ++i) {
          if (cpd.at(r, i) > cpd.at(r, k)) k = i;
        }
        row["value"] = NumberJson(model.UtilityValue(v, k));
      } else {
        ordered_json dist = ordered_json::object();
        for (int k = 0; k < cpd.child_card(); ++k) {
          if (cpd.at(r, k) != 0.0) dist[model.domains[v].labels[k]] = cpd.at(r, k);
        }
        row["dist"] = dist;
      }
      rows.push_back(row);
    }
    c["rows"] = rows;
    cpds.push_back(c);
  }
  doc["cpds"] = cpds;
  return doc.dump(2) + "\n";
}

Efg ParseEfgDocument(const std::string& text, const std::string& source) {
  json doc = ParseJson(text, source);
  if (!doc.is_object()) throw ParseError(source + ": top level must be an object");
  Efg game;
  if (doc.contains("title")) game.title = Label(doc["title"]);
  for (const auto& a : doc.value("agents", json::array())) {
    game.agents.push_back(Label(a));
  }
  const json nodes = doc.value("nodes", json::array());
  if (!nodes.is_array() || nodes.empty()) {
    throw ParseError(source + ": \"nodes\" must be a non-empty list");
  }
  game.nodes.resize(nodes.size());
  std::map<std::string, int> infoset_of;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const json& n = nodes[i];
    const std::string where = source + ": tree node " + std::to_string(i);
    EfgNode& node = game.nodes[i];
    std::string kind = Field(n, "kind", where).get<std::string>();
    node.label = n.contains("label") ? Label(n["label"]) : "";
    for (const auto& c : n.value("children", json::array())) {
      if (!c.is_number_integer() || c.get<int>() < 0 ||
          c.get<size_t>() >= nodes.size()) {
        throw ParseError(where + ": child " + c.dump() + " out of range");
      }
      int ci = c.get<int>();
      if (game.nodes[ci].parent >= 0 || ci == 0) {
        throw ParseError(where + ": child " + std::to_string(ci) +
                         " already has a parent");
      }
      node.children.push_back(ci);
      game.nodes[ci].parent = static_cast<int>(i);
    }
    for (const auto& a : n.value("actions", json::array())) {
      node.actions.push_back(Label(a));
    }
    if (node.actions.empty()) {
      for (size_t k = 0; k < node.children.size(); ++k) {
        node.actions.push_back(std::to_string(k + 1));
      }
    }
    if (kind == "chance") {
      node.kind = EfgNodeKind::kChance;
      for (const auto& p : Field(n, "probs", where)) node.probs.push_back(p.get<double>());
    } else if (kind == "player") {
      node.kind = EfgNodeKind::kPlayer;
      std::string player = Label(Field(n, "player", where));
      auto it = std::find(game.agents.begin(), game.agents.end(), player);
      if (it == game.agents.end()) {
        throw ParseError(where + ": unknown player '" + player + "'");
      }
      node.player = static_cast<int>(it - game.agents.begin());
      std::string key = n.contains("infoset") ? Label(n["infoset"])
                                              : "#" + std::to_string(i);
      auto [is, inserted] = infoset_of.emplace(key, game.NumInfoSets());
      if (inserted) game.infosets.push_back(InfoSet{node.player, key, {}});
      node.infoset = is->second;
      game.infosets[node.infoset].members.push_back(static_cast<int>(i));
    } else if (kind == "terminal") {
      node.kind = EfgNodeKind::kTerminal;
      for (const auto& p : Field(n, "payoffs", where)) node.payoffs.push_back(p.get<double>());
    } else {
      throw ParseError(where + ": unknown kind '" + kind + "'");
    }
  }
  for (const auto& s : doc.value("intervention_sets", json::array())) {
    std::vector<int> members;
    for (const auto& z : s) members.push_back(z.get<int>());
    game.intervention_sets.push_back(members);
  }
  try {
    ValidateEfg(game);
  } catch (const Error& e) {
    throw ParseError(source + ": " + e.what());
  }
  return game;
}

std::string WriteEfgDocument(const Efg& game) {
  ordered_json doc;
  doc["title"] = game.title;
  doc["agents"] = game.agents;
  std::set<std::string> labels;
  bool named = true;
  for (const auto& is : game.infosets) {
    if (is.label.empty() || !labels.insert(is.label).second) named = false;
  }
  ordered_json nodes = ordered_json::array();
  for (const auto& node : game.nodes) {
    ordered_json n;
    switch (node.kind) {
      case EfgNodeKind::kChance: n["kind"] = "chance"; break;
      case EfgNodeKind::kPlayer: n["kind"] = "player"; break;
      case EfgNodeKind::kTerminal: n["kind"] = "terminal"; break;
    }
    if (!node.label.empty()) n["label"] = node.label;
    if (node.kind == EfgNodeKind::kPlayer) {
      n["player"] = game.agents[node.player];
      if (named) {
        n["infoset"] = game.infosets[node.infoset].label;
      } else {
        n["infoset"] = node.infoset;
      }
    }
    if (node.kind != EfgNodeKind::kTerminal) {
      n["children"] = node.children;
      n["actions"] = node.actions;
    }
    if (node.kind == EfgNodeKind::kChance) n["probs"] = node.probs;
    if (node.kind == EfgNodeKind::kTerminal) n["payoffs"] = node.payoffs;
    nodes.push_back(n);
  }
  doc["nodes"] = nodes;
  for (auto& n : nodes) {
    if (!n.contains("payoffs")) continue;
    ordered_json p = ordered_json::array();
    for (double x : n["payoffs"].get<std::vector<double>>()) p.push_back(NumberJson(x));
    n["payoffs"] = p;
  }
  if (!game.intervention_sets.empty()) doc["intervention_sets"] = game.intervention_sets;
  return doc.dump(2) + "\n";
}

std::vector<PureProfile> ParseProfileTables(const Maim& model,
                                            const std::string& text) {
  const MaidGraph& g = model.graph;
  std::vector<PureProfile> out;
  PureProfile current;
  std::map<int, std::vector<char>> seen;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto flush = [&]() {
    if (current.empty()) return;
    for (int d : g.Decisions()) {
      auto it = current.find(d);
      if (it == current.end()) {
        throw ParseError("profile omits decision '" + g.Name(d) + "'");
      }
      for (size_t r = 0; r < it->second.size(); ++r) {
        if (!seen[d][r]) {
          throw ParseError("profile omits context " + model.FormatContext(d, r) +
                           " of '" + g.Name(d) + "'");
        }
      }
    }
    out.push_back(current);
    current.clear();
    seen.clear();
  };
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      flush();
      continue;
    }
    const std::string where = "profile line " + std::to_string(lineno);
    size_t a = t.find(" / ");
    size_t b = t.rfind(" / ");
    if (a == std::string::npos || a == b) {
      throw ParseError(where + ": expected 'decision / context / action'");
    }
    std::string dname = trim(t.substr(0, a));
    std::string ctx = trim(t.substr(a + 3, b - a - 3));
    std::string action = trim(t.substr(b + 3));
    int d = g.Find(dname);
    if (d < 0 || !g.IsDecision(d)) {
      throw ParseError(where + ": '" + dname + "' is not a decision");
    }
    const auto& parents = g.Parents(d);
    std::vector<int> values(parents.size(), -1);
    if (ctx != "-") {
      std::istringstream cs(ctx);
      std::string item;
      while (std::getline(cs, item, ',')) {
        size_t eq = item.find('=');
        if (eq == std::string::npos) throw ParseError(where + ": bad context '" + ctx + "'");
        std::string pname = trim(item.substr(0, eq));
        int p = g.Find(pname);
        auto pos = std::find(parents.begin(), parents.end(), p);
        if (pos == parents.end()) {
          throw ParseError(where + ": '" + pname + "' is not a parent of '" + dname + "'");
        }
        int k = model.domains[p].Find(trim(item.substr(eq + 1)));
        if (k < 0) throw ParseError(where + ": unknown value in '" + item + "'");
        values[pos - parents.begin()] = k;
      }
    }
    for (int v : values) {
      if (v < 0) throw ParseError(where + ": context '" + ctx + "' is incomplete");
    }
    int k = model.domains[d].Find(action);
    if (k < 0) throw ParseError(where + ": unknown action '" + action + "'");
    auto& actions = current[d];
    if (actions.empty()) {
      actions.assign(model.NumContexts(d), 0);
      seen[d].assign(model.NumContexts(d), 0);
    }
    int row = model.EmptyRule(d).RowIndex(values);
    if (seen[d][row]++) throw ParseError(where + ": context listed twice");
    actions[row] = k;
  }
  flush();
  return out;
}

namespace {

std::string DotQuote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* AgentColor(int agent) {
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return kPalette[agent % 8];
}

}  // namespace

std::string MaidDot(const Maim& model) {
  const MaidGraph& g = model.graph;
  std::ostringstream os;
  os << "digraph " << DotQuote(model.name) << " {\n";
  for (int v = 0; v < g.NumNodes(); ++v) {
    os << "  " << DotQuote(g.Name(v)) << " [";
    if (g.IsChance(v)) {
      os << "shape=ellipse";
    } else {
      os << (g.IsDecision(v) ? "shape=box" : "shape=diamond")
         << ", agent=" << DotQuote(g.AgentName(g.Owner(v)))
         << ", style=filled, fillcolor=" << DotQuote(AgentColor(g.Owner(v)));
    }
    os << "];\n";
  }
  for (int v = 0; v < g.NumNodes(); ++v) {
    for (int p : g.Parents(v)) {
      os << "  " << DotQuote(g.Name(p)) << " -> " << DotQuote(g.Name(v)) << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string RelevanceDot(const MaidGraph& graph, const RelevanceGraph& rel,
                         const CondensedRelevanceGraph& cond) {
  std::ostringstream os;
  os << "digraph relevance {\n";
  for (size_t c = 0; c < cond.components.size(); ++c) {
    os << "  subgraph cluster_" << c << " {";
    for (int d : cond.components[c]) os << " " << DotQuote(graph.Name(d)) << ";";
    os << " }\n";
  }
  for (const auto& [a, b] : rel.edges) {
    os << "  " << DotQuote(graph.Name(a)) << " -> " << DotQuote(graph.Name(b))
       << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string CondensedDot(const MaidGraph& graph,
                         const CondensedRelevanceGraph& cond) {
  std::ostringstream os;
  os << "digraph condensed {\n";
  auto name = [&](int c) {
    std::string s;
    for (int d : cond.components[c]) s += (s.empty() ? "" : ",") + graph.Name(d);
    return DotQuote("{" + s + "}");
  };
  for (size_t c = 0; c < cond.components.size(); ++c) {
    os << "  " << name(static_cast<int>(c)) << ";\n";
  }
  for (const auto& [a, b] : cond.edges) {
    os << "  " << name(a) << " -> " << name(b) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace maidkit
