#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "maidkit/builtin.h"
#include "maidkit/convert.h"
#include "maidkit/equilibria.h"
#include "maidkit/inference.h"
#include "maidkit/io.h"
#include "maidkit/relevance.h"
#include "maidkit/subgames.h"

namespace maidkit {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string refinement = "spe";
  std::string to;
  std::string mode = "minimal";
  std::string format;
  std::string emit_dir;
  int threads = 1;
  unsigned long long seed = 1;
};

// "builtin:<name>" or a model document path.
Maim LoadModel(const std::string& input) {
  const std::string prefix = "builtin:";
  if (input.rfind(prefix, 0) == 0) {
    try {
      return builtin::ByName(input.substr(prefix.size()));
    } catch (const Error& e) {
      throw ParseError(input + ": " + e.what());
    }
  }
  Maim model = ParseModel(ReadFile(input), input);
  if (model.name.empty()) model.name = std::filesystem::path(input).stem().string();
  return model;
}

// Prints violations; true when the model is clean.
bool Check(const Maim& model, const std::string& input, std::ostream& err) {
  auto violations = Validate(model);
  for (const auto& v : violations) err << input << ": " << FormatViolation(v) << "\n";
  return violations.empty();
}

void Emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.output.empty()) {
    out << text;
  } else {
    WriteFile(opt.output, text);
  }
}

std::string FormatUtilities(const Maim& model, const PureProfile& profile) {
  auto u = AgentUtilities(model, ToPolicy(model, profile));
  std::ostringstream os;
  for (size_t a = 0; a < u.size(); ++a) {
    os << (a ? ", " : "") << model.graph.AgentName(static_cast<int>(a)) << "="
       << FormatEfgNumber(u[a]);
  }
  return os.str();
}

int Validate(const Options& opt, std::ostream& out, std::ostream& err) {
  Maim model = LoadModel(opt.input);
  if (model.NumNodes() == 0) err << opt.input << ": warning: model has no nodes\n";
  if (!Check(model, opt.input, err)) return kExitInvalid;
  out << opt.input << ": ok (" << model.NumNodes() << " nodes, "
      << model.graph.NumAgents() << " agents)\n";
  return kExitOk;
}

int Analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  Maim model = LoadModel(opt.input);
  if (!Check(model, opt.input, err)) return kExitInvalid;
  const MaidGraph& g = model.graph;
  RelevanceGraph rel = BuildRelevanceGraph(g);
  CondensedRelevanceGraph cond = Condense(g, rel);
  std::ostringstream os;
  if (opt.format == "table") {
    os << "relevance edges:\n";
    for (const auto& [a, b] : rel.edges) {
      os << "  " << g.Name(a) << " -> " << g.Name(b) << "\n";
    }
    os << "components: " << cond.components.size() << "\n";
    for (size_t c = 0; c < cond.components.size(); ++c) {
      os << "  C" << c << " = " << FormatNodeSet(g, cond.components[c]) << "\n";
    }
    os << "condensed edges:\n";
    for (const auto& [a, b] : cond.edges) os << "  C" << a << " -> C" << b << "\n";
  } else {
    os << RelevanceDot(g, rel, cond) << CondensedDot(g, cond);
  }
  Emit(opt, os.str(), out);
  return kExitOk;
}

int Subgames(const Options& opt, std::ostream& out, std::ostream& err) {
  Maim model = LoadModel(opt.input);
  if (!Check(model, opt.input, err)) return kExitInvalid;
  const MaidGraph& g = model.graph;
  auto bases = SubgameBases(g);
  std::ostringstream os;
  for (size_t i = 0; i < bases.size(); ++i) {
    const bool full = static_cast<int>(bases[i].size()) == g.NumNodes();
    MaidSubgame sub = BuildMaidSubgame(g, bases[i]);
    auto instances = BuildMaimSubgames(model, sub);
    for (size_t k = 0; k < instances.size(); ++k) {
      if (!opt.emit_dir.empty()) {
        std::filesystem::create_directories(opt.emit_dir);
        std::string path = opt.emit_dir + "/" + model.name + "_base" +
                           std::to_string(i + 1) + "_" + std::to_string(k + 1) +
                           ".json";
        WriteFile(path, WriteModel(instances[k].model));
      }
    }
    os << "base " << i + 1 << " (" << (full ? "full" : "proper") << "): "
       << FormatNodeSet(g, bases[i]) << "\n";
    for (size_t k = 0; k < instances.size(); ++k) {
      os << "  boundary " << instances[k].FormatBoundary(model) << ": "
         << (IsFeasibleSubgame(model, instances[k]) ? "feasible" : "infeasible")
         << "\n";
    }
  }
  Emit(opt, os.str(), out);
  return kExitOk;
}

int Solve(const Options& opt, std::ostream& out, std::ostream& err) {
  Maim model = LoadModel(opt.input);
  if (!Check(model, opt.input, err)) return kExitInvalid;
  NashOptions nash;
  nash.threads = std::max(1, opt.threads);
  std::vector<PureProfile> found;
  if (opt.refinement == "ne") {
    found = PureNash(model, nash);
  } else if (opt.refinement == "spe") {
    SpeResult r = SolveSpe(model, nash);
    found = r.profiles;
    for (const auto& d : r.diagnostics) err << opt.input << ": " << d << "\n";
  } else {
    for (const auto& p : PureNash(model, nash)) {
      ThpeResult r = CheckThpe(model, p);
      if (r.verdict == ThpeVerdict::kYes) {
        found.push_back(p);
        continue;
      }
      std::ostringstream note;
      note << opt.input << ": NE not reported as THPE (verdict "
           << ThpeVerdictName(r.verdict) << ")";
      for (const auto& w : r.witnesses) {
        note << "; " << model.graph.Name(w.decision) << " at "
             << model.FormatContext(w.decision, w.row) << " prefers "
             << model.domains[w.decision].labels[w.action] << ": "
             << FormatEfgNumber(w.deviation_value.back()) << " > "
             << FormatEfgNumber(w.profile_value.back()) << " at eps="
             << FormatEfgNumber(r.steps.back().eps);
      }
      err << note.str() << "\n" << FormatPureProfile(model, p);
    }
  }
  std::ostringstream os;
  for (size_t i = 0; i < found.size(); ++i) {
    os << "# profile " << i + 1 << " (" << opt.refinement << "), utilities "
       << FormatUtilities(model, found[i]) << "\n"
       << FormatPureProfile(model, found[i]);
  }
  Emit(opt, os.str(), out);
  if (found.empty()) {
    err << opt.input << ": no pure " << opt.refinement << " profile\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int Convert(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.to == "efg") {
    Maim model = LoadModel(opt.input);
    if (!Check(model, opt.input, err)) return kExitInvalid;
    SplitMode mode = opt.mode == "full" ? SplitMode::kFull : SplitMode::kMinimal;
    EfgConversion conv = MaimToEfg(model, mode);
    Emit(opt, opt.format == "json" ? WriteEfgDocument(conv.game)
                                   : ExportEfgText(conv.game),
         out);
    return kExitOk;
  }
  Efg game = ParseEfgDocument(ReadFile(opt.input), opt.input);
  if (game.title.empty()) game.title = std::filesystem::path(opt.input).stem().string();
  MaimConversion conv;
  try {
    conv = AbsentmindedInfoSets(game).empty() ? EfgToMaim(game)
                                              : AbsentmindedTransform(game);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    err << opt.input << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  Emit(opt, WriteModel(conv.model), out);
  return kExitOk;
}

int ExportDot(const Options& opt, std::ostream& out, std::ostream& err) {
  Maim model = LoadModel(opt.input);
  if (!Check(model, opt.input, err)) return kExitInvalid;
  Emit(opt, MaidDot(model), out);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Multi-agent influence models: analysis, equilibria, game trees"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--threads", opt.threads, "Worker threads for equilibrium search")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized checks");
  auto input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", opt.input, what)->required();
    sub->add_option("-o,--output", opt.output, "Write output to a file");
  };
  const char* model_help = "Model document or builtin:<name>";
  auto* validate = app.add_subcommand("validate", "Check model invariants");
  input(validate, model_help);
  auto* analyze = app.add_subcommand("analyze", "Relevance and condensed relevance graphs");
  input(analyze, model_help);
  analyze->add_option("--format", opt.format, "dot or table")
      ->check(CLI::IsMember({"dot", "table"}));
  auto* subgames = app.add_subcommand("subgames", "List subgame bases");
  input(subgames, model_help);
  subgames->add_option("--emit", opt.emit_dir,
                       "Directory receiving one model per subgame instance");
  auto* solve = app.add_subcommand("solve", "Pure equilibria");
  input(solve, model_help);
  solve->add_option("--refinement", opt.refinement, "ne, spe or thpe")
      ->check(CLI::IsMember({"ne", "spe", "thpe"}));
  auto* convert = app.add_subcommand("convert", "Convert between models and game trees");
  input(convert, "Model (to efg) or game tree document (to maim)");
  convert->add_option("--to", opt.to, "efg or maim")
      ->required()
      ->check(CLI::IsMember({"efg", "maim"}));
  convert->add_option("--mode", opt.mode, "Splitting nodes: minimal or full")
      ->check(CLI::IsMember({"minimal", "full"}));
  convert->add_option("--format", opt.format, "Game tree output: efg or json")
      ->check(CLI::IsMember({"efg", "json"}));
  auto* dot = app.add_subcommand("export-dot", "Draw the MAID as DOT");
  input(dot, model_help);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }
  try {
    if (validate->parsed()) return Validate(opt, out, err);
    if (analyze->parsed()) return Analyze(opt, out, err);
    if (subgames->parsed()) return Subgames(opt, out, err);
    if (solve->parsed()) return Solve(opt, out, err);
    if (convert->parsed()) return Convert(opt, out, err);
    if (dot->parsed()) return ExportDot(opt, out, err);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << opt.input << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitIo;
}

}  // namespace maidkit
