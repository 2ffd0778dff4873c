#ifndef MAIDKIT_IO_H_
#define MAIDKIT_IO_H_

#include <string>
#include <vector>

#include "maidkit/efg.h"
#include "maidkit/model.h"
#include "maidkit/relevance.h"

namespace maidkit {

// Malformed input document or unreadable file.
class ParseError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& text);

// Model document (JSON):
//   {"name": ..., "agents": [...],
//    "nodes": [{"name", "kind": chance|decision|utility, "owner",
//               "parents": [...], "domain": [...]}],
//    "cpds": [{"node", "rows": [{"context": {parent: value},
//                                "dist": {value: prob}}]}]}
// A utility row may give "value": x instead of "dist". Rows of a decision
// instance node may say "follows_rule": true with "tied_to" on the cpd.
// Structural problems throw ParseError naming the source and node; model
// invariants are left to Validate().
Maim ParseModel(const std::string& text, const std::string& source = "<input>");
std::string WriteModel(const Maim& model);

// Game tree document (JSON):
//   {"title", "agents",
//    "nodes": [{"kind": chance|player|terminal, "label", "children",
//               "actions", "probs", "player", "infoset", "payoffs"}],
//    "intervention_sets": [[node, ...], ...]}
// Node 0 is the root; information sets are keyed by the "infoset" value.
Efg ParseEfgDocument(const std::string& text,
                     const std::string& source = "<input>");
std::string WriteEfgDocument(const Efg& game);

// Profile tables as printed by FormatPureProfile; lines starting with '#'
// separate profiles. Every decision context must be listed.
std::vector<PureProfile> ParseProfileTables(const Maim& model,
                                            const std::string& text);

// MAID drawing; nodes carry agent and color attributes.
std::string MaidDot(const Maim& model);
// Relevance graph with one cluster per strongly connected component.
std::string RelevanceDot(const MaidGraph& graph, const RelevanceGraph& rel,
                         const CondensedRelevanceGraph& cond);
// Condensed relevance graph, one node per component.
std::string CondensedDot(const MaidGraph& graph,
                         const CondensedRelevanceGraph& cond);

}  // namespace maidkit

#endif  // MAIDKIT_IO_H_
