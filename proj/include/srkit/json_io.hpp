#pragma once

// JSON readers and writers for graphs, presentations, automata and verdicts.
// Writers use ordered_json so keys always come out in the same order.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "srkit/amalgam.hpp"
#include "srkit/hnn.hpp"
#include "srkit/star_check.hpp"
#include "srkit/sr_graph.hpp"
#include "srkit/subgroups.hpp"
#include "srkit/words.hpp"

namespace srkit {

using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become ParseError with line and column.
Json parse_json(std::string_view text);
/// Reads a file, or standard input when path is "-".
std::string read_input(const std::string& path);

/// {"vertices":[ids],"e_edges":[[u,v],...],"f_edges":[[u,v],...]}
SRGraph graph_from_json(const Json& j);
Json graph_to_json(const SRGraph& g);
Json stats_to_json(const GraphStats& s);
/// {"sr_cycle":[...]} or {"sr_cycle":null,"witness":{"isolated_g","isolated_h","cut"}}
Json cycle_certificate(const SRGraph& g, const std::optional<std::vector<VertexId>>& cycle);

/// {"base":[...],"A":[...],"B":[...],"phi":[[a,b],...],"stable":"t"}. phi pairs
/// fix the alignment; without phi, A[i] maps to B[i].
HnnPresentation hnn_from_json(const Json& j);
/// {"A":[...],"B":[...],"H_in_A":[...],"H_in_B":[...],"iso":[[h,k],...]}
AmalgamPresentation amalgam_from_json(const Json& j);

/// {"states":n,"base":0,"edges":[[from,to,"letter"],...]}
Json automaton_to_json(const SubgroupAutomaton& h, const Alphabet& alphabet);

std::vector<Word> words_from_json(const Json& j, const Alphabet& alphabet, const char* field);
Json words_to_json(std::span<const Word> words, const Alphabet& alphabet);

template <GroupModel G>
Json elements_to_json(const G& g, std::span<const typename G::Element> xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(g.format(x));
  return a;
}

/// Witness set indices are written 1-based.
template <GroupModel G>
Json mutual_verdict_json(const G& g, const MutualVerdict<typename G::Element>& v) {
  Json j;
  j["holds"] = v.holds;
  j["bound"] = v.bound;
  if (v.holds) {
    j["witness"] = nullptr;
  } else {
    j["witness"] = elements_to_json(g, std::span<const typename G::Element>(v.witness));
    Json sets = Json::array();
    for (auto s : v.witness_sets) sets.push_back(s + 1);
    j["witness_sets"] = std::move(sets);
  }
  j["products"] = v.products;
  return j;
}

}  // namespace srkit
