#include "srkit/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "srkit/error.hpp"

namespace srkit {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what, 1, 1);
}

const Json& field(const Json& j, const char* key) {
  require(j.is_object(), "expected a JSON object");
  auto it = j.find(key);
  require(it != j.end(), std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<std::string> names_from(const Json& j, const char* key) {
  const Json& a = field(j, key);
  require(a.is_array(), std::string("\"") + key + "\" must be an array of generator names");
  std::vector<std::string> out;
  for (const auto& x : a) {
    require(x.is_string(), std::string("\"") + key + "\" must hold strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<VertexPair> pairs_from(const Json& j, const char* key) {
  const Json& a = field(j, key);
  require(a.is_array(), std::string("\"") + key + "\" must be an array");
  std::vector<VertexPair> out;
  for (const auto& p : a) {
    require(p.is_array() && p.size() == 2 && p[0].is_number_integer() && p[1].is_number_integer(),
            std::string("\"") + key + "\" entries must be [u, v] integer pairs");
    out.emplace_back(p[0].get<VertexId>(), p[1].get<VertexId>());
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> string_pairs(const Json& j, const char* key) {
  const Json& a = field(j, key);
  require(a.is_array(), std::string("\"") + key + "\" must be an array");
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : a) {
    require(p.is_array() && p.size() == 2 && p[0].is_string() && p[1].is_string(),
            std::string("\"") + key + "\" entries must be [word, word] pairs");
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

// Aligns the listed bases through explicit pairs, checking they describe the same sets.
void align(std::vector<Word>& left, std::vector<Word>& right, const std::vector<std::pair<Word, Word>>& pairs,
           const char* what) {
  std::vector<Word> l;
  std::vector<Word> r;
  for (const auto& [a, b] : pairs) {
    l.push_back(a);
    r.push_back(b);
  }
  auto same = [](std::vector<Word> x, std::vector<Word> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  };
  if (!same(l, left) || !same(r, right)) throw StructureMismatch(std::string(what) + " pairs do not match the listed bases");
  left = std::move(l);
  right = std::move(r);
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("invalid JSON", line, col);
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionViolated("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SRGraph graph_from_json(const Json& j) {
  const Json& vs = field(j, "vertices");
  require(vs.is_array(), "\"vertices\" must be an array");
  std::vector<VertexId> vertices;
  for (const auto& v : vs) {
    require(v.is_number_integer(), "vertex ids must be integers");
    vertices.push_back(v.get<VertexId>());
  }
  return SRGraph::validate(std::move(vertices), pairs_from(j, "e_edges"), pairs_from(j, "f_edges"));
}

Json graph_to_json(const SRGraph& g) {
  auto edges = [](const std::vector<VertexPair>& es) {
    Json a = Json::array();
    for (const auto& [u, v] : es) a.push_back({u, v});
    return a;
  };
  Json j;
  j["vertices"] = g.vertices();
  j["e_edges"] = edges(g.e_edges());
  j["f_edges"] = edges(g.f_edges());
  return j;
}

Json stats_to_json(const GraphStats& s) {
  Json j;
  j["c_g"] = s.c_g;
  j["c_h"] = s.c_h;
  j["isolated_g"] = s.i_g;
  j["isolated_h"] = s.i_h;
  j["cut"] = s.cut_vertices;
  return j;
}

Json cycle_certificate(const SRGraph& g, const std::optional<std::vector<VertexId>>& cycle) {
  Json j;
  if (cycle) {
    j["sr_cycle"] = *cycle;
    return j;
  }
  const auto s = stats(g);
  j["sr_cycle"] = nullptr;
  Json w;
  w["isolated_g"] = s.i_g;
  w["isolated_h"] = s.i_h;
  w["cut"] = s.cut_vertices;
  j["witness"] = std::move(w);
  return j;
}

std::vector<Word> words_from_json(const Json& j, const Alphabet& alphabet, const char* key) {
  std::vector<Word> out;
  for (const auto& s : names_from(j, key)) out.push_back(alphabet.parse(s));
  return out;
}

Json words_to_json(std::span<const Word> words, const Alphabet& alphabet) {
  Json a = Json::array();
  for (const auto& w : words) a.push_back(alphabet.format(w));
  return a;
}

HnnPresentation hnn_from_json(const Json& j) {
  Alphabet base(names_from(j, "base"));
  auto a = words_from_json(j, base, "A");
  auto b = words_from_json(j, base, "B");
  if (j.contains("phi")) {
    std::vector<std::pair<Word, Word>> pairs;
    for (const auto& [x, y] : string_pairs(j, "phi")) pairs.emplace_back(base.parse(x), base.parse(y));
    align(a, b, pairs, "phi");
  }
  std::string stable = "t";
  if (j.contains("stable")) {
    require(j["stable"].is_string(), "\"stable\" must be a string");
    stable = j["stable"].get<std::string>();
  }
  return HnnPresentation(std::move(base), std::move(a), std::move(b), stable);
}

AmalgamPresentation amalgam_from_json(const Json& j) {
  Alphabet a(names_from(j, "A"));
  Alphabet b(names_from(j, "B"));
  auto ha = words_from_json(j, a, "H_in_A");
  auto hb = words_from_json(j, b, "H_in_B");
  if (j.contains("iso")) {
    std::vector<std::pair<Word, Word>> pairs;
    for (const auto& [x, y] : string_pairs(j, "iso")) pairs.emplace_back(a.parse(x), b.parse(y));
    align(ha, hb, pairs, "iso");
  }
  return AmalgamPresentation(std::move(a), std::move(b), std::move(ha), std::move(hb));
}

Json automaton_to_json(const SubgroupAutomaton& h, const Alphabet& alphabet) {
  Json j;
  j["states"] = h.num_states();
  j["base"] = 0;
  Json edges = Json::array();
  for (const auto& e : h.edges()) edges.push_back({e.from, e.to, alphabet.name(e.gen)});
  j["edges"] = std::move(edges);
  return j;
}

}  // namespace srkit
