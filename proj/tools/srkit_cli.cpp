#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "srkit/amalgam.hpp"
#include "srkit/error.hpp"
#include "srkit/experiments.hpp"
#include "srkit/hnn.hpp"
#include "srkit/json_io.hpp"
#include "srkit/ring.hpp"
#include "srkit/ring_lab.hpp"
#include "srkit/sr_graph.hpp"
#include "srkit/star_check.hpp"
#include "srkit/subgroups.hpp"

using namespace srkit;

namespace {

struct RunConfig {
  std::size_t max_len = 6;
  std::size_t search_len = 6;
  double budget = 1e7;
  std::uint64_t seed = 1;
  std::string format = "json";
  int threads = 0;
  bool cyclic = false;
  std::string gens = "a,b";
  std::uint64_t prime = 0;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Alphabet alphabet_of(const std::string& gens) {
  std::vector<std::string> names;
  std::string norm = gens;
  for (auto& c : norm) {
    if (c == ' ') c = ',';
  }
  for (auto& n : split(norm, ',')) {
    if (!n.empty()) names.push_back(n);
  }
  return Alphabet(std::move(names));
}

// "w1; w2; ..." (an empty list is allowed).
std::vector<Word> parse_list(const std::string& text, const Alphabet& alpha) {
  std::vector<Word> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split(text, ';')) out.push_back(alpha.parse(part));
  return out;
}

// "{a, b^-1 a}; {a^2}"
std::vector<std::vector<std::string>> parse_set_texts(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  for (auto part : split(text, ';')) {
    if (part.size() >= 2 && part.front() == '{' && part.back() == '}') part = part.substr(1, part.size() - 2);
    std::vector<std::string> set;
    if (!trim(part).empty()) {
      for (const auto& e : split(part, ',')) set.push_back(e);
    }
    out.push_back(std::move(set));
  }
  return out;
}

std::vector<std::vector<Word>> parse_sets(const std::string& text, const Alphabet& alpha) {
  std::vector<std::vector<Word>> out;
  for (const auto& set : parse_set_texts(text)) {
    std::vector<Word> ws;
    for (const auto& e : set) ws.push_back(alpha.parse(e));
    out.push_back(std::move(ws));
  }
  return out;
}

RationalField::Value parse_coefficient(const RationalField&, const std::string& s) {
  try {
    return RationalField::Value(s);
  } catch (const std::exception&) {
    throw ParseError("bad coefficient '" + s + "'", 1, 1);
  }
}

PrimeField::Value parse_coefficient(const PrimeField& f, const std::string& s) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw ParseError("bad coefficient '" + s + "'", 1, 1);
    return f.from_int(v);
  } catch (const std::logic_error&) {
    throw ParseError("bad coefficient '" + s + "'", 1, 1);
  }
}

// "2*a b + -1/2*b^-1 + a": terms split on '+', each [coefficient '*'] word.
template <class F>
RingElement<FreeGroup, F> parse_ring(const FreeGroup& g, const F& field, const std::string& text) {
  RingElement<FreeGroup, F> r(g, field);
  if (trim(text) == "0") return r;
  for (const auto& term : split(text, '+')) {
    const auto star = term.find('*');
    if (star == std::string::npos) {
      r.add_term(g.parse(term), field.one());
    } else {
      r.add_term(g.parse(term.substr(star + 1)), parse_coefficient(field, trim(term.substr(0, star))));
    }
  }
  return r;
}

template <class E>
Json table_json(const PairTable<E>& t, const auto& g) {
  Json j;
  j["pairs"] = t.pairs.size();
  j["threshold"] = t.threshold;
  j["isolated"] = t.isolated.size();
  j["holds"] = t.holds();
  Json prods = Json::array();
  for (auto i : t.isolated) prods.push_back(g.format(t.products[i]));
  j["isolated_products"] = std::move(prods);
  return j;
}

std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump() << '\n';
  } else if (format == "text") {
    for (const auto& [k, v] : j.items()) std::cout << k << ": " << scalar(v) << '\n';
  } else {
    // CSV: a "rows" array of objects, or the top-level object as one row.
    auto quote = [](const std::string& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    std::vector<Json> rows;
    if (j.contains("rows") && j["rows"].is_array()) {
      for (const auto& r : j["rows"]) rows.push_back(r);
    } else {
      rows.push_back(j);
    }
    bool first = true;
    for (const auto& [k, v] : rows.front().items()) {
      std::cout << (first ? "" : ",") << quote(k);
      first = false;
    }
    std::cout << '\n';
    for (const auto& r : rows) {
      first = true;
      for (const auto& [k, v] : r.items()) {
        std::cout << (first ? "" : ",") << quote(scalar(v));
        first = false;
      }
      std::cout << '\n';
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating cycles, mutual reduction and witness constructions"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--max-len", cfg.max_len, "Longest product examined by bounded checks")->check(CLI::PositiveNumber);
  app.add_option("--search-len", cfg.search_len, "Longest word examined by witness searches")->check(CLI::PositiveNumber);
  app.add_option("--budget", cfg.budget, "Node / product budget for searches")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized runs");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", cfg.threads, "OpenMP thread cap (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--cyclic", cfg.cyclic, "Also treat the last and first factors as adjacent");
  app.add_option("--gens", cfg.gens, "Free generators, comma separated");
  app.add_option("--prime", cfg.prime, "Use coefficients mod this prime instead of rationals");

  int code = 0;
  auto budget = [&] { return static_cast<std::uint64_t>(cfg.budget); };
  auto options = [&] {
    SearchOptions o;
    o.max_len = cfg.max_len;
    o.budget = budget();
    o.adjacency = cfg.cyclic ? Adjacency::Cyclic : Adjacency::Linear;
    return o;
  };
  auto prepare = [&] {
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  };
  auto out = [&](const Json& j, int c) {
    emit(j, cfg.format);
    code = c;
  };

  // graph
  auto* graph = app.add_subcommand("graph", "SR-graph checks")->require_subcommand(1);
  std::string graph_file;
  auto load_graph = [&] { return graph_from_json(parse_json(read_input(graph_file))); };
  auto invalid_graph = [](const char* kind, const char* message) {
    Json j;
    j["valid"] = false;
    j["error"] = kind;
    j["message"] = message;
    return j;
  };
  graph->add_subcommand("validate", "Check the graph invariants")->callback([&] {
    prepare();
    const auto text = parse_json(read_input(graph_file));
    SRGraph g;
    try {
      g = graph_from_json(text);
    } catch (const NonCompleteEComponent& e) {
      out(invalid_graph("NonCompleteEComponent", e.what()), 1);
      return;
    } catch (const DisjointnessViolation& e) {
      out(invalid_graph("DisjointnessViolation", e.what()), 1);
      return;
    } catch (const MalformedEdge& e) {
      out(invalid_graph("MalformedEdge", e.what()), 1);
      return;
    }
    Json j;
    j["valid"] = true;
    j["vertices"] = g.size();
    j["e_edges"] = g.e_edges().size();
    j["f_edges"] = g.f_edges().size();
    out(j, 0);
  });
  graph->add_subcommand("stats", "Component counts, isolated and cut vertices")->callback([&] {
    prepare();
    out(stats_to_json(stats(load_graph())), 0);
  });
  graph->add_subcommand("find-cycle", "Search for an alternating cycle")->callback([&] {
    prepare();
    const auto g = load_graph();
    const auto cycle = find_sr_cycle(g, budget());
    out(cycle_certificate(g, cycle), cycle ? 0 : 1);
  });
  graph->add_subcommand("criterion", "Component-count criterion for complete components")->callback([&] {
    prepare();
    const auto g = load_graph();
    const auto s = stats(g);
    Json j;
    j["criterion"] = complete_criterion(g);
    j["c_g"] = s.c_g;
    j["c_h"] = s.c_h;
    j["vertices"] = g.size();
    out(j, j["criterion"].get<bool>() ? 0 : 1);
  });
  for (auto* sub : graph->get_subcommands({})) sub->add_option("file", graph_file, "Graph JSON, or - for stdin")->required();

  // words
  auto* words = app.add_subcommand("words", "Free-group word operations")->require_subcommand(1);
  std::string word_text;
  std::string sigma_gen;
  words->add_subcommand("reduce", "Free reduction")->callback([&] {
    const FreeGroup g(alphabet_of(cfg.gens));
    const Word w = g.parse(word_text);
    Json j;
    j["word"] = g.format(w);
    j["length"] = w.length();
    out(j, 0);
  });
  words->add_subcommand("cyclic", "Cyclic reduction w = c^-1 core c")->callback([&] {
    const FreeGroup g(alphabet_of(cfg.gens));
    const auto r = cyclic_reduce(g.parse(word_text));
    Json j;
    j["core"] = g.format(r.core);
    j["conjugator"] = g.format(r.conjugator);
    out(j, 0);
  });
  auto* sigma = words->add_subcommand("sigma", "Exponent sums");
  sigma->add_option("--gen", sigma_gen, "Only this generator");
  sigma->callback([&] {
    const Alphabet alpha = alphabet_of(cfg.gens);
    const Word w = alpha.parse(word_text);
    Json j;
    if (!sigma_gen.empty()) {
      j["generator"] = sigma_gen;
      j["sigma"] = w.exponent_sum(alpha.id(sigma_gen));
    } else {
      Json s;
      for (std::size_t i = 0; i < alpha.size(); ++i) s[alpha.name(static_cast<int>(i))] = w.exponent_sum(static_cast<int>(i));
      j["sigma"] = std::move(s);
    }
    out(j, 0);
  });
  for (auto* sub : words->get_subcommands({})) sub->add_option("word", word_text, "Word text")->required();

  // subgroup
  auto* subgroup = app.add_subcommand("subgroup", "Finitely generated subgroups")->require_subcommand(1);
  std::string sub_gens;
  std::string other_gens;
  std::string sub_word;
  auto build = [&](const std::string& text, const Alphabet& alpha) {
    return SubgroupAutomaton::from_generators(alpha.size(), parse_list(text, alpha));
  };
  auto* member = subgroup->add_subcommand("member", "Membership with an expression in the generators");
  member->add_option("word", sub_word)->required();
  member->callback([&] {
    const Alphabet alpha = alphabet_of(cfg.gens);
    const auto h = build(sub_gens, alpha);
    const auto expr = h.express(alpha.parse(sub_word));
    Json j;
    j["member"] = expr.has_value();
    if (expr) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < h.basis().size(); ++i) names.push_back("g" + std::to_string(i + 1));
      j["expression"] = Alphabet(names).format(*expr);
    } else {
      j["expression"] = nullptr;
    }
    out(j, expr ? 0 : 1);
  });
  auto* inter = subgroup->add_subcommand("intersect", "Intersection of two subgroups");
  inter->add_option("--other", other_gens, "Generators of the second subgroup")->required();
  inter->callback([&] {
    const Alphabet alpha = alphabet_of(cfg.gens);
    const auto h = build(sub_gens, alpha).intersect(build(other_gens, alpha));
    const auto basis = h.nielsen_basis();
    Json j;
    j["rank"] = h.subgroup_rank();
    j["basis"] = words_to_json(basis, alpha);
    j["automaton"] = automaton_to_json(h, alpha);
    out(j, 0);
  });
  auto* coset = subgroup->add_subcommand("coset", "Shortlex right-coset representative");
  coset->add_option("word", sub_word)->required();
  coset->callback([&] {
    const Alphabet alpha = alphabet_of(cfg.gens);
    Json j;
    j["representative"] = alpha.format(build(sub_gens, alpha).coset_representative(alpha.parse(sub_word)));
    out(j, 0);
  });
  for (auto* sub : subgroup->get_subcommands({})) {
    sub->add_option("--subgroup", sub_gens, "Generators separated by ';'")->required();
  }

  // star
  auto* star = app.add_subcommand("star", "Mutual reduction")->require_subcommand(1);
  std::string set_text;
  std::string by_text;
  std::string input_file;
  std::string x_gen = "a";
  std::string y_gen = "b";
  auto* closure = star->add_subcommand("closure", "Symmetric closure of a set");
  closure->add_option("--set", set_text)->required();
  closure->callback([&] {
    const FreeGroup g(alphabet_of(cfg.gens));
    const auto sets = parse_sets(set_text, g.alphabet());
    Json j;
    j["closure"] = words_to_json(symmetric_closure(g, std::span<const Word>(sets.at(0))), g.alphabet());
    out(j, 0);
  });
  auto* conj = star->add_subcommand("conjugate", "Conjugate every element of a set");
  conj->add_option("--set", set_text)->required();
  conj->add_option("--by", by_text)->required();
  conj->callback([&] {
    const FreeGroup g(alphabet_of(cfg.gens));
    const auto sets = parse_sets(set_text, g.alphabet());
    Json j;
    j["conjugated"] = words_to_json(conjugate_set(g, std::span<const Word>(sets.at(0)), g.parse(by_text)), g.alphabet());
    out(j, 0);
  });
  auto* check = star->add_subcommand("check", "Bounded mutual-reduction check");
  check->add_option("--sets", set_text, "Sets as '{a, b};{a^2}'");
  check->add_option("--input", input_file, "JSON {\"sets\":[[...]],\"max_len\":n}");
  check->callback([&] {
    prepare();
    const FreeGroup g(alphabet_of(cfg.gens));
    std::vector<std::vector<Word>> sets;
    SearchOptions o = options();
    if (!input_file.empty()) {
      const Json j = parse_json(read_input(input_file));
      for (const auto& s : j.at("sets")) {
        std::vector<Word> ws;
        for (const auto& e : s) ws.push_back(g.parse(e.get<std::string>()));
        sets.push_back(std::move(ws));
      }
      if (j.contains("max_len")) o.max_len = j["max_len"].get<std::size_t>();
    } else {
      sets = parse_sets(set_text, g.alphabet());
    }
    const auto v = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), o);
    Json j = mutual_verdict_json(g, v);
    j["adjacency"] = cfg.cyclic ? "cyclic" : "linear";
    out(j, v.holds ? 0 : 1);
  });
  auto* wf = star->add_subcommand("witness-free", "Conjugators for a finite set in a free group");
  wf->add_option("--set", set_text)->required();
  wf->add_option("--x", x_gen);
  wf->add_option("--y", y_gen);
  wf->callback([&] {
    prepare();
    const FreeGroup g(alphabet_of(cfg.gens));
    const auto m = parse_sets(set_text, g.alphabet()).at(0);
    const auto x = star_witness_locally_free(m, g.alphabet().id(x_gen), g.alphabet().id(y_gen));
    std::vector<std::vector<Word>> sets;
    for (const auto& xi : x) sets.push_back(conjugate_set(g, std::span<const Word>(m), xi));
    const auto v = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), options());
    Json j;
    j["x"] = words_to_json(x, g.alphabet());
    j["check"] = mutual_verdict_json(g, v);
    out(j, v.holds ? 0 : 1);
  });

  // hnn
  auto* hnn = app.add_subcommand("hnn", "HNN extensions of free groups")->require_subcommand(1);
  std::string pres_file;
  std::string hnn_word;
  std::string elements;
  std::string g_text;
  std::string h_text;
  auto load_hnn = [&] { return hnn_from_json(parse_json(read_input(pres_file))); };
  auto* hred = hnn->add_subcommand("reduce", "Pinch removal");
  hred->callback([&] {
    const auto p = load_hnn();
    const auto r = britton_reduce(p, p.parse(hnn_word));
    Json j;
    j["reduced"] = p.format(r);
    j["t_length"] = r.t_length();
    out(j, 0);
  });
  auto* hnf = hnn->add_subcommand("normal", "Normal form");
  hnf->callback([&] {
    const auto p = load_hnn();
    const auto r = normal_form(p, p.parse(hnn_word));
    Json j;
    j["normal_form"] = p.format(r);
    j["t_length"] = r.t_length();
    out(j, 0);
  });
  auto* hid = hnn->add_subcommand("identity", "Word problem");
  hid->callback([&] {
    const auto p = load_hnn();
    Json j;
    j["identity"] = is_identity(p, p.parse(hnn_word));
    out(j, j["identity"].get<bool>() ? 0 : 1);
  });
  auto* hhyp = hnn->add_subcommand("hypotheses", "Search for g with trivial self-intersection of a conjugate");
  hhyp->callback([&] {
    const auto p = load_hnn();
    const auto h = theorem41_hypotheses(p, cfg.search_len);
    Json j;
    j["found"] = h.has_value();
    if (h) {
      j["g"] = p.base().format(h->g);
      j["side"] = std::string(1, h->side);
      j["outside"] = p.base().format(h->outside);
    }
    j["search_len"] = cfg.search_len;
    out(j, h ? 0 : 1);
  });
  auto* hwit = hnn->add_subcommand("witness", "Conjugators making conjugated copies of M mutually reduced");
  hwit->add_option("--elements", elements, "Elements of M separated by ';'")->required();
  hwit->add_option("--g", g_text, "Base word with a trivial self-intersecting conjugate");
  hwit->add_option("--outside", h_text, "Base word outside A and B");
  hwit->callback([&] {
    prepare();
    const auto p = load_hnn();
    const HnnGroup grp(p);
    std::vector<HnnWord> m;
    for (const auto& e : split(elements, ';')) m.push_back(normal_form(p, p.parse(e)));
    Word gw;
    Word hw;
    if (g_text.empty() || h_text.empty()) {
      const auto hyp = theorem41_hypotheses(p, cfg.search_len);
      if (!hyp) throw NotFoundAtBound("no suitable g up to length " + std::to_string(cfg.search_len));
      gw = hyp->g;
      hw = hyp->outside;
    }
    if (!g_text.empty()) gw = p.base().parse(g_text);
    if (!h_text.empty()) hw = p.base().parse(h_text);
    const auto wit = theorem41_witness(p, m, gw, hw);
    std::vector<std::vector<HnnWord>> sets;
    for (const auto& x : wit.x) sets.push_back(conjugate_set(grp, std::span<const HnnWord>(m), x));
    const auto v = check_mutually_reduced(grp, std::span<const std::vector<HnnWord>>(sets), options());
    Json j;
    j["q"] = wit.q;
    j["side"] = std::string(1, wit.side);
    j["x"] = elements_to_json(grp, std::span<const HnnWord>(wit.x));
    j["check"] = mutual_verdict_json(grp, v);
    out(j, v.holds ? 0 : 1);
  });
  for (auto* sub : hnn->get_subcommands({})) sub->add_option("presentation", pres_file, "Presentation JSON")->required();
  for (auto* sub : {hred, hnf, hid}) sub->add_option("word", hnn_word)->required();

  // amalgam
  auto* am = app.add_subcommand("amalgam", "Amalgamated free products of free groups")->require_subcommand(1);
  std::string am_word;
  std::string variant_text = "auto";
  std::string kind_text = "A";
  std::string a_text;
  std::string b_text;
  std::size_t m_value = 0;
  std::size_t count = 3;
  auto load_am = [&] { return amalgam_from_json(parse_json(read_input(pres_file))); };
  auto* ared = am->add_subcommand("reduce", "Normal form");
  ared->callback([&] {
    const auto p = load_am();
    const auto w = p.parse(am_word);
    Json j;
    j["normal_form"] = p.format(w);
    j["length"] = w.length();
    j["type"] = to_string(type_of(w));
    out(j, 0);
  });
  auto* atype = am->add_subcommand("type", "Syllable type");
  atype->callback([&] {
    const auto p = load_am();
    Json j;
    j["type"] = to_string(type_of(p.parse(am_word)));
    out(j, 0);
  });
  am->add_subcommand("dagger", "Search for a, a_* in A\\H and b in B\\H")->callback([&] {
    const auto p = load_am();
    Json j;
    try {
      const auto d = dagger_check(p, cfg.search_len);
      j["found"] = true;
      j["a"] = p.factor_alphabet(Factor::A).format(d.a);
      j["a_star"] = p.factor_alphabet(Factor::A).format(d.a_star);
      j["b"] = p.factor_alphabet(Factor::B).format(d.b);
      j["a_astar_outside_h"] = d.a_astar_outside_h;
      j["astar_a_outside_h"] = d.astar_a_outside_h;
      out(j, 0);
    } catch (const NotFoundAtBound& e) {
      j["found"] = false;
      j["reason"] = e.what();
      out(j, 1);
    }
  });
  auto* l45 = am->add_subcommand("lemma45", "Classify (a^-1 b)^m f (b^-1 a)^m");
  l45->add_option("--f", am_word, "The element f")->required();
  l45->add_option("--m", m_value, "Exponent m (default l(f) + 2)");
  l45->add_option("--a", a_text);
  l45->add_option("--b", b_text);
  l45->callback([&] {
    const auto p = load_am();
    const auto f = p.parse(am_word);
    Word a;
    Word b;
    if (a_text.empty() || b_text.empty()) {
      const auto d = dagger_check(p, cfg.search_len);
      a = d.a;
      b = d.b;
    }
    if (!a_text.empty()) a = p.factor_alphabet(Factor::A).parse(a_text);
    if (!b_text.empty()) b = p.factor_alphabet(Factor::B).parse(b_text);
    const auto r = lemma45_classify(p, a, b, m_value == 0 ? f.length() + 2 : m_value, f);
    Json j;
    j["kind"] = to_string(r.kind);
    j["w"] = p.format(r.w);
    j["w_length"] = r.w.length();
    if (r.kind == Lemma45Kind::Sandwich) {
      j["v"] = p.format(r.v);
      j["v_length"] = r.v.length();
    } else if (r.kind == Lemma45Kind::Power) {
      j["sign"] = r.sign;
      j["k"] = r.k;
    }
    out(j, r.kind == Lemma45Kind::Neither ? 1 : 0);
  });
  auto* awit = am->add_subcommand("witness", "Conjugators making conjugated copies of M mutually reduced");
  awit->add_option("--elements", elements, "Elements of M separated by ';'")->required();
  awit->add_option("--variant", variant_text, "direct, inverted or auto")->check(CLI::IsMember({"direct", "inverted", "auto"}));
  awit->callback([&] {
    prepare();
    const auto p = load_am();
    const AmalgamGroup grp(p);
    std::vector<AmalgamWord> m;
    for (const auto& e : split(elements, ';')) m.push_back(p.parse(e));
    const auto d = dagger_check(p, cfg.search_len);
    WitnessVariant variant = d.a_astar_outside_h ? WitnessVariant::Direct : WitnessVariant::Inverted;
    if (variant_text == "direct") variant = WitnessVariant::Direct;
    if (variant_text == "inverted") variant = WitnessVariant::Inverted;
    const auto wit = theorem44_witness(p, m, d, variant);
    std::vector<std::vector<AmalgamWord>> sets;
    for (const auto& x : wit.x) sets.push_back(conjugate_set(grp, std::span<const AmalgamWord>(m), x));
    const auto v = check_mutually_reduced(grp, std::span<const std::vector<AmalgamWord>>(sets), options());
    Json j;
    j["variant"] = variant == WitnessVariant::Direct ? "direct" : "inverted";
    j["l"] = wit.l;
    j["x"] = elements_to_json(grp, std::span<const AmalgamWord>(wit.x));
    j["check"] = mutual_verdict_json(grp, v);
    out(j, v.holds ? 0 : 1);
  });
  auto* fg = am->add_subcommand("free-gens", "Candidate free generators for a large stratum");
  fg->add_option("--kind", kind_text)->check(CLI::IsMember({"A", "B", "H"}));
  fg->add_option("--count", count)->check(CLI::PositiveNumber);
  fg->add_option("--elements", elements, "Stratum elements over the factor alphabet, ';' separated");
  fg->callback([&] {
    prepare();
    const auto p = load_am();
    const AmalgamGroup grp(p);
    const LargeKind kind = kind_text == "A" ? LargeKind::A : kind_text == "B" ? LargeKind::B : LargeKind::H;
    const auto d = dagger_check(p, cfg.search_len);
    std::vector<Word> elems = elements.empty() ? stratum_elements(p, kind, count, cfg.search_len)
                                               : parse_list(elements, p.factor_alphabet(kind == LargeKind::B ? Factor::B : Factor::A));
    const auto c = corollary46_generators(p, kind, elems, d);
    const auto rel = find_relation(grp, std::span<const AmalgamWord>(c.gens), cfg.max_len, budget());
    Json j;
    j["kind"] = to_string(kind);
    j["generators"] = elements_to_json(grp, std::span<const AmalgamWord>(c.gens));
    j["bound"] = cfg.max_len;
    j["relation"] = rel ? Json(rel->length()) : Json(nullptr);
    bool ok = !rel;
    if (kind == LargeKind::H) {
      const auto cert = free_generator_certificate(grp, std::span<const std::pair<AmalgamWord, AmalgamWord>>(c.pairing), options());
      j["certificate"] = mutual_verdict_json(grp, cert.mutual);
      ok = ok && cert.holds;
    }
    out(j, ok ? 0 : 1);
  });
  for (auto* sub : am->get_subcommands({})) sub->add_option("presentation", pres_file, "Presentation JSON")->required();
  for (auto* sub : {ared, atype}) sub->add_option("word", am_word)->required();

  // ring
  auto* ring = app.add_subcommand("ring", "Group-ring supports")->require_subcommand(1);
  std::string b_list;
  std::string x_list;
  std::string phi_text;
  std::array<std::string, 3> s_text;
  std::string t_text;
  std::size_t runs = 1;
  auto with_field = [&](auto&& body) {
    if (cfg.prime != 0) {
      body(PrimeField(cfg.prime));
    } else {
      body(RationalField{});
    }
  };
  auto* eps = ring->add_subcommand("epsilon", "eps(b) and eps(b) + 1");
  eps->add_option("--b", b_list, "b_1; b_2; b_3")->required();
  eps->add_option("--x", x_list, "x_1; x_2; x_3")->required();
  eps->add_option("--phi", phi_text, "Ring element, e.g. '2*a + -1/2*b'")->required();
  eps->callback([&] {
    const FreeGroup g(alphabet_of(cfg.gens));
    const auto bs = parse_list(b_list, g.alphabet());
    const auto xs = parse_list(x_list, g.alphabet());
    if (bs.size() != 3 || xs.size() != 3) throw StructureMismatch("need exactly three b_s and three x_t");
    with_field([&](const auto& field) {
      const auto phi = parse_ring(g, field, phi_text);
      const auto [e, e1] = epsilon(g, std::span<const Word, 3>(bs.data(), 3), std::span<const Word, 3>(xs.data(), 3), phi);
      Json j;
      j["field"] = field.name();
      j["eps"] = e.format();
      j["eps1"] = e1.format();
      j["support_eps"] = e.support_size();
      j["support_eps1"] = e1.support_size();
      out(j, 0);
    });
  });
  auto* l32 = ring->add_subcommand("lemma32", "Isolated products of (s1 u s2 u s3) x t");
  l32->add_option("--s1", s_text[0])->required();
  l32->add_option("--s2", s_text[1])->required();
  l32->add_option("--s3", s_text[2])->required();
  l32->add_option("--t", t_text)->required();
  l32->callback([&] {
    prepare();
    const FreeGroup g(alphabet_of(cfg.gens));
    std::array<std::vector<Word>, 3> s;
    for (std::size_t i = 0; i < 3; ++i) s[i] = parse_list(s_text[i], g.alphabet());
    const auto t = lemma32_table(g, s, parse_list(t_text, g.alphabet()), options());
    out(table_json(t, g), t.holds() ? 0 : 1);
  });
  auto* l33 = ring->add_subcommand("lemma33", "Isolated products of the union of X_i x S_i");
  l33->add_option("--s", set_text, "Sets '{f, f2};{f3}'")->required();
  l33->add_option("--x", x_list, "Triples '{x1, x2, x3};{...}'")->required();
  l33->callback([&] {
    prepare();
    const FreeGroup g(alphabet_of(cfg.gens));
    const auto s = parse_sets(set_text, g.alphabet());
    std::vector<std::array<Word, 3>> xs;
    for (const auto& tri : parse_sets(x_list, g.alphabet())) {
      if (tri.size() != 3) throw StructureMismatch("every X_i needs exactly three elements");
      xs.push_back({tri[0], tri[1], tri[2]});
    }
    const auto t = lemma33_table(g, s, xs, options());
    out(table_json(t, g), t.holds() ? 0 : 1);
  });
  auto* sb = ring->add_subcommand("support-bound", "Support bound on random instances");
  sb->add_option("--runs", runs)->check(CLI::PositiveNumber);
  sb->callback([&] {
    prepare();
    const FreeGroup g(Alphabet({"a", "b"}));
    with_field([&](const auto& field) {
      using F = std::decay_t<decltype(field)>;
      Rng rng(cfg.seed);
      SearchOptions o = options();
      o.max_len = std::min<std::size_t>(cfg.max_len, 4);
      Json rows = Json::array();
      bool all = true;
      for (std::size_t r = 0; r < runs; ++r) {
        const auto inst = random_support_instances(rng, g, field, 3);
        const auto rep = support_bound_experiment(g, std::span<const SupportInstance<FreeGroup, F>>(inst), o);
        Json row;
        row["run"] = r + 1;
        row["basis_elements"] = inst.size();
        row["supp_w1"] = rep.supp_w1;
        row["supp_w2"] = rep.supp_w2;
        row["supp_w"] = rep.supp_w;
        row["sum_m"] = rep.sum_m;
        row["sum_h"] = rep.sum_h;
        row["holds"] = rep.holds();
        all = all && rep.holds();
        rows.push_back(std::move(row));
      }
      Json j;
      j["seed"] = cfg.seed;
      j["field"] = field.name();
      j["check_len"] = o.max_len;
      j["holds"] = all;
      j["rows"] = std::move(rows);
      out(j, all ? 0 : 1);
    });
  });

  // experiment
  auto* exp = app.add_subcommand("experiment", "Seeded experiment suites")->require_subcommand(1);
  std::vector<std::string> suites{"lemma32", "lemma33", "locally_free", "support"};
  std::size_t exp_count = 0;
  auto* batch = exp->add_subcommand("batch", "Run suites and report a summary");
  batch->add_option("--suite", suites, "complete_family, inequality, planted, lemma32, lemma33, locally_free, hnn, amalgam, support")
      ->check(CLI::IsMember({"complete_family", "inequality", "planted", "lemma32", "lemma33", "locally_free", "hnn",
                             "amalgam", "support"}));
  batch->add_option("--count", exp_count, "Instances per suite (0 = suite default)");
  batch->callback([&] {
    prepare();
    SuiteConfig sc;
    sc.seed = cfg.seed;
    sc.max_len = cfg.max_len;
    Json rows = Json::array();
    Json reports = Json::array();
    bool all = true;
    auto n = [&](std::size_t d) { return exp_count == 0 ? d : exp_count; };
    for (const auto& s : suites) {
      SuiteResult r;
      if (s == "complete_family") r = suite_complete_family(sc);
      if (s == "inequality") r = suite_inequality(sc, 8, n(10000));
      if (s == "planted") r = suite_planted(sc, n(1000));
      if (s == "lemma32") r = suite_lemma32(sc, n(50));
      if (s == "lemma33") r = suite_lemma33(sc, n(50));
      if (s == "locally_free") r = suite_locally_free(sc, n(100));
      if (s == "hnn") r = suite_hnn(sc, 8, n(20), n(20));
      if (s == "amalgam") r = suite_amalgam(sc, n(50));
      if (s == "support") r = suite_support(sc, n(50));
      Json row;
      row["suite"] = r.name;
      row["seed"] = cfg.seed;
      row["pass"] = r.pass;
      rows.push_back(std::move(row));
      reports.push_back(r.report);
      all = all && r.pass;
    }
    Json j;
    j["seed"] = cfg.seed;
    j["pass"] = all;
    j["rows"] = std::move(rows);
    j["reports"] = std::move(reports);
    out(j, all ? 0 : 1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return code;
}
