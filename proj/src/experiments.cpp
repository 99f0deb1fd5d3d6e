#include "srkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <unordered_set>

#include "srkit/error.hpp"
#include "srkit/random.hpp"
#include "srkit/ring_lab.hpp"
#include "srkit/sr_family.hpp"
#include "srkit/star_check.hpp"

namespace srkit {

namespace {

Json sweep_json(const SweepReport& r) {
  Json j;
  j["instances"] = r.instances;
  j["with_cycle"] = r.with_cycle;
  j["criterion_mismatches"] = r.criterion_mismatches;
  j["inequality_violations"] = r.inequality_violations;
  j["empty_witness_violations"] = r.empty_witness_violations;
  j["invalid_certificates"] = r.invalid_certificates;
  j["budget_exhausted"] = r.budget_exhausted;
  return j;
}

Json header(const char* name, const SuiteConfig& cfg) {
  Json j;
  j["suite"] = name;
  j["seed"] = cfg.seed;
  j["max_len"] = cfg.max_len;
  return j;
}

SearchOptions options(const SuiteConfig& cfg) {
  SearchOptions o;
  o.max_len = cfg.max_len;
  o.parallel = cfg.parallel;
  return o;
}

// Pairwise recomputation of the isolated set, with products formed directly
// from the words rather than through the group model.
std::vector<std::size_t> isolated_by_brute_force(const std::vector<std::pair<Word, Word>>& pairs) {
  std::vector<Word> prods;
  for (const auto& [x, y] : pairs) prods.push_back(x * y);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < prods.size(); ++i) {
    bool unique = true;
    for (std::size_t j = 0; j < prods.size() && unique; ++j) unique = i == j || prods[i] != prods[j];
    if (unique) out.push_back(i);
  }
  return out;
}

struct TableTally {
  std::size_t instances = 0;
  std::size_t invalid = 0;
  std::size_t failures = 0;
  std::size_t brute_force_mismatches = 0;
  long min_margin = -1;

  void add(const PairTable<Word>& t) {
    ++instances;
    if (!t.holds()) ++failures;
    if (isolated_by_brute_force(t.pairs) != t.isolated) ++brute_force_mismatches;
    const long margin = static_cast<long>(t.isolated.size()) - static_cast<long>(t.threshold);
    min_margin = min_margin < 0 ? margin : std::min(min_margin, margin);
  }
  Json json() const {
    Json j;
    j["instances"] = instances;
    j["invalid"] = invalid;
    j["failures"] = failures;
    j["brute_force_mismatches"] = brute_force_mismatches;
    j["min_margin"] = min_margin;
    return j;
  }
  bool pass() const { return invalid == 0 && failures == 0 && brute_force_mismatches == 0; }
};

HnnWord random_hnn_word(Rng& rng, std::size_t max_len) {
  const std::size_t len = 1 + static_cast<std::size_t>(rng.below(max_len));
  std::vector<Letter> letters;
  while (letters.size() < len) {
    const Letter l = make_letter(static_cast<int>(rng.below(3)), rng.chance(0.5) ? 1 : -1);
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  HnnWord w;
  std::vector<Letter> current;
  for (Letter l : letters) {
    if (generator_of(l) == 2) {
      (w.syllables.empty() ? w.g0 : w.syllables.back().g) = Word::from_letters(current);
      current.clear();
      w.syllables.push_back({sign_of(l), {}});
    } else {
      current.push_back(l);
    }
  }
  (w.syllables.empty() ? w.g0 : w.syllables.back().g) = Word::from_letters(current);
  return w;
}

std::vector<Word> outside_pool(const AmalgamPresentation& p, Factor f, std::size_t len) {
  std::vector<Word> out;
  for (const auto& w : reduced_words_up_to(p.factor_alphabet(f).size(), len)) {
    if (!w.is_identity() && !p.in_h(f, w)) out.push_back(w);
  }
  return out;
}

AmalgamWord random_amalgam_word(Rng& rng, const AmalgamPresentation& p, const std::vector<Word>& pool_a,
                                const std::vector<Word>& pool_b, std::size_t max_syllables) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_syllables));
  Factor f = rng.chance(0.5) ? Factor::A : Factor::B;
  std::vector<AmalgamSyllable> raw;
  for (std::size_t i = 0; i < n; ++i, f = other(f)) raw.push_back({f, rng.pick(f == Factor::A ? pool_a : pool_b)});
  return p.reduce(raw);
}

}  // namespace

AmalgamPresentation fixed_amalgam(int which) {
  if (which == 0) {
    return AmalgamPresentation(Alphabet({"a", "h"}), Alphabet({"b", "k"}), {Word::generator(1)}, {Word::generator(1)});
  }
  return AmalgamPresentation(Alphabet({"a", "c"}), Alphabet({"b"}), {Word::generator(1)}, {Word::generator(0, 2)});
}

SuiteResult suite_complete_family(const SuiteConfig& cfg, int max_n) {
  Json j = header("complete_family", cfg);
  j["max_vertices"] = max_n;
  Json per_n = Json::array();
  for (int n = 1; n <= max_n; ++n) per_n.push_back(complete_family(n).size());
  j["members_per_size"] = std::move(per_n);
  const auto r = sweep_complete_family(1, max_n, cfg.parallel);
  j["sweep"] = sweep_json(r);
  const bool pass = r.instances > 0 && r.criterion_mismatches == 0 && r.invalid_certificates == 0 && r.budget_exhausted == 0;
  j["pass"] = pass;
  return {"complete_family", pass, std::move(j)};
}

SuiteResult suite_inequality(const SuiteConfig& cfg, int max_n, std::size_t random_count, int random_max_n) {
  Json j = header("inequality", cfg);
  const auto fam = sweep_complete_family(1, max_n, cfg.parallel);
  const auto rnd = sweep_random_graphs(cfg.seed, random_count, random_max_n, cfg.parallel);
  j["family"] = sweep_json(fam);
  j["random"] = sweep_json(rnd);
  const bool pass = fam.inequality_violations == 0 && fam.empty_witness_violations == 0 && rnd.empty_witness_violations == 0 &&
                    rnd.invalid_certificates == 0 && fam.budget_exhausted == 0 && rnd.budget_exhausted == 0 &&
                    rnd.instances == random_count;
  j["pass"] = pass;
  return {"inequality", pass, std::move(j)};
}

SuiteResult suite_planted(const SuiteConfig& cfg, std::size_t count) {
  Json j = header("planted", cfg);
  const auto r = sweep_planted(cfg.seed, count, cfg.parallel);
  j["instances"] = r.instances;
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["cycles_found"] = r.cycles_found;
  const bool pass = r.instances == count && r.hypotheses_hold == count && r.cycles_found == count;
  j["pass"] = pass;
  return {"planted", pass, std::move(j)};
}

SuiteResult suite_lemma32(const SuiteConfig& cfg, std::size_t count) {
  const FreeGroup g(Alphabet({"a", "b"}));
  Rng rng(cfg.seed);
  TableTally tally;
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = random_lemma32_instance(rng);
    try {
      tally.add(lemma32_table(g, inst.s, inst.t, options(cfg)));
    } catch (const HypothesisUnverified&) {
      ++tally.invalid;
    }
  }
  Json j = header("lemma32", cfg);
  j.update(tally.json());
  j["pass"] = tally.pass();
  return {"lemma32", tally.pass(), std::move(j)};
}

SuiteResult suite_lemma33(const SuiteConfig& cfg, std::size_t count) {
  const FreeGroup g(Alphabet({"a", "b"}));
  Rng rng(cfg.seed);
  TableTally tally;
  for (std::size_t i = 0; i < count; ++i) {
    const auto inst = random_lemma33_instance(rng);
    try {
      tally.add(lemma33_table(g, inst.s, inst.x, options(cfg)));
    } catch (const HypothesisUnverified&) {
      ++tally.invalid;
    }
  }
  Json j = header("lemma33", cfg);
  j.update(tally.json());
  j["pass"] = tally.pass();
  return {"lemma33", tally.pass(), std::move(j)};
}

SuiteResult suite_locally_free(const SuiteConfig& cfg, std::size_t count) {
  const FreeGroup g(Alphabet({"a", "b"}));
  Rng rng(cfg.seed);
  std::size_t counterexamples = 0;
  std::size_t budget = 0;
  std::uint64_t products = 0;
  Json first_failure = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    const auto m = random_distinct_words(rng, 2, 1 + static_cast<std::size_t>(rng.below(3)), 4);
    const auto x = star_witness_locally_free(m, 0, 1);
    std::vector<std::vector<Word>> sets;
    for (const auto& xi : x) sets.push_back(conjugate_set(g, std::span<const Word>(m), xi));
    try {
      const auto v = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), options(cfg));
      products += v.products;
      if (!v.holds) {
        ++counterexamples;
        if (first_failure.is_null()) {
          first_failure["m"] = words_to_json(m, g.alphabet());
          first_failure["verdict"] = mutual_verdict_json(g, v);
        }
      }
    } catch (const BudgetExceeded&) {
      ++budget;
    }
  }
  Json j = header("locally_free", cfg);
  j["instances"] = count;
  j["counterexamples"] = counterexamples;
  j["budget_exhausted"] = budget;
  j["products"] = products;
  j["first_failure"] = std::move(first_failure);
  const bool pass = counterexamples == 0 && budget == 0;
  j["pass"] = pass;
  return {"locally_free", pass, std::move(j)};
}

SuiteResult suite_hnn(const SuiteConfig& cfg, std::size_t exhaustive_len, std::size_t presentations,
                      std::size_t witnesses) {
  Json j = header("hnn", cfg);
  const Alphabet base({"a", "b"});
  bool pass = true;

  // A = B = 1: the extension is F(a, b) * <t>.
  {
    const HnnPresentation p0(base, {}, {});
    std::atomic<std::size_t> mismatches{0};
    std::size_t words = 0;
    for (std::size_t len = 0; len <= exhaustive_len; ++len) {
      std::size_t total = 1;
      for (std::size_t i = 0; i < len; ++i) total *= 6;
      words += total;
      const auto n = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static) if (cfg.parallel)
      for (std::ptrdiff_t idx = 0; idx < n; ++idx) {
        std::vector<Letter> letters(len);
        auto code = static_cast<std::size_t>(idx);
        for (std::size_t i = 0; i < len; ++i, code /= 6) {
          letters[i] = make_letter(static_cast<int>(code % 6 / 2), code % 2 == 0 ? 1 : -1);
        }
        if (is_identity(p0, p0.from_letters(letters)) != Word::from_letters(letters).is_identity()) ++mismatches;
      }
    }
    Json e;
    e["max_len"] = exhaustive_len;
    e["words"] = words;
    e["mismatches"] = mismatches.load();
    pass = pass && mismatches == 0;
    j["degenerate"] = std::move(e);
  }

  Rng rng(cfg.seed);
  auto random_presentation = [&](std::size_t max_rank) {
    for (;;) {
      const std::size_t r = 1 + static_cast<std::size_t>(rng.below(max_rank));
      try {
        return HnnPresentation(base, random_distinct_words(rng, 2, r, 3), random_distinct_words(rng, 2, r, 3));
      } catch (const RedundantBasis&) {
      }
    }
  };

  {
    std::size_t failures = 0;
    for (std::size_t i = 0; i < presentations; ++i) {
      const auto p = random_presentation(2);
      std::vector<Letter> expr;
      const std::size_t len = 1 + static_cast<std::size_t>(rng.below(4));
      while (expr.size() < len) {
        const Letter l = make_letter(static_cast<int>(rng.below(p.a().basis().size())), rng.chance(0.5) ? 1 : -1);
        if (!expr.empty() && expr.back() == -l) continue;
        expr.push_back(l);
      }
      const Word a = SubgroupAutomaton::substitute(Word::from_letters(expr), p.a().basis());
      HnnWord w = concat(p.stable(-1), p.base_element(a));
      w = concat(concat(w, p.stable(1)), p.base_element(p.phi(a).inverse()));
      const HnnWord r = britton_reduce(p, w);
      if (!(r.syllables.empty() && r.g0.is_identity()) || !is_identity(p, w)) ++failures;
    }
    Json e;
    e["presentations"] = presentations;
    e["failures"] = failures;
    pass = pass && failures == 0;
    j["conjugation"] = std::move(e);
  }

  {
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::size_t counterexamples = 0;
    std::size_t budget = 0;
    std::uint64_t products = 0;
    while (checked < witnesses) {
      const auto p = random_presentation(1);
      const auto hyp = theorem41_hypotheses(p, 3);
      if (!hyp) {
        ++skipped;
        continue;
      }
      const HnnGroup g(p);
      std::vector<HnnWord> m;
      std::unordered_set<std::vector<Letter>, KeyHash> seen;
      const std::size_t k = 1 + static_cast<std::size_t>(rng.below(3));
      while (m.size() < k) {
        HnnWord w = normal_form(p, random_hnn_word(rng, 4));
        if (g.is_identity(w) || !seen.insert(g.key(w)).second) continue;
        m.push_back(std::move(w));
      }
      const auto wit = theorem41_witness(p, m, hyp->g, hyp->outside);
      std::vector<std::vector<HnnWord>> sets;
      for (const auto& x : wit.x) sets.push_back(conjugate_set(g, std::span<const HnnWord>(m), x));
      ++checked;
      try {
        const auto v = check_mutually_reduced(g, std::span<const std::vector<HnnWord>>(sets), options(cfg));
        products += v.products;
        if (!v.holds) ++counterexamples;
      } catch (const BudgetExceeded&) {
        ++budget;
      }
    }
    Json e;
    e["instances"] = checked;
    e["skipped_presentations"] = skipped;
    e["counterexamples"] = counterexamples;
    e["budget_exhausted"] = budget;
    e["products"] = products;
    pass = pass && counterexamples == 0 && budget == 0;
    j["witness"] = std::move(e);
  }
  j["pass"] = pass;
  return {"hnn", pass, std::move(j)};
}

SuiteResult suite_amalgam(const SuiteConfig& cfg, std::size_t witnesses) {
  Json j = header("amalgam", cfg);
  bool pass = true;
  const std::array<AmalgamPresentation, 2> ps{fixed_amalgam(0), fixed_amalgam(1)};
  std::array<DaggerWitness, 2> ds{dagger_check(ps[0], 4), dagger_check(ps[1], 4)};

  Json dichotomy = Json::array();
  for (std::size_t pi = 0; pi < 2; ++pi) {
    const auto& p = ps[pi];
    const auto pool_a = outside_pool(p, Factor::A, 2);
    const auto pool_b = outside_pool(p, Factor::B, 2);
    std::vector<AmalgamWord> fs;
    for (const auto& w : reduced_words_up_to(p.factor_alphabet(Factor::A).size(), 2)) {
      if (!w.is_identity() && p.in_h(Factor::A, w)) fs.push_back(p.element(Factor::A, w));
    }
    for (std::size_t n = 1; n <= 3; ++n) {
      for (Factor start : {Factor::A, Factor::B}) {
        std::vector<AmalgamSyllable> raw(n, {start, {}});
        auto rec = [&](auto&& self, std::size_t i, Factor f) -> void {
          if (i == n) {
            fs.push_back(p.reduce(raw));
            return;
          }
          for (const auto& u : f == Factor::A ? pool_a : pool_b) {
            raw[i] = {f, u};
            self(self, i + 1, other(f));
          }
        };
        rec(rec, 0, start);
      }
    }
    std::size_t sandwich = 0;
    std::size_t power = 0;
    std::size_t neither = 0;
    std::size_t recheck_failures = 0;
    std::size_t max_k = 0;
    const AmalgamWord x = p.reduce(std::vector<AmalgamSyllable>{{Factor::A, ds[pi].a.inverse()}, {Factor::B, ds[pi].b}});
    for (const auto& f : fs) {
      const auto r = lemma45_classify(p, ds[pi].a, ds[pi].b, f.length() + 2, f);
      if (r.kind == Lemma45Kind::Sandwich) {
        ++sandwich;
        if (p.multiply(x, p.multiply(r.v, p.inverse(x))) != r.w || r.v.syllables.empty()) ++recheck_failures;
      } else if (r.kind == Lemma45Kind::Power) {
        ++power;
        max_k = std::max(max_k, r.k);
      } else {
        ++neither;
      }
    }
    Json e;
    e["presentation"] = pi + 1;
    e["elements"] = fs.size();
    e["sandwich"] = sandwich;
    e["power"] = power;
    e["neither"] = neither;
    e["max_power"] = max_k;
    e["recheck_failures"] = recheck_failures;
    pass = pass && neither == 0 && recheck_failures == 0;
    dichotomy.push_back(std::move(e));
  }
  j["lemma45"] = std::move(dichotomy);

  {
    Rng rng(cfg.seed);
    std::size_t counterexamples = 0;
    std::size_t budget = 0;
    std::uint64_t products = 0;
    for (std::size_t i = 0; i < witnesses; ++i) {
      const std::size_t pi = i % 2;
      const auto& p = ps[pi];
      const AmalgamGroup g(p);
      const auto pool_a = outside_pool(p, Factor::A, 2);
      const auto pool_b = outside_pool(p, Factor::B, 2);
      std::vector<AmalgamWord> m;
      std::unordered_set<std::vector<Letter>, KeyHash> seen;
      const std::size_t k = 1 + static_cast<std::size_t>(rng.below(3));
      while (m.size() < k) {
        auto w = random_amalgam_word(rng, p, pool_a, pool_b, 3);
        if (seen.insert(g.key(w)).second) m.push_back(std::move(w));
      }
      const auto variant = ds[pi].a_astar_outside_h ? WitnessVariant::Direct : WitnessVariant::Inverted;
      const auto wit = theorem44_witness(p, m, ds[pi], variant);
      std::vector<std::vector<AmalgamWord>> sets;
      for (const auto& x : wit.x) sets.push_back(conjugate_set(g, std::span<const AmalgamWord>(m), x));
      try {
        const auto v = check_mutually_reduced(g, std::span<const std::vector<AmalgamWord>>(sets), options(cfg));
        products += v.products;
        if (!v.holds) ++counterexamples;
      } catch (const BudgetExceeded&) {
        ++budget;
      }
    }
    Json e;
    e["instances"] = witnesses;
    e["counterexamples"] = counterexamples;
    e["budget_exhausted"] = budget;
    e["products"] = products;
    pass = pass && counterexamples == 0 && budget == 0;
    j["witness"] = std::move(e);
  }

  {
    Json gens = Json::array();
    for (std::size_t pi = 0; pi < 2; ++pi) {
      const AmalgamGroup g(ps[pi]);
      for (LargeKind kind : {LargeKind::A, LargeKind::B, LargeKind::H}) {
        const auto elems = stratum_elements(ps[pi], kind, 3, 4);
        const auto c = corollary46_generators(ps[pi], kind, elems, ds[pi]);
        const auto rel = find_relation(g, std::span<const AmalgamWord>(c.gens), cfg.max_len);
        Json e;
        e["presentation"] = pi + 1;
        e["kind"] = to_string(kind);
        e["generators"] = elements_to_json(g, std::span<const AmalgamWord>(c.gens));
        e["relation"] = rel ? Json(rel->length()) : Json(nullptr);
        bool ok = !rel;
        if (kind == LargeKind::H) {
          const auto cert = free_generator_certificate(
              g, std::span<const std::pair<AmalgamWord, AmalgamWord>>(c.pairing), options(cfg));
          e["certificate"] = cert.holds;
          ok = ok && cert.holds;
        }
        pass = pass && ok;
        gens.push_back(std::move(e));
      }
    }
    j["free_generators"] = std::move(gens);
  }
  j["pass"] = pass;
  return {"amalgam", pass, std::move(j)};
}

SuiteResult suite_support(const SuiteConfig& cfg, std::size_t runs, std::size_t support_len) {
  const FreeGroup g(Alphabet({"a", "b"}));
  const RationalField field;
  Rng rng(cfg.seed);
  std::size_t invalid = 0;
  std::size_t below_two = 0;
  std::size_t chain_failures = 0;
  std::size_t min_support = SIZE_MAX;
  std::array<std::size_t, 3> by_size{};
  SearchOptions opt = options(cfg);
  opt.max_len = support_len;
  for (std::size_t r = 0; r < runs; ++r) {
    const auto inst = random_support_instances(rng, g, field, 3);
    ++by_size[inst.size() - 1];
    try {
      const auto rep = support_bound_experiment(g, std::span<const SupportInstance<FreeGroup, RationalField>>(inst), opt);
      if (rep.supp_w < 2) ++below_two;
      if (!rep.holds()) ++chain_failures;
      for (const auto& ir : rep.instances) {
        if (!ir.m_b_exceeds_h) ++chain_failures;
      }
      min_support = std::min(min_support, rep.supp_w);
    } catch (const HypothesisUnverified&) {
      ++invalid;
    }
  }
  Json j = header("support", cfg);
  j["support_len"] = support_len;
  j["runs"] = runs;
  j["runs_by_basis_size"] = by_size;
  j["invalid"] = invalid;
  j["below_two"] = below_two;
  j["chain_failures"] = chain_failures;
  j["min_support"] = min_support == SIZE_MAX ? Json(nullptr) : Json(min_support);
  const bool pass = invalid == 0 && below_two == 0 && chain_failures == 0;
  j["pass"] = pass;
  return {"support", pass, std::move(j)};
}

}  // namespace srkit
