#include <gtest/gtest.h>

#include <set>

#include "srkit/error.hpp"
#include "srkit/star_check.hpp"
#include "srkit/words.hpp"
#include "test_util.hpp"

using namespace srkit;

namespace {

FreeGroup f2() { return FreeGroup(Alphabet({"a", "b"})); }

std::vector<Word> parse_all(const FreeGroup& g, std::initializer_list<const char*> xs) {
  std::vector<Word> out;
  for (auto x : xs) out.push_back(g.parse(x));
  return out;
}

using Sets = std::vector<std::vector<Word>>;

// Plain enumeration of every sequence of length k, reduction by stack.
// Returns the shortest length with a counterexample, or 0.
std::size_t naive_shortest(const Sets& sets, std::size_t max_len, bool cyclic) {
  std::vector<std::set<std::vector<Letter>>> closure;
  std::vector<std::vector<Letter>> pool;
  std::set<std::vector<Letter>> seen;
  for (const auto& s : sets) {
    std::set<std::vector<Letter>> c;
    for (const auto& w : s) {
      std::vector<Letter> x(w.letters().begin(), w.letters().end());
      std::vector<Letter> xi;
      for (auto it = x.rbegin(); it != x.rend(); ++it) xi.push_back(-*it);
      for (const auto& y : {x, xi}) {
        c.insert(y);
        if (seen.insert(y).second) pool.push_back(y);
      }
    }
    closure.push_back(c);
  }
  auto clash = [&](std::size_t i, std::size_t j) {
    for (const auto& c : closure) {
      if (c.count(pool[i]) && c.count(pool[j])) return true;
    }
    return false;
  };
  for (std::size_t k = 2; k <= max_len; ++k) {
    std::vector<std::size_t> idx(k, 0);
    for (;;) {
      bool ok = true;
      for (std::size_t i = 0; i + 1 < k && ok; ++i) ok = !clash(idx[i], idx[i + 1]);
      if (ok && cyclic) ok = !clash(idx[k - 1], idx[0]);
      if (ok) {
        std::vector<Letter> raw;
        for (auto i : idx) raw.insert(raw.end(), pool[i].begin(), pool[i].end());
        if (testutil::stack_reduce(raw).empty()) return k;
      }
      std::size_t p = 0;
      while (p < k && ++idx[p] == pool.size()) idx[p++] = 0;
      if (p == k) break;
    }
  }
  return 0;
}

Sets random_sets(Rng& rng) {
  Sets sets(static_cast<std::size_t>(rng.range(1, 3)));
  for (auto& s : sets) {
    const int count = rng.range(1, 2);
    for (int i = 0; i < count; ++i) s.push_back(testutil::nontrivial_word(rng, 2, 3));
  }
  return sets;
}

}  // namespace

TEST(StarCheck, SymmetricClosureExamples) {
  const auto g = f2();
  auto m = parse_all(g, {"a"});
  EXPECT_EQ(symmetric_closure(g, std::span<const Word>(m)), parse_all(g, {"a", "a^-1"}));
  m = parse_all(g, {"a", "a^-1"});
  EXPECT_EQ(symmetric_closure(g, std::span<const Word>(m)), parse_all(g, {"a", "a^-1"}));
  m = parse_all(g, {"a b"});
  EXPECT_EQ(symmetric_closure(g, std::span<const Word>(m)), parse_all(g, {"a b", "b^-1 a^-1"}));
}

TEST(StarCheck, ConjugateSetExamples) {
  const auto g = f2();
  auto m = parse_all(g, {"a"});
  EXPECT_EQ(conjugate_set(g, std::span<const Word>(m), g.parse("b")), parse_all(g, {"b^-1 a b"}));
  EXPECT_EQ(conjugate_set(g, std::span<const Word>(m), Word{}), m);
  m = parse_all(g, {"a", "b"});
  EXPECT_EQ(conjugate_set(g, std::span<const Word>(m), g.parse("a")), parse_all(g, {"a", "a^-1 b a"}));
}

TEST(StarCheck, FreeProductHoldsToEight) {
  const auto g = f2();
  const Sets sets{parse_all(g, {"a"}), parse_all(g, {"b"})};
  SearchOptions opt;
  opt.max_len = 8;
  const auto v = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
  EXPECT_TRUE(v.holds);
  EXPECT_EQ(v.bound, 8u);
  EXPECT_TRUE(v.witness.empty());
}

TEST(StarCheck, PowersOfOneGeneratorFail) {
  const FreeGroup g(Alphabet({"a"}));
  const Sets sets{parse_all(g, {"a"}), parse_all(g, {"a^2"})};
  SearchOptions opt;
  opt.max_len = 4;
  const auto v = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
  ASSERT_FALSE(v.holds);
  EXPECT_TRUE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(v.witness)));
  EXPECT_EQ(v.witness.size(), 3u);
  // The four-factor sequence a^2 a^-1 a^-2 a is also a valid counterexample.
  const auto alt = parse_all(g, {"a^2", "a^-1", "a^-2", "a"});
  EXPECT_TRUE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(alt)));
}

TEST(StarCheck, SingleSetIsVacuous) {
  const FreeGroup g(Alphabet({"a"}));
  const Sets sets{parse_all(g, {"a"})};
  SearchOptions opt;
  opt.max_len = 4;
  EXPECT_TRUE(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt).holds);
}

TEST(StarCheck, Errors) {
  const auto g = f2();
  Sets sets{parse_all(g, {"a"}), {}};
  EXPECT_THROW(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets)), EmptySet);
  sets = {parse_all(g, {"a"}), {Word{}}};
  EXPECT_THROW(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets)), PreconditionViolated);
  sets = {parse_all(g, {"a"}), parse_all(g, {"b"})};
  SearchOptions opt;
  opt.max_len = 1;
  EXPECT_THROW(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt), PreconditionViolated);
  opt.max_len = 8;
  opt.budget = 10;
  EXPECT_THROW(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt), BudgetExceeded);
  EXPECT_THROW(reference::check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt), BudgetExceeded);
}

TEST(StarCheck, VerifyRejectsBadWitnesses) {
  const auto g = f2();
  const Sets sets{parse_all(g, {"a"}), parse_all(g, {"a b"})};
  const auto same_set = parse_all(g, {"a", "a^-1"});
  EXPECT_FALSE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(same_set)));
  const auto not_one = parse_all(g, {"a", "a b"});
  EXPECT_FALSE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(not_one)));
  const auto outside = parse_all(g, {"b", "b^-1"});
  EXPECT_FALSE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(outside)));
  const auto stray = parse_all(g, {"a", "a b", "b^-1", "a^-1"});
  EXPECT_FALSE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(stray)));
}

TEST(StarCheck, CyclicAdjacencyIsStricter) {
  const FreeGroup g(Alphabet({"a"}));
  const Sets sets{parse_all(g, {"a"}), parse_all(g, {"a^2"})};
  SearchOptions opt;
  opt.max_len = 4;
  opt.adjacency = Adjacency::Cyclic;
  const auto v = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness.size() % 2, 0u);
  EXPECT_TRUE(verify_counterexample(g, std::span<const std::vector<Word>>(sets), std::span<const Word>(v.witness),
                                    Adjacency::Cyclic));
}

TEST(StarCheck, LocallyFreeWitnessExamples) {
  const auto g = f2();
  const auto m1 = parse_all(g, {"b"});
  const auto x = star_witness_locally_free(m1, 0, 1);
  EXPECT_EQ(x[0], g.parse("a^3 b a^3"));
  EXPECT_EQ(x[1], g.parse("a^4 b a^4"));
  EXPECT_EQ(x[2], g.parse("a^5 b a^5"));
  const auto m2 = parse_all(g, {"a", "b"});
  EXPECT_EQ(star_witness_locally_free(m2, 0, 1), x);
  const auto m3 = parse_all(g, {"a b a^-1"});
  EXPECT_EQ(star_witness_locally_free(m3, 0, 1)[0], g.parse("a^7 b a^7"));
  EXPECT_THROW(star_witness_locally_free(std::span<const Word>{}, 0, 1), EmptySet);
  EXPECT_THROW(star_witness_locally_free(m1, 0, 0), PreconditionViolated);

  for (const auto* m : {&m1, &m2}) {
    const auto xs = star_witness_locally_free(*m, 0, 1);
    Sets sets;
    for (const auto& xi : xs) sets.push_back(conjugate_set(g, std::span<const Word>(*m), xi));
    EXPECT_TRUE(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets)).holds);
  }
}

TEST(StarCheck, RelationsAndCertificates) {
  const auto g = f2();
  const auto gens = parse_all(g, {"a b", "b a"});
  EXPECT_FALSE(find_relation(g, std::span<const Word>(gens), 6));
  const auto dup = parse_all(g, {"a", "a"});
  const auto rel = find_relation(g, std::span<const Word>(dup), 4);
  ASSERT_TRUE(rel);
  EXPECT_EQ(rel->length(), 2u);

  std::vector<std::pair<Word, Word>> single{{g.parse("a"), g.parse("b")}};
  auto v = free_generator_certificate(g, std::span<const std::pair<Word, Word>>(single));
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.relation);

  // z_1 = z_2 = a.
  std::vector<std::pair<Word, Word>> degenerate{{g.parse("a b"), g.parse("b")}, {g.parse("a^2 b"), g.parse("a b")}};
  v = free_generator_certificate(g, std::span<const std::pair<Word, Word>>(degenerate));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.relation);
  EXPECT_EQ(v.z[0], v.z[1]);

  std::vector<std::pair<Word, Word>> bad{{g.parse("a"), Word{}}};
  EXPECT_THROW(free_generator_certificate(g, std::span<const std::pair<Word, Word>>(bad)), StructureMismatch);
  const std::vector<Word> wrong_m1{g.parse("b")};
  EXPECT_THROW(free_generator_certificate(g, std::span<const std::pair<Word, Word>>(single), {}, &wrong_m1),
               StructureMismatch);
}

TEST(StarCheckProperty, ParallelMatchesReferenceAndNaive) {
  const auto g = f2();
  Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto sets = random_sets(rng);
    SearchOptions opt;
    opt.max_len = 4;
    opt.adjacency = rng.chance(0.3) ? Adjacency::Cyclic : Adjacency::Linear;
    const auto fast = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
    const auto ref = reference::check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
    ASSERT_EQ(fast.holds, ref.holds);
    EXPECT_EQ(fast.witness, ref.witness);
    EXPECT_EQ(fast.witness_sets, ref.witness_sets);
    const auto k = naive_shortest(sets, opt.max_len, opt.adjacency == Adjacency::Cyclic);
    ASSERT_EQ(fast.holds, k == 0);
    if (!fast.holds) {
      EXPECT_EQ(fast.witness.size(), k);
      EXPECT_TRUE(verify_counterexample(g, std::span<const std::vector<Word>>(sets),
                                        std::span<const Word>(fast.witness), opt.adjacency));
    }
  }
}

TEST(StarCheckProperty, CounterexamplesPersistAtLargerBounds) {
  const auto g = f2();
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const auto sets = random_sets(rng);
    SearchOptions opt;
    opt.max_len = 3;
    const auto small = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
    opt.max_len = 5;
    const auto large = check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt);
    if (!small.holds) {
      ASSERT_FALSE(large.holds);
      EXPECT_EQ(small.witness, large.witness);
    }
  }
}

TEST(StarCheckProperty, ConjugationPreservesCardinality) {
  const auto g = f2();
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    std::vector<Word> m;
    for (int j = rng.range(1, 4); j > 0; --j) m.push_back(testutil::nontrivial_word(rng, 2, 4));
    const auto x = testutil::random_word(rng, 2, 4);
    const auto c = conjugate_set(g, std::span<const Word>(m), x);
    ASSERT_EQ(c.size(), m.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
      EXPECT_FALSE(c[j].is_identity());
      EXPECT_EQ(c[j], m[j].conjugate_by(x));
    }
  }
}

TEST(StarCheckProperty, LocallyFreeWitnessOnRandomSets) {
  const auto g = f2();
  Rng rng(34);
  for (int i = 0; i < 25; ++i) {
    std::vector<Word> m;
    for (int j = rng.range(1, 3); j > 0; --j) m.push_back(testutil::nontrivial_word(rng, 2, 4));
    const auto xs = star_witness_locally_free(m, 0, 1);
    Sets sets;
    for (const auto& xi : xs) sets.push_back(conjugate_set(g, std::span<const Word>(m), xi));
    SearchOptions opt;
    opt.max_len = 4;
    EXPECT_TRUE(check_mutually_reduced(g, std::span<const std::vector<Word>>(sets), opt).holds);
  }
}
