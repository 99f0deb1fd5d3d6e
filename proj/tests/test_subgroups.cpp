#include <gtest/gtest.h>

#include <set>

#include "srkit/subgroups.hpp"
#include "test_util.hpp"

using namespace srkit;

namespace {

const Alphabet kAb({"a", "b"});
Word w(const char* s) { return kAb.parse(s); }

SubgroupAutomaton sub(std::initializer_list<const char*> gens) {
  std::vector<Word> ws;
  for (auto g : gens) ws.push_back(w(g));
  return SubgroupAutomaton::from_generators(2, ws);
}

// Every element of the subgroup reachable as a product of <= len basis letters.
std::set<Word> products(const std::vector<Word>& basis, std::size_t len) {
  std::set<Word> out;
  for (const auto& e : reduced_words_up_to(basis.size(), len)) out.insert(SubgroupAutomaton::substitute(e, basis));
  return out;
}

bool even_a_runs(const Word& x) {
  long run = 0;
  for (Letter l : x.letters()) {
    if (generator_of(l) == 0) {
      run += sign_of(l);
    } else {
      if (run % 2 != 0) return false;
      run = 0;
    }
  }
  return run % 2 == 0;
}

}  // namespace

TEST(Subgroups, FromGeneratorsExamples) {
  const auto h = sub({"a"});
  for (int k = -5; k <= 5; ++k) EXPECT_TRUE(h.contains(Word::generator(0, k == 0 ? 1 : k)));
  const auto triv = sub({});
  EXPECT_TRUE(triv.is_trivial());
  EXPECT_TRUE(triv.contains(Word{}));
  EXPECT_FALSE(triv.contains(w("a")));
  const auto h23 = sub({"a^2", "a^3"});
  EXPECT_TRUE(h23.contains(w("a")));
  EXPECT_FALSE(h23.basis_is_free());
  EXPECT_EQ(h23.subgroup_rank(), 1u);
}

TEST(Subgroups, ContainsExamples) {
  EXPECT_TRUE(sub({"a"}).contains(w("a^5")));
  EXPECT_FALSE(sub({"a"}).contains(w("b")));
  EXPECT_TRUE(sub({"a b a^-1"}).contains(w("a b^2 a^-1")));
}

TEST(Subgroups, IntersectExamples) {
  EXPECT_TRUE(sub({"a"}).intersect(sub({"b"})).is_trivial());
  const auto i = sub({"a^2"}).intersect(sub({"a^3"}));
  EXPECT_TRUE(i.same_subgroup(sub({"a^6"})));
  for (int k = 1; k <= 12; ++k) EXPECT_EQ(i.contains(Word::generator(0, k)), k % 6 == 0) << k;
  const auto h = sub({"a b", "b^2 a"});
  EXPECT_TRUE(h.intersect(h).same_subgroup(h));
}

TEST(Subgroups, ConjugateExamples) {
  EXPECT_TRUE(sub({"a"}).conjugate(Word{}).same_subgroup(sub({"a"})));
  const auto c = sub({"a"}).conjugate(w("b"));
  EXPECT_TRUE(c.same_subgroup(sub({"b^-1 a b"})));
  EXPECT_TRUE(c.contains(w("b^-1 a^2 b")));
  // a^-1 <h> a meets <h> trivially in F(a, h).
  const auto hh = SubgroupAutomaton::from_generators(2, std::vector<Word>{Word::generator(1)});
  EXPECT_TRUE(hh.conjugate(Word::generator(0)).intersect(hh).is_trivial());
}

TEST(Subgroups, CosetExamples) {
  EXPECT_EQ(sub({"a"}).coset_representative(w("a^3 b")), w("b"));
  EXPECT_TRUE(sub({"a"}).coset_representative(w("a^2")).is_identity());
  EXPECT_EQ(sub({}).coset_representative(w("b a^-1")), w("b a^-1"));
}

TEST(SubgroupsProperty, MembershipMatchesProductEnumeration) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Word> basis;
    const int r = 1 + static_cast<int>(rng.below(2));
    for (int i = 0; i < r; ++i) basis.push_back(testutil::nontrivial_word(rng, 2, 4));
    const auto h = SubgroupAutomaton::from_generators(2, basis);
    const auto elems = products(basis, 4);
    for (const auto& e : elems) {
      ASSERT_TRUE(h.contains(e));
      const auto expr = h.express(e);
      ASSERT_TRUE(expr.has_value());
      EXPECT_EQ(SubgroupAutomaton::substitute(*expr, h.basis()), e);
    }
    // Anything accepted among short words is certified by its expression.
    for (const auto& x : reduced_words_up_to(2, 5)) {
      const auto expr = h.express(x);
      EXPECT_EQ(expr.has_value(), h.contains(x));
      if (expr) EXPECT_EQ(SubgroupAutomaton::substitute(*expr, h.basis()), x);
    }
  }
}

TEST(SubgroupsProperty, MembershipNegativeOracle) {
  const auto h = sub({"a^2", "b"});
  for (const auto& x : reduced_words_up_to(2, 7)) EXPECT_EQ(h.contains(x), even_a_runs(x)) << kAb.format(x);
}

TEST(SubgroupsProperty, IntersectionIsPointwise) {
  Rng rng(6);
  for (int trial = 0; trial < 25; ++trial) {
    const auto h = SubgroupAutomaton::from_generators(
        2, std::vector<Word>{testutil::nontrivial_word(rng, 2, 3), testutil::nontrivial_word(rng, 2, 3)});
    const auto k = SubgroupAutomaton::from_generators(
        2, std::vector<Word>{testutil::nontrivial_word(rng, 2, 3), testutil::nontrivial_word(rng, 2, 3)});
    const auto i = h.intersect(k);
    for (const auto& x : reduced_words_up_to(2, 6)) EXPECT_EQ(i.contains(x), h.contains(x) && k.contains(x));
    for (const auto& b : i.nielsen_basis()) EXPECT_TRUE(h.contains(b) && k.contains(b));
  }
}

TEST(SubgroupsProperty, CosetRepresentativeIsShortlexLeast) {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto h = SubgroupAutomaton::from_generators(2, std::vector<Word>{testutil::nontrivial_word(rng, 2, 3)});
    const Word x = testutil::random_word(rng, 2, 5);
    const Word rep = h.coset_representative(x);
    EXPECT_TRUE(h.contains(x * rep.inverse()));
    std::optional<Word> best;
    for (const auto& u : reduced_words_up_to(2, x.length())) {
      if (h.contains(x * u.inverse())) {
        best = u;
        break;
      }
    }
    ASSERT_TRUE(best);
    EXPECT_EQ(rep, *best);
  }
}

TEST(SubgroupsProperty, AutomatonIsFoldedAndCanonical) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Word> basis{testutil::nontrivial_word(rng, 2, 5), testutil::nontrivial_word(rng, 2, 5)};
    const auto h = SubgroupAutomaton::from_generators(2, basis);
    std::set<std::pair<int, int>> out;
    std::set<std::pair<int, int>> in;
    for (const auto& e : h.edges()) {
      EXPECT_TRUE(out.insert({e.from, e.gen}).second);
      EXPECT_TRUE(in.insert({e.to, e.gen}).second);
    }
    std::swap(basis[0], basis[1]);
    basis[0] = basis[0].inverse();
    EXPECT_TRUE(h.same_subgroup(SubgroupAutomaton::from_generators(2, basis)));
  }
}
