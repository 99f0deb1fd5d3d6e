#include <gtest/gtest.h>

#include "srkit/error.hpp"
#include "srkit/words.hpp"
#include "test_util.hpp"

using namespace srkit;

namespace {

const Alphabet kAbt({"a", "b", "t"});

Word w(const char* s) { return kAbt.parse(s); }

}  // namespace

TEST(Words, ReduceExamples) {
  EXPECT_EQ(w("a a^-1 b"), w("b"));
  EXPECT_TRUE(w("").is_identity());
  EXPECT_TRUE(w("1").is_identity());
  EXPECT_TRUE(w("a b b^-1 a^-1").is_identity());
  EXPECT_EQ(kAbt.format(w("a^3 b^-2")), "a a a b^-1 b^-1");
}

TEST(Words, GroupOperations) {
  const FreeGroup g(kAbt);
  EXPECT_TRUE(g.multiply(w("a"), w("a^-1")).is_identity());
  EXPECT_EQ(g.conjugate(w("b"), w("a")), w("a^-1 b a"));
  EXPECT_EQ(g.conjugate(w("a"), w("a")), w("a"));
  EXPECT_EQ(g.invert(w("a b^-1")), w("b a^-1"));
}

TEST(Words, AlphabetMismatch) {
  const FreeGroup g(Alphabet({"a"}));
  EXPECT_THROW(g.multiply(Word::generator(0), Word::generator(1)), AlphabetMismatch);
}

TEST(Words, ParseErrors) {
  EXPECT_THROW(kAbt.parse("a x"), UnknownGenerator);
  try {
    kAbt.parse("a b^");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_GE(e.column(), 3u);
  }
  EXPECT_THROW(kAbt.parse("a^0"), ParseError);
}

TEST(Words, CyclicReduceExamples) {
  auto r = cyclic_reduce(w("a b a^-1"));
  EXPECT_EQ(r.core, w("b"));
  EXPECT_EQ(r.conjugator, w("a^-1"));
  r = cyclic_reduce(w("b"));
  EXPECT_EQ(r.core, w("b"));
  EXPECT_TRUE(r.conjugator.is_identity());
  r = cyclic_reduce(w("a^-1 b b a"));
  EXPECT_EQ(r.core, w("b b"));
  EXPECT_EQ(r.conjugator, w("a"));
}

TEST(Words, ExponentSums) {
  EXPECT_EQ(w("t a t^-1 a").exponent_sum(0), 2);
  EXPECT_EQ(w("t a t^-1 a").exponent_sum(2), 0);
  EXPECT_EQ(w("a").exponent_sum(1), 0);
}

TEST(Words, PrintParseRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const Word x = testutil::random_word(rng, 3, 12);
    EXPECT_EQ(kAbt.parse(kAbt.format(x)), x);
  }
}

TEST(WordsProperty, ReductionMatchesStackOracle) {
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const auto raw = testutil::raw_letters(rng, 3, 16);
    const Word x = Word::from_letters(raw);
    const auto expect = testutil::stack_reduce(raw);
    ASSERT_EQ(std::vector<Letter>(x.letters().begin(), x.letters().end()), expect);
    EXPECT_EQ(Word::from_letters(x.letters()), x);
  }
}

TEST(WordsProperty, GroupAxioms) {
  const FreeGroup g(kAbt);
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Word x = testutil::random_word(rng, 3, 10);
    const Word y = testutil::random_word(rng, 3, 10);
    const Word z = testutil::random_word(rng, 3, 10);
    EXPECT_EQ(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z)));
    EXPECT_EQ(g.invert(g.invert(x)), x);
    EXPECT_TRUE(g.multiply(x, g.invert(x)).is_identity());
    for (int gen = 0; gen < 3; ++gen) EXPECT_EQ((x * y).exponent_sum(gen), x.exponent_sum(gen) + y.exponent_sum(gen));
  }
}

TEST(WordsProperty, ConjugateLength) {
  const FreeGroup g(kAbt);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Word x = testutil::random_word(rng, 3, 8);
    const Word f = testutil::random_word(rng, 3, 8);
    const Word c = g.conjugate(f, x);
    EXPECT_LE(c.length(), f.length() + 2 * x.length());
    // Letter-level simulation of x^-1 f x.
    std::vector<Letter> raw;
    const Word xi = x.inverse();
    raw.insert(raw.end(), xi.letters().begin(), xi.letters().end());
    raw.insert(raw.end(), f.letters().begin(), f.letters().end());
    raw.insert(raw.end(), x.letters().begin(), x.letters().end());
    EXPECT_EQ(c.length(), testutil::stack_reduce(raw).size());
    if (raw.size() == testutil::stack_reduce(raw).size()) EXPECT_EQ(c.length(), f.length() + 2 * x.length());
  }
}

TEST(WordsProperty, CyclicReduceRoundTrip) {
  const FreeGroup g(kAbt);
  Rng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Word x = testutil::random_word(rng, 3, 12);
    const auto r = cyclic_reduce(x);
    EXPECT_EQ(g.multiply(g.invert(r.conjugator), g.multiply(r.core, r.conjugator)), x);
    if (r.core.length() >= 2) EXPECT_NE(r.core.front(), -r.core.back());
  }
}

TEST(Words, ShortlexEnumeration) {
  const auto ws = reduced_words_up_to(2, 4);
  // 1 + 4 + 12 + 36 + 108 reduced words of length <= 4 over two generators.
  EXPECT_EQ(ws.size(), 161u);
  for (std::size_t i = 1; i < ws.size(); ++i) EXPECT_TRUE(shortlex_less(ws[i - 1], ws[i]));
  EXPECT_TRUE(ws[0].is_identity());
  EXPECT_EQ(ws[1], Word::generator(0));
  EXPECT_EQ(ws[2], Word::generator(0, -1));
}
