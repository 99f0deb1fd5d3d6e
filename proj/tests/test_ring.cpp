#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>

#include "srkit/error.hpp"
#include "srkit/hnn.hpp"
#include "srkit/ring.hpp"
#include "srkit/ring_lab.hpp"
#include "test_util.hpp"

using namespace srkit;
using Q = boost::multiprecision::cpp_rational;
using R = RingElement<FreeGroup>;

namespace {

const FreeGroup& f2() {
  static const FreeGroup g(Alphabet({"a", "b"}));
  return g;
}

Word w(const char* s) { return f2().parse(s); }

R mono(const char* s, long c = 1) { return R::monomial(f2(), w(s), Q(c)); }

// a^k b a^k
Word sandwich(int k) { return Word::generator(0, k) * Word::generator(1) * Word::generator(0, k); }

// O(n^2) recomputation of the isolated pairs by reducing concatenations.
std::vector<std::size_t> brute_isolated(const std::vector<std::pair<Word, Word>>& pairs) {
  std::vector<std::vector<Letter>> prods;
  for (const auto& [x, y] : pairs) {
    std::vector<Letter> raw(x.letters().begin(), x.letters().end());
    raw.insert(raw.end(), y.letters().begin(), y.letters().end());
    prods.push_back(testutil::stack_reduce(raw));
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < prods.size(); ++i) {
    bool alone = true;
    for (std::size_t j = 0; j < prods.size() && alone; ++j) alone = i == j || prods[i] != prods[j];
    if (alone) out.push_back(i);
  }
  return out;
}

using Poly = std::map<std::vector<Letter>, Q>;

Poly to_poly(const R& r) {
  Poly p;
  for (const auto& [k, t] : r.terms()) p[k] = t.coefficient;
  return p;
}

Poly poly_mul(const Poly& x, const Poly& y) {
  Poly out;
  for (const auto& [kx, cx] : x) {
    for (const auto& [ky, cy] : y) {
      std::vector<Letter> raw = kx;
      raw.insert(raw.end(), ky.begin(), ky.end());
      out[testutil::stack_reduce(raw)] += cx * cy;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

R random_ring(Rng& rng) {
  R r(f2());
  for (int i = rng.range(0, 4); i > 0; --i) r.add_term(testutil::random_word(rng, 2, 3), Q(rng.range(-2, 2)));
  return r;
}

}  // namespace

TEST(Ring, ArithmeticExamples) {
  EXPECT_EQ(mono("a") + mono("a^-1 a a"), mono("a", 2));
  EXPECT_EQ(mono("a") * mono("a^-1"), R::one(f2()));
  const auto z = mono("a") - mono("a");
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(z.support().empty());
  EXPECT_EQ(z.format(), "0");
  const auto x = mono("a", 2) + mono("b", -1);
  EXPECT_EQ(x.coefficient(w("a")), Q(2));
  EXPECT_EQ(x.coefficient(w("a b")), Q(0));
  EXPECT_EQ(x.scaled(Q(1, 2)).coefficient(w("a")), Q(1));
}

TEST(Ring, AmbientMismatch) {
  const FreeGroup other(Alphabet({"a", "b"}));
  const auto y = R::monomial(other, w("a"), Q(1));
  EXPECT_THROW(mono("a") + y, AmbientMismatch);
  EXPECT_THROW(mono("a") * y, AmbientMismatch);
  using P = RingElement<FreeGroup, PrimeField>;
  const auto p5 = P::monomial(f2(), w("a"), 1, PrimeField(5));
  const auto p7 = P::monomial(f2(), w("a"), 1, PrimeField(7));
  EXPECT_THROW(p5 + p7, AmbientMismatch);
}

TEST(Ring, PrimeField) {
  using P = RingElement<FreeGroup, PrimeField>;
  const PrimeField f5(5);
  const auto x = P::monomial(f2(), w("a"), f5.from_int(3), f5) + P::monomial(f2(), w("a"), f5.from_int(2), f5);
  EXPECT_TRUE(x.is_zero());
  EXPECT_EQ(f5.from_int(-1), 4u);
  EXPECT_EQ(f5.neg(0), 0u);
  EXPECT_THROW(PrimeField(4), PreconditionViolated);
  EXPECT_THROW(PrimeField(1), PreconditionViolated);
  EXPECT_THROW(PrimeField(std::uint64_t{1} << 31), PreconditionViolated);
  EXPECT_NO_THROW(PrimeField(2147483647));
}

TEST(Ring, HnnKeysAreCanonical) {
  const Alphabet base({"a", "b"});
  const HnnPresentation p(base, {base.parse("a")}, {base.parse("b")});
  const HnnGroup g(p);
  using H = RingElement<HnnGroup>;
  const auto x = H::monomial(g, p.parse("t^-1 a t"), Q(1)) + H::monomial(g, p.parse("b"), Q(1));
  EXPECT_EQ(x.support_size(), 1u);
  EXPECT_EQ(x.coefficient(p.parse("b")), Q(2));
}

TEST(Ring, EpsilonExamples) {
  const auto& g = f2();
  const std::array<Word, 3> bs{sandwich(1), sandwich(2), sandwich(3)};
  const std::vector<Word> m{w("b")};
  const auto xs = star_witness_locally_free(m, 0, 1);
  auto [eps, eps1] = epsilon(g, std::span<const Word, 3>(bs), std::span<const Word, 3>(xs), mono("b"));
  EXPECT_EQ(eps.support_size(), 9u);
  EXPECT_EQ(eps1, eps + R::one(g));

  const R zero(g);
  auto [e0, e1] = epsilon(g, std::span<const Word, 3>(bs), std::span<const Word, 3>(xs), zero);
  EXPECT_TRUE(e0.is_zero());
  EXPECT_EQ(e1, R::one(g));

  // Arbitrary triples still give at most nine products.
  const std::array<Word, 3> small{w("a"), w("a"), w("b")};
  auto [e2, e3] = epsilon(g, std::span<const Word, 3>(small), std::span<const Word, 3>(small), mono("a"));
  EXPECT_LE(e2.support_size(), 9u);
}

TEST(Ring, IsolatedProductTableExamples) {
  const auto& g = f2();
  std::array<std::vector<Word>, 3> s;
  for (int i = 1; i <= 3; ++i) s[static_cast<std::size_t>(i - 1)] = {w("b").conjugate_by(sandwich(2 + i))};
  auto t = lemma32_table(g, s, {w("a")});
  EXPECT_EQ(t.isolated.size(), 3u);
  EXPECT_TRUE(t.holds());
  EXPECT_EQ(t.isolated, brute_isolated(t.pairs));
  t = lemma32_table(g, s, {w("a"), w("a^2")});
  EXPECT_GE(t.isolated.size(), 3u);
  EXPECT_TRUE(t.holds());
  EXPECT_EQ(t.isolated, brute_isolated(t.pairs));

  const std::array<std::vector<Word>, 3> same{s[0], s[0], s[0]};
  EXPECT_THROW(lemma32_table(g, same, {w("a")}), HypothesisUnverified);
  // Distinct but not mutually reduced.
  const std::array<std::vector<Word>, 3> powers{std::vector<Word>{w("a")}, {w("a^2")}, {w("a^3")}};
  EXPECT_THROW(lemma32_table(g, powers, {w("b")}), HypothesisUnverified);
  EXPECT_THROW(lemma32_table(g, s, {}), HypothesisUnverified);
}

TEST(Ring, ConjugatorTableExamples) {
  const auto& g = f2();
  const std::array<Word, 3> x{sandwich(1), sandwich(2), sandwich(3)};
  auto t = lemma33_table(g, {{w("b")}}, {x});
  EXPECT_EQ(t.isolated.size(), 3u);
  EXPECT_TRUE(t.holds());
  t = lemma33_table(g, {{w("b"), w("a")}}, {x});
  EXPECT_EQ(t.isolated.size(), 6u);
  EXPECT_EQ(t.isolated, brute_isolated(t.pairs));
  const std::array<Word, 3> overlap{sandwich(3), sandwich(4), sandwich(5)};
  EXPECT_THROW(lemma33_table(g, {{w("b")}, {w("a")}}, {x, overlap}), HypothesisUnverified);
  EXPECT_THROW(lemma33_table(g, {{w("b"), w("b")}}, {x}), HypothesisUnverified);
}

TEST(Ring, SupportBoundExamples) {
  const auto& g = f2();
  const std::vector<Word> m{w("b^-1"), w("b")};
  const auto xs = star_witness_locally_free(m, 0, 1);
  using Inst = SupportInstance<FreeGroup, RationalField>;
  std::vector<Inst> one{{{sandwich(1), sandwich(2), sandwich(3)}, xs, mono("b"), R::one(g)}};
  auto rep = support_bound_experiment(g, std::span<const Inst>(one));
  EXPECT_EQ(rep.supp_w, 10u);
  EXPECT_TRUE(rep.holds());

  std::vector<Inst> two = one;
  two.push_back({{sandwich(4), sandwich(5), sandwich(6)}, xs, mono("b"), mono("a")});
  rep = support_bound_experiment(g, std::span<const Inst>(two));
  EXPECT_EQ(rep.supp_w1, 18u);
  EXPECT_EQ(rep.supp_w, 20u);
  EXPECT_TRUE(rep.holds());

  std::vector<Inst> none{{{sandwich(1), sandwich(2), sandwich(3)}, xs, mono("b"), R(g)}};
  EXPECT_THROW(support_bound_experiment(g, std::span<const Inst>(none)), HypothesisUnverified);
}

TEST(RingProperty, ProductsMatchPolynomialOracle) {
  Rng rng(61);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_ring(rng);
    const auto y = random_ring(rng);
    const auto xy = x * y;
    ASSERT_EQ(to_poly(xy), poly_mul(to_poly(x), to_poly(y)));
    std::set<std::vector<Letter>> products;
    for (const auto& [kx, tx] : x.terms()) {
      for (const auto& [ky, ty] : y.terms()) {
        std::vector<Letter> raw = kx;
        raw.insert(raw.end(), ky.begin(), ky.end());
        products.insert(testutil::stack_reduce(raw));
      }
    }
    for (const auto& [k, t] : xy.terms()) EXPECT_TRUE(products.count(k));
    EXPECT_LE(xy.support_size(), x.support_size() * y.support_size());
  }
}

TEST(RingProperty, PairTableMatchesBruteForce) {
  Rng rng(62);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<Word, Word>> pairs;
    for (int j = rng.range(0, 12); j > 0; --j) {
      pairs.emplace_back(testutil::random_word(rng, 2, 2), testutil::random_word(rng, 2, 2));
    }
    const auto expect = brute_isolated(pairs);
    EXPECT_EQ(make_pair_table(f2(), pairs, 0, true).isolated, expect);
    EXPECT_EQ(make_pair_table(f2(), pairs, 0, false).isolated, expect);
  }
}

TEST(RingProperty, RandomTableInstances) {
  Rng rng(63);
  SearchOptions opt;
  opt.max_len = 4;
  for (int i = 0; i < 10; ++i) {
    const auto a = random_lemma32_instance(rng);
    const auto t32 = lemma32_table(f2(), a.s, a.t, opt);
    EXPECT_GT(t32.isolated.size(), a.t.size());
    EXPECT_EQ(t32.isolated, brute_isolated(t32.pairs));
    const auto b = random_lemma33_instance(rng);
    const auto t33 = lemma33_table(f2(), b.s, b.x, opt);
    EXPECT_TRUE(t33.holds());
    EXPECT_EQ(t33.isolated, brute_isolated(t33.pairs));
  }
}

TEST(RingProperty, RandomSupportInstances) {
  Rng rng(64);
  SearchOptions opt;
  opt.max_len = 4;
  for (int i = 0; i < 5; ++i) {
    const auto inst = random_support_instances(rng, f2(), RationalField{});
    const auto rep = support_bound_experiment(f2(), std::span<const SupportInstance<FreeGroup, RationalField>>(inst), opt);
    EXPECT_TRUE(rep.holds());
    EXPECT_GE(rep.supp_w, 2u);
  }
  const PrimeField f7(7);
  const auto inst = random_support_instances(rng, f2(), f7);
  const auto rep = support_bound_experiment(f2(), std::span<const SupportInstance<FreeGroup, PrimeField>>(inst), opt);
  EXPECT_TRUE(rep.holds());
}
