#include "srkit/ring_lab.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "srkit/star_check.hpp"

namespace srkit {

Word random_reduced_word(Rng& rng, std::size_t rank, std::size_t min_len, std::size_t max_len) {
  const std::size_t len = min_len + static_cast<std::size_t>(rng.below(max_len - min_len + 1));
  std::vector<Letter> letters;
  while (letters.size() < len) {
    const Letter l = make_letter(static_cast<int>(rng.below(rank)), rng.chance(0.5) ? 1 : -1);
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return Word::from_letters(letters);
}

std::vector<Word> random_distinct_words(Rng& rng, std::size_t rank, std::size_t count, std::size_t max_len) {
  std::vector<Word> out;
  std::unordered_set<Word, WordHash> seen;
  while (out.size() < count) {
    Word w = random_reduced_word(rng, rank, 1, max_len);
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

std::vector<Word> power_sandwich_family(Rng& rng, std::size_t count, std::size_t extra) {
  std::vector<int> ks(count + extra);
  std::iota(ks.begin(), ks.end(), 1);
  for (std::size_t i = ks.size(); i > 1; --i) std::swap(ks[i - 1], ks[static_cast<std::size_t>(rng.below(i))]);
  std::vector<Word> out;
  for (std::size_t i = 0; i < count; ++i) {
    const Word a = Word::generator(0, ks[i]);
    out.push_back(a * Word::generator(1) * a);
  }
  return out;
}

Lemma32Instance random_lemma32_instance(Rng& rng, std::size_t max_m, std::size_t max_n) {
  const FreeGroup g(Alphabet({"a", "b"}));
  const std::size_t m = 1 + static_cast<std::size_t>(rng.below(max_m));
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
  const auto f = random_distinct_words(rng, 2, m, 3);
  const auto mf = difference_set(g, std::span<const Word>(f));
  const auto x = star_witness_locally_free(mf, 0, 1);
  Lemma32Instance inst;
  for (std::size_t i = 0; i < 3; ++i) inst.s[i] = conjugate_set(g, std::span<const Word>(f), x[i]);
  inst.t = random_distinct_words(rng, 2, n, 3);
  return inst;
}

Lemma33Instance random_lemma33_instance(Rng& rng, std::size_t max_n, std::size_t max_m) {
  const std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_n));
  const auto xs = power_sandwich_family(rng, 3 * n);
  Lemma33Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    inst.x.push_back({xs[3 * i], xs[3 * i + 1], xs[3 * i + 2]});
    inst.s.push_back(random_distinct_words(rng, 2, 1 + static_cast<std::size_t>(rng.below(max_m)), 3));
  }
  return inst;
}

}  // namespace srkit
