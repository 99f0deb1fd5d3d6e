#pragma once

// Random free-group instances for the isolated-product tables and the
// support-bound experiment.

#include <array>
#include <cstddef>
#include <vector>

#include "srkit/random.hpp"
#include "srkit/ring.hpp"
#include "srkit/words.hpp"

namespace srkit {

/// Uniform-ish reduced word with length in [min_len, max_len].
Word random_reduced_word(Rng& rng, std::size_t rank, std::size_t min_len, std::size_t max_len);
/// `count` distinct nontrivial reduced words of length <= max_len.
std::vector<Word> random_distinct_words(Rng& rng, std::size_t rank, std::size_t count, std::size_t max_len);

/// k distinct conjugators a^k b a^k (a = generator 0, b = generator 1) with k
/// drawn without repetition from 1..count+extra. Any such family, taken as
/// singletons, is mutually reduced.
std::vector<Word> power_sandwich_family(Rng& rng, std::size_t count, std::size_t extra = 3);

struct Lemma32Instance {
  std::array<std::vector<Word>, 3> s;
  std::vector<Word> t;
};

/// S_i = F^{x_i} for a random F of size <= max_m, with the x_i built from the
/// difference set of F so the hypotheses hold; T random of size <= max_n.
Lemma32Instance random_lemma32_instance(Rng& rng, std::size_t max_m = 2, std::size_t max_n = 3);

struct Lemma33Instance {
  std::vector<std::vector<Word>> s;
  std::vector<std::array<Word, 3>> x;
};

Lemma33Instance random_lemma33_instance(Rng& rng, std::size_t max_n = 2, std::size_t max_m = 2);

/// Between 1 and max_count instances over F(a, b): b_s from
/// power_sandwich_family, phi(b) and u_b with 1..3 terms and coefficients in
/// [-3, 3] \ {0}, x_bt from star_witness_locally_free on M_b.
template <class F>
std::vector<SupportInstance<FreeGroup, F>> random_support_instances(Rng& rng, const FreeGroup& g, const F& field,
                                                                    std::size_t max_count = 3) {
  const std::size_t count = 1 + static_cast<std::size_t>(rng.below(max_count));
  const auto bs = power_sandwich_family(rng, 3 * count);
  auto coefficient = [&] {
    const int c = rng.range(1, 3);
    return field.from_int(rng.chance(0.5) ? c : -c);
  };
  auto random_element = [&] {
    RingElement<FreeGroup, F> r(g, field);
    for (const auto& w : random_distinct_words(rng, g.rank(), 1 + rng.below(3), 3)) r.add_term(w, coefficient());
    return r;
  };
  std::vector<SupportInstance<FreeGroup, F>> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto phi = random_element();
    auto u = random_element();
    const auto fb = phi.support();
    std::vector<Word> mb;
    for (const auto& f : fb) mb.push_back(f.inverse());
    auto diffs = difference_set(g, std::span<const Word>(fb));
    mb.insert(mb.end(), fb.begin(), fb.end());
    mb.insert(mb.end(), diffs.begin(), diffs.end());
    const auto x = star_witness_locally_free(mb, 0, 1);
    out.push_back({{bs[3 * i], bs[3 * i + 1], bs[3 * i + 2]}, x, std::move(phi), std::move(u)});
  }
  return out;
}

}  // namespace srkit
