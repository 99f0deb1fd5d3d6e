#pragma once

// Amalgamated free products A *_H B of free factors, with H given in each
// factor by aligned free bases.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srkit/subgroups.hpp"
#include "srkit/words.hpp"

namespace srkit {

enum class Factor { A, B };

constexpr Factor other(Factor f) { return f == Factor::A ? Factor::B : Factor::A; }
constexpr char factor_name(Factor f) { return f == Factor::A ? 'A' : 'B'; }

struct AmalgamSyllable {
  Factor factor;
  Word u;  // over the factor's own alphabet

  friend bool operator==(const AmalgamSyllable&, const AmalgamSyllable&) = default;
};

/// Normal form u_1 ... u_n with factors alternating and every u_i outside H.
/// u_2..u_n are shortlex right-coset representatives of H in their factor; u_1
/// carries the remaining H-part. When n = 0 the element lies in H and `h`
/// holds it as a word over A.
struct AmalgamWord {
  std::vector<AmalgamSyllable> syllables;
  Word h;

  std::size_t length() const noexcept { return syllables.size(); }
  friend bool operator==(const AmalgamWord&, const AmalgamWord&) = default;
};

enum class SyllableType { H, AA, AB, BA, BB };
const char* to_string(SyllableType t);

class AmalgamPresentation {
public:
  /// h_in_a[i] is identified with h_in_b[i]. Throws AlphabetMismatch for
  /// overlapping factor alphabets, StructureMismatch for bases of different
  /// size, RedundantBasis for non-free bases.
  AmalgamPresentation(Alphabet a, Alphabet b, std::vector<Word> h_in_a, std::vector<Word> h_in_b,
                      std::size_t witness_search_len = 6);

  const Alphabet& factor_alphabet(Factor f) const { return f == Factor::A ? a_ : b_; }
  /// A generators followed by B generators.
  const Alphabet& alphabet() const noexcept { return full_; }
  const SubgroupAutomaton& h(Factor f) const { return f == Factor::A ? ha_ : hb_; }
  bool in_h(Factor f, const Word& u) const { return h(f).contains(u); }
  /// Rewrites an H-element given over `from` as a word over `to`.
  Word transfer(Factor from, Factor to, const Word& u) const;

  /// Shortlex-least elements of A\H and B\H found at construction, if any.
  const std::optional<Word>& a0() const noexcept { return a0_; }
  const std::optional<Word>& b0() const noexcept { return b0_; }

  AmalgamWord reduce(std::span<const AmalgamSyllable> raw) const;
  AmalgamWord element(Factor f, const Word& u) const;
  AmalgamWord multiply(const AmalgamWord& x, const AmalgamWord& y) const;
  AmalgamWord inverse(const AmalgamWord& x) const;
  std::vector<AmalgamSyllable> pieces(const AmalgamWord& x) const;

  /// "A: a h^-1 | B: b"; untagged segments are split by factor.
  AmalgamWord parse(std::string_view text) const;
  std::vector<AmalgamSyllable> parse_pieces(std::string_view text) const;
  std::string format(const AmalgamWord& x) const;
  /// Letters over alphabet(); injective on normal forms.
  std::vector<Letter> flatten(const AmalgamWord& x) const;

private:
  Alphabet a_;
  Alphabet b_;
  Alphabet full_;
  SubgroupAutomaton ha_;
  SubgroupAutomaton hb_;
  std::optional<Word> a0_;
  std::optional<Word> b0_;
};

SyllableType type_of(const AmalgamWord& x);

class AmalgamGroup {
public:
  using Element = AmalgamWord;

  explicit AmalgamGroup(const AmalgamPresentation& p) : p_(&p) {}
  const AmalgamPresentation& presentation() const { return *p_; }

  AmalgamWord multiply(const AmalgamWord& x, const AmalgamWord& y) const { return p_->multiply(x, y); }
  AmalgamWord invert(const AmalgamWord& x) const { return p_->inverse(x); }
  AmalgamWord identity() const { return {}; }
  bool is_identity(const AmalgamWord& x) const { return x.syllables.empty() && x.h.is_identity(); }
  std::size_t norm(const AmalgamWord& x) const { return x.length(); }
  std::vector<Letter> key(const AmalgamWord& x) const { return p_->flatten(x); }
  std::string format(const AmalgamWord& x) const { return p_->format(x); }

private:
  const AmalgamPresentation* p_;
};

struct DaggerWitness {
  Word a;       // in A\H with a^-1 H a n H = 1
  Word a_star;  // in A\H with a a_star != 1
  Word b;       // in B\H
  bool a_astar_outside_h;
  bool astar_a_outside_h;
};

/// Shortlex search up to search_len. Throws NotFoundAtBound.
DaggerWitness dagger_check(const AmalgamPresentation& p, std::size_t search_len);

enum class Lemma45Kind { Sandwich, Power, Neither };
const char* to_string(Lemma45Kind k);

struct Lemma45Result {
  Lemma45Kind kind;
  AmalgamWord w;
  AmalgamWord v;  // Sandwich: W = (a^-1 b) V (b^-1 a)
  int sign = 0;   // Power: W = (b^-1 a)^(sign k)
  std::size_t k = 0;
};

/// W = (a^-1 b)^m f (b^-1 a)^m, classified by length bookkeeping.
/// PreconditionViolated when m <= l(f) + 1, f = 1, a in H or b in H.
Lemma45Result lemma45_classify(const AmalgamPresentation& p, const Word& a, const Word& b, std::size_t m,
                               const AmalgamWord& f);

enum class WitnessVariant { Direct, Inverted };

struct Theorem44Witness {
  std::array<AmalgamWord, 3> x;
  std::size_t l;
  WitnessVariant variant;
};

/// Direct: x_i = (b^-1 a)^w a* b^-1 a*^-1 (b^-1 a)^w, needs a a* outside H.
/// Inverted: x_i = (b^-1 a^-1)^w a*^-1 b^-1 a* (b^-1 a^-1)^w, needs a* a outside H.
/// w = l + i with l the largest length in m. Throws VariantMismatch.
Theorem44Witness theorem44_witness(const AmalgamPresentation& p, std::span<const AmalgamWord> m,
                                   const DaggerWitness& d, WitnessVariant variant);

enum class LargeKind { A, B, H };
const char* to_string(LargeKind k);

struct Corollary46Generators {
  std::vector<AmalgamWord> gens;
  /// H kind only: (x_i, y_i) with gens[i] = x_i y_i^-1.
  std::vector<std::pair<AmalgamWord, AmalgamWord>> pairing;
};

/// A: a_i b (a b)^2 a_i b for a_i in A\H. B: (a b_i)^3 for b_i in B\H.
/// H: (a^-1 h_i a)(b^-1 a^-1 h_i a b)^-1 for h_i in H\1, given as A-words.
/// Throws InsufficientElements when the elements are not distinct members of
/// the stratum.
Corollary46Generators corollary46_generators(const AmalgamPresentation& p, LargeKind kind,
                                             std::span<const Word> elements, const DaggerWitness& d);

/// The first k shortlex words of A\H, B\H or H\1 (over A) up to search_len.
std::vector<Word> stratum_elements(const AmalgamPresentation& p, LargeKind kind, std::size_t k,
                                   std::size_t search_len);

}  // namespace srkit
