#pragma once

// HNN extensions <G, t | t^-1 a t = phi(a), a in A> of a free base G, with A
// and B finitely generated and phi given by aligned free bases.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srkit/subgroups.hpp"
#include "srkit/words.hpp"

namespace srkit {

struct HnnSyllable {
  int eps;  // +1 or -1
  Word g;

  friend bool operator==(const HnnSyllable&, const HnnSyllable&) = default;
};

/// g0 t^eps1 g1 ... t^epsn gn.
struct HnnWord {
  Word g0;
  std::vector<HnnSyllable> syllables;

  std::size_t t_length() const noexcept { return syllables.size(); }
  friend bool operator==(const HnnWord&, const HnnWord&) = default;
};

inline constexpr std::size_t kDefaultMaxBaseLength = 1u << 20;

class HnnPresentation {
public:
  /// phi maps a_basis[i] to b_basis[i]. Throws StructureMismatch for bases of
  /// different size, RedundantBasis when a basis is not free, and
  /// PreconditionViolated when the stable letter clashes with the base.
  HnnPresentation(Alphabet base, std::vector<Word> a_basis, std::vector<Word> b_basis, std::string stable = "t",
                  std::size_t max_base_length = kDefaultMaxBaseLength);

  const Alphabet& base() const noexcept { return base_; }
  /// Base generators followed by the stable letter.
  const Alphabet& alphabet() const noexcept { return full_; }
  int stable_gen() const noexcept { return static_cast<int>(base_.size()); }
  const SubgroupAutomaton& a() const noexcept { return a_; }
  const SubgroupAutomaton& b() const noexcept { return b_; }
  std::size_t max_base_length() const noexcept { return max_base_length_; }

  bool in_a(const Word& g) const { return a_.contains(g); }
  bool in_b(const Word& g) const { return b_.contains(g); }
  /// phi(g) for g in A; PreconditionViolated otherwise.
  Word phi(const Word& g) const;
  Word phi_inverse(const Word& g) const;

  HnnWord from_letters(std::span<const Letter> letters) const;
  HnnWord parse(std::string_view text) const;
  std::vector<Letter> flatten(const HnnWord& w) const;
  std::string format(const HnnWord& w) const { return full_.format(flatten(w)); }
  HnnWord stable(int exponent = 1) const;
  HnnWord base_element(Word g) const { return {std::move(g), {}}; }

private:
  Alphabet base_;
  Alphabet full_;
  SubgroupAutomaton a_;
  SubgroupAutomaton b_;
  std::size_t max_base_length_;
};

/// Removes pinches t^-1 g t (g in A) and t g t^-1 (g in B) until none remain.
HnnWord britton_reduce(const HnnPresentation& p, const HnnWord& w);
/// True when no pinch remains.
bool is_reduced(const HnnPresentation& p, const HnnWord& w);
/// Reduced form with each g_i (i >= 1) the shortlex right-coset representative
/// of A (after t^-1) or of B (after t); the subgroup parts are moved left.
HnnWord normal_form(const HnnPresentation& p, const HnnWord& w);
bool is_identity(const HnnPresentation& p, const HnnWord& w);

HnnWord concat(const HnnWord& u, const HnnWord& v);
HnnWord inverse(const HnnWord& w);

/// Group model over normal forms; norm is the number of t-letters.
class HnnGroup {
public:
  using Element = HnnWord;

  explicit HnnGroup(const HnnPresentation& p) : p_(&p) {}
  const HnnPresentation& presentation() const { return *p_; }

  HnnWord multiply(const HnnWord& u, const HnnWord& v) const { return normal_form(*p_, concat(u, v)); }
  HnnWord invert(const HnnWord& u) const { return normal_form(*p_, inverse(u)); }
  HnnWord identity() const { return {}; }
  bool is_identity(const HnnWord& u) const { return u.syllables.empty() && u.g0.is_identity(); }
  std::size_t norm(const HnnWord& u) const { return u.t_length(); }
  std::vector<Letter> key(const HnnWord& u) const { return p_->flatten(u); }
  std::string format(const HnnWord& u) const { return p_->format(u); }
  HnnWord canonical(const HnnWord& u) const { return normal_form(*p_, u); }

private:
  const HnnPresentation* p_;
};

struct Theorem41Hypotheses {
  Word g;
  char side;  // 'A': g^-1 A g n A = 1; 'B': g^-1 B g n B = 1
  Word outside;  // a word in neither A nor B
};

/// Shortlex search over base words of length <= search_len. nullopt when no
/// suitable g, or no word outside A u B, exists at that bound.
/// PreconditionViolated when A or B is trivial.
std::optional<Theorem41Hypotheses> theorem41_hypotheses(const HnnPresentation& p, std::size_t search_len);

struct Theorem41Witness {
  std::array<HnnWord, 3> x;
  long q;
  char side;
};

/// x_i = t^-q_i g t h^-1 t^q_i with q_i = q + i and q one more than the largest
/// t-length among the normal forms of m. When only g^-1 B g n B = 1 holds the
/// roles of t and t^-1 are exchanged. PreconditionViolated when h lies in A or
/// B, g satisfies neither side, or m contains the identity.
Theorem41Witness theorem41_witness(const HnnPresentation& p, std::span<const HnnWord> m, const Word& g,
                                   const Word& h);

}  // namespace srkit
