#pragma once

// Stallings automata for finitely generated subgroups of a free group.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "srkit/words.hpp"

namespace srkit {

/// Folded core graph of a subgroup H = <basis> of F(rank). States are
/// numbered in shortlex breadth-first order from the base state 0, so two
/// automata for the same subgroup are identical.
///
/// Each edge also carries a tag: a word over the basis indices (basis word i
/// is letter i). The tags along any closed path at the base multiply to an
/// expression of the path label in the basis, which is how members are
/// rewritten in terms of the generators they were built from.
class SubgroupAutomaton {
public:
  struct Edge {
    int from;
    int to;
    int gen;
    Word tag;
  };

  SubgroupAutomaton() : SubgroupAutomaton(0, {}) {}

  static SubgroupAutomaton from_generators(std::size_t rank, std::span<const Word> gens);

  std::size_t ambient_rank() const noexcept { return rank_; }
  const std::vector<Word>& basis() const noexcept { return basis_; }
  std::size_t num_states() const noexcept { return out_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Target of the edge leaving `state` along `letter`, or -1.
  int step(int state, Letter letter) const;

  /// Rank of the subgroup: edges - states + 1.
  std::size_t subgroup_rank() const noexcept { return edges_.size() + 1 - out_.size(); }
  bool is_trivial() const noexcept { return edges_.empty(); }
  /// True when the stored basis freely generates the subgroup.
  bool basis_is_free() const;
  /// True when the subgroup is the whole ambient free group.
  bool is_whole_group() const;

  bool contains(const Word& w) const;
  /// Expression of w as a word over basis indices, or nullopt when w is not a member.
  std::optional<Word> express(const Word& w) const;
  /// Substitutes `images[i]` for basis letter i in an expression.
  static Word substitute(const Word& expression, std::span<const Word> images);

  /// Free basis read off a shortlex spanning tree (one element per non-tree edge).
  std::vector<Word> nielsen_basis() const;

  /// Shortlex-least element of the right coset H*w. The identity represents H.
  Word coset_representative(const Word& w) const;
  /// Shortlex-least label of a path from the base to `state`.
  const Word& state_label(int state) const { return labels_.at(static_cast<std::size_t>(state)); }

  SubgroupAutomaton intersect(const SubgroupAutomaton& other) const;
  /// Automaton for g^-1 H g, built from the conjugated basis.
  SubgroupAutomaton conjugate(const Word& g) const;

  /// Same accepted language (states and labelled edges agree).
  bool same_subgroup(const SubgroupAutomaton& other) const;

private:
  SubgroupAutomaton(std::size_t rank, std::vector<Word> basis);
  void build_from(std::vector<Edge> edges, std::size_t num_states);

  std::size_t rank_;
  std::vector<Word> basis_;
  std::vector<Edge> edges_;
  // out_[s][g] / in_[s][g]: edge index or -1
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<Word> labels_;
};

}  // namespace srkit
