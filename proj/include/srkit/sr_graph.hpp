#pragma once

// Graphs with two disjoint edge colours E and F whose E-components are cliques,
// and the search for cycles alternating between the colours.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace srkit {

using VertexId = std::int64_t;
using VertexPair = std::pair<VertexId, VertexId>;

class SRGraph {
public:
  SRGraph() = default;

  /// Checks every invariant. Throws MalformedEdge, DisjointnessViolation or
  /// NonCompleteEComponent.
  static SRGraph validate(std::vector<VertexId> vertices, std::vector<VertexPair> e_edges,
                          std::vector<VertexPair> f_edges);

  /// Vertex ids in ascending order; internal index i refers to vertices()[i].
  const std::vector<VertexId>& vertices() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  /// Normalised (u < v) and sorted.
  const std::vector<VertexPair>& e_edges() const noexcept { return e_; }
  const std::vector<VertexPair>& f_edges() const noexcept { return f_; }

  std::optional<std::size_t> index_of(VertexId id) const;
  bool has_e(std::size_t i, std::size_t j) const { return colour_[i * ids_.size() + j] == 1; }
  bool has_f(std::size_t i, std::size_t j) const { return colour_[i * ids_.size() + j] == 2; }
  const std::vector<std::size_t>& e_neighbours(std::size_t i) const { return e_adj_[i]; }
  const std::vector<std::size_t>& f_neighbours(std::size_t i) const { return f_adj_[i]; }

  /// Subgraph induced on the given vertex ids.
  SRGraph induced(std::span<const VertexId> keep) const;
  SRGraph without(VertexId v) const;

private:
  std::vector<VertexId> ids_;
  std::vector<VertexPair> e_;
  std::vector<VertexPair> f_;
  std::vector<std::uint8_t> colour_;  // 0 none, 1 E, 2 F; n*n
  std::vector<std::vector<std::size_t>> e_adj_;
  std::vector<std::vector<std::size_t>> f_adj_;
};

struct GraphStats {
  std::size_t c_g = 0;
  std::size_t c_h = 0;
  std::vector<VertexId> i_g;
  std::vector<VertexId> i_h;
  std::vector<VertexId> cut_vertices;
};

enum class Colour { E, F, Union };

/// Component label per internal index, labels numbered by smallest member.
std::vector<std::size_t> component_labels(const SRGraph& g, Colour which, std::size_t* count = nullptr);
std::size_t component_count(const SRGraph& g, Colour which);
/// Vertex ids grouped by component, in order of smallest member.
std::vector<std::vector<VertexId>> components(const SRGraph& g, Colour which);

GraphStats stats(const SRGraph& g);
/// Articulation points of (V, E u F) by Tarjan's lowpoint method.
std::vector<VertexId> cut_vertices(const SRGraph& g);

inline constexpr std::uint64_t kDefaultExpansionBudget = 10'000'000;

/// Returns an alternating cycle v1..vc (v1v2 in E) or nullopt after an
/// exhaustive search. Each component of the union graph is searched on its
/// own; the anchor is the smallest vertex of the cycle and neighbours are
/// tried in ascending order, so the certificate is deterministic.
/// Throws BudgetExceeded when more than `budget` nodes are expanded.
std::optional<std::vector<VertexId>> find_sr_cycle(const SRGraph& g,
                                                   std::uint64_t budget = kDefaultExpansionBudget);

/// True when `cycle` is an alternating cycle of g with distinct vertices, c even, c >= 4.
bool is_sr_cycle(const SRGraph& g, std::span<const VertexId> cycle);

/// c_g + c_h < |V| + 1. Requires complete F-components and a connected union
/// graph; throws HypothesisViolation otherwise.
bool complete_criterion(const SRGraph& g);

/// Partite-set sizes (ascending) when the F-subgraph induced on `vertex_set`
/// is complete multipartite. The set must induce a connected F-subgraph or be
/// a singleton (PreconditionViolated otherwise).
std::optional<std::vector<std::size_t>> complete_multipartite_parts(std::span<const VertexId> vertex_set,
                                                                    std::span<const VertexPair> f_edges);

/// Every F-component complete multipartite, |I(G)| <= number of F-components,
/// and |V_i| > 2 mu(H_i) for every F-component.
bool multipartite_hypotheses(const SRGraph& g);

}  // namespace srkit
