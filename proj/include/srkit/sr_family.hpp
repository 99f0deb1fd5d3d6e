#pragma once

// Instance families for the alternating-cycle theorems and the sweeps over them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srkit/random.hpp"
#include "srkit/sr_graph.hpp"

namespace srkit {

/// Block label per vertex, as restricted growth strings, for every set partition of n.
std::vector<std::vector<int>> set_partitions(int n);
/// One partition per integer partition of n: consecutive blocks, sizes descending.
std::vector<std::vector<int>> canonical_partitions(int n);

/// Vertices 1..n, E the cliques of `e_blocks`, F the cliques of `f_blocks`.
/// The two partitions must share no pair.
SRGraph graph_from_partitions(std::span<const int> e_blocks, std::span<const int> f_blocks);

struct FamilyMember {
  std::vector<int> e_blocks;
  std::vector<int> f_blocks;
};

/// Connected SR-graphs on n vertices with complete E- and F-components,
/// one E-partition per shape, every F-partition.
std::vector<FamilyMember> complete_family(int n);

struct SweepReport {
  std::size_t instances = 0;
  std::size_t with_cycle = 0;
  std::size_t criterion_mismatches = 0;
  std::size_t inequality_violations = 0;
  std::size_t empty_witness_violations = 0;
  std::size_t invalid_certificates = 0;
  std::size_t budget_exhausted = 0;

  SweepReport& operator+=(const SweepReport& o);
  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// Complete-complete family on min_n..max_n vertices: criterion vs search,
/// c_g + c_h <= |V| + 1, and the isolated/cut witness for cycle-free members.
SweepReport sweep_complete_family(int min_n, int max_n, bool parallel);

/// Random E-cliques, each remaining pair in F with probability `f_density`.
SRGraph random_sr_graph(Rng& rng, int n, double f_density);
/// `count` random graphs on 1..max_n vertices: the isolated/cut witness for
/// cycle-free instances and certificate re-verification.
SweepReport sweep_random_graphs(std::uint64_t seed, std::size_t count, int max_n, bool parallel);

/// Random instance whose F-components are complete multipartite with
/// |V_i| > 2 mu(H_i) and |I(G)| <= number of F-components.
SRGraph planted_multipartite(Rng& rng);

struct PlantedReport {
  std::size_t instances = 0;
  std::size_t hypotheses_hold = 0;
  std::size_t cycles_found = 0;

  friend bool operator==(const PlantedReport&, const PlantedReport&) = default;
};

PlantedReport sweep_planted(std::uint64_t seed, std::size_t count, bool parallel);

}  // namespace srkit
