#include "srkit/sr_family.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "srkit/error.hpp"

namespace srkit {

SweepReport& SweepReport::operator+=(const SweepReport& o) {
  instances += o.instances;
  with_cycle += o.with_cycle;
  criterion_mismatches += o.criterion_mismatches;
  inequality_violations += o.inequality_violations;
  empty_witness_violations += o.empty_witness_violations;
  invalid_certificates += o.invalid_certificates;
  budget_exhausted += o.budget_exhausted;
  return *this;
}

std::vector<std::vector<int>> set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return {{}};
  rec(0, 0);
  return out;
}

std::vector<std::vector<int>> canonical_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      std::vector<int> blocks;
      for (std::size_t b = 0; b < parts.size(); ++b) {
        blocks.insert(blocks.end(), static_cast<std::size_t>(parts[b]), static_cast<int>(b));
      }
      out.push_back(std::move(blocks));
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      parts.push_back(p);
      rec(left - p, p);
      parts.pop_back();
    }
  };
  rec(n, n);
  return out;
}

namespace {

std::vector<VertexPair> clique_edges(std::span<const int> blocks) {
  std::vector<VertexPair> edges;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (blocks[i] == blocks[j]) edges.emplace_back(static_cast<VertexId>(i + 1), static_cast<VertexId>(j + 1));
    }
  }
  return edges;
}

bool meet_is_discrete(std::span<const int> e, std::span<const int> f) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      if (e[i] == e[j] && f[i] == f[j]) return false;
    }
  }
  return true;
}

bool join_is_connected(std::span<const int> e, std::span<const int> f) {
  const std::size_t n = e.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t comps = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (e[i] != e[j] && f[i] != f[j]) continue;
      const auto a = find(i);
      const auto b = find(j);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
  }
  return comps <= 1;
}

void evaluate(const SRGraph& g, bool complete_family_member, SweepReport& r) {
  ++r.instances;
  std::optional<std::vector<VertexId>> cycle;
  try {
    cycle = find_sr_cycle(g);
  } catch (const BudgetExceeded&) {
    ++r.budget_exhausted;
    return;
  }
  if (cycle) {
    ++r.with_cycle;
    if (!is_sr_cycle(g, *cycle)) ++r.invalid_certificates;
  }
  const auto s = stats(g);
  if (!cycle && s.i_g.empty() && s.i_h.empty() && s.cut_vertices.empty()) ++r.empty_witness_violations;
  if (complete_family_member) {
    if (s.c_g + s.c_h > g.size() + 1) ++r.inequality_violations;
    if (complete_criterion(g) != cycle.has_value()) ++r.criterion_mismatches;
  }
}

template <class Make>
SweepReport run_sweep(std::size_t count, bool parallel, bool complete, Make make) {
  SweepReport total;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel if (parallel)
  {
    SweepReport local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) evaluate(make(static_cast<std::size_t>(i)), complete, local);
#pragma omp critical
    total += local;
  }
  return total;
}

}  // namespace

SRGraph graph_from_partitions(std::span<const int> e_blocks, std::span<const int> f_blocks) {
  std::vector<VertexId> vs(e_blocks.size());
  std::iota(vs.begin(), vs.end(), VertexId{1});
  return SRGraph::validate(std::move(vs), clique_edges(e_blocks), clique_edges(f_blocks));
}

std::vector<FamilyMember> complete_family(int n) {
  std::vector<FamilyMember> out;
  const auto fs = set_partitions(n);
  for (const auto& e : canonical_partitions(n)) {
    for (const auto& f : fs) {
      if (meet_is_discrete(e, f) && join_is_connected(e, f)) out.push_back({e, f});
    }
  }
  return out;
}

SweepReport sweep_complete_family(int min_n, int max_n, bool parallel) {
  std::vector<FamilyMember> all;
  for (int n = min_n; n <= max_n; ++n) {
    auto fam = complete_family(n);
    all.insert(all.end(), std::make_move_iterator(fam.begin()), std::make_move_iterator(fam.end()));
  }
  return run_sweep(all.size(), parallel, true,
                   [&](std::size_t i) { return graph_from_partitions(all[i].e_blocks, all[i].f_blocks); });
}

SRGraph random_sr_graph(Rng& rng, int n, double f_density) {
  std::vector<int> block(static_cast<std::size_t>(n));
  for (auto& b : block) b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<VertexPair> f;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (block[static_cast<std::size_t>(i)] != block[static_cast<std::size_t>(j)] && rng.chance(f_density)) {
        f.emplace_back(i + 1, j + 1);
      }
    }
  }
  std::vector<VertexId> vs(static_cast<std::size_t>(n));
  std::iota(vs.begin(), vs.end(), VertexId{1});
  return SRGraph::validate(std::move(vs), clique_edges(block), std::move(f));
}

SweepReport sweep_random_graphs(std::uint64_t seed, std::size_t count, int max_n, bool parallel) {
  Rng rng(seed);
  std::vector<SRGraph> graphs;
  graphs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int n = rng.range(1, max_n);
    const double density = 0.1 + 0.1 * static_cast<double>(rng.below(6));
    graphs.push_back(random_sr_graph(rng, n, density));
  }
  return run_sweep(count, parallel, false, [&](std::size_t i) { return graphs[i]; });
}

SRGraph planted_multipartite(Rng& rng) {
  for (;;) {
    // F-components: complete multipartite with at least three parts and no dominant part.
    std::vector<int> comp_of;
    std::vector<int> part_of;
    const int comps = rng.range(1, 3);
    int part_id = 0;
    for (int c = 0; c < comps; ++c) {
      std::vector<int> sizes;
      do {
        sizes.assign(static_cast<std::size_t>(rng.range(3, 4)), 0);
        for (auto& s : sizes) s = rng.range(1, 2);
      } while (std::accumulate(sizes.begin(), sizes.end(), 0) <= 2 * *std::max_element(sizes.begin(), sizes.end()));
      for (int s : sizes) {
        for (int k = 0; k < s; ++k) {
          comp_of.push_back(c);
          part_of.push_back(part_id);
        }
        ++part_id;
      }
    }
    const std::size_t n = comp_of.size();
    auto f_adjacent = [&](std::size_t i, std::size_t j) {
      return comp_of[i] == comp_of[j] && part_of[i] != part_of[j];
    };
    // E-cliques may only join F-non-adjacent vertices.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t v : order) {
      std::vector<std::size_t> fits;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (std::none_of(blocks[b].begin(), blocks[b].end(), [&](std::size_t w) { return f_adjacent(v, w); })) {
          fits.push_back(b);
        }
      }
      if (!fits.empty() && rng.chance(0.8)) {
        blocks[rng.pick(fits)].push_back(v);
      } else {
        blocks.push_back({v});
      }
    }
    // Random labels so the planted structure is not aligned with vertex order.
    std::vector<VertexId> label(n);
    std::iota(label.begin(), label.end(), VertexId{1});
    for (std::size_t i = n; i > 1; --i) std::swap(label[i - 1], label[rng.below(i)]);
    std::vector<VertexPair> e;
    std::vector<VertexPair> f;
    for (const auto& b : blocks) {
      for (std::size_t x = 0; x < b.size(); ++x) {
        for (std::size_t y = x + 1; y < b.size(); ++y) e.emplace_back(label[b[x]], label[b[y]]);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (f_adjacent(i, j)) f.emplace_back(label[i], label[j]);
      }
    }
    auto g = SRGraph::validate(label, std::move(e), std::move(f));
    if (multipartite_hypotheses(g)) return g;
  }
}

PlantedReport sweep_planted(std::uint64_t seed, std::size_t count, bool parallel) {
  Rng rng(seed);
  std::vector<SRGraph> graphs;
  graphs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) graphs.push_back(planted_multipartite(rng));
  std::size_t hyp = 0;
  std::size_t found = 0;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for if (parallel) schedule(dynamic, 16) reduction(+ : hyp, found)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& g = graphs[static_cast<std::size_t>(i)];
    if (multipartite_hypotheses(g)) ++hyp;
    try {
      auto c = find_sr_cycle(g);
      if (c && is_sr_cycle(g, *c)) ++found;
    } catch (const BudgetExceeded&) {
    }
  }
  return {count, hyp, found};
}

}  // namespace srkit
