#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "srkit/error.hpp"
#include "srkit/random.hpp"
#include "srkit/sr_family.hpp"
#include "srkit/sr_graph.hpp"

using namespace srkit;

namespace {

SRGraph make(std::vector<VertexId> v, std::vector<VertexPair> e, std::vector<VertexPair> f) {
  return SRGraph::validate(std::move(v), std::move(e), std::move(f));
}

SRGraph four_cycle() { return make({1, 2, 3, 4}, {{1, 2}, {3, 4}}, {{2, 3}, {4, 1}}); }

// Tries every vertex subset of even size >= 4 in every cyclic order.
bool brute_force_has_cycle(const SRGraph& g) {
  const std::size_t n = g.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int c = std::popcount(mask);
    if (c < 4 || c % 2 != 0) continue;
    std::vector<std::size_t> vs;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) vs.push_back(i);
    }
    do {
      bool ok = true;
      for (std::size_t k = 0; k < vs.size() && ok; ++k) {
        const auto u = vs[k];
        const auto v = vs[(k + 1) % vs.size()];
        ok = k % 2 == 0 ? g.has_e(u, v) : g.has_f(u, v);
      }
      if (ok) return true;
    } while (std::next_permutation(vs.begin() + 1, vs.end()));
  }
  return false;
}

std::size_t union_components(const SRGraph& g, std::optional<std::size_t> skip) {
  const std::size_t n = g.size();
  std::vector<int> seen(n, 0);
  std::size_t count = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s] || (skip && *skip == s)) continue;
    ++count;
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] || (skip && *skip == v) || !(g.has_e(u, v) || g.has_f(u, v))) continue;
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return count;
}

std::vector<VertexId> brute_force_cut(const SRGraph& g) {
  std::vector<VertexId> out;
  const auto base = union_components(g, std::nullopt);
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (union_components(g, v) > base) out.push_back(g.vertices()[v]);
  }
  return out;
}

}  // namespace

TEST(SRGraph, ValidateExamples) {
  EXPECT_NO_THROW(make({1}, {}, {}));
  EXPECT_THROW(make({1, 2, 3}, {{1, 2}, {2, 3}}, {}), NonCompleteEComponent);
  EXPECT_THROW(make({1, 2}, {{1, 2}}, {{1, 2}}), DisjointnessViolation);
  EXPECT_THROW(make({1, 2}, {{1, 1}}, {}), MalformedEdge);
  EXPECT_THROW(make({1, 2}, {{1, 3}}, {}), MalformedEdge);
  EXPECT_THROW(make({1, 1}, {}, {}), MalformedEdge);
  EXPECT_THROW(make({1, 2}, {{1, 2}, {2, 1}}, {}), MalformedEdge);
}

TEST(SRGraph, NonCompleteMessageNamesMissingPair) {
  try {
    make({1, 2, 3}, {{1, 2}, {2, 3}}, {});
    FAIL();
  } catch (const NonCompleteEComponent& e) {
    EXPECT_NE(std::string(e.what()).find("1"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
  }
}

TEST(SRGraph, StatsExamples) {
  auto s = stats(make({1}, {}, {}));
  EXPECT_EQ(s.c_g, 1u);
  EXPECT_EQ(s.c_h, 1u);
  EXPECT_EQ(s.i_g, std::vector<VertexId>{1});
  EXPECT_EQ(s.i_h, std::vector<VertexId>{1});
  EXPECT_TRUE(s.cut_vertices.empty());
  s = stats(four_cycle());
  EXPECT_EQ(s.c_g, 2u);
  EXPECT_EQ(s.c_h, 2u);
  EXPECT_TRUE(s.i_g.empty() && s.i_h.empty() && s.cut_vertices.empty());
  s = stats(make({1, 2, 3}, {{1, 2}}, {{2, 3}}));
  EXPECT_EQ(s.c_g, 2u);
  EXPECT_EQ(s.c_h, 2u);
  EXPECT_EQ(s.cut_vertices, std::vector<VertexId>{2});
}

TEST(SRGraph, FindCycleExamples) {
  EXPECT_EQ(find_sr_cycle(four_cycle()), (std::vector<VertexId>{1, 2, 3, 4}));
  EXPECT_FALSE(find_sr_cycle(make({1, 2}, {{1, 2}}, {})));
  EXPECT_FALSE(find_sr_cycle(make({1, 2, 3}, {{1, 2}}, {{2, 3}})));
}

TEST(SRGraph, FindCycleBudget) {
  const auto g = graph_from_partitions(std::vector<int>{0, 0, 1, 1, 2, 2}, std::vector<int>{0, 1, 2, 0, 1, 2});
  EXPECT_THROW(find_sr_cycle(g, 1), BudgetExceeded);
}

TEST(SRGraph, CriterionExamples) {
  EXPECT_FALSE(complete_criterion(make({1}, {}, {})));
  EXPECT_TRUE(complete_criterion(four_cycle()));
  EXPECT_FALSE(complete_criterion(make({1, 2, 3}, {{1, 2}}, {{2, 3}})));
  // F-component {1,2,3} is a path, not complete.
  EXPECT_THROW(complete_criterion(make({1, 2, 3}, {}, {{1, 2}, {2, 3}})), HypothesisViolation);
  // Disconnected union graph.
  EXPECT_THROW(complete_criterion(make({1, 2}, {}, {})), HypothesisViolation);
}

TEST(SRGraph, MultipartiteExamples) {
  const std::vector<VertexId> tri{1, 2, 3};
  EXPECT_EQ(complete_multipartite_parts(tri, std::vector<VertexPair>{{1, 2}, {1, 3}, {2, 3}}),
            (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(complete_multipartite_parts(tri, std::vector<VertexPair>{{1, 2}, {1, 3}}), (std::vector<std::size_t>{1, 2}));
  const std::vector<VertexId> path{1, 2, 3, 4};
  EXPECT_FALSE(complete_multipartite_parts(path, std::vector<VertexPair>{{1, 2}, {2, 3}, {3, 4}}));
  EXPECT_THROW(complete_multipartite_parts(path, std::vector<VertexPair>{{1, 2}}), PreconditionViolated);
}

TEST(SRGraph, MultipartiteHypothesesExamples) {
  EXPECT_FALSE(multipartite_hypotheses(make({1, 2, 3}, {{1, 2}}, {{1, 3}, {2, 3}})));
  EXPECT_FALSE(multipartite_hypotheses(make({1, 2, 3, 4}, {{1, 3}}, {{1, 2}, {1, 4}, {3, 2}, {3, 4}})));
  EXPECT_FALSE(multipartite_hypotheses(make({1, 2, 3}, {}, {})));
}

TEST(SRGraphProperty, SearchMatchesBruteForce) {
  Rng rng(21);
  std::size_t found = 0;
  for (int i = 0; i < 1500; ++i) {
    const auto g = random_sr_graph(rng, rng.range(3, 7), 0.2 + 0.1 * static_cast<double>(rng.below(7)));
    const auto cycle = find_sr_cycle(g);
    ASSERT_EQ(cycle.has_value(), brute_force_has_cycle(g));
    if (cycle) {
      ++found;
      EXPECT_TRUE(is_sr_cycle(g, *cycle));
      EXPECT_EQ((*cycle)[0], *std::min_element(cycle->begin(), cycle->end()));
    }
  }
  EXPECT_GT(found, 200u);
  EXPECT_LT(found, 1350u);
}

TEST(SRGraphProperty, CutVerticesMatchRemovalOracle) {
  Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_sr_graph(rng, rng.range(1, 9), 0.1 + 0.1 * static_cast<double>(rng.below(5)));
    EXPECT_EQ(cut_vertices(g), brute_force_cut(g));
  }
}

TEST(SRGraphProperty, CriterionMatchesBruteForceOnFamily) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& m : complete_family(n)) {
      const auto g = graph_from_partitions(m.e_blocks, m.f_blocks);
      ASSERT_EQ(complete_criterion(g), brute_force_has_cycle(g)) << "n=" << n;
      const auto s = stats(g);
      EXPECT_LE(s.c_g + s.c_h, g.size() + 1);
    }
  }
}

TEST(SRGraphProperty, CycleFreeInstancesHaveIsolatedOrCutVertex) {
  Rng rng(23);
  for (int i = 0; i < 2000; ++i) {
    const auto g = random_sr_graph(rng, rng.range(1, 8), 0.1 + 0.1 * static_cast<double>(rng.below(6)));
    if (brute_force_has_cycle(g)) continue;
    const auto s = stats(g);
    EXPECT_FALSE(s.i_g.empty() && s.i_h.empty() && s.cut_vertices.empty());
  }
}

TEST(SRGraphProperty, PlantedInstancesHaveCycles) {
  Rng rng(24);
  for (int i = 0; i < 100; ++i) {
    const auto g = planted_multipartite(rng);
    ASSERT_TRUE(multipartite_hypotheses(g));
    const auto c = find_sr_cycle(g);
    ASSERT_TRUE(c.has_value());
    EXPECT_TRUE(is_sr_cycle(g, *c));
  }
}

TEST(SRFamily, PartitionCounts) {
  // Bell numbers and partition numbers.
  EXPECT_EQ(set_partitions(5).size(), 52u);
  EXPECT_EQ(canonical_partitions(6).size(), 11u);
  EXPECT_EQ(complete_family(1).size(), 1u);
}

TEST(SRFamily, ParallelSweepsMatchSerial) {
  EXPECT_EQ(sweep_complete_family(1, 6, true), sweep_complete_family(1, 6, false));
  EXPECT_EQ(sweep_random_graphs(5, 500, 9, true), sweep_random_graphs(5, 500, 9, false));
  EXPECT_EQ(sweep_planted(5, 100, true), sweep_planted(5, 100, false));
}
