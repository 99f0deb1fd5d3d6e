#pragma once

// Seeded experiment suites shared by the acceptance runner and the CLI.
// Reports hold only counts and certificates (no timings), so equal seeds give
// byte-identical output.

#include <cstddef>
#include <cstdint>
#include <string>

#include "srkit/amalgam.hpp"
#include "srkit/hnn.hpp"
#include "srkit/json_io.hpp"

namespace srkit {

struct SuiteResult {
  std::string name;
  bool pass = false;
  Json report;
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  bool parallel = true;
  std::size_t max_len = 6;  // bound for mutual-reduction and relation checks
};

/// Complete-complete family on 1..max_n vertices: criterion against search.
SuiteResult suite_complete_family(const SuiteConfig& cfg, int max_n = 8);
/// c_g + c_h <= |V| + 1 on the family, plus the isolated/cut witness on the
/// family and on `random_count` random graphs with up to random_max_n vertices.
SuiteResult suite_inequality(const SuiteConfig& cfg, int max_n = 8, std::size_t random_count = 10000,
                             int random_max_n = 10);
SuiteResult suite_planted(const SuiteConfig& cfg, std::size_t count = 1000);
/// Isolated-product tables with the isolated set recomputed pairwise.
SuiteResult suite_lemma32(const SuiteConfig& cfg, std::size_t count = 50);
SuiteResult suite_lemma33(const SuiteConfig& cfg, std::size_t count = 50);
/// Conjugates of random M in F(a, b) by the locally-free witness.
SuiteResult suite_locally_free(const SuiteConfig& cfg, std::size_t count = 100);
SuiteResult suite_hnn(const SuiteConfig& cfg, std::size_t exhaustive_len = 8, std::size_t presentations = 20,
                      std::size_t witnesses = 20);
SuiteResult suite_amalgam(const SuiteConfig& cfg, std::size_t witnesses = 50);
/// Support bound over `runs` random runs; hypothesis checks use support_len.
SuiteResult suite_support(const SuiteConfig& cfg, std::size_t runs = 50, std::size_t support_len = 4);

/// The two fixed amalgams: A = F(a,h), B = F(b,k), h = k; and A = F(a,c),
/// B = F(b), c = b^2.
AmalgamPresentation fixed_amalgam(int which);

}  // namespace srkit
