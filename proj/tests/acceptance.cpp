// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "srkit/experiments.hpp"

using namespace srkit;

namespace {

// Wall-clock limits in seconds; 0 means no limit.
constexpr double kLimitFamily = 120.0;
constexpr double kLimitPlanted = 60.0;
constexpr double kLimitLocallyFree = 300.0;

struct Criterion {
  int id;
  std::string title;
  double limit;
  std::vector<std::function<SuiteResult(const SuiteConfig&)>> suites;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Acceptance runner");
  std::uint64_t seed = 1;
  std::string report_path;
  app.add_option("--seed", seed, "Seed shared by every suite");
  app.add_option("--report", report_path, "Write the suite reports to this JSON file");
  CLI11_PARSE(app, argc, argv);

  SuiteConfig cfg;
  cfg.seed = seed;
  cfg.max_len = 6;

  const std::vector<Criterion> criteria{
      {1, "criterion matches cycle search on the complete family (n <= 8)", kLimitFamily,
       {[](const SuiteConfig& c) { return suite_complete_family(c, 8); }}},
      {2, "component inequality and isolated/cut witness (family + 10000 random)", 0,
       {[](const SuiteConfig& c) { return suite_inequality(c, 8, 10000, 10); }}},
      {3, "planted multipartite instances all have cycles (1000)", kLimitPlanted,
       {[](const SuiteConfig& c) { return suite_planted(c, 1000); }}},
      {4, "isolated-product counts exceed n and m (50 + 50)", 0,
       {[](const SuiteConfig& c) { return suite_lemma32(c, 50); },
        [](const SuiteConfig& c) { return suite_lemma33(c, 50); }}},
      {5, "locally-free conjugators are mutually reduced at bound 6 (100)", kLimitLocallyFree,
       {[](const SuiteConfig& c) { return suite_locally_free(c, 100); }}},
      {6, "HNN word problem, pinch removal and witnesses", 0,
       {[](const SuiteConfig& c) { return suite_hnn(c, 8, 20, 20); }}},
      {7, "amalgam dichotomy, witnesses (50) and free generators", 0,
       {[](const SuiteConfig& c) { return suite_amalgam(c, 50); }}},
      {8, "support of w is at least 2 (50 runs)", 0,
       {[](const SuiteConfig& c) { return suite_support(c, 50, 4); }}},
  };

  bool all = true;
  Json reports = Json::array();
  std::vector<std::string> dumps;
  for (const auto& c : criteria) {
    bool pass = true;
    std::string detail;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& run : c.suites) {
      try {
        auto r = run(cfg);
        pass = pass && r.pass;
        detail += (detail.empty() ? "" : ", ") + r.name + (r.pass ? " ok" : " failed");
        dumps.push_back(r.report.dump());
        reports.push_back(std::move(r.report));
      } catch (const std::exception& e) {
        pass = false;
        detail += (detail.empty() ? "" : ", ") + std::string("error: ") + e.what();
        dumps.emplace_back();
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && secs > c.limit) {
      pass = false;
      detail += ", over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
    }
    std::printf("criterion %d %s  %s [%s] (%.1f s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), detail.c_str(),
                secs);
    std::fflush(stdout);
    all = all && pass;
  }

  // 9: every suite again with the same seed, compared byte for byte.
  {
    const auto start = std::chrono::steady_clock::now();
    std::size_t index = 0;
    std::size_t differing = 0;
    for (const auto& c : criteria) {
      for (const auto& run : c.suites) {
        std::string again;
        try {
          again = run(cfg).report.dump();
        } catch (const std::exception&) {
        }
        if (again.empty() || again != dumps[index]) ++differing;
        ++index;
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = differing == 0;
    std::printf("criterion 9 %s  same seed gives byte-identical reports [%zu of %zu suites differ] (%.1f s)\n",
                pass ? "PASS" : "FAIL", differing, index, secs);
    all = all && pass;
  }

  if (!report_path.empty()) {
    std::ofstream(report_path) << reports.dump(2) << '\n';
  }
  std::printf("acceptance %s (seed %llu)\n", all ? "PASS" : "FAIL", static_cast<unsigned long long>(seed));
  return all ? 0 : 1;
}
