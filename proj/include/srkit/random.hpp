#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace srkit {

/// Seeded generator. Only the raw mt19937_64 stream is used (no std
/// distributions), so a seed gives the same draws on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Inclusive range.
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

  /// Independent child stream, for handing one generator to each task.
  Rng split(std::uint64_t stream) { return Rng(next() ^ (0x9e3779b97f4a7c15ULL * (stream + 1))); }

private:
  std::mt19937_64 engine_;
};

}  // namespace srkit
