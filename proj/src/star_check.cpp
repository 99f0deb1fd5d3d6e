#include "srkit/star_check.hpp"

namespace srkit {

std::array<Word, 3> star_witness_locally_free(std::span<const Word> m, int x, int y) {
  if (m.empty()) throw EmptySet("M is empty");
  if (x == y) throw PreconditionViolated("x and y must be distinct generators");
  if (x < 0 || y < 0) throw PreconditionViolated("negative generator index");
  std::size_t p = 0;
  for (const auto& w : m) p = std::max(p, w.length());
  std::array<Word, 3> out;
  for (int i = 1; i <= 3; ++i) {
    const Word xp = Word::generator(x, static_cast<int>(2 * p) + i);
    out[static_cast<std::size_t>(i - 1)] = xp * Word::generator(y) * xp;
  }
  return out;
}

}  // namespace srkit
