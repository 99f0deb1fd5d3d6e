#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "srkit/words.hpp"

namespace srkit {

/// What the generic searches need from a group. `norm` must be subadditive
/// and inverse-invariant with norm(1) = 0; `key` must be injective on
/// elements (a flattened normal form).
template <class G>
concept GroupModel = requires(const G& g, const typename G::Element& x) {
  typename G::Element;
  { g.multiply(x, x) } -> std::convertible_to<typename G::Element>;
  { g.invert(x) } -> std::convertible_to<typename G::Element>;
  { g.identity() } -> std::convertible_to<typename G::Element>;
  { g.is_identity(x) } -> std::convertible_to<bool>;
  { g.norm(x) } -> std::convertible_to<std::size_t>;
  { g.key(x) } -> std::convertible_to<std::vector<Letter>>;
  { g.format(x) } -> std::convertible_to<std::string>;
};

struct KeyHash {
  std::size_t operator()(const std::vector<Letter>& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Letter l : k) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

}  // namespace srkit
