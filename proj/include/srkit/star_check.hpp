#pragma once

// Symmetric closures, conjugated sets, and bounded searches for products
// equal to the identity: mutual reduction of a family of sets, and relations
// among a list of elements.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "srkit/error.hpp"
#include "srkit/group_model.hpp"

namespace srkit {

inline constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

/// Linear: only g_i g_{i+1} for i < k count as adjacent. Cyclic also counts g_k g_1.
enum class Adjacency { Linear, Cyclic };

struct SearchOptions {
  std::size_t max_len = 6;
  std::uint64_t budget = kDefaultSearchBudget;  // group products computed
  Adjacency adjacency = Adjacency::Linear;
  bool parallel = true;
};

template <class E>
struct MutualVerdict {
  bool holds = true;
  std::size_t bound = 0;
  std::vector<E> witness;
  /// For each witness factor, the first set whose closure contains it.
  std::vector<std::size_t> witness_sets;
  std::uint64_t products = 0;
};

template <GroupModel G>
std::vector<typename G::Element> symmetric_closure(const G& g, std::span<const typename G::Element> m) {
  std::vector<typename G::Element> out;
  std::unordered_set<std::vector<Letter>, KeyHash> seen;
  for (const auto& x : m) {
    for (auto y : {x, g.invert(x)}) {
      if (seen.insert(g.key(y)).second) out.push_back(std::move(y));
    }
  }
  return out;
}

/// {x^-1 f x : f in m}, in the order of m.
template <GroupModel G>
std::vector<typename G::Element> conjugate_set(const G& g, std::span<const typename G::Element> m,
                                               const typename G::Element& x) {
  std::vector<typename G::Element> out;
  out.reserve(m.size());
  const auto xi = g.invert(x);
  for (const auto& f : m) out.push_back(g.multiply(g.multiply(xi, f), x));
  return out;
}

namespace detail {

template <class E>
struct Pool {
  std::vector<E> elems;
  std::vector<std::uint64_t> mask;  // bit j: element lies in the closure of set j
  std::size_t max_norm = 0;

  std::size_t size() const { return elems.size(); }
  bool legal(std::size_t i, std::size_t j) const { return (mask[i] & mask[j]) == 0; }
};

template <GroupModel G>
Pool<typename G::Element> make_pool(const G& g, std::span<const std::vector<typename G::Element>> sets) {
  if (sets.size() > 64) throw PreconditionViolated("at most 64 sets are supported");
  Pool<typename G::Element> pool;
  std::unordered_map<std::vector<Letter>, std::size_t, KeyHash> index;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (sets[j].empty()) throw EmptySet("set " + std::to_string(j + 1) + " is empty");
    for (const auto& x : sets[j]) {
      if (g.is_identity(x)) throw PreconditionViolated("set " + std::to_string(j + 1) + " contains the identity");
      for (auto y : {x, g.invert(x)}) {
        auto [it, fresh] = index.emplace(g.key(y), pool.elems.size());
        if (fresh) {
          pool.max_norm = std::max(pool.max_norm, g.norm(y));
          pool.elems.push_back(std::move(y));
          pool.mask.push_back(0);
        }
        pool.mask[it->second] |= std::uint64_t{1} << j;
      }
    }
  }
  return pool;
}

template <class E>
void fill_witness(const Pool<E>& pool, std::span<const std::uint32_t> seq, MutualVerdict<E>& v) {
  v.holds = false;
  for (auto i : seq) {
    v.witness.push_back(pool.elems[i]);
    v.witness_sets.push_back(static_cast<std::size_t>(std::countr_zero(pool.mask[i])));
  }
}

}  // namespace detail

/// Searches sequences g_1..g_k (2 <= k <= max_len) over the union of the
/// symmetric closures, with no adjacent pair inside a common closure, for a
/// product equal to the identity. Returns the shortest such sequence, least in
/// pool order among those (pool order: sets in order, each element followed
/// by its inverse).
///
/// Meet in the middle: suffix products of length floor(k/2) are hashed, then
/// prefixes are enumerated in parallel by first factor and matched against
/// inverse keys.
template <GroupModel G>
MutualVerdict<typename G::Element> check_mutually_reduced(const G& g,
                                                          std::span<const std::vector<typename G::Element>> sets,
                                                          const SearchOptions& opt = {}) {
  using E = typename G::Element;
  if (opt.max_len < 2) throw PreconditionViolated("max_len must be at least 2");
  const auto pool = detail::make_pool(g, sets);
  const std::size_t n = pool.size();
  const std::size_t L = pool.max_norm;
  const bool cyclic = opt.adjacency == Adjacency::Cyclic;
  MutualVerdict<E> verdict;
  verdict.bound = opt.max_len;
  std::atomic<std::uint64_t> products{0};
  std::atomic<bool> over{false};
  auto tick = [&] {
    if (products.fetch_add(1, std::memory_order_relaxed) + 1 > opt.budget) over.store(true, std::memory_order_relaxed);
  };

  for (std::size_t k = 2; k <= opt.max_len; ++k) {
    const std::size_t p = (k + 1) / 2;
    const std::size_t q = k - p;

    std::vector<std::uint32_t> flat;
    std::unordered_map<std::vector<Letter>, std::vector<std::uint32_t>, KeyHash> table;
    {
      std::vector<std::uint32_t> seq;
      std::vector<E> prod{g.identity()};
      auto rec = [&](auto&& self) -> void {
        if (over.load(std::memory_order_relaxed)) return;
        const std::size_t d = seq.size();
        if (g.norm(prod.back()) > (k - d) * L) return;
        if (d == q) {
          table[g.key(prod.back())].push_back(static_cast<std::uint32_t>(flat.size()));
          flat.insert(flat.end(), seq.begin(), seq.end());
          return;
        }
        for (std::size_t i = 0; i < n; ++i) {
          if (d > 0 && !pool.legal(seq.back(), i)) continue;
          tick();
          prod.push_back(g.multiply(prod.back(), pool.elems[i]));
          seq.push_back(static_cast<std::uint32_t>(i));
          self(self);
          seq.pop_back();
          prod.pop_back();
        }
      };
      rec(rec);
    }

    std::vector<std::vector<std::uint32_t>> found(n);
    std::atomic<std::size_t> best{n};
    std::exception_ptr error;
    const auto first_count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1) if (opt.parallel)
    for (std::ptrdiff_t fi = 0; fi < first_count; ++fi) {
      const auto f = static_cast<std::size_t>(fi);
      if (f > best.load() || over.load(std::memory_order_relaxed)) continue;
      try {
        std::vector<std::uint32_t> seq{static_cast<std::uint32_t>(f)};
        std::vector<E> prod{pool.elems[f]};
        auto rec = [&](auto&& self) -> bool {
          if (over.load(std::memory_order_relaxed)) return false;
          const std::size_t d = seq.size();
          if (g.norm(prod.back()) > (k - d) * L) return false;
          if (d == p) {
            auto it = table.find(g.key(g.invert(prod.back())));
            if (it == table.end()) return false;
            for (auto off : it->second) {
              const std::uint32_t s_first = flat[off];
              const std::uint32_t s_last = flat[off + q - 1];
              if (!pool.legal(seq.back(), s_first)) continue;
              if (cyclic && !pool.legal(s_last, seq.front())) continue;
              found[f] = seq;
              found[f].insert(found[f].end(), flat.begin() + off, flat.begin() + off + static_cast<std::ptrdiff_t>(q));
              return true;
            }
            return false;
          }
          for (std::size_t i = 0; i < n; ++i) {
            if (!pool.legal(seq.back(), i)) continue;
            tick();
            prod.push_back(g.multiply(prod.back(), pool.elems[i]));
            seq.push_back(static_cast<std::uint32_t>(i));
            const bool hit = self(self);
            seq.pop_back();
            prod.pop_back();
            if (hit) return true;
          }
          return false;
        };
        if (rec(rec)) {
          std::size_t cur = best.load();
          while (f < cur && !best.compare_exchange_weak(cur, f)) {
          }
        }
      } catch (...) {
#pragma omp critical(srkit_star_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    if (over) throw BudgetExceeded("mutual-reduction search exceeded " + std::to_string(opt.budget) + " products");
    for (std::size_t f = 0; f < n; ++f) {
      if (!found[f].empty()) {
        detail::fill_witness(pool, found[f], verdict);
        verdict.products = products.load();
        return verdict;
      }
    }
  }
  verdict.products = products.load();
  return verdict;
}

namespace reference {

/// Serial depth-first version of check_mutually_reduced with partial-product
/// pruning. Returns the same verdict.
template <GroupModel G>
MutualVerdict<typename G::Element> check_mutually_reduced(const G& g,
                                                          std::span<const std::vector<typename G::Element>> sets,
                                                          const SearchOptions& opt = {}) {
  using E = typename G::Element;
  if (opt.max_len < 2) throw PreconditionViolated("max_len must be at least 2");
  const auto pool = detail::make_pool(g, sets);
  const std::size_t n = pool.size();
  const std::size_t L = pool.max_norm;
  MutualVerdict<E> verdict;
  verdict.bound = opt.max_len;
  std::uint64_t products = 0;

  for (std::size_t k = 2; k <= opt.max_len; ++k) {
    std::vector<std::uint32_t> seq;
    std::vector<E> prod{g.identity()};
    auto rec = [&](auto&& self) -> bool {
      const std::size_t d = seq.size();
      if (g.norm(prod.back()) > (k - d) * L) return false;
      if (d == k) {
        if (!g.is_identity(prod.back())) return false;
        return opt.adjacency == Adjacency::Linear || pool.legal(seq.back(), seq.front());
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (d > 0 && !pool.legal(seq.back(), i)) continue;
        if (++products > opt.budget) {
          throw BudgetExceeded("mutual-reduction search exceeded " + std::to_string(opt.budget) + " products");
        }
        prod.push_back(g.multiply(prod.back(), pool.elems[i]));
        seq.push_back(static_cast<std::uint32_t>(i));
        if (self(self)) return true;
        seq.pop_back();
        prod.pop_back();
      }
      return false;
    };
    if (rec(rec)) {
      detail::fill_witness(pool, seq, verdict);
      verdict.products = products;
      return verdict;
    }
  }
  verdict.products = products;
  return verdict;
}

}  // namespace reference

/// Independent re-check of a counterexample: product is the identity, every
/// factor lies in some closure, and no adjacent pair shares a closure.
template <GroupModel G>
bool verify_counterexample(const G& g, std::span<const std::vector<typename G::Element>> sets,
                           std::span<const typename G::Element> witness, Adjacency adjacency = Adjacency::Linear) {
  if (witness.size() < 2) return false;
  std::vector<std::unordered_set<std::vector<Letter>, KeyHash>> closures;
  for (const auto& s : sets) {
    std::unordered_set<std::vector<Letter>, KeyHash> c;
    for (const auto& x : s) {
      c.insert(g.key(x));
      c.insert(g.key(g.invert(x)));
    }
    closures.push_back(std::move(c));
  }
  auto in = [&](std::size_t j, const auto& x) { return closures[j].count(g.key(x)) > 0; };
  auto clash = [&](const auto& x, const auto& y) {
    for (std::size_t j = 0; j < closures.size(); ++j) {
      if (in(j, x) && in(j, y)) return true;
    }
    return false;
  };
  auto prod = g.identity();
  for (std::size_t i = 0; i < witness.size(); ++i) {
    bool member = false;
    for (std::size_t j = 0; j < closures.size(); ++j) member = member || in(j, witness[i]);
    if (!member) return false;
    if (i + 1 < witness.size() && clash(witness[i], witness[i + 1])) return false;
    prod = g.multiply(prod, witness[i]);
  }
  if (adjacency == Adjacency::Cyclic && clash(witness.back(), witness.front())) return false;
  return g.is_identity(prod);
}

/// Conjugators x^(2p+i) y x^(2p+i), i = 1, 2, 3, with p the largest word length in m.
std::array<Word, 3> star_witness_locally_free(std::span<const Word> m, int x, int y);

/// Shortest nonempty freely reduced word over the gens (letter i+1 stands for
/// gens[i]) of length <= max_len whose value is the identity, if any.
template <GroupModel G>
std::optional<Word> find_relation(const G& g, std::span<const typename G::Element> gens, std::size_t max_len,
                                  std::uint64_t budget = kDefaultSearchBudget) {
  using E = typename G::Element;
  const std::size_t r = gens.size();
  std::vector<E> letters;
  std::vector<Letter> names;
  std::size_t L = 0;
  for (std::size_t i = 0; i < r; ++i) {
    letters.push_back(gens[i]);
    letters.push_back(g.invert(gens[i]));
    names.push_back(make_letter(static_cast<int>(i), 1));
    names.push_back(make_letter(static_cast<int>(i), -1));
    L = std::max(L, g.norm(gens[i]));
  }
  std::uint64_t products = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Letter> seq;
    std::vector<E> prod{g.identity()};
    auto rec = [&](auto&& self) -> bool {
      const std::size_t d = seq.size();
      if (g.norm(prod.back()) > (len - d) * L) return false;
      if (d == len) return g.is_identity(prod.back());
      for (std::size_t i = 0; i < letters.size(); ++i) {
        if (d > 0 && seq.back() == -names[i]) continue;
        if (++products > budget) throw BudgetExceeded("relation search exceeded " + std::to_string(budget) + " products");
        prod.push_back(g.multiply(prod.back(), letters[i]));
        seq.push_back(names[i]);
        if (self(self)) return true;
        seq.pop_back();
        prod.pop_back();
      }
      return false;
    };
    if (rec(rec)) return Word::from_letters(seq);
  }
  return std::nullopt;
}

template <class E>
struct CertificateVerdict {
  bool holds = true;
  std::size_t bound = 0;
  std::vector<E> z;
  std::optional<Word> relation;
  MutualVerdict<E> mutual;
};

/// {x_i} together with {x_i^-1 x_j : i != j}.
template <GroupModel G>
std::vector<typename G::Element> pairing_set(const G& g, std::span<const typename G::Element> xs) {
  std::vector<typename G::Element> out(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i != j) out.push_back(g.multiply(g.invert(xs[i]), xs[j]));
    }
  }
  return out;
}

/// z_i = x_i y_i^-1 has no relation up to max_len, and the sets built from the
/// x's and from the y's are mutually reduced up to max_len. When m1/m2 are
/// given they must equal those sets (StructureMismatch otherwise).
template <GroupModel G>
CertificateVerdict<typename G::Element> free_generator_certificate(
    const G& g, std::span<const std::pair<typename G::Element, typename G::Element>> pairing,
    const SearchOptions& opt = {}, const std::vector<typename G::Element>* m1 = nullptr,
    const std::vector<typename G::Element>* m2 = nullptr) {
  using E = typename G::Element;
  if (pairing.empty()) throw StructureMismatch("empty pairing");
  std::vector<E> xs;
  std::vector<E> ys;
  for (const auto& [x, y] : pairing) {
    xs.push_back(x);
    ys.push_back(y);
  }
  auto distinct_nontrivial = [&](const std::vector<E>& v, const char* name) {
    std::unordered_set<std::vector<Letter>, KeyHash> keys;
    for (const auto& e : v) {
      if (g.is_identity(e)) throw StructureMismatch(std::string(name) + " contains the identity");
      if (!keys.insert(g.key(e)).second) throw StructureMismatch(std::string(name) + " are not distinct");
    }
  };
  distinct_nontrivial(xs, "x_i");
  distinct_nontrivial(ys, "y_i");
  std::vector<std::vector<E>> sets{pairing_set(g, std::span<const E>(xs)), pairing_set(g, std::span<const E>(ys))};
  auto same_keys = [&](const std::vector<E>& a, const std::vector<E>& b) {
    std::unordered_set<std::vector<Letter>, KeyHash> ka;
    std::unordered_set<std::vector<Letter>, KeyHash> kb;
    for (const auto& e : a) ka.insert(g.key(e));
    for (const auto& e : b) kb.insert(g.key(e));
    return ka == kb;
  };
  if (m1 && !same_keys(*m1, sets[0])) throw StructureMismatch("M1 is not {x_i, x_i^-1 x_j}");
  if (m2 && !same_keys(*m2, sets[1])) throw StructureMismatch("M2 is not {y_i, y_i^-1 y_j}");

  CertificateVerdict<E> v;
  v.bound = opt.max_len;
  for (std::size_t i = 0; i < xs.size(); ++i) v.z.push_back(g.multiply(xs[i], g.invert(ys[i])));
  v.relation = find_relation(g, std::span<const E>(v.z), opt.max_len, opt.budget);
  v.mutual = check_mutually_reduced(g, std::span<const std::vector<E>>(sets), opt);
  v.holds = !v.relation && v.mutual.holds;
  return v;
}

}  // namespace srkit
