#include "srkit/subgroups.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "srkit/error.hpp"

namespace srkit {

namespace {

using Edge = SubgroupAutomaton::Edge;

// Mutable graph used while folding. Vertices are never reused; merged ones
// are left with an empty incidence list.
class Folder {
public:
  explicit Folder(std::size_t rank) : rank_(rank) { add_vertex(); }

  int add_vertex() {
    inc_.emplace_back();
    return static_cast<int>(inc_.size()) - 1;
  }

  void add_edge(int from, int to, int gen, Word tag) {
    edges_.push_back({from, to, gen, std::move(tag)});
    alive_.push_back(true);
    const int id = static_cast<int>(edges_.size()) - 1;
    inc_[static_cast<std::size_t>(from)].push_back(id);
    if (to != from) inc_[static_cast<std::size_t>(to)].push_back(id);
  }

  // Adds a closed path at the base reading w, tagged so that it expresses `tag`.
  void add_petal(const Word& w, const Word& tag) {
    const auto letters = w.letters();
    int prev = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const int next = (i + 1 == letters.size()) ? 0 : add_vertex();
      const Letter l = letters[i];
      Word t = (i == 0) ? tag : Word{};
      if (l > 0) {
        add_edge(prev, next, generator_of(l), std::move(t));
      } else {
        add_edge(next, prev, generator_of(l), t.inverse());
      }
      prev = next;
    }
  }

  void fold() {
    std::vector<int> work;
    for (int v = 0; v < static_cast<int>(inc_.size()); ++v) work.push_back(v);
    while (!work.empty()) {
      const int v = work.back();
      work.pop_back();
      if (auto merged = fold_once_at(v)) {
        work.push_back(merged->first);
        work.push_back(merged->second);
      }
    }
  }

  // Removes hanging trees so every non-base vertex has degree >= 2.
  void prune() {
    std::vector<int> degree(inc_.size(), 0);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!alive_[e]) continue;
      ++degree[static_cast<std::size_t>(edges_[e].from)];
      ++degree[static_cast<std::size_t>(edges_[e].to)];
    }
    std::vector<int> queue;
    for (int v = 1; v < static_cast<int>(inc_.size()); ++v) {
      if (degree[static_cast<std::size_t>(v)] == 1) queue.push_back(v);
    }
    while (!queue.empty()) {
      const int v = queue.back();
      queue.pop_back();
      for (int e : inc_[static_cast<std::size_t>(v)]) {
        if (!alive_[static_cast<std::size_t>(e)]) continue;
        alive_[static_cast<std::size_t>(e)] = false;
        const auto& ed = edges_[static_cast<std::size_t>(e)];
        for (int end : {ed.from, ed.to}) {
          auto& d = degree[static_cast<std::size_t>(end)];
          --d;
          if (end != 0 && end != v && d == 1) queue.push_back(end);
        }
      }
    }
  }

  // Live edges with vertices renumbered densely (base stays 0).
  std::pair<std::vector<Edge>, std::size_t> extract() const {
    std::vector<int> id(inc_.size(), -1);
    id[0] = 0;
    int next = 1;
    std::vector<Edge> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (!alive_[e]) continue;
      Edge ed = edges_[e];
      for (int* end : {&ed.from, &ed.to}) {
        auto& slot = id[static_cast<std::size_t>(*end)];
        if (slot < 0) slot = next++;
        *end = slot;
      }
      out.push_back(std::move(ed));
    }
    return {std::move(out), static_cast<std::size_t>(next)};
  }

private:
  // Folds one colliding pair at v. Returns the vertices to revisit.
  std::optional<std::pair<int, int>> fold_once_at(int v) {
    // key: 2*gen + (0 out | 1 in)
    std::map<int, int> seen;
    for (int e : inc_[static_cast<std::size_t>(v)]) {
      if (!alive_[static_cast<std::size_t>(e)]) continue;
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      for (int dir = 0; dir < 2; ++dir) {
        if ((dir == 0 ? ed.from : ed.to) != v) continue;
        const int key = 2 * ed.gen + dir;
        auto [it, fresh] = seen.emplace(key, e);
        if (!fresh && it->second != e) return merge(v, it->second, e, dir);
      }
    }
    return std::nullopt;
  }

  std::pair<int, int> merge(int u, int e1, int e2, int dir) {
    auto far_end = [&](int e) {
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      return dir == 0 ? ed.to : ed.from;
    };
    auto oriented = [&](int e) {
      const auto& ed = edges_[static_cast<std::size_t>(e)];
      return dir == 0 ? ed.tag : ed.tag.inverse();
    };
    if (far_end(e2) == 0 && far_end(e1) != 0) std::swap(e1, e2);
    const int w1 = far_end(e1);
    const int w2 = far_end(e2);
    const Word s1 = oriented(e1);
    const Word s2 = oriented(e2);
    alive_[static_cast<std::size_t>(e2)] = false;
    if (w1 == w2) return {u, w1};

    const Word c = s1.inverse() * s2;
    const Word c_inv = c.inverse();
    auto& moved = inc_[static_cast<std::size_t>(w2)];
    for (int e : moved) {
      if (!alive_[static_cast<std::size_t>(e)]) continue;
      auto& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.from == w2) ed.tag = c * ed.tag;
      if (ed.to == w2) ed.tag = ed.tag * c_inv;
      if (ed.from == w2) ed.from = w1;
      if (ed.to == w2) ed.to = w1;
    }
    auto& target = inc_[static_cast<std::size_t>(w1)];
    for (int e : moved) {
      if (std::find(target.begin(), target.end(), e) == target.end()) target.push_back(e);
    }
    moved.clear();
    return {u == w2 ? w1 : u, w1};
  }

  std::size_t rank_;
  std::vector<Edge> edges_;
  std::vector<bool> alive_;
  std::vector<std::vector<int>> inc_;
};

// Folded graph with possibly dangling trees -> core basis via a shortlex spanning tree.
std::vector<Word> core_basis(std::size_t rank, std::vector<Edge> edges, std::size_t num_states);

}  // namespace

SubgroupAutomaton::SubgroupAutomaton(std::size_t rank, std::vector<Word> basis)
    : rank_(rank), basis_(std::move(basis)) {
  build_from({}, 1);
}

SubgroupAutomaton SubgroupAutomaton::from_generators(std::size_t rank, std::span<const Word> gens) {
  SubgroupAutomaton h(rank, std::vector<Word>(gens.begin(), gens.end()));
  Folder folder(rank);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].max_generator() >= static_cast<int>(rank)) {
      throw AlphabetMismatch("subgroup generator outside the ambient alphabet");
    }
    folder.add_petal(gens[i], Word::generator(static_cast<int>(i)));
  }
  folder.fold();
  folder.prune();
  auto [edges, n] = folder.extract();
  h.build_from(std::move(edges), n);
  return h;
}

void SubgroupAutomaton::build_from(std::vector<Edge> edges, std::size_t num_states) {
  // Temporary adjacency with the incoming numbering.
  std::vector<std::vector<int>> out(num_states, std::vector<int>(rank_, -1));
  std::vector<std::vector<int>> in(num_states, std::vector<int>(rank_, -1));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    out[static_cast<std::size_t>(edges[e].from)][static_cast<std::size_t>(edges[e].gen)] = static_cast<int>(e);
    in[static_cast<std::size_t>(edges[e].to)][static_cast<std::size_t>(edges[e].gen)] = static_cast<int>(e);
  }
  // Shortlex BFS renumbering.
  std::vector<int> order_of(num_states, -1);
  std::vector<Word> labels(num_states);
  std::deque<int> queue{0};
  order_of[0] = 0;
  std::vector<int> order{0};
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < rank_; ++g) {
      for (int sign : {1, -1}) {
        const int e = sign > 0 ? out[static_cast<std::size_t>(s)][g] : in[static_cast<std::size_t>(s)][g];
        if (e < 0) continue;
        const int t = sign > 0 ? edges[static_cast<std::size_t>(e)].to : edges[static_cast<std::size_t>(e)].from;
        if (order_of[static_cast<std::size_t>(t)] >= 0) continue;
        order_of[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
        order.push_back(t);
        labels[static_cast<std::size_t>(t)] =
            labels[static_cast<std::size_t>(s)] * Word::generator(static_cast<int>(g), sign);
        queue.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();
  for (auto& ed : edges) {
    ed.from = order_of[static_cast<std::size_t>(ed.from)];
    ed.to = order_of[static_cast<std::size_t>(ed.to)];
  }
  std::erase_if(edges, [](const Edge& ed) { return ed.from < 0 || ed.to < 0; });
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.from, a.gen) < std::tie(b.from, b.gen); });

  edges_ = std::move(edges);
  out_.assign(n, std::vector<int>(rank_, -1));
  in_.assign(n, std::vector<int>(rank_, -1));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[static_cast<std::size_t>(edges_[e].from)][static_cast<std::size_t>(edges_[e].gen)] = static_cast<int>(e);
    in_[static_cast<std::size_t>(edges_[e].to)][static_cast<std::size_t>(edges_[e].gen)] = static_cast<int>(e);
  }
  labels_.assign(n, Word{});
  for (std::size_t old = 0; old < num_states; ++old) {
    if (order_of[old] >= 0) labels_[static_cast<std::size_t>(order_of[old])] = labels[old];
  }
}

int SubgroupAutomaton::step(int state, Letter letter) const {
  const auto g = static_cast<std::size_t>(generator_of(letter));
  if (g >= rank_) return -1;
  const auto s = static_cast<std::size_t>(state);
  if (letter > 0) {
    const int e = out_[s][g];
    return e < 0 ? -1 : edges_[static_cast<std::size_t>(e)].to;
  }
  const int e = in_[s][g];
  return e < 0 ? -1 : edges_[static_cast<std::size_t>(e)].from;
}

bool SubgroupAutomaton::basis_is_free() const {
  for (const auto& b : basis_) {
    if (b.is_identity()) return false;
  }
  return subgroup_rank() == basis_.size();
}

bool SubgroupAutomaton::is_whole_group() const {
  return out_.size() == 1 && edges_.size() == rank_;
}

bool SubgroupAutomaton::contains(const Word& w) const {
  int s = 0;
  for (Letter l : w.letters()) {
    s = step(s, l);
    if (s < 0) return false;
  }
  return s == 0;
}

std::optional<Word> SubgroupAutomaton::express(const Word& w) const {
  int s = 0;
  Word expr;
  for (Letter l : w.letters()) {
    const auto g = static_cast<std::size_t>(generator_of(l));
    if (g >= rank_) return std::nullopt;
    const int e = l > 0 ? out_[static_cast<std::size_t>(s)][g] : in_[static_cast<std::size_t>(s)][g];
    if (e < 0) return std::nullopt;
    const auto& ed = edges_[static_cast<std::size_t>(e)];
    if (l > 0) {
      expr *= ed.tag;
      s = ed.to;
    } else {
      expr *= ed.tag.inverse();
      s = ed.from;
    }
  }
  if (s != 0) return std::nullopt;
  return expr;
}

Word SubgroupAutomaton::substitute(const Word& expression, std::span<const Word> images) {
  Word r;
  for (Letter l : expression.letters()) {
    const auto& img = images[static_cast<std::size_t>(generator_of(l))];
    r *= (l > 0 ? img : img.inverse());
  }
  return r;
}

std::vector<Word> SubgroupAutomaton::nielsen_basis() const {
  return core_basis(rank_, edges_, out_.size());
}

Word SubgroupAutomaton::coset_representative(const Word& w) const {
  const auto letters = w.letters();
  int s = 0;
  std::size_t i = 0;
  for (; i < letters.size(); ++i) {
    const int next = step(s, letters[i]);
    if (next < 0) break;
    s = next;
  }
  return labels_[static_cast<std::size_t>(s)] * Word::from_letters(letters.subspan(i));
}

SubgroupAutomaton SubgroupAutomaton::intersect(const SubgroupAutomaton& other) const {
  if (other.rank_ != rank_) throw AlphabetMismatch("intersecting subgroups of different free groups");
  std::map<std::pair<int, int>, int> id;
  std::vector<std::pair<int, int>> states{{0, 0}};
  id[{0, 0}] = 0;
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto [s1, s2] = states[k];
    for (std::size_t g = 0; g < rank_; ++g) {
      for (int sign : {1, -1}) {
        const Letter l = make_letter(static_cast<int>(g), sign);
        const int t1 = step(s1, l);
        const int t2 = other.step(s2, l);
        if (t1 < 0 || t2 < 0) continue;
        auto [it, fresh] = id.emplace(std::make_pair(t1, t2), static_cast<int>(states.size()));
        if (fresh) states.emplace_back(t1, t2);
        if (sign > 0) edges.push_back({static_cast<int>(k), it->second, static_cast<int>(g), Word{}});
      }
    }
  }
  const auto basis = core_basis(rank_, std::move(edges), states.size());
  return from_generators(rank_, basis);
}

SubgroupAutomaton SubgroupAutomaton::conjugate(const Word& g) const {
  std::vector<Word> gens;
  gens.reserve(basis_.size());
  for (const auto& b : basis_) gens.push_back(b.conjugate_by(g));
  return from_generators(rank_, gens);
}

bool SubgroupAutomaton::same_subgroup(const SubgroupAutomaton& other) const {
  if (rank_ != other.rank_ || out_.size() != other.out_.size() || edges_.size() != other.edges_.size()) {
    return false;
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& a = edges_[e];
    const auto& b = other.edges_[e];
    if (a.from != b.from || a.to != b.to || a.gen != b.gen) return false;
  }
  return true;
}

namespace {

std::vector<Word> core_basis(std::size_t rank, std::vector<Edge> edges, std::size_t num_states) {
  // Prune to the core, then read one basis element per non-tree edge.
  std::vector<int> degree(num_states, 0);
  for (const auto& e : edges) {
    ++degree[static_cast<std::size_t>(e.from)];
    ++degree[static_cast<std::size_t>(e.to)];
  }
  std::vector<bool> alive(edges.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!alive[e]) continue;
      const auto& ed = edges[e];
      const bool dangling = (ed.from != 0 && degree[static_cast<std::size_t>(ed.from)] == 1) ||
                            (ed.to != 0 && degree[static_cast<std::size_t>(ed.to)] == 1);
      if (dangling) {
        alive[e] = false;
        --degree[static_cast<std::size_t>(ed.from)];
        --degree[static_cast<std::size_t>(ed.to)];
        changed = true;
      }
    }
  }
  std::vector<Edge> core;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (alive[e]) core.push_back(edges[e]);
  }

  std::vector<std::vector<int>> out(num_states, std::vector<int>(rank, -1));
  std::vector<std::vector<int>> in(num_states, std::vector<int>(rank, -1));
  for (std::size_t e = 0; e < core.size(); ++e) {
    out[static_cast<std::size_t>(core[e].from)][static_cast<std::size_t>(core[e].gen)] = static_cast<int>(e);
    in[static_cast<std::size_t>(core[e].to)][static_cast<std::size_t>(core[e].gen)] = static_cast<int>(e);
  }
  std::vector<std::optional<Word>> label(num_states);
  std::vector<bool> tree(core.size(), false);
  label[0] = Word{};
  std::deque<int> queue{0};
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    for (std::size_t g = 0; g < rank; ++g) {
      for (int sign : {1, -1}) {
        const int e = sign > 0 ? out[static_cast<std::size_t>(s)][g] : in[static_cast<std::size_t>(s)][g];
        if (e < 0) continue;
        const int t = sign > 0 ? core[static_cast<std::size_t>(e)].to : core[static_cast<std::size_t>(e)].from;
        if (label[static_cast<std::size_t>(t)]) continue;
        label[static_cast<std::size_t>(t)] = *label[static_cast<std::size_t>(s)] * Word::generator(static_cast<int>(g), sign);
        tree[static_cast<std::size_t>(e)] = true;
        queue.push_back(t);
      }
    }
  }
  std::vector<std::size_t> order(core.size());
  for (std::size_t e = 0; e < core.size(); ++e) order[e] = e;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = core[a];
    const auto& y = core[b];
    const Word& lx = *label[static_cast<std::size_t>(x.from)];
    const Word& ly = *label[static_cast<std::size_t>(y.from)];
    if (lx != ly) return shortlex_less(lx, ly);
    return x.gen < y.gen;
  });
  std::vector<Word> basis;
  for (std::size_t e : order) {
    if (tree[e]) continue;
    const auto& ed = core[e];
    basis.push_back(*label[static_cast<std::size_t>(ed.from)] * Word::generator(ed.gen) *
                    label[static_cast<std::size_t>(ed.to)]->inverse());
  }
  return basis;
}

}  // namespace

}  // namespace srkit
