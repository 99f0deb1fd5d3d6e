#include "srkit/sr_graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>

#include "srkit/error.hpp"

namespace srkit {

namespace {

std::string list_ids(std::span<const VertexId> ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ids[i]);
  }
  return s + "}";
}

VertexPair normalised(VertexPair p) {
  if (p.first > p.second) std::swap(p.first, p.second);
  return p;
}

}  // namespace

SRGraph SRGraph::validate(std::vector<VertexId> vertices, std::vector<VertexPair> e_edges,
                          std::vector<VertexPair> f_edges) {
  SRGraph g;
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end()) {
    throw MalformedEdge("duplicate vertex id");
  }
  g.ids_ = std::move(vertices);
  const std::size_t n = g.ids_.size();
  g.colour_.assign(n * n, 0);
  g.e_adj_.assign(n, {});
  g.f_adj_.assign(n, {});

  auto add = [&](std::vector<VertexPair>& edges, std::uint8_t colour, const char* name) {
    std::vector<VertexPair> out;
    out.reserve(edges.size());
    for (auto p : edges) {
      p = normalised(p);
      if (p.first == p.second) throw MalformedEdge(std::string("loop at vertex ") + std::to_string(p.first));
      auto i = g.index_of(p.first);
      auto j = g.index_of(p.second);
      if (!i || !j) {
        throw MalformedEdge(std::string(name) + "-edge " + std::to_string(p.first) + "-" + std::to_string(p.second) +
                            " has an unknown endpoint");
      }
      auto& slot = g.colour_[*i * n + *j];
      if (slot == colour) {
        throw MalformedEdge(std::string("repeated ") + name + "-edge " + std::to_string(p.first) + "-" +
                            std::to_string(p.second));
      }
      if (slot != 0) {
        throw DisjointnessViolation("edge " + std::to_string(p.first) + "-" + std::to_string(p.second) +
                                    " is in both E and F");
      }
      slot = colour;
      g.colour_[*j * n + *i] = colour;
      auto& adj = colour == 1 ? g.e_adj_ : g.f_adj_;
      adj[*i].push_back(*j);
      adj[*j].push_back(*i);
      out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  g.e_ = add(e_edges, 1, "E");
  g.f_ = add(f_edges, 2, "F");
  for (auto& a : g.e_adj_) std::sort(a.begin(), a.end());
  for (auto& a : g.f_adj_) std::sort(a.begin(), a.end());

  for (const auto& comp : components(g, Colour::E)) {
    for (std::size_t x = 0; x < comp.size(); ++x) {
      for (std::size_t y = x + 1; y < comp.size(); ++y) {
        if (!g.has_e(*g.index_of(comp[x]), *g.index_of(comp[y]))) {
          throw NonCompleteEComponent("E-component " + list_ids(comp) + " is not complete: " +
                                      std::to_string(comp[x]) + "-" + std::to_string(comp[y]) + " missing");
        }
      }
    }
  }
  return g;
}

std::optional<std::size_t> SRGraph::index_of(VertexId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

SRGraph SRGraph::induced(std::span<const VertexId> keep) const {
  std::set<VertexId> k(keep.begin(), keep.end());
  std::vector<VertexPair> e;
  std::vector<VertexPair> f;
  for (const auto& p : e_) {
    if (k.count(p.first) && k.count(p.second)) e.push_back(p);
  }
  for (const auto& p : f_) {
    if (k.count(p.first) && k.count(p.second)) f.push_back(p);
  }
  return validate({k.begin(), k.end()}, std::move(e), std::move(f));
}

SRGraph SRGraph::without(VertexId v) const {
  std::vector<VertexId> keep;
  for (VertexId id : ids_) {
    if (id != v) keep.push_back(id);
  }
  return induced(keep);
}

std::vector<std::size_t> component_labels(const SRGraph& g, Colour which, std::size_t* count) {
  const std::size_t n = g.size();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      auto visit = [&](const std::vector<std::size_t>& adj) {
        for (std::size_t w : adj) {
          if (label[w] == n) {
            label[w] = next;
            stack.push_back(w);
          }
        }
      };
      if (which != Colour::F) visit(g.e_neighbours(v));
      if (which != Colour::E) visit(g.f_neighbours(v));
    }
    ++next;
  }
  if (count) *count = next;
  return label;
}

std::size_t component_count(const SRGraph& g, Colour which) {
  std::size_t c = 0;
  component_labels(g, which, &c);
  return c;
}

std::vector<std::vector<VertexId>> components(const SRGraph& g, Colour which) {
  std::size_t c = 0;
  const auto label = component_labels(g, which, &c);
  std::vector<std::vector<VertexId>> out(c);
  for (std::size_t i = 0; i < g.size(); ++i) out[label[i]].push_back(g.vertices()[i]);
  return out;
}

std::vector<VertexId> cut_vertices(const SRGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> disc(n, -1);
  std::vector<int> low(n, 0);
  std::vector<bool> cut(n, false);
  int timer = 0;
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    auto step = [&](std::size_t w) {
      if (w == parent) return;
      if (disc[w] >= 0) {
        low[v] = std::min(low[v], disc[w]);
        return;
      }
      ++children;
      dfs(w, v);
      low[v] = std::min(low[v], low[w]);
      if (parent != n && low[w] >= disc[v]) cut[v] = true;
    };
    for (std::size_t w : g.e_neighbours(v)) step(w);
    for (std::size_t w : g.f_neighbours(v)) step(w);
    if (parent == n && children > 1) cut[v] = true;
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (disc[v] < 0) dfs(v, n);
  }
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (cut[v]) out.push_back(g.vertices()[v]);
  }
  return out;
}

GraphStats stats(const SRGraph& g) {
  GraphStats s;
  s.c_g = component_count(g, Colour::E);
  s.c_h = component_count(g, Colour::F);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.e_neighbours(i).empty()) s.i_g.push_back(g.vertices()[i]);
    if (g.f_neighbours(i).empty()) s.i_h.push_back(g.vertices()[i]);
  }
  s.cut_vertices = cut_vertices(g);
  return s;
}

std::optional<std::vector<VertexId>> find_sr_cycle(const SRGraph& g, std::uint64_t budget) {
  const std::size_t n = g.size();
  std::uint64_t expanded = 0;
  std::vector<bool> on_path(n, false);
  std::vector<std::size_t> path;

  // Extends `path`; the next edge is E when path.size() is odd.
  std::function<bool(std::size_t)> extend = [&](std::size_t anchor) -> bool {
    if (++expanded > budget) throw BudgetExceeded("SR-cycle search exceeded " + std::to_string(budget) + " expansions");
    const std::size_t last = path.back();
    if (path.size() >= 4 && path.size() % 2 == 0 && g.has_f(last, anchor)) return true;
    const bool use_e = path.size() % 2 == 1;
    for (std::size_t w : use_e ? g.e_neighbours(last) : g.f_neighbours(last)) {
      if (w <= anchor || on_path[w]) continue;
      on_path[w] = true;
      path.push_back(w);
      if (extend(anchor)) return true;
      path.pop_back();
      on_path[w] = false;
    }
    return false;
  };

  std::size_t count = 0;
  const auto label = component_labels(g, Colour::Union, &count);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t anchor = 0; anchor < n; ++anchor) {
      if (label[anchor] != c) continue;
      path.assign(1, anchor);
      on_path[anchor] = true;
      const bool found = extend(anchor);
      on_path[anchor] = false;
      if (found) {
        std::vector<VertexId> cycle;
        for (std::size_t i : path) cycle.push_back(g.vertices()[i]);
        return cycle;
      }
    }
  }
  return std::nullopt;
}

bool is_sr_cycle(const SRGraph& g, std::span<const VertexId> cycle) {
  const std::size_t c = cycle.size();
  if (c < 4 || c % 2 != 0) return false;
  std::vector<std::size_t> idx;
  for (VertexId v : cycle) {
    auto i = g.index_of(v);
    if (!i) return false;
    idx.push_back(*i);
  }
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t k = 0; k < c; ++k) {
    const std::size_t a = idx[k];
    const std::size_t b = idx[(k + 1) % c];
    if (k % 2 == 0 ? !g.has_e(a, b) : !g.has_f(a, b)) return false;
  }
  return true;
}

bool complete_criterion(const SRGraph& g) {
  if (component_count(g, Colour::Union) != 1) {
    throw HypothesisViolation("union graph is not connected");
  }
  for (const auto& comp : components(g, Colour::F)) {
    for (std::size_t x = 0; x < comp.size(); ++x) {
      for (std::size_t y = x + 1; y < comp.size(); ++y) {
        if (!g.has_f(*g.index_of(comp[x]), *g.index_of(comp[y]))) {
          throw HypothesisViolation("F-component " + list_ids(comp) + " is not complete");
        }
      }
    }
  }
  return component_count(g, Colour::E) + component_count(g, Colour::F) < g.size() + 1;
}

std::optional<std::vector<std::size_t>> complete_multipartite_parts(std::span<const VertexId> vertex_set,
                                                                    std::span<const VertexPair> f_edges) {
  std::vector<VertexId> vs(vertex_set.begin(), vertex_set.end());
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  const std::size_t n = vs.size();
  if (n == 0) throw PreconditionViolated("empty vertex set");
  auto at = [&](VertexId v) -> std::optional<std::size_t> {
    auto it = std::lower_bound(vs.begin(), vs.end(), v);
    if (it == vs.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vs.begin());
  };
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : f_edges) {
    auto i = at(u);
    auto j = at(v);
    if (i && j && *i != *j) adj[*i][*j] = adj[*j][*i] = true;
  }
  // Connectivity of the induced F-subgraph.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w) {
      if (adj[v][w] && !seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw PreconditionViolated("vertex set does not induce a connected F-subgraph");

  // Complete multipartite iff the complement is a disjoint union of cliques.
  std::vector<std::size_t> part(n, n);
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < n; ++s) {
    if (part[s] != n) continue;
    const std::size_t p = sizes.size();
    sizes.push_back(0);
    for (std::size_t w = s; w < n; ++w) {
      if (w == s || !adj[s][w]) {
        if (part[w] != n) return std::nullopt;
        part[w] = p;
        ++sizes[p];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if ((part[i] == part[j]) == adj[i][j]) return std::nullopt;
    }
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

bool multipartite_hypotheses(const SRGraph& g) {
  const auto comps = components(g, Colour::F);
  std::size_t isolated_g = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.e_neighbours(i).empty()) ++isolated_g;
  }
  if (isolated_g > comps.size()) return false;
  for (const auto& comp : comps) {
    auto parts = complete_multipartite_parts(comp, g.f_edges());
    if (!parts) return false;
    if (comp.size() <= 2 * parts->back()) return false;
  }
  return true;
}

}  // namespace srkit
