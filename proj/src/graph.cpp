#include "aot/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "aot/errors.hpp"

namespace aot {

// ---------------------------------------------------------------------------
// SimpleGraph / EdgeOrdering

SimpleGraph::SimpleGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0 || n > kMaxVertices) throw domain_error("vertex count must be in [0, 32], got " + std::to_string(n));
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n) throw domain_error("edge endpoint out of range");
    if (e.u == e.v) throw domain_error("loop at vertex " + std::to_string(e.u));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw domain_error("parallel edge");
  adjacency_.assign(static_cast<std::size_t>(n), 0);
  for (const Edge& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u)] |= 1u << e.v;
    adjacency_[static_cast<std::size_t>(e.v)] |= 1u << e.u;
  }
}

bool SimpleGraph::has_edge(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  return (adjacency_[static_cast<std::size_t>(u)] >> v) & 1u;
}

int SimpleGraph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || it->u != u || it->v != v) return -1;
  return static_cast<int>(it - edges_.begin());
}

int SimpleGraph::degree(int v) const { return std::popcount(adjacency_[static_cast<std::size_t>(v)]); }

int SimpleGraph::component_count() const {
  std::uint32_t seen = 0;
  int count = 0;
  for (int s = 0; s < n_; ++s) {
    if ((seen >> s) & 1u) continue;
    ++count;
    std::uint32_t frontier = 1u << s;
    seen |= frontier;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t fresh = adjacency_[static_cast<std::size_t>(v)] & ~seen;
      seen |= fresh;
      frontier |= fresh;
    }
  }
  return count;
}

SimpleGraph SimpleGraph::relabeled(const std::vector<int>& perm) const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back({perm[static_cast<std::size_t>(e.u)], perm[static_cast<std::size_t>(e.v)]});
  return SimpleGraph(n_, std::move(out));
}

EdgeOrdering::EdgeOrdering(std::vector<int> perm) : perm_(std::move(perm)), rank_(perm_.size(), -1) {
  for (std::size_t r = 0; r < perm_.size(); ++r) {
    int e = perm_[r];
    if (e < 0 || static_cast<std::size_t>(e) >= perm_.size() || rank_[static_cast<std::size_t>(e)] != -1)
      throw domain_error("edge ordering is not a permutation");
    rank_[static_cast<std::size_t>(e)] = static_cast<int>(r);
  }
}

EdgeOrdering EdgeOrdering::identity(std::size_t edges) {
  std::vector<int> perm(edges);
  std::iota(perm.begin(), perm.end(), 0);
  return EdgeOrdering(std::move(perm));
}

// ---------------------------------------------------------------------------
// graph6

namespace {
constexpr std::string_view kGraph6Header = ">>graph6<<";
}

SimpleGraph parse_graph6(std::string_view text) {
  std::size_t offset = 0;
  if (text.substr(0, kGraph6Header.size()) == kGraph6Header) offset = kGraph6Header.size();
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  if (offset >= text.size()) throw parse_error("graph6: missing size byte", offset);

  auto byte_at = [&](std::size_t i) {
    int b = static_cast<unsigned char>(text[i]);
    if (b < 63 || b > 126) throw parse_error("graph6: byte out of range", i);
    return b - 63;
  };
  int first = byte_at(offset);
  if (first == 63) throw parse_error("graph6: graphs with more than 62 vertices are not supported", offset);
  int n = first;
  if (n > SimpleGraph::kMaxVertices) throw parse_error("graph6: more than 32 vertices", offset);

  const std::size_t bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
  const std::size_t body = (bits + 5) / 6;
  const std::size_t start = offset + 1;
  if (text.size() < start + body) throw parse_error("graph6: truncated adjacency data", text.size());
  if (text.size() > start + body) throw parse_error("graph6: trailing garbage", start + body);

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      int chunk = byte_at(start + k / 6);
      if ((chunk >> (5 - static_cast<int>(k % 6))) & 1) edges.push_back({i, j});
    }
  }
  for (; k < body * 6; ++k) {
    if ((byte_at(start + k / 6) >> (5 - static_cast<int>(k % 6))) & 1)
      throw parse_error("graph6: nonzero padding bit", start + k / 6);
  }
  return SimpleGraph(n, std::move(edges));
}

std::string to_graph6(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::string out(1, static_cast<char>(63 + n));
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

// ---------------------------------------------------------------------------
// Canonical labeling: equitable refinement + individualization, keeping the
// labeling whose upper-triangle adjacency string (graph6 order) is smallest.

namespace {

using Partition = std::vector<std::vector<int>>;

std::uint32_t cell_mask(const std::vector<int>& cell) {
  std::uint32_t m = 0;
  for (int v : cell) m |= 1u << v;
  return m;
}

void refine(const SimpleGraph& g, Partition& cells) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t w = 0; w < cells.size() && !changed; ++w) {
      const std::uint32_t splitter = cell_mask(cells[w]);
      Partition next;
      next.reserve(cells.size() + 4);
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::map<int, std::vector<int>> groups;
        for (int v : cell) groups[std::popcount(g.neighbours(v) & splitter)].push_back(v);
        if (groups.size() > 1) changed = true;
        for (auto& [count, members] : groups) next.push_back(std::move(members));
      }
      if (changed) cells = std::move(next);
    }
  }
}

struct CanonSearch {
  const SimpleGraph& g;
  std::vector<bool> best_code;
  std::vector<int> best_lab;

  std::vector<bool> code_of(const std::vector<int>& lab) const {
    const int n = g.vertex_count();
    std::vector<bool> code;
    code.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) code.push_back(g.has_edge(lab[static_cast<std::size_t>(i)], lab[static_cast<std::size_t>(j)]));
    return code;
  }

  void search(Partition cells) {
    refine(g, cells);
    auto open = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (open == cells.end()) {
      std::vector<int> lab;
      lab.reserve(cells.size());
      for (const auto& c : cells) lab.push_back(c[0]);
      auto code = code_of(lab);
      if (best_lab.empty() || code < best_code) {
        best_code = std::move(code);
        best_lab = std::move(lab);
      }
      return;
    }
    const std::size_t k = static_cast<std::size_t>(open - cells.begin());
    const std::vector<int> cell = cells[k];
    for (int v : cell) {
      Partition next = cells;
      std::vector<int> rest;
      for (int u : cell)
        if (u != v) rest.push_back(u);
      next[k] = std::move(rest);
      next.insert(next.begin() + static_cast<std::ptrdiff_t>(k), std::vector<int>{v});
      search(std::move(next));
    }
  }
};

}  // namespace

std::vector<int> canonical_labeling(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> result(static_cast<std::size_t>(n));
  if (n == 0) return result;
  Partition start(1);
  start[0].resize(static_cast<std::size_t>(n));
  std::iota(start[0].begin(), start[0].end(), 0);
  CanonSearch s{g, {}, {}};
  s.search(std::move(start));
  for (int pos = 0; pos < n; ++pos) result[static_cast<std::size_t>(s.best_lab[static_cast<std::size_t>(pos)])] = pos;
  return result;
}

SimpleGraph canonical_form(const SimpleGraph& g) { return g.relabeled(canonical_labeling(g)); }

std::vector<SimpleGraph> enumerate_graphs(int n, bool connected_only) {
  if (n < 1 || n > 8) throw domain_error("graph enumeration supports 1 <= n <= 8");
  std::vector<SimpleGraph> level{SimpleGraph(1, {})};
  for (int k = 2; k <= n; ++k) {
    std::map<std::string, SimpleGraph> seen;
    for (const SimpleGraph& g : level) {
      for (std::uint32_t nb = 0; nb < (1u << (k - 1)); ++nb) {
        std::vector<Edge> edges = g.edges();
        for (int v = 0; v < k - 1; ++v)
          if ((nb >> v) & 1u) edges.push_back({v, k - 1});
        SimpleGraph c = canonical_form(SimpleGraph(k, std::move(edges)));
        std::string key = to_graph6(c);
        seen.try_emplace(std::move(key), std::move(c));
      }
    }
    level.clear();
    for (auto& [key, g] : seen) level.push_back(std::move(g));
  }
  std::vector<std::pair<std::pair<std::size_t, std::string>, SimpleGraph>> keyed;
  for (auto& g : level) {
    if (connected_only && !g.is_connected()) continue;
    keyed.push_back({{g.edge_count(), to_graph6(g)}, std::move(g)});
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SimpleGraph> out;
  out.reserve(keyed.size());
  for (auto& [key, g] : keyed) out.push_back(std::move(g));
  return out;
}

// ---------------------------------------------------------------------------
// Structure

bool is_chordal(const SimpleGraph& g) {
  const int n = g.vertex_count();
  // Maximum cardinality search; the reverse visit order is a perfect
  // elimination ordering iff g is chordal.
  std::vector<int> weight(static_cast<std::size_t>(n), 0);
  std::vector<int> order;
  std::vector<int> position(static_cast<std::size_t>(n), -1);
  std::uint32_t visited = 0;
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int v = 0; v < n; ++v)
      if (!((visited >> v) & 1u) && (pick < 0 || weight[static_cast<std::size_t>(v)] > weight[static_cast<std::size_t>(pick)])) pick = v;
    visited |= 1u << pick;
    position[static_cast<std::size_t>(pick)] = step;
    order.push_back(pick);
    std::uint32_t nb = g.neighbours(pick) & ~visited;
    while (nb) {
      int u = std::countr_zero(nb);
      nb &= nb - 1;
      ++weight[static_cast<std::size_t>(u)];
    }
  }
  for (int v : order) {
    std::uint32_t earlier = 0;
    std::uint32_t nb = g.neighbours(v);
    int latest = -1;
    while (nb) {
      int u = std::countr_zero(nb);
      nb &= nb - 1;
      if (position[static_cast<std::size_t>(u)] < position[static_cast<std::size_t>(v)]) {
        earlier |= 1u << u;
        if (latest < 0 || position[static_cast<std::size_t>(u)] > position[static_cast<std::size_t>(latest)]) latest = u;
      }
    }
    if (latest < 0) continue;
    std::uint32_t others = earlier & ~(1u << latest);
    if ((g.neighbours(latest) & others) != others) return false;
  }
  return true;
}

std::vector<Cycle> enumerate_circuits(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<Cycle> out;
  std::vector<int> path;
  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    std::uint32_t on_path = 1u << s;
    const std::uint32_t allowed = ~((2u << s) - 1);  // vertices > s
    auto dfs = [&](auto&& self, int v) -> void {
      std::uint32_t nb = g.neighbours(v);
      if (path.size() >= 3 && ((nb >> s) & 1u) && path[1] < path.back()) {
        Cycle c;
        c.vertices = path;
        for (std::size_t i = 0; i < path.size(); ++i)
          c.edges.push_back(g.edge_index(path[i], path[(i + 1) % path.size()]));
        std::sort(c.edges.begin(), c.edges.end());
        out.push_back(std::move(c));
      }
      nb &= allowed & ~on_path;
      while (nb) {
        int u = std::countr_zero(nb);
        nb &= nb - 1;
        path.push_back(u);
        on_path |= 1u << u;
        self(self, u);
        on_path &= ~(1u << u);
        path.pop_back();
      }
    };
    dfs(dfs, s);
  }
  return out;
}

Block edge_subgraph(const SimpleGraph& g, const std::vector<int>& edges) {
  Block b;
  std::uint32_t used = 0;
  for (int e : edges) used |= (1u << g.edge(static_cast<std::size_t>(e)).u) | (1u << g.edge(static_cast<std::size_t>(e)).v);
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if ((used >> v) & 1u) {
      local[static_cast<std::size_t>(v)] = static_cast<int>(b.vertices.size());
      b.vertices.push_back(v);
    }
  }
  std::vector<Edge> local_edges;
  for (int e : edges) {
    const Edge& pe = g.edge(static_cast<std::size_t>(e));
    local_edges.push_back({local[static_cast<std::size_t>(pe.u)], local[static_cast<std::size_t>(pe.v)]});
  }
  b.graph = SimpleGraph(static_cast<int>(b.vertices.size()), std::move(local_edges));
  for (const Edge& le : b.graph.edges())
    b.edges.push_back(g.edge_index(b.vertices[static_cast<std::size_t>(le.u)], b.vertices[static_cast<std::size_t>(le.v)]));
  return b;
}

BlockDecomposition blocks(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> disc(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<int> edge_stack;
  std::vector<std::vector<int>> groups;
  int timer = 0;

  auto dfs = [&](auto&& self, int v, int parent_edge) -> void {
    disc[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = timer++;
    std::uint32_t nb = g.neighbours(v);
    while (nb) {
      int u = std::countr_zero(nb);
      nb &= nb - 1;
      int e = g.edge_index(v, u);
      if (e == parent_edge) continue;
      if (disc[static_cast<std::size_t>(u)] < 0) {
        edge_stack.push_back(e);
        self(self, u, e);
        low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(u)]);
        if (low[static_cast<std::size_t>(u)] >= disc[static_cast<std::size_t>(v)]) {
          std::vector<int> group;
          while (true) {
            int top = edge_stack.back();
            edge_stack.pop_back();
            group.push_back(top);
            if (top == e) break;
          }
          std::sort(group.begin(), group.end());
          groups.push_back(std::move(group));
        }
      } else if (disc[static_cast<std::size_t>(u)] < disc[static_cast<std::size_t>(v)]) {
        edge_stack.push_back(e);
        low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(u)]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[static_cast<std::size_t>(v)] < 0) dfs(dfs, v, -1);

  std::sort(groups.begin(), groups.end());
  BlockDecomposition out;
  for (const auto& group : groups) {
    Block b = edge_subgraph(g, group);
    b.is_bridge = group.size() == 1;
    if (b.is_bridge) out.bridges.push_back(group[0]);
    out.blocks.push_back(std::move(b));
  }
  std::sort(out.bridges.begin(), out.bridges.end());
  return out;
}

std::vector<Block> components(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<Block> out;
  std::uint32_t seen = 0;
  for (int s = 0; s < n; ++s) {
    if ((seen >> s) & 1u) continue;
    std::uint32_t comp = 1u << s, frontier = comp;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t fresh = g.neighbours(v) & ~comp;
      comp |= fresh;
      frontier |= fresh;
    }
    seen |= comp;
    Block b;
    std::vector<int> local(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
      if ((comp >> v) & 1u) {
        local[static_cast<std::size_t>(v)] = static_cast<int>(b.vertices.size());
        b.vertices.push_back(v);
      }
    std::vector<Edge> le;
    for (const Edge& e : g.edges())
      if ((comp >> e.u) & 1u) le.push_back({local[static_cast<std::size_t>(e.u)], local[static_cast<std::size_t>(e.v)]});
    b.graph = SimpleGraph(static_cast<int>(b.vertices.size()), std::move(le));
    for (const Edge& e : b.graph.edges())
      b.edges.push_back(g.edge_index(b.vertices[static_cast<std::size_t>(e.u)], b.vertices[static_cast<std::size_t>(e.v)]));
    out.push_back(std::move(b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clique counts and the chordal product formula

CliqueProfile clique_counts(const SimpleGraph& g) {
  const int n = g.vertex_count();
  if (n > 16) throw size_guard_error("clique_counts supports at most 16 vertices");
  CliqueProfile p;
  p.kappa.assign(static_cast<std::size_t>(std::max(n, 1)), 0);
  if (n == 0) p.kappa.clear();
  // Extend cliques only by larger vertices, so each clique is counted once.
  auto extend = [&](auto&& self, std::size_t size, std::uint32_t candidates) -> void {
    ++p.kappa[size - 1];
    while (candidates) {
      int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      self(self, size + 1, candidates & g.neighbours(v));
    }
  };
  for (int v = 0; v < n; ++v) extend(extend, 1, g.neighbours(v) & ~((2u << v) - 1));

  p.delta.assign(static_cast<std::size_t>(std::max(n, 1)), 0);
  auto binom = [](std::int64_t a, std::int64_t b) {
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int j = 1; j < n; ++j) {
    std::int64_t d = 0;
    for (int s = j; s < n; ++s) {
      std::int64_t term = binom(s, j) * p.kappa[static_cast<std::size_t>(s)];
      d += ((s - j) % 2 == 0) ? term : -term;
    }
    p.delta[static_cast<std::size_t>(j)] = d;
  }
  return p;
}

IntPolynomial chordal_hilbert_series(const SimpleGraph& g) {
  if (!g.is_connected()) throw domain_error("chordal_hilbert_series requires a connected graph; use poincare_polynomial");
  if (!is_chordal(g)) throw domain_error("graph is not chordal; use poincare_polynomial instead");
  CliqueProfile p = clique_counts(g);
  IntPolynomial hs{1};
  for (std::size_t j = 1; j < p.delta.size(); ++j) {
    if (p.delta[j] < 0) throw consistency_error("negative clique exponent on a chordal graph");
    hs *= IntPolynomial::linear(1, static_cast<long>(j)).pow(static_cast<unsigned>(p.delta[j]));
  }
  return hs;
}

}  // namespace aot
