#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "aot/polynomial.hpp"

namespace aot {

/// An undirected edge {u, v}, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Bit set over edge indices. Monomials, circuits and broken circuits of
/// graphs with at most 32 edges live here.
using EdgeMask = std::uint32_t;
constexpr std::size_t kMaxMaskEdges = 32;

/// Simple undirected graph on vertices 0..n-1 with a sorted, duplicate-free
/// edge list. The position of an edge in edges() is its index, which is also
/// the index of the corresponding variable of the Orlik-Terao algebra.
class SimpleGraph {
 public:
  static constexpr int kMaxVertices = 32;

  SimpleGraph() = default;
  /// Normalizes each pair to u < v and sorts. Throws domain_error on loops,
  /// parallel edges, out-of-range endpoints or n > 32.
  SimpleGraph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  bool has_edge(int u, int v) const;
  /// Index of edge {u, v}, or -1.
  int edge_index(int u, int v) const;
  /// Neighbourhood of v as a vertex bit set.
  std::uint32_t neighbours(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const;

  /// Number of connected components (isolated vertices count).
  int component_count() const;
  bool is_connected() const { return n_ <= 1 || component_count() == 1; }

  /// Vertex-induced relabeling: vertex v of this graph becomes perm[v].
  SimpleGraph relabeled(const std::vector<int>& perm) const;

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> adjacency_;
};

/// A total order on the edges of a graph: perm[r] is the edge of rank r.
/// Smaller rank means smaller variable in the induced lexicographic order.
class EdgeOrdering {
 public:
  EdgeOrdering() = default;
  /// Throws domain_error unless perm is a permutation of 0..size-1.
  explicit EdgeOrdering(std::vector<int> perm);
  static EdgeOrdering identity(std::size_t edges);

  std::size_t size() const { return perm_.size(); }
  int edge_at_rank(std::size_t rank) const { return perm_[rank]; }
  int rank_of(std::size_t edge) const { return rank_[edge]; }
  const std::vector<int>& perm() const { return perm_; }

  friend bool operator==(const EdgeOrdering& a, const EdgeOrdering& b) { return a.perm_ == b.perm_; }

 private:
  std::vector<int> perm_;
  std::vector<int> rank_;
};

/// Clique counts kappa_s (number of (s+1)-cliques, s = 0..n-1) and the
/// exponents delta_j of the chordal product formula (index 0 unused).
struct CliqueProfile {
  std::vector<std::int64_t> kappa;
  std::vector<std::int64_t> delta;
};

/// A simple cycle, listed from its minimal vertex towards the smaller of
/// that vertex's two cycle neighbours.
struct Cycle {
  std::vector<int> vertices;
  std::vector<int> edges;  ///< sorted edge indices
};

/// A biconnected block (or a bridge, as a single-edge block).
struct Block {
  SimpleGraph graph;           ///< block on local vertices 0..k-1
  std::vector<int> vertices;   ///< local vertex -> vertex of the parent graph
  std::vector<int> edges;      ///< local edge index -> edge index of the parent graph
  bool is_bridge = false;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  std::vector<int> bridges;  ///< parent edge indices of bridge blocks
};

// -- graph6 ----------------------------------------------------------------

/// Decodes a graph6 string (optionally prefixed by ">>graph6<<", one
/// trailing newline allowed). Supports 0 <= n <= 32.
SimpleGraph parse_graph6(std::string_view text);
std::string to_graph6(const SimpleGraph& g);

// -- isomorphism -----------------------------------------------------------

/// Canonical labeling: result[v] is the new label of vertex v. Isomorphic
/// graphs relabeled by their canonical labelings are identical.
std::vector<int> canonical_labeling(const SimpleGraph& g);
SimpleGraph canonical_form(const SimpleGraph& g);

/// All graphs on n vertices up to isomorphism (1 <= n <= 8), each in
/// canonical form, ordered by (edge count, graph6).
std::vector<SimpleGraph> enumerate_graphs(int n, bool connected_only);
inline std::vector<SimpleGraph> enumerate_connected_graphs(int n) { return enumerate_graphs(n, true); }

// -- structure ---------------------------------------------------------------

bool is_chordal(const SimpleGraph& g);
std::vector<Cycle> enumerate_circuits(const SimpleGraph& g);
BlockDecomposition blocks(const SimpleGraph& g);
/// Connected components, each as its own graph with maps back to g.
std::vector<Block> components(const SimpleGraph& g);
/// Subgraph spanned by the given edges (vertices renumbered in increasing order).
Block edge_subgraph(const SimpleGraph& g, const std::vector<int>& edges);

// -- counting polynomials ----------------------------------------------------

/// Deletion-contraction memo keyed on canonical form, capped in size with
/// least-recently-used eviction. Safe to share between threads.
class ChromaticCache {
 public:
  explicit ChromaticCache(std::size_t capacity = 1'000'000);
  ~ChromaticCache();
  ChromaticCache(const ChromaticCache&) = delete;
  ChromaticCache& operator=(const ChromaticCache&) = delete;

  bool lookup(const std::string& key, IntPolynomial& out);
  void store(const std::string& key, const IntPolynomial& value);
  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }

  /// Text persistence: one "graph6 c0 c1 ..." line per entry. load()
  /// returns the number of malformed lines it skipped.
  std::size_t load(const std::string& path);
  void save(const std::string& path) const;

  static ChromaticCache& global();

 private:
  struct Impl;
  Impl* impl_;
  std::size_t capacity_;
};

IntPolynomial chromatic_polynomial(const SimpleGraph& g, ChromaticCache& cache = ChromaticCache::global());
/// P(A_G, t), recovered from chi_G(t) = t^n P(A_G, -1/t).
IntPolynomial poincare_polynomial(const SimpleGraph& g, ChromaticCache& cache = ChromaticCache::global());
CliqueProfile clique_counts(const SimpleGraph& g);
/// prod_j (1 + j t)^{delta_j}; domain_error unless g is chordal and connected.
IntPolynomial chordal_hilbert_series(const SimpleGraph& g);

}  // namespace aot
