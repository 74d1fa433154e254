#include <algorithm>
#include <bit>
#include <fstream>
#include <list>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "aot/errors.hpp"
#include "aot/graph.hpp"

namespace aot {

struct ChromaticCache::Impl {
  using Entry = std::pair<std::string, IntPolynomial>;
  mutable std::mutex mutex;
  std::list<Entry> recency;  // front = most recently used
  std::unordered_map<std::string, std::list<Entry>::iterator> index;
};

ChromaticCache::ChromaticCache(std::size_t capacity) : impl_(new Impl), capacity_(std::max<std::size_t>(capacity, 1)) {}
ChromaticCache::~ChromaticCache() { delete impl_; }

bool ChromaticCache::lookup(const std::string& key, IntPolynomial& out) {
  std::lock_guard lock(impl_->mutex);
  auto it = impl_->index.find(key);
  if (it == impl_->index.end()) return false;
  impl_->recency.splice(impl_->recency.begin(), impl_->recency, it->second);
  out = it->second->second;
  return true;
}

void ChromaticCache::store(const std::string& key, const IntPolynomial& value) {
  std::lock_guard lock(impl_->mutex);
  auto it = impl_->index.find(key);
  if (it != impl_->index.end()) {
    impl_->recency.splice(impl_->recency.begin(), impl_->recency, it->second);
    return;
  }
  impl_->recency.emplace_front(key, value);
  impl_->index[key] = impl_->recency.begin();
  while (impl_->index.size() > capacity_) {
    impl_->index.erase(impl_->recency.back().first);
    impl_->recency.pop_back();
  }
}

std::size_t ChromaticCache::size() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->index.size();
}

std::size_t ChromaticCache::load(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t skipped = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string key, c;
    if (!(fields >> key)) continue;
    std::vector<BigInt> coeffs;
    bool ok = true;
    while (fields >> c) {
      BigInt z;
      if (z.set_str(c, 10) != 0) {
        ok = false;
        break;
      }
      coeffs.push_back(z);
    }
    // A chromatic polynomial is never zero.
    if (ok && !coeffs.empty() && coeffs.back() != 0)
      store(key, IntPolynomial(std::move(coeffs)));
    else
      ++skipped;
  }
  return skipped;
}

void ChromaticCache::save(const std::string& path) const {
  std::lock_guard lock(impl_->mutex);
  std::ofstream out(path, std::ios::trunc);
  for (auto it = impl_->recency.rbegin(); it != impl_->recency.rend(); ++it) {
    out << it->first;
    for (const BigInt& c : it->second.coeffs()) out << ' ' << c.get_str();
    out << '\n';
  }
}

ChromaticCache& ChromaticCache::global() {
  static ChromaticCache cache;
  return cache;
}

namespace {

SimpleGraph delete_vertex(const SimpleGraph& g, int v) {
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (e.u == v || e.v == v) continue;
    edges.push_back({e.u > v ? e.u - 1 : e.u, e.v > v ? e.v - 1 : e.v});
  }
  return SimpleGraph(g.vertex_count() - 1, std::move(edges));
}

// Identify v with u (parallel edges collapse, u != v).
SimpleGraph merge_vertices(const SimpleGraph& g, int u, int v) {
  auto relabel = [&](int w) {
    if (w == v) w = u;
    return w > v ? w - 1 : w;
  };
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    int a = relabel(e.u), b = relabel(e.v);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    edges.push_back({a, b});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return SimpleGraph(g.vertex_count() - 1, std::move(edges));
}

IntPolynomial falling_factorial(int n) {
  IntPolynomial p{1};
  for (int k = 0; k < n; ++k) p *= IntPolynomial::linear(-k, 1);
  return p;
}

IntPolynomial chromatic(const SimpleGraph& g, ChromaticCache& cache) {
  const int n = g.vertex_count();
  const std::size_t m = g.edge_count();
  if (m == 0) return IntPolynomial::monomial(static_cast<std::size_t>(n));
  const std::size_t full = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  if (m == full) return falling_factorial(n);

  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 0) return IntPolynomial::monomial(1) * chromatic(delete_vertex(g, v), cache);
    if (g.degree(v) == 1) return IntPolynomial::linear(-1, 1) * chromatic(delete_vertex(g, v), cache);
  }
  if (!g.is_connected()) {
    IntPolynomial p{1};
    for (const Block& c : components(g)) p *= chromatic(c.graph, cache);
    return p;
  }

  const std::string key = to_graph6(canonical_form(g));
  IntPolynomial result;
  if (cache.lookup(key, result)) return result;

  if (2 * m > full) {
    // Dense: chi(G) = chi(G + uv) + chi(G / uv) for a missing edge uv.
    int u = -1, v = -1;
    for (int a = 0; a < n && u < 0; ++a)
      for (int b = a + 1; b < n; ++b)
        if (!g.has_edge(a, b)) {
          u = a;
          v = b;
          break;
        }
    std::vector<Edge> plus = g.edges();
    plus.push_back({u, v});
    result = chromatic(SimpleGraph(n, std::move(plus)), cache) + chromatic(merge_vertices(g, u, v), cache);
  } else {
    // Sparse: chi(G) = chi(G - e) - chi(G / e).
    const Edge e = g.edges().back();
    std::vector<Edge> minus(g.edges().begin(), g.edges().end() - 1);
    result = chromatic(SimpleGraph(n, std::move(minus)), cache) - chromatic(merge_vertices(g, e.u, e.v), cache);
  }
  cache.store(key, result);
  return result;
}

}  // namespace

IntPolynomial chromatic_polynomial(const SimpleGraph& g, ChromaticCache& cache) { return chromatic(g, cache); }

IntPolynomial poincare_polynomial(const SimpleGraph& g, ChromaticCache& cache) {
  const IntPolynomial chi = chromatic_polynomial(g, cache);
  const std::size_t n = static_cast<std::size_t>(g.vertex_count());
  std::vector<BigInt> p(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    BigInt c = chi.coeff(n - i);
    p[i] = (i % 2 == 0) ? c : BigInt(-c);
    if (p[i] < 0) throw consistency_error("Poincare polynomial has a negative coefficient");
  }
  return IntPolynomial(std::move(p));
}

}  // namespace aot
