#include "aot/algebra.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <sstream>

#include "aot/errors.hpp"

namespace aot {

// ---------------------------------------------------------------------------
// Monomial / PolyElement

int Monomial::degree() const { return std::popcount(support); }

std::vector<int> Monomial::variables() const {
  std::vector<int> out;
  for (EdgeMask m = support; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string to_string(Monomial m) {
  if (m.support == 0) return "1";
  std::string out;
  for (int e : m.variables()) out += "y" + std::to_string(e + 1);
  return out;
}

Monomial monomial_of(std::initializer_list<int> edges) {
  Monomial m;
  for (int e : edges) m.support |= EdgeMask{1} << e;
  return m;
}

PolyElement PolyElement::constant(const Rational& c) { return term(Monomial{}, c); }

PolyElement PolyElement::variable(int edge, const Rational& c) { return term(Monomial{EdgeMask{1} << edge}, c); }

PolyElement PolyElement::term(Monomial m, const Rational& c) {
  PolyElement p;
  p.add_term(m, c);
  return p;
}

PolyElement PolyElement::linear_form(const std::vector<Rational>& coeffs) {
  PolyElement p;
  for (std::size_t e = 0; e < coeffs.size(); ++e) p.add_term(Monomial{EdgeMask{1} << e}, coeffs[e]);
  return p;
}

Rational PolyElement::coeff(Monomial m) const {
  auto it = terms_.find(m.support);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PolyElement::add_term(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m.support, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool PolyElement::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return std::popcount(t.first) == degree; });
}

PolyElement& PolyElement::operator+=(const PolyElement& other) {
  for (const auto& [m, c] : other.terms_) add_term(Monomial{m}, c);
  return *this;
}

PolyElement& PolyElement::operator-=(const PolyElement& other) {
  for (const auto& [m, c] : other.terms_) add_term(Monomial{m}, -c);
  return *this;
}

PolyElement& PolyElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

PolyElement operator*(const PolyElement& a, const PolyElement& b) {
  PolyElement out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      if ((ma & mb) == 0) out.add_term(Monomial{ma | mb}, ca * cb);
  return out;
}

PolyElement PolyElement::pow(unsigned exponent) const {
  PolyElement result = constant(1);
  for (unsigned k = 0; k < exponent; ++k) result = result * *this;
  return result;
}

std::string PolyElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || m == 0) out << aot::to_string(mag) << (m == 0 ? "" : "*");
    if (m != 0) out << aot::to_string(Monomial{m});
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Circuit relations

int CircuitRelation::sign_of(int edge) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), edge);
  if (it == edges.end() || *it != edge) return 0;
  return signs[static_cast<std::size_t>(it - edges.begin())];
}

PolyElement CircuitRelation::polynomial() const {
  PolyElement f;
  for (std::size_t k = 0; k < edges.size(); ++k)
    f.add_term(Monomial{circuit & ~(EdgeMask{1} << edges[k])}, signs[k]);
  return f;
}

bool CircuitRelation::dependency_holds(const SimpleGraph& g) const {
  std::vector<long> coefficient(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = g.edge(static_cast<std::size_t>(edges[k]));
    coefficient[static_cast<std::size_t>(e.u)] += signs[k];
    coefficient[static_cast<std::size_t>(e.v)] -= signs[k];
  }
  return std::all_of(coefficient.begin(), coefficient.end(), [](long c) { return c == 0; });
}

CircuitRelation circuit_relation(const Cycle& cycle, const SimpleGraph& g) {
  if (g.edge_count() > kMaxMaskEdges) throw size_guard_error("circuit relations need at most 32 edges");
  std::vector<std::pair<int, int>> signed_edges;
  const std::size_t k = cycle.vertices.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int a = cycle.vertices[i];
    const int b = cycle.vertices[(i + 1) % k];
    const int e = g.edge_index(a, b);
    if (e < 0) throw domain_error("cycle uses a non-edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
    // x_u - x_v with u < v agrees with the traversal a -> b iff a == u.
    signed_edges.push_back({e, a < b ? 1 : -1});
  }
  std::sort(signed_edges.begin(), signed_edges.end());
  CircuitRelation r;
  for (auto [e, s] : signed_edges) {
    r.edges.push_back(e);
    r.signs.push_back(s);
    r.circuit |= EdgeMask{1} << e;
  }
  return r;
}

// ---------------------------------------------------------------------------
// AotPresentation

AotPresentation::AotPresentation(SimpleGraph g) : AotPresentation(g, EdgeOrdering::identity(g.edge_count())) {}

AotPresentation::AotPresentation(SimpleGraph g, EdgeOrdering ordering)
    : graph_(std::move(g)), ordering_(std::move(ordering)) {
  if (graph_.edge_count() > kMaxMaskEdges) throw size_guard_error("the algebra supports at most 32 edges");
  if (ordering_.size() != graph_.edge_count()) throw domain_error("edge ordering size does not match the graph");
  build();
}

EdgeMask AotPresentation::to_rank_space(EdgeMask edges) const {
  EdgeMask out = 0;
  for (; edges; edges &= edges - 1)
    out |= EdgeMask{1} << ordering_.rank_of(static_cast<std::size_t>(std::countr_zero(edges)));
  return out;
}

EdgeMask AotPresentation::to_edge_space(EdgeMask ranks) const {
  EdgeMask out = 0;
  for (; ranks; ranks &= ranks - 1)
    out |= EdgeMask{1} << ordering_.edge_at_rank(static_cast<std::size_t>(std::countr_zero(ranks)));
  return out;
}

void AotPresentation::build() {
  for (const Cycle& c : enumerate_circuits(graph_)) relations_.push_back(circuit_relation(c, graph_));
  std::sort(relations_.begin(), relations_.end(),
            [](const CircuitRelation& a, const CircuitRelation& b) { return a.edges < b.edges; });

  std::vector<Reducer> all;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const CircuitRelation& r = relations_[i];
    int min_edge = r.edges[0];
    for (int e : r.edges)
      if (ordering_.rank_of(static_cast<std::size_t>(e)) < ordering_.rank_of(static_cast<std::size_t>(min_edge))) min_edge = e;
    Reducer red;
    red.broken = r.circuit & ~(EdgeMask{1} << min_edge);
    red.broken_rank = to_rank_space(red.broken);
    red.relation = i;
    red.min_edge = min_edge;
    all.push_back(red);
  }
  // Keep one reducer per minimal broken circuit: smaller circuits first.
  std::sort(all.begin(), all.end(), [](const Reducer& a, const Reducer& b) {
    int da = std::popcount(a.broken), db = std::popcount(b.broken);
    return da != db ? da < db : a.broken < b.broken;
  });
  for (const Reducer& r : all) {
    bool redundant = std::any_of(reducers_.begin(), reducers_.end(),
                                 [&](const Reducer& kept) { return (kept.broken & r.broken) == kept.broken; });
    if (!redundant) reducers_.push_back(r);
  }
  std::sort(reducers_.begin(), reducers_.end(), [](const Reducer& a, const Reducer& b) { return a.broken < b.broken; });
  top_degree_ = static_cast<std::size_t>(graph_.vertex_count() - graph_.component_count());
}

std::optional<std::size_t> AotPresentation::find_reducer(Monomial m) const {
  for (std::size_t i = 0; i < reducers_.size(); ++i)
    if ((m.support & reducers_[i].broken) == reducers_[i].broken) return i;
  return std::nullopt;
}

std::vector<Monomial> broken_circuits(const AotPresentation& p) {
  std::vector<Monomial> out;
  for (const auto& r : p.reducers()) out.push_back(Monomial{r.broken});
  return out;
}

// ---------------------------------------------------------------------------
// NBC basis

NbcBasis::NbcBasis(const AotPresentation& p) {
  const int edges = static_cast<int>(p.variable_count());
  by_degree_.assign(p.top_degree() + 1, {});
  std::vector<EdgeMask> broken;
  for (const auto& r : p.reducers()) broken.push_back(r.broken);
  auto dfs = [&](auto&& self, EdgeMask current, int next) -> void {
    by_degree_[static_cast<std::size_t>(std::popcount(current))].push_back(Monomial{current});
    for (int e = next; e < edges; ++e) {
      EdgeMask grown = current | (EdgeMask{1} << e);
      bool ok = std::none_of(broken.begin(), broken.end(), [&](EdgeMask b) { return (grown & b) == b; });
      if (ok) self(self, grown, e + 1);
    }
  };
  dfs(dfs, 0, 0);
  // DFS order over increasing edge indices is already tuple-lexicographic.
  while (by_degree_.size() > 1 && by_degree_.back().empty()) by_degree_.pop_back();
  for (std::size_t d = 0; d < by_degree_.size(); ++d)
    for (std::size_t i = 0; i < by_degree_[d].size(); ++i) index_[by_degree_[d][i].support] = {d, i};
}

const std::vector<Monomial>& NbcBasis::degree(std::size_t d) const {
  static const std::vector<Monomial> empty;
  return d < by_degree_.size() ? by_degree_[d] : empty;
}

std::vector<std::size_t> NbcBasis::dimensions() const {
  std::vector<std::size_t> out;
  for (const auto& level : by_degree_) out.push_back(level.size());
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> NbcBasis::locate(Monomial m) const {
  auto it = index_.find(m.support);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Rational> NbcBasis::coordinates(const PolyElement& x, std::size_t d) const {
  std::vector<Rational> out(dimension(d));
  for (const auto& [m, c] : x.terms()) {
    auto loc = locate(Monomial{m});
    if (!loc || loc->first != d) throw consistency_error("element is not in normal form of degree " + std::to_string(d));
    out[loc->second] = c;
  }
  return out;
}

PolyElement NbcBasis::element(const std::vector<Rational>& coords, std::size_t d) const {
  PolyElement x;
  for (std::size_t i = 0; i < coords.size(); ++i) x.add_term(degree(d)[i], coords[i]);
  return x;
}

// ---------------------------------------------------------------------------
// Normal form

PolyElement normal_form(const PolyElement& x, const AotPresentation& p) {
  // Work in rank space, where the term order is integer order on masks.
  std::map<EdgeMask, Rational, std::greater<>> pending;
  for (const auto& [m, c] : x.terms()) pending[p.to_rank_space(m)] += c;
  PolyElement out;
  const auto& reducers = p.reducers();
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const EdgeMask m = node.key();
    const Rational c = node.mapped();
    if (c == 0) continue;
    const AotPresentation::Reducer* red = nullptr;
    for (const auto& r : reducers)
      if ((m & r.broken_rank) == r.broken_rank) {
        red = &r;
        break;
      }
    if (!red) {
      out.add_term(Monomial{p.to_edge_space(m)}, c);
      continue;
    }
    const CircuitRelation& rel = p.relations()[red->relation];
    const EdgeMask min_bit = EdgeMask{1} << p.ordering().rank_of(static_cast<std::size_t>(red->min_edge));
    if (m & min_bit) continue;  // m contains the whole circuit, which vanishes
    const int min_sign = rel.sign_of(red->min_edge);
    for (std::size_t k = 0; k < rel.edges.size(); ++k) {
      if (rel.edges[k] == red->min_edge) continue;
      const EdgeMask bit = EdgeMask{1} << p.ordering().rank_of(static_cast<std::size_t>(rel.edges[k]));
      const EdgeMask next = (m & ~bit) | min_bit;
      pending[next] += c * Rational(-rel.signs[k] * min_sign);
    }
  }
  return out;
}

const NormalFormCache::Sparse& NormalFormCache::of(Monomial m) { return of_rank(p_->to_rank_space(m.support)); }

const NormalFormCache::Sparse& NormalFormCache::of_rank(EdgeMask m) {
  if (auto it = memo_.find(m); it != memo_.end()) return it->second;
  const AotPresentation& p = *p_;
  Sparse result;
  const AotPresentation::Reducer* red = nullptr;
  for (const auto& r : p.reducers())
    if ((m & r.broken_rank) == r.broken_rank) {
      red = &r;
      break;
    }
  if (!red) {
    result.push_back({p.to_edge_space(m), Rational(1)});
  } else {
    const CircuitRelation& rel = p.relations()[red->relation];
    const EdgeMask min_bit = EdgeMask{1} << p.ordering().rank_of(static_cast<std::size_t>(red->min_edge));
    if (!(m & min_bit)) {
      const int min_sign = rel.sign_of(red->min_edge);
      std::map<EdgeMask, Rational> acc;
      for (std::size_t k = 0; k < rel.edges.size(); ++k) {
        if (rel.edges[k] == red->min_edge) continue;
        const EdgeMask bit = EdgeMask{1} << p.ordering().rank_of(static_cast<std::size_t>(rel.edges[k]));
        const Sparse& sub = of_rank((m & ~bit) | min_bit);
        const int factor = -rel.signs[k] * min_sign;
        for (const auto& [mono, c] : sub) acc[mono] += factor > 0 ? c : Rational(-c);
      }
      for (auto& [mono, c] : acc)
        if (c != 0) result.push_back({mono, std::move(c)});
    }
  }
  return memo_.emplace(m, std::move(result)).first->second;
}

PolyElement NormalFormCache::apply(const PolyElement& x) {
  PolyElement out;
  for (const auto& [m, c] : x.terms())
    for (const auto& [mono, v] : of(Monomial{m})) out.add_term(Monomial{mono}, c * v);
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force quotient

QuotientOracle::QuotientOracle(const AotPresentation& p, std::size_t degree)
    : degree_(degree), vars_(p.variable_count()) {
  if (vars_ > kMaxVariables) throw size_guard_error("brute_force_quotient supports at most 10 variables");
  for (std::size_t i = 0; i < vars_; ++i) position_edge_.push_back(p.ordering().edge_at_rank(vars_ - 1 - i));

  // All monomials of the given degree, as exponent vectors indexed by rank
  // (position 0 = largest variable), sorted so that larger = later.
  std::vector<Exponents> all;
  Exponents e(vars_, 0);
  auto gen = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == vars_ || vars_ == 0) {
      if (vars_ == 0) {
        if (left == 0) all.push_back(e);
        return;
      }
      e[pos] = static_cast<unsigned char>(left);
      all.push_back(e);
      e[pos] = 0;
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      e[pos] = static_cast<unsigned char>(k);
      self(self, pos + 1, left - k);
    }
    e[pos] = 0;
  };
  gen(gen, 0, degree);
  std::sort(all.begin(), all.end());
  columns_ = all;
  for (std::size_t i = 0; i < columns_.size(); ++i) column_index_[columns_[i]] = i;

  // Generators as exponent-vector polynomials.
  std::vector<std::vector<std::pair<Exponents, Rational>>> generators;
  for (std::size_t v = 0; v < vars_; ++v) {
    Exponents sq(vars_, 0);
    sq[v] = 2;
    generators.push_back({{sq, Rational(1)}});
  }
  for (const auto& rel : p.relations()) {
    std::vector<std::pair<Exponents, Rational>> f;
    const PolyElement poly = rel.polynomial();
    for (const auto& [m, c] : poly.terms()) f.push_back({exponents_of(m), c});
    generators.push_back(std::move(f));
  }

  for (const auto& gpoly : generators) {
    std::size_t gdeg = 0;
    for (auto x : gpoly.front().first) gdeg += x;
    if (gdeg > degree) continue;
    // Multipliers: all monomials of degree (degree - gdeg).
    std::vector<Exponents> multipliers;
    Exponents m(vars_, 0);
    auto mgen = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
      if (pos + 1 >= vars_) {
        if (vars_ > 0) m[pos] = static_cast<unsigned char>(left);
        multipliers.push_back(m);
        if (vars_ > 0) m[pos] = 0;
        return;
      }
      for (std::size_t k = 0; k <= left; ++k) {
        m[pos] = static_cast<unsigned char>(k);
        self(self, pos + 1, left - k);
      }
      m[pos] = 0;
    };
    mgen(mgen, 0, degree - gdeg);
    for (const auto& mult : multipliers) {
      Row row;
      for (const auto& [mono, c] : gpoly) {
        Exponents prod = mono;
        for (std::size_t i = 0; i < vars_; ++i) prod[i] = static_cast<unsigned char>(prod[i] + mult[i]);
        row[column_of(prod)] += c;
      }
      insert(std::move(row));
    }
  }

  for (std::size_t col = 0; col < columns_.size(); ++col) {
    if (pivots_.count(col)) continue;
    EdgeMask support = 0;
    bool squarefree = true;
    for (std::size_t i = 0; i < vars_; ++i) {
      if (columns_[col][i] > 1) squarefree = false;
      if (columns_[col][i] == 1) support |= EdgeMask{1} << position_edge_[i];
    }
    if (!squarefree) throw consistency_error("non-squarefree standard monomial in quotient oracle");
    standard_.push_back(Monomial{support});
  }
  std::sort(standard_.begin(), standard_.end(), [](Monomial a, Monomial b) { return a.variables() < b.variables(); });
}

std::size_t QuotientOracle::column_of(const Exponents& e) const { return column_index_.at(e); }

QuotientOracle::Exponents QuotientOracle::exponents_of(EdgeMask edges) const {
  Exponents x(vars_, 0);
  for (std::size_t i = 0; i < vars_; ++i)
    if ((edges >> position_edge_[i]) & 1u) x[i] = 1;
  return x;
}

void QuotientOracle::full_reduce(Row& row) const {
  // Eliminate pivot columns from the largest downwards; each step only
  // touches smaller columns.
  auto it = row.end();
  while (it != row.begin()) {
    --it;
    auto piv = pivots_.find(it->first);
    if (piv == pivots_.end() || it->second == 0) continue;
    const std::size_t col = it->first;
    const Rational factor = it->second;
    for (const auto& [c, v] : piv->second) row[c] -= factor * v;
    for (auto z = row.begin(); z != row.end();) z = (z->second == 0) ? row.erase(z) : std::next(z);
    it = row.lower_bound(col);
  }
}

void QuotientOracle::insert(Row row) {
  for (auto z = row.begin(); z != row.end();) z = (z->second == 0) ? row.erase(z) : std::next(z);
  while (!row.empty()) {
    auto lead = std::prev(row.end());
    auto piv = pivots_.find(lead->first);
    if (piv == pivots_.end()) {
      const Rational inv = 1 / lead->second;
      for (auto& [c, v] : row) v *= inv;
      const std::size_t col = lead->first;
      pivots_.emplace(col, std::move(row));
      return;
    }
    const Rational factor = lead->second;
    for (const auto& [c, v] : piv->second) row[c] -= factor * v;
    for (auto z = row.begin(); z != row.end();) z = (z->second == 0) ? row.erase(z) : std::next(z);
  }
}

PolyElement QuotientOracle::reduce(const PolyElement& x) const {
  Row row;
  for (const auto& [m, c] : x.terms()) {
    if (static_cast<std::size_t>(std::popcount(m)) != degree_) throw domain_error("element is not homogeneous of the oracle's degree");
    row[column_of(exponents_of(m))] += c;
  }
  full_reduce(row);
  PolyElement out;
  for (const auto& [col, c] : row) {
    EdgeMask support = 0;
    for (std::size_t i = 0; i < vars_; ++i)
      if (columns_[col][i] == 1) support |= EdgeMask{1} << position_edge_[i];
    out.add_term(Monomial{support}, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tensor factors

TensorFactor factor_of_edges(const SimpleGraph& g, const EdgeOrdering& ordering, const std::vector<int>& edges) {
  Block b = edge_subgraph(g, edges);
  std::vector<int> local(b.edges.size());
  std::iota(local.begin(), local.end(), 0);
  std::sort(local.begin(), local.end(), [&](int a, int c) {
    return ordering.rank_of(static_cast<std::size_t>(b.edges[static_cast<std::size_t>(a)])) <
           ordering.rank_of(static_cast<std::size_t>(b.edges[static_cast<std::size_t>(c)]));
  });
  TensorFactor f{AotPresentation(b.graph, EdgeOrdering(local)), b.edges, b.edges.size() == 1};
  return f;
}

std::vector<TensorFactor> tensor_presentation(const SimpleGraph& g, const EdgeOrdering& ordering) {
  std::vector<TensorFactor> out;
  for (const Block& b : blocks(g).blocks) {
    TensorFactor f = factor_of_edges(g, ordering, b.edges);
    f.is_bridge = b.is_bridge;
    out.push_back(std::move(f));
  }
  return out;
}

PolyElement lift(const PolyElement& x, const TensorFactor& factor) {
  PolyElement out;
  for (const auto& [m, c] : x.terms()) {
    EdgeMask lifted = 0;
    for (EdgeMask r = m; r; r &= r - 1) lifted |= EdgeMask{1} << factor.edge_map[static_cast<std::size_t>(std::countr_zero(r))];
    out.add_term(Monomial{lifted}, c);
  }
  return out;
}

}  // namespace aot

namespace aot {

nlohmann::json to_json(const AotPresentation& p) {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t e = 0; e < p.variable_count(); ++e)
    vars.push_back({{"name", "y" + std::to_string(e + 1)}, {"edge", {p.graph().edge(e).u, p.graph().edge(e).v}}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : p.relations()) rels.push_back({{"edges", r.edges}, {"signs", r.signs}});
  nlohmann::json broken = nlohmann::json::array();
  for (Monomial m : broken_circuits(p)) broken.push_back(m.variables());
  return {{"variables", vars},
          {"ordering", p.ordering().perm()},
          {"relations", rels},
          {"broken_circuits", broken},
          {"nbc_dimensions", NbcBasis(p).dimensions()}};
}

}  // namespace aot
