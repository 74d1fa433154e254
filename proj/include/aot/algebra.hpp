#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aot/graph.hpp"
#include "aot/rational.hpp"

namespace aot {

/// Squarefree monomial, identified with its support (a set of edge indices).
struct Monomial {
  EdgeMask support = 0;

  int degree() const;
  bool contains(int edge) const { return (support >> edge) & 1u; }
  /// Edge indices in increasing order.
  std::vector<int> variables() const;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// "y1y3" (1-based variable names); "1" for the empty monomial.
std::string to_string(Monomial m);
Monomial monomial_of(std::initializer_list<int> edges);

/// Element of S / (squares): a map from squarefree monomials to nonzero
/// rational coefficients. Products that would square a variable vanish.
class PolyElement {
 public:
  using Terms = std::map<EdgeMask, Rational>;

  PolyElement() = default;
  static PolyElement constant(const Rational& c);
  static PolyElement variable(int edge, const Rational& c = 1);
  static PolyElement term(Monomial m, const Rational& c = 1);
  /// sum_e coeffs[e] y_e
  static PolyElement linear_form(const std::vector<Rational>& coeffs);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(Monomial m) const;
  void add_term(Monomial m, const Rational& c);
  /// True if every term has the given degree.
  bool is_homogeneous(int degree) const;

  PolyElement& operator+=(const PolyElement& other);
  PolyElement& operator-=(const PolyElement& other);
  PolyElement& operator*=(const Rational& c);
  friend PolyElement operator+(PolyElement a, const PolyElement& b) { return a += b; }
  friend PolyElement operator-(PolyElement a, const PolyElement& b) { return a -= b; }
  friend PolyElement operator*(PolyElement a, const Rational& c) { return a *= c; }
  friend PolyElement operator*(const Rational& c, PolyElement a) { return a *= c; }
  friend PolyElement operator*(const PolyElement& a, const PolyElement& b);
  friend bool operator==(const PolyElement&, const PolyElement&) = default;

  PolyElement pow(unsigned exponent) const;
  std::string to_string() const;

 private:
  Terms terms_;
};

/// The relation f_C of a circuit C: sum over e in C of sign(e) times the
/// product of the other variables of C, where sum_e sign(e) (x_u - x_v) = 0.
struct CircuitRelation {
  EdgeMask circuit = 0;
  std::vector<int> edges;  ///< sorted
  std::vector<int> signs;  ///< +1 / -1, parallel to edges

  int sign_of(int edge) const;
  PolyElement polynomial() const;
  /// Checks sum_e sign(e) (x_u(e) - x_v(e)) == 0 by expanding over vertices.
  bool dependency_holds(const SimpleGraph& g) const;
};

/// Throws domain_error if the cycle uses a pair that is not an edge of g.
CircuitRelation circuit_relation(const Cycle& cycle, const SimpleGraph& g);

/// The Artinian Orlik-Terao algebra of a graph under a chosen edge ordering:
/// one relation per simple cycle, squares implicit. The ordering fixes the
/// lexicographic term order (higher rank = larger variable) used by the
/// normal form and the broken circuits.
class AotPresentation {
 public:
  /// One minimal broken circuit and the relation that rewrites it.
  struct Reducer {
    EdgeMask broken = 0;       ///< edge space
    EdgeMask broken_rank = 0;  ///< rank space
    std::size_t relation = 0;
    int min_edge = 0;          ///< smallest edge of the circuit
  };

  explicit AotPresentation(SimpleGraph g);
  AotPresentation(SimpleGraph g, EdgeOrdering ordering);

  const SimpleGraph& graph() const { return graph_; }
  const EdgeOrdering& ordering() const { return ordering_; }
  const std::vector<CircuitRelation>& relations() const { return relations_; }
  std::size_t variable_count() const { return graph_.edge_count(); }
  /// Rank of the graphic matroid: the top nonzero degree of the algebra.
  std::size_t top_degree() const { return top_degree_; }
  const std::vector<Reducer>& reducers() const { return reducers_; }

  EdgeMask to_rank_space(EdgeMask edges) const;
  EdgeMask to_edge_space(EdgeMask ranks) const;
  /// Lexicographic term order on squarefree monomials.
  bool term_less(Monomial a, Monomial b) const { return to_rank_space(a.support) < to_rank_space(b.support); }
  /// Index into reducers() of the first broken circuit dividing m, if any.
  std::optional<std::size_t> find_reducer(Monomial m) const;

 private:
  void build();

  SimpleGraph graph_;
  EdgeOrdering ordering_;
  std::vector<CircuitRelation> relations_;
  std::vector<Reducer> reducers_;
  std::size_t top_degree_ = 0;
};

/// Minimal broken circuits (circuit minus its smallest edge), sorted by support.
std::vector<Monomial> broken_circuits(const AotPresentation& p);

/// Squarefree monomials divisible by no broken circuit, grouped by degree.
/// Within a degree, monomials are sorted by their sorted tuple of edge indices.
class NbcBasis {
 public:
  explicit NbcBasis(const AotPresentation& p);

  std::size_t top_degree() const { return by_degree_.empty() ? 0 : by_degree_.size() - 1; }
  /// Empty beyond the top degree.
  const std::vector<Monomial>& degree(std::size_t d) const;
  std::size_t dimension(std::size_t d) const { return degree(d).size(); }
  std::vector<std::size_t> dimensions() const;
  /// (degree, index) of an NBC monomial.
  std::optional<std::pair<std::size_t, std::size_t>> locate(Monomial m) const;
  bool contains(Monomial m) const { return index_.count(m.support) > 0; }

  /// Coordinates of a homogeneous degree-d element already in normal form;
  /// throws consistency_error for non-NBC support.
  std::vector<Rational> coordinates(const PolyElement& x, std::size_t d) const;
  PolyElement element(const std::vector<Rational>& coords, std::size_t d) const;

 private:
  std::vector<std::vector<Monomial>> by_degree_;
  std::unordered_map<EdgeMask, std::pair<std::size_t, std::size_t>> index_;
};

/// Variables (with their edges), ordering, circuit relations as
/// {edges, signs}, minimal broken circuits and NBC dimensions per degree.
nlohmann::json to_json(const AotPresentation& p);

/// Normal form modulo the relations and squares: the result is supported on
/// NBC monomials. Reduction always rewrites the largest reducible monomial.
PolyElement normal_form(const PolyElement& x, const AotPresentation& p);

/// Memoized normal forms of single monomials; the hot path for building
/// multiplication matrices. Not thread safe; use one per worker.
class NormalFormCache {
 public:
  using Sparse = std::vector<std::pair<EdgeMask, Rational>>;  ///< edge space, sorted

  explicit NormalFormCache(const AotPresentation& p) : p_(&p) {}
  const Sparse& of(Monomial m);
  PolyElement apply(const PolyElement& x);
  std::size_t size() const { return memo_.size(); }

 private:
  const Sparse& of_rank(EdgeMask rank_mask);

  const AotPresentation* p_;
  std::unordered_map<EdgeMask, Sparse> memo_;  // keyed in rank space
};

/// Degree-d slice of S / (I + squares) by plain linear algebra: every
/// relation and square times every monomial of complementary degree,
/// row-reduced exactly with pivots on term-order-leading monomials. Uses no
/// broken-circuit theory. Limited to 10 variables.
class QuotientOracle {
 public:
  static constexpr std::size_t kMaxVariables = 10;

  QuotientOracle(const AotPresentation& p, std::size_t degree);

  std::size_t degree() const { return degree_; }
  std::size_t dimension() const { return standard_.size(); }
  /// Monomials not leading any element of the ideal slice.
  const std::vector<Monomial>& standard_monomials() const { return standard_; }
  /// Remainder of a homogeneous degree-d element, supported on standard monomials.
  PolyElement reduce(const PolyElement& x) const;

 private:
  using Exponents = std::vector<unsigned char>;
  using Row = std::map<std::size_t, Rational>;

  std::size_t column_of(const Exponents& e) const;
  Exponents exponents_of(EdgeMask edges) const;
  void insert(Row row);
  void full_reduce(Row& row) const;

  std::size_t degree_;
  std::size_t vars_;
  std::vector<Exponents> columns_;  // sorted by term order
  std::map<Exponents, std::size_t> column_index_;
  std::map<std::size_t, Row> pivots_;  // leading column -> monic row
  std::vector<Monomial> standard_;
  std::vector<int> position_edge_;  // exponent position -> edge; position 0 is the largest variable
};

/// Convenience wrapper with the operation's name.
inline QuotientOracle brute_force_quotient(const AotPresentation& p, std::size_t d) { return QuotientOracle(p, d); }

/// One tensor factor of the algebra: the presentation of a block (bridges
/// give K[z]/z^2) and the map from its variables to the parent's edges.
struct TensorFactor {
  AotPresentation presentation;
  std::vector<int> edge_map;
  bool is_bridge = false;
};

/// Presentation per biconnected block; each factor inherits the relative
/// order of its edges from `ordering`.
std::vector<TensorFactor> tensor_presentation(const SimpleGraph& g, const EdgeOrdering& ordering);
inline std::vector<TensorFactor> tensor_presentation(const SimpleGraph& g) {
  return tensor_presentation(g, EdgeOrdering::identity(g.edge_count()));
}
/// Factor spanned by an arbitrary union of blocks (edge indices of g).
TensorFactor factor_of_edges(const SimpleGraph& g, const EdgeOrdering& ordering, const std::vector<int>& edges);

/// Moves an element of a factor into the parent algebra's variables.
PolyElement lift(const PolyElement& x, const TensorFactor& factor);

}  // namespace aot
