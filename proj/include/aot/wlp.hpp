#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "aot/algebra.hpp"
#include "aot/linalg.hpp"
#include "aot/polynomial.hpp"

namespace aot {

// -- multiplication maps -----------------------------------------------------

/// mu_l : A_i -> A_{i+1} for l = sum_e a_e y_e. Columns follow the degree-i
/// NBC monomials, rows the degree-(i+1) ones; parameter e is a_e.
ParamMatrix mul_matrix(const AotPresentation& p, const NbcBasis& basis, std::size_t i);
ParamMatrix mul_matrix(const AotPresentation& p, const NbcBasis& basis, std::size_t i, NormalFormCache& cache);

/// Normal form of l * x for a numeric linear form l (coefficients by edge).
PolyElement multiply_by_linear(const PolyElement& x, const std::vector<Rational>& l, const AotPresentation& p);

// -- reports -----------------------------------------------------------------

enum class MapVerdict { injective, surjective, deficient };
enum class CertificateKind { exact, probabilistic };

std::string to_string(MapVerdict v);
std::string to_string(CertificateKind k);

struct DegreeRecord {
  std::size_t degree = 0;
  std::size_t dim_source = 0;
  std::size_t dim_target = 0;
  std::size_t rank = 0;
  std::size_t max_rank = 0;
  MapVerdict verdict = MapVerdict::deficient;
  bool exact = true;           ///< rank is a certificate, not an estimate
  double failure_bound = 0.0;  ///< chance that rank undershoots the generic rank
};

struct WlpReport {
  std::string graph_id;
  IntPolynomial hilbert;
  std::vector<DegreeRecord> degrees;
  bool has_wlp = true;
  std::vector<std::size_t> failing_degrees;
  CertificateKind certificate = CertificateKind::exact;
  /// Bound on the chance that a "fails" verdict is wrong; 0 when exact.
  double failure_bound = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  /// "has WLP" or "fails WLP in degree 2; rank 11 of max 12".
  std::string summary() const;
};

nlohmann::json to_json(const WlpReport& r);

inline constexpr std::size_t kDefaultSamples = 3;
inline constexpr std::uint64_t kDefaultSeed = 1;

/// Decides WLP for the AOT algebra of g. Dimensions are cross-checked
/// against the Poincare polynomial; a mismatch throws consistency_error.
WlpReport wlp_check(const SimpleGraph& g, std::size_t samples = kDefaultSamples, std::uint64_t seed = kDefaultSeed);
WlpReport wlp_check(const AotPresentation& p, std::size_t samples = kDefaultSamples, std::uint64_t seed = kDefaultSeed);

// -- monomial algebras -------------------------------------------------------

/// K[y_0..y_{k-1}] modulo squares and squarefree monomial generators.
class MonomialAlgebra {
 public:
  MonomialAlgebra(std::size_t variables, std::vector<EdgeMask> generators);

  std::size_t variable_count() const { return variables_; }
  /// Minimal generators, sorted by (degree, variable tuple).
  const std::vector<EdgeMask>& generators() const { return generators_; }
  bool is_standard(EdgeMask m) const;
  /// Standard monomials of degree d, sorted by variable tuple.
  const std::vector<Monomial>& basis(std::size_t d) const;
  std::size_t top_degree() const { return basis_.size() - 1; }
  std::vector<std::size_t> dimensions() const;
  IntPolynomial hilbert_series() const;
  /// Largest generator degree; 0 with no generators.
  std::size_t max_generator_degree() const;
  std::string to_string() const;
  friend bool operator==(const MonomialAlgebra& a, const MonomialAlgebra& b) {
    return a.variables_ == b.variables_ && a.generators_ == b.generators_;
  }

 private:
  std::size_t variables_;
  std::vector<EdgeMask> generators_;
  std::vector<std::vector<Monomial>> basis_;
};

/// The monomial algebra of an initial ideal: squares plus broken circuits.
MonomialAlgebra initial_algebra(const AotPresentation& p);

/// 0/1 matrix of multiplication by the sum of the variables, A_i -> A_{i+1}.
RationalMatrix monomial_mul_matrix(const MonomialAlgebra& a, std::size_t i);
/// WLP with l = sum of the variables; exact and deterministic.
WlpReport monomial_wlp_check(const MonomialAlgebra& a, const std::string& id = "");

/// l^2 : A_{i-1} -> A_{i+1} with l the sum of the variables. For monomial
/// algebras this is twice the set-inclusion matrix.
RationalMatrix ell_squared_matrix(const MonomialAlgebra& a, std::size_t i);
RationalMatrix ell_squared_matrix(const AotPresentation& p, const NbcBasis& basis, std::size_t i);
/// Whether l^2 : A_{i-1} -> A_{i+1} has maximal rank, which decides WLP of
/// A (x) K[z]/z^2 in degree i.
bool ell_squared_criterion(const MonomialAlgebra& a, std::size_t i);
bool ell_squared_criterion(const AotPresentation& p, std::size_t i);

/// WLP of a tensor product of algebras Sym(V_k)/V_k^2 with dim V_k = dims[k]
/// (any order): true iff all but the largest dimension are 1, or all but
/// the two largest are 1 and the number of factors is odd.
bool tensor_sym_wlp(std::vector<int> dims);
/// The explicit monomial model of that tensor product.
MonomialAlgebra tensor_sym_algebra(const std::vector<int>& dims);

// -- kernel constructions ----------------------------------------------------

/// Kernel of mu_{l'} on degree i of a factor, where l' is l restricted to the
/// factor's edges (l indexed by the parent's edges). Elements are in the
/// factor's own variables, in normal form.
std::vector<PolyElement> factor_kernel(const TensorFactor& f, const std::vector<Rational>& l, std::size_t i);

/// Products of factor kernel elements, one factor kernel per entry of
/// `degrees`, in the parent's normal form. Each product is checked to lie in
/// ker mu_l; a failure throws consistency_error. Empty if any factor kernel is.
std::vector<PolyElement> tautological_kernel(const AotPresentation& whole, const std::vector<TensorFactor>& factors,
                                             const std::vector<Rational>& l, const std::vector<std::size_t>& degrees);
std::vector<PolyElement> tautological_kernel(const AotPresentation& whole, const TensorFactor& first,
                                             const TensorFactor& second, const std::vector<Rational>& l,
                                             std::size_t i, std::size_t j);

/// sum_{k=0}^{n} (-1)^k alpha^{n-k} beta^k for alpha, beta the restrictions
/// of l to two factors of equal top degree n >= 2. It lies in degree n and
/// is killed by alpha + beta. Throws domain_error if the top degrees differ
/// or n < 2, consistency_error if the product check fails.
PolyElement alternating_kernel_element(const AotPresentation& whole, const TensorFactor& first,
                                       const TensorFactor& second, const std::vector<Rational>& l);

/// Rank of the coordinate vectors of homogeneous degree-d elements.
std::size_t span_dimension(const std::vector<PolyElement>& elements, const NbcBasis& basis, std::size_t d);

/// Either bullet of the kernel-dimension criterion for failure in degree
/// i + j: dim A_{i+j} <= dim A_{i+j+1}, or dim A_{i+j} - k1 k2 < dim A_{i+j+1};
/// false when k1 k2 = 0.
bool injectivity_failure_predicate(const std::vector<BigInt>& dims, std::size_t i, std::size_t j, std::size_t k1,
                                   std::size_t k2);

}  // namespace aot
