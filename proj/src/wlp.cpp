#include "aot/wlp.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "aot/errors.hpp"

namespace aot {

// ---------------------------------------------------------------------------
// Multiplication maps

ParamMatrix mul_matrix(const AotPresentation& p, const NbcBasis& basis, std::size_t i) {
  NormalFormCache cache(p);
  return mul_matrix(p, basis, i, cache);
}

ParamMatrix mul_matrix(const AotPresentation& p, const NbcBasis& basis, std::size_t i, NormalFormCache& cache) {
  const auto& source = basis.degree(i);
  ParamMatrix m(basis.dimension(i + 1), source.size(), p.variable_count());
  for (std::size_t col = 0; col < source.size(); ++col) {
    const EdgeMask b = source[col].support;
    for (std::size_t e = 0; e < p.variable_count(); ++e) {
      const EdgeMask bit = EdgeMask{1} << e;
      if (b & bit) continue;
      for (const auto& [mono, c] : cache.of(Monomial{b | bit})) {
        auto loc = basis.locate(Monomial{mono});
        if (!loc || loc->first != i + 1) throw consistency_error("normal form left the NBC basis");
        m.add(loc->second, col, e, c);
      }
    }
  }
  return m;
}

PolyElement multiply_by_linear(const PolyElement& x, const std::vector<Rational>& l, const AotPresentation& p) {
  if (l.size() != p.variable_count()) throw domain_error("linear form has the wrong number of coefficients");
  PolyElement product;
  for (std::size_t e = 0; e < l.size(); ++e)
    if (l[e] != 0) product += PolyElement::variable(static_cast<int>(e), l[e]) * x;
  return normal_form(product, p);
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::injective: return "injective";
    case MapVerdict::surjective: return "surjective";
    case MapVerdict::deficient: return "deficient";
  }
  return "?";
}

std::string to_string(CertificateKind k) { return k == CertificateKind::exact ? "exact" : "probabilistic"; }

std::string WlpReport::summary() const {
  if (has_wlp) return "has WLP";
  std::ostringstream out;
  out << "fails WLP in degree" << (failing_degrees.size() > 1 ? "s " : " ");
  for (std::size_t k = 0; k < failing_degrees.size(); ++k) out << (k ? ", " : "") << failing_degrees[k];
  for (std::size_t d : failing_degrees) {
    const DegreeRecord& r = degrees[d];
    out << "; ";
    if (failing_degrees.size() > 1) out << "degree " << d << ": ";
    out << "rank " << r.rank << " of max " << r.max_rank;
  }
  return out.str();
}

nlohmann::json to_json(const WlpReport& r) {
  nlohmann::json j;
  j["graph"] = r.graph_id;
  std::vector<std::string> hs;
  for (const auto& c : r.hilbert.coeffs()) hs.push_back(c.get_str());
  j["hilbert"] = hs;
  j["hilbert_text"] = r.hilbert.to_string();
  j["degrees"] = nlohmann::json::array();
  for (const auto& d : r.degrees)
    j["degrees"].push_back({{"degree", d.degree},
                            {"dim_source", d.dim_source},
                            {"dim_target", d.dim_target},
                            {"rank", d.rank},
                            {"max_rank", d.max_rank},
                            {"verdict", to_string(d.verdict)},
                            {"exact", d.exact},
                            {"failure_bound", d.failure_bound}});
  j["has_wlp"] = r.has_wlp;
  j["failing_degrees"] = r.failing_degrees;
  j["certificate"] = to_string(r.certificate);
  j["failure_bound"] = r.failure_bound;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["summary"] = r.summary();
  return j;
}

namespace {

DegreeRecord make_record(std::size_t degree, std::size_t source, std::size_t target, std::size_t rank, bool exact,
                         double bound) {
  DegreeRecord rec;
  rec.degree = degree;
  rec.dim_source = source;
  rec.dim_target = target;
  rec.rank = rank;
  rec.max_rank = std::min(source, target);
  rec.exact = exact;
  rec.failure_bound = bound;
  if (rank == source)
    rec.verdict = MapVerdict::injective;
  else if (rank == target)
    rec.verdict = MapVerdict::surjective;
  else
    rec.verdict = MapVerdict::deficient;
  return rec;
}

void finish(WlpReport& r) {
  r.has_wlp = true;
  r.failing_degrees.clear();
  r.certificate = CertificateKind::exact;
  r.failure_bound = 0;
  for (const auto& d : r.degrees)
    if (d.rank < d.max_rank) {
      r.has_wlp = false;
      r.failing_degrees.push_back(d.degree);
    }
  // "Fails" is wrong only if every failing degree was undershot.
  for (std::size_t d : r.failing_degrees) {
    const DegreeRecord& rec = r.degrees[d];
    if (rec.exact) {
      r.failure_bound = 0;
      r.certificate = CertificateKind::exact;
      return;
    }
    r.certificate = CertificateKind::probabilistic;
    r.failure_bound = r.failure_bound == 0 ? rec.failure_bound : std::min(r.failure_bound, rec.failure_bound);
  }
}

IntPolynomial polynomial_of(const std::vector<std::size_t>& dims) {
  std::vector<BigInt> c;
  for (std::size_t d : dims) c.emplace_back(static_cast<unsigned long>(d));
  return IntPolynomial(std::move(c));
}

}  // namespace

WlpReport wlp_check(const SimpleGraph& g, std::size_t samples, std::uint64_t seed) {
  return wlp_check(AotPresentation(g), samples, seed);
}

WlpReport wlp_check(const AotPresentation& p, std::size_t samples, std::uint64_t seed) {
  NbcBasis basis(p);
  WlpReport report;
  report.graph_id = to_graph6(p.graph());
  report.hilbert = polynomial_of(basis.dimensions());
  report.samples = samples;
  report.seed = seed;
  if (report.hilbert != poincare_polynomial(p.graph()))
    throw consistency_error("NBC dimensions " + report.hilbert.to_string() + " disagree with the Poincare polynomial " +
                            poincare_polynomial(p.graph()).to_string());
  NormalFormCache cache(p);
  for (std::size_t i = 0; i < basis.top_degree(); ++i) {
    ParamMatrix m = mul_matrix(p, basis, i, cache);
    GenericRank g = generic_rank(m, samples, seed);
    report.degrees.push_back(make_record(i, m.cols(), m.rows(), g.rank, g.certified, g.failure_bound));
  }
  finish(report);
  return report;
}

// ---------------------------------------------------------------------------
// Monomial algebras

MonomialAlgebra::MonomialAlgebra(std::size_t variables, std::vector<EdgeMask> generators) : variables_(variables) {
  if (variables > kMaxMaskEdges) throw size_guard_error("monomial algebras support at most 32 variables");
  const EdgeMask all = variables == kMaxMaskEdges ? ~EdgeMask{0} : (EdgeMask{1} << variables) - 1;
  for (EdgeMask g : generators) {
    if (g == 0) throw domain_error("the unit ideal is not allowed");
    if (g & ~all) throw domain_error("generator uses a variable out of range");
  }
  std::sort(generators.begin(), generators.end(), [](EdgeMask a, EdgeMask b) {
    const int da = std::popcount(a), db = std::popcount(b);
    return da != db ? da < db : Monomial{a}.variables() < Monomial{b}.variables();
  });
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (EdgeMask g : generators) {
    if (std::popcount(g) == 1) throw domain_error("a variable generator is not supported");
    bool redundant = std::any_of(generators_.begin(), generators_.end(), [&](EdgeMask h) { return (g & h) == h; });
    if (!redundant) generators_.push_back(g);
  }
  basis_.assign(1, {});
  auto dfs = [&](auto&& self, EdgeMask current, std::size_t next) -> void {
    const auto d = static_cast<std::size_t>(std::popcount(current));
    if (basis_.size() <= d) basis_.resize(d + 1);
    basis_[d].push_back(Monomial{current});
    for (std::size_t v = next; v < variables_; ++v) {
      const EdgeMask grown = current | (EdgeMask{1} << v);
      if (is_standard(grown)) self(self, grown, v + 1);
    }
  };
  dfs(dfs, 0, 0);
}

bool MonomialAlgebra::is_standard(EdgeMask m) const {
  return std::none_of(generators_.begin(), generators_.end(), [&](EdgeMask g) { return (m & g) == g; });
}

const std::vector<Monomial>& MonomialAlgebra::basis(std::size_t d) const {
  static const std::vector<Monomial> empty;
  return d < basis_.size() ? basis_[d] : empty;
}

std::vector<std::size_t> MonomialAlgebra::dimensions() const {
  std::vector<std::size_t> out;
  for (const auto& level : basis_) out.push_back(level.size());
  return out;
}

IntPolynomial MonomialAlgebra::hilbert_series() const { return polynomial_of(dimensions()); }

std::size_t MonomialAlgebra::max_generator_degree() const {
  return generators_.empty() ? 0 : static_cast<std::size_t>(std::popcount(generators_.back()));
}

std::string MonomialAlgebra::to_string() const {
  std::string out = "<";
  for (std::size_t k = 0; k < generators_.size(); ++k) out += (k ? ", " : "") + aot::to_string(Monomial{generators_[k]});
  return out + ">";
}

MonomialAlgebra initial_algebra(const AotPresentation& p) {
  std::vector<EdgeMask> gens;
  for (const auto& r : p.reducers()) gens.push_back(r.broken);
  return MonomialAlgebra(p.variable_count(), gens);
}

namespace {

std::unordered_map<EdgeMask, std::size_t> index_of(const std::vector<Monomial>& monomials) {
  std::unordered_map<EdgeMask, std::size_t> out;
  for (std::size_t k = 0; k < monomials.size(); ++k) out[monomials[k].support] = k;
  return out;
}

std::size_t maximal_rank(const RationalMatrix& m) {
  // A deficient modular rank proves nothing, so one prime is enough.
  const std::size_t full = std::min(m.rows(), m.cols());
  if (auto r = rank_modular(m, kSamplePrimes[0]); r && *r == full) return full;
  return rank_exact(m);
}

}  // namespace

RationalMatrix monomial_mul_matrix(const MonomialAlgebra& a, std::size_t i) {
  const auto& source = a.basis(i);
  const auto& target = a.basis(i + 1);
  auto rows = index_of(target);
  RationalMatrix m(target.size(), source.size());
  for (std::size_t col = 0; col < source.size(); ++col)
    for (std::size_t v = 0; v < a.variable_count(); ++v) {
      const EdgeMask grown = source[col].support | (EdgeMask{1} << v);
      if (grown == source[col].support) continue;
      if (auto it = rows.find(grown); it != rows.end()) m.set(it->second, col, 1);
    }
  return m;
}

WlpReport monomial_wlp_check(const MonomialAlgebra& a, const std::string& id) {
  WlpReport report;
  report.graph_id = id.empty() ? a.to_string() : id;
  report.hilbert = a.hilbert_series();
  for (std::size_t i = 0; i < a.top_degree(); ++i) {
    RationalMatrix m = monomial_mul_matrix(a, i);
    report.degrees.push_back(make_record(i, m.cols(), m.rows(), maximal_rank(m), true, 0.0));
  }
  finish(report);
  return report;
}

RationalMatrix ell_squared_matrix(const MonomialAlgebra& a, std::size_t i) {
  if (i == 0) throw domain_error("l^2 needs i >= 1");
  const auto& source = a.basis(i - 1);
  const auto& target = a.basis(i + 1);
  auto rows = index_of(target);
  RationalMatrix m(target.size(), source.size());
  for (std::size_t col = 0; col < source.size(); ++col) {
    const EdgeMask b = source[col].support;
    for (const Monomial& t : target)
      if ((t.support & b) == b) m.set(rows[t.support], col, 2);
  }
  return m;
}

RationalMatrix ell_squared_matrix(const AotPresentation& p, const NbcBasis& basis, std::size_t i) {
  if (i == 0) throw domain_error("l^2 needs i >= 1");
  const auto& source = basis.degree(i - 1);
  RationalMatrix m(basis.dimension(i + 1), source.size());
  NormalFormCache cache(p);
  const std::size_t k = p.variable_count();
  for (std::size_t col = 0; col < source.size(); ++col) {
    const EdgeMask b = source[col].support;
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = x + 1; y < k; ++y) {
        const EdgeMask pair = (EdgeMask{1} << x) | (EdgeMask{1} << y);
        if (b & pair) continue;
        for (const auto& [mono, c] : cache.of(Monomial{b | pair})) {
          auto loc = basis.locate(Monomial{mono});
          if (!loc || loc->first != i + 1) throw consistency_error("normal form left the NBC basis");
          m.add(loc->second, col, 2 * c);
        }
      }
  }
  return m;
}

bool ell_squared_criterion(const MonomialAlgebra& a, std::size_t i) {
  RationalMatrix m = ell_squared_matrix(a, i);
  return maximal_rank(m) == std::min(m.rows(), m.cols());
}

bool ell_squared_criterion(const AotPresentation& p, std::size_t i) {
  RationalMatrix m = ell_squared_matrix(p, NbcBasis(p), i);
  return maximal_rank(m) == std::min(m.rows(), m.cols());
}

bool tensor_sym_wlp(std::vector<int> dims) {
  if (dims.empty()) throw domain_error("tensor_sym_wlp needs at least one factor");
  for (int d : dims)
    if (d < 1) throw domain_error("factor dimensions must be positive");
  std::sort(dims.rbegin(), dims.rend());
  const auto ones_from = [&](std::size_t k) {
    return std::all_of(dims.begin() + static_cast<long>(std::min(k, dims.size())), dims.end(), [](int d) { return d == 1; });
  };
  return ones_from(1) || (ones_from(2) && dims.size() % 2 == 1);
}

MonomialAlgebra tensor_sym_algebra(const std::vector<int>& dims) {
  std::vector<EdgeMask> gens;
  std::size_t offset = 0;
  for (int d : dims) {
    if (d < 1) throw domain_error("factor dimensions must be positive");
    for (std::size_t x = 0; x < static_cast<std::size_t>(d); ++x)
      for (std::size_t y = x + 1; y < static_cast<std::size_t>(d); ++y)
        gens.push_back((EdgeMask{1} << (offset + x)) | (EdgeMask{1} << (offset + y)));
    offset += static_cast<std::size_t>(d);
  }
  return MonomialAlgebra(offset, gens);
}

// ---------------------------------------------------------------------------
// Kernel constructions

namespace {

std::vector<Rational> restrict_form(const TensorFactor& f, const std::vector<Rational>& l) {
  std::vector<Rational> out;
  for (int e : f.edge_map) out.push_back(l.at(static_cast<std::size_t>(e)));
  return out;
}

void require_partition(const AotPresentation& whole, const std::vector<const TensorFactor*>& factors) {
  EdgeMask seen = 0;
  for (const TensorFactor* f : factors)
    for (int e : f->edge_map) {
      const EdgeMask bit = EdgeMask{1} << e;
      if (seen & bit) throw domain_error("tensor factors overlap");
      seen |= bit;
    }
  if (static_cast<std::size_t>(std::popcount(seen)) != whole.variable_count())
    throw domain_error("tensor factors must cover every edge");
}

void require_killed(const PolyElement& x, const std::vector<Rational>& l, const AotPresentation& whole) {
  if (!multiply_by_linear(x, l, whole).is_zero())
    throw consistency_error("constructed element is not in the kernel: " + x.to_string());
}

}  // namespace

std::vector<PolyElement> factor_kernel(const TensorFactor& f, const std::vector<Rational>& l, std::size_t i) {
  NbcBasis basis(f.presentation);
  if (i > basis.top_degree()) return {};
  RationalMatrix m = mul_matrix(f.presentation, basis, i).specialize(restrict_form(f, l));
  std::vector<PolyElement> out;
  for (const auto& v : kernel_basis(m)) out.push_back(basis.element(v, i));
  return out;
}

std::vector<PolyElement> tautological_kernel(const AotPresentation& whole, const std::vector<TensorFactor>& factors,
                                             const std::vector<Rational>& l, const std::vector<std::size_t>& degrees) {
  if (factors.size() != degrees.size()) throw domain_error("one degree per factor is required");
  std::vector<const TensorFactor*> ptrs;
  for (const auto& f : factors) ptrs.push_back(&f);
  require_partition(whole, ptrs);
  std::vector<PolyElement> products{PolyElement::constant(1)};
  for (std::size_t k = 0; k < factors.size(); ++k) {
    auto kernel = factor_kernel(factors[k], l, degrees[k]);
    if (kernel.empty()) return {};
    std::vector<PolyElement> next;
    for (const auto& p : products)
      for (const auto& x : kernel) next.push_back(p * lift(x, factors[k]));
    products = std::move(next);
  }
  for (auto& p : products) {
    p = normal_form(p, whole);
    require_killed(p, l, whole);
  }
  return products;
}

std::vector<PolyElement> tautological_kernel(const AotPresentation& whole, const TensorFactor& first,
                                             const TensorFactor& second, const std::vector<Rational>& l,
                                             std::size_t i, std::size_t j) {
  return tautological_kernel(whole, std::vector<TensorFactor>{first, second}, l, {i, j});
}

PolyElement alternating_kernel_element(const AotPresentation& whole, const TensorFactor& first,
                                       const TensorFactor& second, const std::vector<Rational>& l) {
  require_partition(whole, {&first, &second});
  const std::size_t n = first.presentation.top_degree();
  if (second.presentation.top_degree() != n)
    throw domain_error("the factors have different top degrees (" + std::to_string(n) + " and " +
                       std::to_string(second.presentation.top_degree()) + ")");
  if (n < 2) throw domain_error("the alternating element needs top degree at least 2");
  const PolyElement alpha = lift(PolyElement::linear_form(restrict_form(first, l)), first);
  const PolyElement beta = lift(PolyElement::linear_form(restrict_form(second, l)), second);
  PolyElement sum;
  for (std::size_t k = 0; k <= n; ++k) {
    PolyElement term = alpha.pow(static_cast<unsigned>(n - k)) * beta.pow(static_cast<unsigned>(k));
    if (k % 2) term *= Rational(-1);
    sum += term;
  }
  PolyElement out = normal_form(sum, whole);
  require_killed(out, l, whole);
  return out;
}

std::size_t span_dimension(const std::vector<PolyElement>& elements, const NbcBasis& basis, std::size_t d) {
  RationalMatrix m(elements.size(), basis.dimension(d));
  for (std::size_t r = 0; r < elements.size(); ++r) {
    auto coords = basis.coordinates(elements[r], d);
    for (std::size_t c = 0; c < coords.size(); ++c) m.set(r, c, coords[c]);
  }
  return rank_exact(m);
}

bool injectivity_failure_predicate(const std::vector<BigInt>& dims, std::size_t i, std::size_t j, std::size_t k1,
                                   std::size_t k2) {
  if (k1 == 0 || k2 == 0) return false;
  auto dim = [&](std::size_t d) { return d < dims.size() ? dims[d] : BigInt(0); };
  const BigInt here = dim(i + j), next = dim(i + j + 1);
  const BigInt k = BigInt(static_cast<unsigned long>(k1)) * static_cast<unsigned long>(k2);
  return here <= next || here - k < next;
}

}  // namespace aot
