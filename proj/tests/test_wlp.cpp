#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <numeric>
#include <random>
#include <sstream>

#include "aot/builtins.hpp"
#include "aot/errors.hpp"
#include "aot/wlp.hpp"

using namespace aot;

namespace {

using Dense = std::vector<std::vector<Rational>>;

Dense from_ints(const std::vector<std::vector<long>>& rows) {
  Dense d;
  for (const auto& r : rows) {
    d.emplace_back();
    for (long x : r) d.back().emplace_back(x);
  }
  return d;
}

Dense scaled(Dense d, const Rational& f) {
  for (auto& row : d)
    for (auto& x : row) x *= f;
  return d;
}

// "a2+a3", "a6-a4", "-a5", "0" with 1-based parameter names.
LinearForm parse_form(const std::string& text) {
  LinearForm f;
  std::size_t i = 0;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') sign = text[i++] == '-' ? -1 : 1;
    if (text[i] == '0') {
      ++i;
      continue;
    }
    REQUIRE(text[i] == 'a');
    std::size_t end = i + 1;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
    f.add(std::stoul(text.substr(i + 1, end - i - 1)) - 1, sign);
    i = end;
  }
  return f;
}

EdgeOrdering random_ordering(std::size_t edges, std::mt19937& rng) {
  std::vector<int> perm(edges);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return EdgeOrdering(perm);
}

EdgeMask mask(std::initializer_list<int> vars) { return monomial_of(vars).support; }

// Renames variable v to to[v]; variables mapped to -1 must not occur.
MonomialAlgebra relabel(const MonomialAlgebra& a, const std::vector<int>& to, std::size_t variables) {
  std::vector<EdgeMask> gens;
  for (EdgeMask g : a.generators()) {
    EdgeMask out = 0;
    for (int v : Monomial{g}.variables()) {
      REQUIRE(to[static_cast<std::size_t>(v)] >= 0);
      out |= EdgeMask{1} << to[static_cast<std::size_t>(v)];
    }
    gens.push_back(out);
  }
  return MonomialAlgebra(variables, gens);
}

}  // namespace

TEST_CASE("degree-0 multiplication matrix is the generic form") {
  for (const SimpleGraph& g : {bowtie(), k23_plus(), path_graph(4)}) {
    AotPresentation p(g);
    NbcBasis basis(p);
    ParamMatrix m = mul_matrix(p, basis, 0);
    REQUIRE(m.rows() == g.edge_count());
    REQUIRE(m.cols() == 1);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      LinearForm expected;
      expected.add(e, 1);
      CHECK(m.at(e, 0) == expected);
    }
  }
}

TEST_CASE("triangle multiplication matrix") {
  AotPresentation p(complete_graph(3));
  NbcBasis basis(p);
  ParamMatrix m = mul_matrix(p, basis, 1);
  CHECK(m.specialize({1, 1, 1}).to_dense() == from_ints({{1, 0, -1}, {1, 1, 2}}));
  CHECK(generic_rank(m, 3, 1).rank == 2);
}

TEST_CASE("bowtie multiplication matrix matches the displayed one") {
  // y1 is the largest variable, so y1y2 and y4y5 are the broken circuits.
  AotPresentation p(bowtie(), EdgeOrdering({5, 4, 3, 2, 1, 0}));
  NbcBasis basis(p);
  std::vector<std::string> a2, a3;
  for (Monomial m : basis.degree(2)) a2.push_back(to_string(m));
  for (Monomial m : basis.degree(3)) a3.push_back(to_string(m));
  CHECK(a2 == std::vector<std::string>{"y1y3", "y1y4", "y1y5", "y1y6", "y2y3", "y2y4", "y2y5", "y2y6", "y3y4", "y3y5",
                                       "y3y6", "y4y6", "y5y6"});
  CHECK(a3 == std::vector<std::string>{"y1y3y4", "y1y3y5", "y1y3y6", "y1y4y6", "y1y5y6", "y2y3y4", "y2y3y5", "y2y3y6",
                                       "y2y4y6", "y2y5y6", "y3y4y6", "y3y5y6"});
  const std::vector<std::vector<std::string>> displayed = {
      {"a4", "a2+a3", "0", "0", "0", "a1", "0", "0", "a1", "0", "0", "0", "0"},
      {"a5", "0", "a2+a3", "0", "0", "0", "a1", "0", "0", "a1", "0", "0", "0"},
      {"a6", "0", "0", "a2+a3", "0", "0", "0", "a1", "0", "0", "a1", "0", "0"},
      {"0", "a5+a6", "a4", "a4", "0", "0", "0", "0", "0", "0", "0", "a1", "0"},
      {"0", "-a5", "a6-a4", "a5", "0", "0", "0", "0", "0", "0", "0", "0", "a1"},
      {"0", "-a2", "0", "0", "a4", "a3-a1", "0", "0", "a2", "0", "0", "0", "0"},
      {"0", "0", "-a2", "0", "a5", "0", "a3-a1", "0", "0", "a2", "0", "0", "0"},
      {"0", "0", "0", "-a2", "a6", "0", "0", "a3-a1", "0", "0", "a2", "0", "0"},
      {"0", "0", "0", "0", "0", "a5+a6", "a4", "a4", "0", "0", "0", "a2", "0"},
      {"0", "0", "0", "0", "0", "-a5", "a6-a4", "a5", "0", "0", "0", "0", "a2"},
      {"0", "0", "0", "0", "0", "0", "0", "0", "a5+a6", "a4", "a4", "a3", "0"},
      {"0", "0", "0", "0", "0", "0", "0", "0", "-a5", "a6-a4", "a5", "0", "a3"}};
  ParamMatrix m = mul_matrix(p, basis, 2);
  REQUIRE(m.rows() == 12);
  REQUIRE(m.cols() == 13);
  for (std::size_t r = 0; r < 12; ++r)
    for (std::size_t c = 0; c < 13; ++c) CHECK_MESSAGE(m.at(r, c) == parse_form(displayed[r][c]), "row ", r, " col ", c);
  CHECK(generic_rank(m, 3, 1).rank == 11);
}

TEST_CASE("bowtie fails WLP in degree 2") {
  WlpReport r = wlp_check(bowtie());
  CHECK(r.hilbert == IntPolynomial{1, 6, 13, 12, 4});
  CHECK(!r.has_wlp);
  CHECK(r.failing_degrees == std::vector<std::size_t>{2});
  CHECK(r.summary() == "fails WLP in degree 2; rank 11 of max 12");
  CHECK(r.degrees[2].verdict == MapVerdict::deficient);
  CHECK(r.certificate == CertificateKind::probabilistic);
  CHECK(r.failure_bound > 0);
  CHECK(r.failure_bound < 1e-10);
  for (std::size_t d : {0u, 1u, 3u}) CHECK(r.degrees[d].exact);
  auto j = to_json(r);
  CHECK(j["summary"] == r.summary());
  CHECK(j["degrees"].size() == 4);
}

TEST_CASE("cycles, forests and K4 with a pendant have WLP") {
  for (int n = 3; n <= 8; ++n) {
    WlpReport r = wlp_check(cycle_graph(n));
    CHECK_MESSAGE(r.has_wlp, "cycle ", n);
    CHECK(r.certificate == CertificateKind::exact);
  }
  CHECK(wlp_check(path_graph(6)).has_wlp);
  CHECK(wlp_check(k4_dangling()).has_wlp);
}

TEST_CASE("has-WLP verdicts survive reseeding") {
  for (const SimpleGraph& g : enumerate_connected_graphs(5)) {
    WlpReport a = wlp_check(g, 3, 1);
    for (std::uint64_t seed : {2u, 77u}) {
      WlpReport b = wlp_check(g, 3, seed);
      if (a.has_wlp) CHECK(b.has_wlp);
      CHECK(b.has_wlp == a.has_wlp);
    }
  }
}

TEST_CASE("multiplication matrices agree with the brute-force quotient") {
  std::mt19937 rng(17);
  for (int n = 3; n <= 5; ++n)
    for (const SimpleGraph& g : enumerate_connected_graphs(n)) {
      if (g.edge_count() > 6) continue;
      for (int trial = 0; trial < 2; ++trial) {
        AotPresentation p(g, random_ordering(g.edge_count(), rng));
        NbcBasis basis(p);
        auto point = sample_point(g.edge_count(), rng(), 0);
        for (std::size_t i = 0; i < p.top_degree(); ++i) {
          RationalMatrix m = mul_matrix(p, basis, i).specialize(point);
          CHECK(m.rows() == basis.dimension(i + 1));
          CHECK(m.cols() == basis.dimension(i));
          QuotientOracle oracle = brute_force_quotient(p, i + 1);
          PolyElement l = PolyElement::linear_form(point);
          for (std::size_t col = 0; col < basis.dimension(i); ++col) {
            PolyElement image = oracle.reduce(l * PolyElement::term(basis.degree(i)[col]));
            auto coords = basis.coordinates(image, i + 1);
            for (std::size_t row = 0; row < coords.size(); ++row) CHECK(m.at(row, col) == coords[row]);
          }
        }
      }
    }
}

TEST_CASE("monomial algebras") {
  MonomialAlgebra a(4, {mask({0, 1, 2}), mask({0, 1}), mask({0, 1}), mask({2, 3})});
  CHECK(a.generators() == std::vector<EdgeMask>{mask({0, 1}), mask({2, 3})});
  CHECK(a.hilbert_series() == IntPolynomial{1, 4, 4});
  CHECK(a.to_string() == "<y1y2, y3y4>");
  CHECK_THROWS_AS(MonomialAlgebra(3, {mask({0})}), domain_error);
  CHECK_THROWS_AS(MonomialAlgebra(2, {mask({0, 2})}), domain_error);

  // Bowtie-type initial ideal fails; the mixed-degree one has WLP.
  // y7 occurs in no generator.
  CHECK(!monomial_wlp_check(MonomialAlgebra(7, {mask({0, 1}), mask({2, 3}), mask({4, 5})})).has_wlp);
  MonomialAlgebra good(7, {mask({0, 1}), mask({0, 2}), mask({0, 3}), mask({2, 3, 5}), mask({1, 3, 4}), mask({1, 2, 4})});
  CHECK(monomial_wlp_check(good).has_wlp);
  CHECK(good.hilbert_series() == poincare_polynomial(k23_plus()));
  for (std::size_t k = 1; k <= 8; ++k) CHECK(monomial_wlp_check(MonomialAlgebra(k, {})).has_wlp);

  // The lex initial algebra of the bowtie.
  CHECK(!monomial_wlp_check(initial_algebra(AotPresentation(bowtie()))).has_wlp);
}

TEST_CASE("l^2 criterion on cycle factors") {
  // 5-cycle: drop the free variable, leaving squares and y1y2y3y4.
  MonomialAlgebra a(4, {mask({0, 1, 2, 3})});
  CHECK(a.hilbert_series() == IntPolynomial{1, 4, 6, 4});
  CHECK(ell_squared_matrix(a, 1).to_dense() == scaled(from_ints({{1}, {1}, {1}, {1}, {1}, {1}}), 2));
  CHECK(ell_squared_matrix(a, 2).to_dense() ==
        scaled(from_ints({{1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}}), 2));
  CHECK(ell_squared_criterion(a, 1));
  CHECK(ell_squared_criterion(a, 2));

  MonomialAlgebra six(5, {mask({0, 1, 2, 3, 4})});
  CHECK(ell_squared_matrix(six, 3).to_dense() == scaled(from_ints({{1, 1, 1, 0, 1, 1, 0, 1, 0, 0},
                                                                    {1, 1, 0, 1, 1, 0, 1, 0, 1, 0},
                                                                    {1, 0, 1, 1, 0, 1, 1, 0, 0, 1},
                                                                    {0, 1, 1, 1, 0, 0, 0, 1, 1, 1},
                                                                    {0, 0, 0, 0, 1, 1, 1, 1, 1, 1}}),
                                                         2));
  CHECK(ell_squared_criterion(six, 3));

  // Same answers through the AOT normal form of a cycle factor.
  AotPresentation c5(cycle_graph(5));
  CHECK(ell_squared_criterion(c5, 1));
  CHECK(ell_squared_criterion(c5, 2));
}

TEST_CASE("5-cycle with a chord") {
  // Cycle 0-1-2-3-4 with y1..y5 clockwise from {0,1}, chord y0 = {1,4}.
  SimpleGraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 4}});
  // Edge indices follow sorted pairs: (0,1)(0,4)(1,2)(1,4)(2,3)(3,4).
  const std::vector<int> label = {1, 5, 2, 0, 3, 4};  // edge index -> displayed subscript
  // y5 < y2 < y0 < y1 < y3 < y4
  AotPresentation p(g, EdgeOrdering({1, 2, 3, 0, 4, 5}));
  MonomialAlgebra c = relabel(initial_algebra(p), label, 6);
  CHECK(c.generators() == std::vector<EdgeMask>{mask({0, 1}), mask({0, 3, 4}), mask({1, 2, 3, 4})});
  CHECK(c.hilbert_series() == IntPolynomial{1, 6, 14, 15, 6});
  MonomialAlgebra a(5, c.generators());  // y5 occurs in no generator
  CHECK(a.hilbert_series() == IntPolynomial{1, 5, 9, 6});
  std::vector<std::string> a3;
  for (Monomial m : a.basis(3)) a3.push_back(to_string(m));
  // to_string is 1-based, so y1y3y4 here is y0y2y3 with 0-based names.
  CHECK(a3 == std::vector<std::string>{"y1y3y4", "y1y3y5", "y2y3y4", "y2y3y5", "y2y4y5", "y3y4y5"});
  CHECK(ell_squared_matrix(a, 2).to_dense() == scaled(from_ints({{1, 0, 1, 1, 0},
                                                                  {1, 0, 1, 0, 1},
                                                                  {0, 1, 1, 1, 0},
                                                                  {0, 1, 1, 0, 1},
                                                                  {0, 1, 0, 1, 1},
                                                                  {0, 0, 1, 1, 1}}),
                                                       2));
  CHECK(ell_squared_criterion(a, 2));
  CHECK(wlp_check(g).has_wlp);
}

TEST_CASE("tensor products of Sym(V)/V^2") {
  CHECK(tensor_sym_wlp({5, 1, 1}));
  CHECK(tensor_sym_wlp({2, 2, 1}));
  CHECK(!tensor_sym_wlp({2, 2}));
  CHECK(!tensor_sym_wlp({2, 2, 1, 1}));
  CHECK(tensor_sym_wlp({1, 2, 2, 1, 1}));
  CHECK(!tensor_sym_wlp({2, 2, 2}));
  // Exhaustive agreement with the explicit algebra for total dimension <= 8.
  std::vector<int> parts;
  std::size_t checked = 0;
  auto rec = [&](auto&& self, int left, int max_part) -> void {
    if (!parts.empty()) {
      CHECK_MESSAGE(tensor_sym_wlp(parts) == monomial_wlp_check(tensor_sym_algebra(parts)).has_wlp, parts.size());
      ++checked;
    }
    for (int d = std::min(left, max_part); d >= 1; --d) {
      parts.push_back(d);
      self(self, left - d, d);
      parts.pop_back();
    }
  };
  rec(rec, 8, 8);
  CHECK(checked == 1 + 2 + 3 + 5 + 7 + 11 + 15 + 22);
}

TEST_CASE("bowtie kernel elements") {
  const SimpleGraph g = bowtie();
  AotPresentation whole(g);
  auto factors = tensor_presentation(g);
  REQUIRE(factors.size() == 2);
  std::vector<Rational> l = sample_point(6, 42, 0);
  l[1] = make_rational(-7, 3);  // a rational, not just integer, point

  // The generator displayed for one triangle.
  const Rational &a1 = l[0], &a2 = l[1], &a3 = l[2];
  PolyElement displayed = PolyElement::linear_form({(a1 + a2 - a3) * a1, (-a1 - a2 - a3) * a2, (-a1 + a2 + a3) * a3});
  auto k1 = factor_kernel(factors[0], l, 1);
  REQUIRE(k1.size() == 1);
  CHECK(multiply_by_linear(displayed, {a1, a2, a3}, factors[0].presentation).is_zero());

  auto taut = tautological_kernel(whole, factors[0], factors[1], l, 1, 1);
  REQUIRE(taut.size() == 1);
  PolyElement alt = alternating_kernel_element(whole, factors[0], factors[1], l);

  // alpha^2 = 2 gamma, beta^2 = 2 delta, epsilon = alpha beta.
  const Rational &a4 = l[3], &a5 = l[4], &a6 = l[5];
  PolyElement gamma = PolyElement::term(monomial_of({0, 2}), a1 * a3 + a1 * a2) +
                      PolyElement::term(monomial_of({1, 2}), a2 * a3 - a1 * a2);
  PolyElement delta = PolyElement::term(monomial_of({3, 5}), a4 * a6 + a4 * a5) +
                      PolyElement::term(monomial_of({4, 5}), a5 * a6 - a4 * a5);
  PolyElement epsilon = PolyElement::linear_form({a1, a2, a3, 0, 0, 0}) * PolyElement::linear_form({0, 0, 0, a4, a5, a6});
  CHECK(alt == normal_form(gamma * Rational(2) - epsilon + delta * Rational(2), whole));

  NbcBasis basis(whole);
  CHECK(span_dimension({taut[0], alt}, basis, 2) == 2);
  RationalMatrix mu = mul_matrix(whole, basis, 2).specialize(l);
  CHECK(kernel_basis(mu).size() == 2);
  for (const PolyElement& v : {taut[0], alt})
    for (const auto& x : mu.apply(basis.coordinates(v, 2))) CHECK(x == 0);
}

TEST_CASE("kernel construction edge cases") {
  std::vector<Rational> l = sample_point(4, 3, 0);
  SimpleGraph g = with_pendants(complete_graph(3), 0, 1);
  AotPresentation whole(g);
  auto factors = tensor_presentation(g);
  REQUIRE(factors.size() == 2);
  const TensorFactor& tri = factors[0].is_bridge ? factors[1] : factors[0];
  const TensorFactor& bridge = factors[0].is_bridge ? factors[0] : factors[1];
  CHECK_THROWS_AS(alternating_kernel_element(whole, tri, bridge, l), domain_error);
  // A tree factor has no kernel below its top degree.
  CHECK(factor_kernel(bridge, l, 0).empty());
  CHECK(tautological_kernel(whole, tri, bridge, l, 0, 0).empty());
  // The bridge's top degree is all kernel.
  CHECK(factor_kernel(bridge, l, 1).size() == 1);

  SimpleGraph path = path_graph(3);
  auto bridges = tensor_presentation(path);
  CHECK_THROWS_AS(alternating_kernel_element(AotPresentation(path), bridges[0], bridges[1], {1, 2}), domain_error);
  CHECK_THROWS_AS(tautological_kernel(AotPresentation(path), std::vector<TensorFactor>{bridges[0]}, {1, 2}, {0}),
                  domain_error);
}

TEST_CASE("bouquets") {
  for (int d = 1; d <= 6; ++d) {
    IntPolynomial expected = IntPolynomial::linear(1, 1).pow(static_cast<unsigned>(d)) *
                             IntPolynomial::linear(1, 2).pow(static_cast<unsigned>(d));
    AotPresentation p(bouquet(d));
    std::vector<BigInt> dims;
    for (std::size_t x : NbcBasis(p).dimensions()) dims.emplace_back(static_cast<unsigned long>(x));
    CHECK(IntPolynomial(dims) == expected);
  }
  for (unsigned d = 1; d <= 30; ++d) {
    IntPolynomial hs = IntPolynomial::linear(1, 1).pow(d) * IntPolynomial::linear(1, 2).pow(d);
    if (hs.coeff(d) <= hs.coeff(d + 1)) CHECK(injectivity_failure_predicate(hs.coeffs(), d - 1, 1, 1, 1));
    if (d >= 3) CHECK(hs.coeff(d) <= hs.coeff(d + 1));
  }
  std::vector<BigInt> bow{1, 6, 13, 12, 4};
  CHECK(!injectivity_failure_predicate(bow, 1, 1, 1, 1));
  CHECK(!injectivity_failure_predicate(bow, 1, 1, 0, 3));
  CHECK(injectivity_failure_predicate(bow, 0, 1, 1, 1));

  WlpReport three = wlp_check(bouquet(3));
  CHECK(!three.has_wlp);
  CHECK(std::find(three.failing_degrees.begin(), three.failing_degrees.end(), 3u) != three.failing_degrees.end());
}
