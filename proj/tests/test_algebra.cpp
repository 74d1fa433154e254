#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "aot/algebra.hpp"
#include "aot/builtins.hpp"
#include "aot/errors.hpp"

using namespace aot;

namespace {

EdgeOrdering random_ordering(std::size_t edges, std::mt19937& rng) {
  std::vector<int> perm(edges);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return EdgeOrdering(perm);
}

std::vector<Monomial> squarefree_of_degree(std::size_t vars, std::size_t d) {
  std::vector<Monomial> out;
  for (EdgeMask m = 0; m < (EdgeMask{1} << vars); ++m)
    if (static_cast<std::size_t>(std::popcount(m)) == d) out.push_back(Monomial{m});
  return out;
}

PolyElement random_element(std::size_t vars, std::size_t d, std::mt19937& rng) {
  PolyElement x;
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (Monomial m : squarefree_of_degree(vars, d))
    if (rng() % 3 == 0) x.add_term(m, coeff(rng));
  return x;
}

std::vector<std::size_t> binomial_row(std::size_t n) {
  std::vector<std::size_t> row{1};
  for (std::size_t k = 0; k < n; ++k) row.push_back(row.back() * (n - k) / (k + 1));
  return row;
}

}  // namespace

TEST_CASE("monomials and elements") {
  CHECK(to_string(monomial_of({0, 2})) == "y1y3");
  CHECK(to_string(Monomial{}) == "1");
  PolyElement a = PolyElement::variable(0) + PolyElement::variable(1);
  CHECK((a * a).to_string() == "2*y1y2");
  CHECK((a.pow(3)).is_zero());
  CHECK((a - a).is_zero());
  CHECK(PolyElement::linear_form({1, -1}).to_string() == "y1 - y2");
}

TEST_CASE("triangle relation and normal form") {
  AotPresentation p(complete_graph(3));
  REQUIRE(p.relations().size() == 1);
  CHECK(p.relations()[0].polynomial().to_string() == "y1y2 - y1y3 + y2y3");
  CHECK(p.relations()[0].dependency_holds(p.graph()));
  auto bc = broken_circuits(p);
  REQUIRE(bc.size() == 1);
  CHECK(to_string(bc[0]) == "y2y3");
  CHECK(normal_form(PolyElement::term(monomial_of({1, 2})), p).to_string() == "-y1y2 + y1y3");
  CHECK(NbcBasis(p).dimensions() == std::vector<std::size_t>{1, 3, 2});
}

TEST_CASE("bowtie relations and NBC dimensions") {
  AotPresentation p(bowtie());
  REQUIRE(p.relations().size() == 2);
  CHECK(p.relations()[0].polynomial().to_string() == "y1y2 - y1y3 + y2y3");
  CHECK(p.relations()[1].polynomial().to_string() == "y4y5 - y4y6 + y5y6");
  CHECK(NbcBasis(p).dimensions() == std::vector<std::size_t>{1, 6, 13, 12, 4});
  CHECK(p.top_degree() == 4);
}

TEST_CASE("every circuit relation encodes a linear dependency") {
  for (const SimpleGraph& g : enumerate_connected_graphs(5)) {
    AotPresentation p(g);
    for (const auto& r : p.relations()) {
      CHECK(r.dependency_holds(g));
      CHECK(r.polynomial().is_homogeneous(static_cast<int>(r.edges.size()) - 1));
    }
  }
}

TEST_CASE("cycle has one broken circuit") {
  for (int n = 3; n <= 8; ++n) {
    AotPresentation p(cycle_graph(n));
    auto bc = broken_circuits(p);
    REQUIRE(bc.size() == 1);
    CHECK(bc[0].degree() == n - 1);
    CHECK(!bc[0].contains(0));
  }
}

TEST_CASE("trees have exterior algebra dimensions") {
  for (int n = 2; n <= 7; ++n) {
    AotPresentation p(path_graph(n));
    CHECK(p.relations().empty());
    CHECK(NbcBasis(p).dimensions() == binomial_row(static_cast<std::size_t>(n - 1)));
  }
}

TEST_CASE("NBC dimensions match the Poincare polynomial") {
  std::mt19937 rng(7);
  for (int n = 3; n <= 6; ++n)
    for (const SimpleGraph& g : enumerate_connected_graphs(n)) {
      if (g.edge_count() > 12) continue;
      AotPresentation p(g, random_ordering(g.edge_count(), rng));
      auto dims = NbcBasis(p).dimensions();
      IntPolynomial poincare = poincare_polynomial(g);
      REQUIRE(dims.size() == static_cast<std::size_t>(poincare.degree() + 1));
      for (std::size_t d = 0; d < dims.size(); ++d) CHECK(BigInt(static_cast<long>(dims[d])) == poincare.coeff(static_cast<int>(d)));
    }
}

TEST_CASE("normal form agrees with the brute-force quotient") {
  std::mt19937 rng(11);
  for (int n = 3; n <= 5; ++n)
    for (const SimpleGraph& g : enumerate_connected_graphs(n)) {
      if (g.edge_count() > 6) continue;
      for (int trial = 0; trial < 3; ++trial) {
        AotPresentation p(g, random_ordering(g.edge_count(), rng));
        NbcBasis nbc(p);
        NormalFormCache cache(p);
        for (std::size_t d = 0; d <= p.top_degree() + 1; ++d) {
          QuotientOracle oracle = brute_force_quotient(p, d);
          CHECK(oracle.standard_monomials() == nbc.degree(d));
          for (Monomial m : squarefree_of_degree(g.edge_count(), d)) {
            PolyElement x = PolyElement::term(m);
            PolyElement nf = normal_form(x, p);
            CHECK(oracle.reduce(x) == nf);
            CHECK(cache.apply(x) == nf);
          }
        }
      }
    }
}

TEST_CASE("normal form is idempotent, kills relations, and is multiplicative") {
  std::mt19937 rng(3);
  for (const SimpleGraph& g : {bowtie(), k4_dangling(), k23_plus(), complete_graph(4), cycle_graph(6)}) {
    AotPresentation p(g, random_ordering(g.edge_count(), rng));
    NbcBasis nbc(p);
    for (const auto& r : p.relations()) CHECK(normal_form(r.polynomial(), p).is_zero());
    for (int trial = 0; trial < 20; ++trial) {
      PolyElement a = random_element(g.edge_count(), 1 + trial % 2, rng);
      PolyElement b = random_element(g.edge_count(), 1, rng);
      PolyElement na = normal_form(a, p);
      CHECK(normal_form(na, p) == na);
      for (const auto& [m, c] : na.terms()) CHECK(nbc.contains(Monomial{m}));
      CHECK(normal_form(na * normal_form(b, p), p) == normal_form(a * b, p));
    }
  }
}

TEST_CASE("coordinates round trip") {
  AotPresentation p(bowtie());
  NbcBasis nbc(p);
  std::vector<Rational> coords(nbc.dimension(2));
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = make_rational(static_cast<long>(i) - 4, 3);
  CHECK(nbc.coordinates(nbc.element(coords, 2), 2) == coords);
  CHECK_THROWS_AS(nbc.coordinates(PolyElement::term(monomial_of({1, 2})), 2), consistency_error);
}

TEST_CASE("oracle size guard") {
  CHECK_NOTHROW(brute_force_quotient(AotPresentation(complete_graph(5)), 1));
  AotPresentation p(with_pendants(complete_graph(5), 0, 1));
  CHECK_THROWS_AS(brute_force_quotient(p, 2), size_guard_error);
}

TEST_CASE("tensor presentation splits into blocks") {
  auto factors = tensor_presentation(bowtie());
  REQUIRE(factors.size() == 2);
  for (const auto& f : factors) {
    CHECK(f.presentation.variable_count() == 3);
    CHECK(!f.is_bridge);
  }
  auto pendants = tensor_presentation(with_pendants(bowtie(), 2, 3));
  REQUIRE(pendants.size() == 5);
  CHECK(std::count_if(pendants.begin(), pendants.end(), [](const TensorFactor& f) { return f.is_bridge; }) == 3);

  SimpleGraph g = k4_dangling();
  std::mt19937 rng(5);
  EdgeOrdering order = random_ordering(g.edge_count(), rng);
  AotPresentation whole(g, order);
  for (const auto& f : tensor_presentation(g, order)) {
    // Each factor keeps the parent's relative order, so lifted normal forms agree.
    for (int trial = 0; trial < 10; ++trial) {
      PolyElement x = random_element(f.presentation.variable_count(), 2, rng);
      CHECK(lift(normal_form(x, f.presentation), f) == normal_form(lift(x, f), whole));
    }
  }
}
