#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "aot/builtins.hpp"
#include "aot/errors.hpp"
#include "aot/initideals.hpp"

using namespace aot;

namespace {

// Every permutation of the edges, literally.
std::set<std::vector<EdgeMask>> ideals_by_permutation(const SimpleGraph& g) {
  std::vector<int> perm(g.edge_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<EdgeMask>> out;
  do {
    out.insert(initial_algebra(AotPresentation(g, EdgeOrdering(perm))).generators());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

EdgeMask mask(std::initializer_list<int> vars) { return monomial_of(vars).support; }

std::vector<EdgeMask> relabel(const std::vector<EdgeMask>& gens, const std::vector<int>& to) {
  std::vector<EdgeMask> out;
  for (EdgeMask g : gens) {
    EdgeMask m = 0;
    for (int v : Monomial{g}.variables()) m |= EdgeMask{1} << to[static_cast<std::size_t>(v)];
    out.push_back(m);
  }
  return MonomialAlgebra(to.size(), out).generators();
}

bool occurs_up_to_relabeling(const std::vector<EdgeMask>& gens, const std::vector<InitialIdeal>& ideals, std::size_t vars) {
  std::set<std::vector<EdgeMask>> known;
  for (const auto& i : ideals) known.insert(i.algebra.generators());
  std::vector<int> to(vars);
  std::iota(to.begin(), to.end(), 0);
  do {
    if (known.count(relabel(gens, to))) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

}  // namespace

TEST_CASE("search agrees with every permutation on small graphs") {
  for (int n = 3; n <= 5; ++n)
    for (const SimpleGraph& g : enumerate_connected_graphs(n)) {
      if (g.edge_count() > 7) continue;
      auto ideals = enumerate_initial_ideals(g);
      std::set<std::vector<EdgeMask>> found;
      for (const auto& i : ideals) {
        found.insert(i.algebra.generators());
        // The witness ordering reproduces its ideal.
        CHECK(initial_algebra(AotPresentation(g, i.witness)).generators() == i.algebra.generators());
      }
      CHECK(found.size() == ideals.size());
      CHECK(found == ideals_by_permutation(g));
    }
}

TEST_CASE("K4 with a pendant edge has 54 initial ideals, none with WLP") {
  InitialIdealCensus c = initial_ideals_wlp(k4_dangling());
  CHECK(c.total == 54);
  CHECK(c.wlp_count == 0);
  CHECK(c.summary() == "54 ideals, 0 with WLP");
  auto j = to_json(c);
  CHECK(j["ideals"].size() == 54);
}

TEST_CASE("cycles and trees") {
  for (int n = 3; n <= 8; ++n) {
    auto ideals = enumerate_initial_ideals(cycle_graph(n));
    CHECK(ideals.size() == static_cast<std::size_t>(n));
    for (const auto& i : ideals) {
      REQUIRE(i.algebra.generators().size() == 1);
      CHECK(std::popcount(i.algebra.generators()[0]) == n - 1);
    }
  }
  InitialIdealCensus tree = initial_ideals_wlp(path_graph(5));
  CHECK(tree.total == 1);
  CHECK(tree.wlp_count == 1);
  CHECK(tree.summary() == "1 ideal, 1 with WLP");
}

TEST_CASE("K23 plus an edge has mixed verdicts, including the displayed ideals") {
  InitialIdealCensus c = initial_ideals_wlp(k23_plus());
  CHECK(c.wlp_count > 0);
  CHECK(c.wlp_count < c.total);
  CHECK(c.any_quadratic);
  std::vector<InitialIdeal> ideals;
  for (const auto& v : c.ideals) ideals.push_back(v.ideal);
  const std::vector<EdgeMask> lex = {mask({0, 1}), mask({2, 3}), mask({4, 5})};
  const std::vector<EdgeMask> other = {mask({0, 1}), mask({0, 2}), mask({0, 3}), mask({2, 3, 5}), mask({1, 3, 4}), mask({1, 2, 4})};
  CHECK(occurs_up_to_relabeling(lex, ideals, 7));
  CHECK(occurs_up_to_relabeling(other, ideals, 7));
}

TEST_CASE("initial ideals preserve the Hilbert series") {
  for (int n = 3; n <= 6; ++n)
    for (const SimpleGraph& g : enumerate_connected_graphs(n)) {
      if (g.edge_count() > 7) continue;
      const IntPolynomial hs = poincare_polynomial(g);
      for (const auto& i : enumerate_initial_ideals(g)) CHECK(i.algebra.hilbert_series() == hs);
    }
}

TEST_CASE("a WLP initial ideal forces WLP") {
  for (int n = 3; n <= 5; ++n)
    for (const SimpleGraph& g : enumerate_connected_graphs(n)) {
      InitialIdealCensus c = initial_ideals_wlp(g);
      if (c.wlp_count > 0) CHECK(wlp_check(g).has_wlp);
    }
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(enumerate_initial_ideals(complete_graph(5), 9), size_guard_error);
  CHECK_NOTHROW(enumerate_initial_ideals(complete_graph(5)));
}
