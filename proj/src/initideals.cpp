#include "aot/initideals.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

#include "aot/errors.hpp"

namespace aot {

namespace {

using Generators = std::vector<EdgeMask>;

// Minimal elements, sorted by mask.
Generators minimalize(Generators g) {
  std::sort(g.begin(), g.end(), [](EdgeMask a, EdgeMask b) {
    const int da = std::popcount(a), db = std::popcount(b);
    return da != db ? da < db : a < b;
  });
  Generators out;
  for (EdgeMask m : g)
    if (std::none_of(out.begin(), out.end(), [&](EdgeMask h) { return (m & h) == h; })) out.push_back(m);
  std::sort(out.begin(), out.end());
  return out;
}

class Search {
 public:
  // completion (broken circuits of the still-unresolved circuits) -> the
  // edges chosen after the current prefix, smallest first
  using Completions = std::map<Generators, std::vector<int>>;

  explicit Search(const SimpleGraph& g) : edges_(g.edge_count()) {
    for (const Cycle& c : enumerate_circuits(g)) {
      EdgeMask m = 0;
      for (int e : c.edges) m |= EdgeMask{1} << e;
      circuits_.push_back(m);
    }
  }

  const Completions& solve(EdgeMask chosen) {
    if (auto it = memo_.find(chosen); it != memo_.end()) return it->second;
    Completions out;
    EdgeMask live = 0;
    for (EdgeMask c : circuits_)
      if (!(c & chosen)) live |= c;
    if (live == 0) {
      out.emplace(Generators{}, std::vector<int>{});
    } else {
      for (EdgeMask rest = live; rest; rest &= rest - 1) {
        const int e = std::countr_zero(rest);
        const EdgeMask bit = EdgeMask{1} << e;
        Generators broken;
        for (EdgeMask c : circuits_)
          if (!(c & chosen) && (c & bit)) broken.push_back(c & ~bit);
        for (const auto& [tail, order] : solve(chosen | bit)) {
          Generators merged = broken;
          merged.insert(merged.end(), tail.begin(), tail.end());
          std::vector<int> full{e};
          full.insert(full.end(), order.begin(), order.end());
          out.emplace(minimalize(std::move(merged)), std::move(full));
        }
      }
    }
    return memo_.emplace(chosen, std::move(out)).first->second;
  }

  std::size_t edges() const { return edges_; }

 private:
  std::size_t edges_;
  std::vector<EdgeMask> circuits_;
  std::unordered_map<EdgeMask, Completions> memo_;
};

}  // namespace

std::vector<InitialIdeal> enumerate_initial_ideals(const SimpleGraph& g, std::size_t max_edges) {
  if (g.edge_count() > max_edges)
    throw size_guard_error("initial ideal enumeration is limited to " + std::to_string(max_edges) + " edges (graph has " +
                           std::to_string(g.edge_count()) + ")");
  Search search(g);
  std::vector<InitialIdeal> out;
  for (const auto& [gens, prefix] : search.solve(0)) {
    // Edges never chosen go last, in index order.
    std::vector<int> perm = prefix;
    for (int e = 0; e < static_cast<int>(g.edge_count()); ++e)
      if (std::find(perm.begin(), perm.end(), e) == perm.end()) perm.push_back(e);
    out.push_back({MonomialAlgebra(g.edge_count(), gens), EdgeOrdering(perm)});
  }
  std::sort(out.begin(), out.end(), [](const InitialIdeal& a, const InitialIdeal& b) {
    return a.algebra.generators() < b.algebra.generators();
  });
  return out;
}

std::string InitialIdealCensus::summary() const {
  return std::to_string(total) + (total == 1 ? " ideal, " : " ideals, ") + std::to_string(wlp_count) + " with WLP";
}

InitialIdealCensus initial_ideals_wlp(const SimpleGraph& g, std::size_t max_edges) {
  InitialIdealCensus census;
  for (auto& ideal : enumerate_initial_ideals(g, max_edges)) {
    IdealVerdict v{std::move(ideal), false, false};
    v.has_wlp = monomial_wlp_check(v.ideal.algebra).has_wlp;
    v.quadratic = v.ideal.algebra.max_generator_degree() <= 2;
    census.wlp_count += v.has_wlp;
    census.any_quadratic = census.any_quadratic || v.quadratic;
    census.ideals.push_back(std::move(v));
  }
  census.total = census.ideals.size();
  return census;
}

nlohmann::json to_json(const InitialIdealCensus& c) {
  nlohmann::json j;
  j["total"] = c.total;
  j["wlp_count"] = c.wlp_count;
  j["any_quadratic"] = c.any_quadratic;
  j["ideals"] = nlohmann::json::array();
  for (const auto& v : c.ideals) {
    nlohmann::json gens = nlohmann::json::array();
    for (EdgeMask m : v.ideal.algebra.generators()) gens.push_back(Monomial{m}.variables());
    j["ideals"].push_back({{"generators", gens},
                           {"text", v.ideal.algebra.to_string()},
                           {"has_wlp", v.has_wlp},
                           {"quadratic", v.quadratic},
                           {"witness_ordering", v.ideal.witness.perm()}});
  }
  return j;
}

}  // namespace aot
