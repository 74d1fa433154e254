#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "aot/graph.hpp"
#include "aot/wlp.hpp"

namespace aot {

/// A distinct initial ideal together with an edge ordering producing it.
struct InitialIdeal {
  MonomialAlgebra algebra;
  EdgeOrdering witness;
};

inline constexpr std::size_t kMaxInitialIdealEdges = 10;

/// All distinct initial ideals (squares plus minimal broken circuits) over
/// every ordering of the edges, sorted by generator list. Orderings are
/// explored as a memoized search over which edge is next-smallest; an edge
/// in no unresolved circuit cannot change the outcome and is skipped.
/// Throws size_guard_error beyond `max_edges` edges.
std::vector<InitialIdeal> enumerate_initial_ideals(const SimpleGraph& g, std::size_t max_edges = kMaxInitialIdealEdges);

struct IdealVerdict {
  InitialIdeal ideal;
  bool has_wlp = false;
  bool quadratic = false;  ///< all generators of degree 2
};

struct InitialIdealCensus {
  std::size_t total = 0;
  std::size_t wlp_count = 0;
  bool any_quadratic = false;
  std::vector<IdealVerdict> ideals;

  /// "54 ideals, 0 with WLP"
  std::string summary() const;
};

InitialIdealCensus initial_ideals_wlp(const SimpleGraph& g, std::size_t max_edges = kMaxInitialIdealEdges);

nlohmann::json to_json(const InitialIdealCensus& c);

}  // namespace aot
