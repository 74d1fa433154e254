#pragma once

#include <string>
#include <string_view>

#include "aot/graph.hpp"

namespace aot {

// Named graphs used throughout the examples and tests.

/// Two triangles sharing vertex 2; edges ordered so that the triangles are
/// edges {0,1,2} and {3,4,5}.
SimpleGraph bowtie();
/// K4 on {0,1,2,3} with the pendant edge {3,4}.
SimpleGraph k4_dangling();
/// K_{2,3} on {0,1} x {2,3,4} plus the edge {0,1}.
SimpleGraph k23_plus();
SimpleGraph cycle_graph(int n);
SimpleGraph path_graph(int n);
SimpleGraph complete_graph(int n);
/// d triangles sharing vertex 0.
SimpleGraph bouquet(int d);
/// g with `count` pendant edges attached to the given vertex.
SimpleGraph with_pendants(const SimpleGraph& g, int vertex, int count);

/// Graph from a user-supplied string: a built-in name (bowtie, k4dangling,
/// k23plus, cycle:N, path:N, complete:N, bouquet:D), a path to an edge-list
/// JSON file, inline edge-list JSON, or a graph6 string.
SimpleGraph parse_graph_input(const std::string& text);

/// Edge-list JSON: {"n": 5, "edges": [[0,1], ...]} or a bare array of pairs.
SimpleGraph parse_edge_list_json(std::string_view text);
std::string to_edge_list_json(const SimpleGraph& g);

}  // namespace aot
