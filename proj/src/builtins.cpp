#include "aot/builtins.hpp"

#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "aot/errors.hpp"

namespace aot {

SimpleGraph bowtie() { return SimpleGraph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}); }

SimpleGraph k4_dangling() { return SimpleGraph(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}}); }

SimpleGraph k23_plus() { return SimpleGraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}); }

SimpleGraph cycle_graph(int n) {
  if (n < 3) throw domain_error("a cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  e.push_back({0, n - 1});
  return SimpleGraph(n, std::move(e));
}

SimpleGraph path_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return SimpleGraph(n, std::move(e));
}

SimpleGraph complete_graph(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return SimpleGraph(n, std::move(e));
}

SimpleGraph bouquet(int d) {
  if (d < 1) throw domain_error("a bouquet needs at least one triangle");
  std::vector<Edge> e;
  for (int k = 0; k < d; ++k) {
    e.push_back({0, 2 * k + 1});
    e.push_back({0, 2 * k + 2});
    e.push_back({2 * k + 1, 2 * k + 2});
  }
  return SimpleGraph(2 * d + 1, std::move(e));
}

SimpleGraph with_pendants(const SimpleGraph& g, int vertex, int count) {
  std::vector<Edge> e = g.edges();
  int n = g.vertex_count();
  for (int k = 0; k < count; ++k) e.push_back({vertex, n++});
  return SimpleGraph(n, std::move(e));
}

namespace {

int parse_size(std::string_view digits, const std::string& whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw parse_error("bad size in named graph '" + whole + "'", static_cast<std::size_t>(ptr - whole.data()));
  return value;
}

}  // namespace

SimpleGraph parse_edge_list_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("edge-list JSON: ") + e.what(), e.byte);
  }
  const nlohmann::json* pairs = &doc;
  int n = -1;
  if (doc.is_object()) {
    if (!doc.contains("edges")) throw parse_error("edge-list JSON: missing \"edges\"");
    pairs = &doc["edges"];
    if (doc.contains("n")) {
      if (!doc["n"].is_number_integer()) throw parse_error("edge-list JSON: \"n\" must be an integer");
      n = doc["n"].get<int>();
    }
  }
  if (!pairs->is_array()) throw parse_error("edge-list JSON: edges must be an array of [u, v] pairs");
  std::vector<Edge> edges;
  int max_vertex = -1;
  for (const auto& p : *pairs) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw parse_error("edge-list JSON: each edge must be a pair of integers");
    Edge e{p[0].get<int>(), p[1].get<int>()};
    max_vertex = std::max({max_vertex, e.u, e.v});
    edges.push_back(e);
  }
  if (n < 0) n = max_vertex + 1;
  try {
    return SimpleGraph(n, std::move(edges));
  } catch (const domain_error& e) {
    throw parse_error(std::string("edge-list JSON: ") + e.what());
  }
}

std::string to_edge_list_json(const SimpleGraph& g) {
  nlohmann::json doc;
  doc["n"] = g.vertex_count();
  doc["edges"] = nlohmann::json::array();
  for (const Edge& e : g.edges()) doc["edges"].push_back({e.u, e.v});
  return doc.dump();
}

SimpleGraph parse_graph_input(const std::string& text) {
  if (text.empty()) throw parse_error("empty graph input", 0);
  if (text == "bowtie") return bowtie();
  if (text == "k4dangling") return k4_dangling();
  if (text == "k23plus") return k23_plus();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string name = text.substr(0, colon);
    const int size = parse_size(std::string_view(text).substr(colon + 1), text);
    try {
      if (name == "cycle") return cycle_graph(size);
      if (name == "path") return path_graph(size);
      if (name == "complete") return complete_graph(size);
      if (name == "bouquet") return bouquet(size);
    } catch (const domain_error& e) {
      throw parse_error(std::string(e.what()));
    }
    throw parse_error("unknown named graph '" + name + "'", 0);
  }
  if (text.front() == '{' || text.front() == '[') return parse_edge_list_json(text);
  if (text.size() > 5 && text.ends_with(".json")) {
    std::ifstream in(text);
    if (!in) throw parse_error("cannot open edge-list file '" + text + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_edge_list_json(buf.str());
  }
  try {
    return parse_graph6(text);
  } catch (const parse_error& e) {
    throw parse_error("'" + text + "' is not a built-in name, edge-list JSON or valid graph6: " + e.what());
  }
}

}  // namespace aot
