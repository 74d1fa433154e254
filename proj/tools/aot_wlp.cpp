#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "aot/algebra.hpp"
#include "aot/builtins.hpp"
#include "aot/errors.hpp"
#include "aot/initideals.hpp"
#include "aot/survey.hpp"
#include "aot/wlp.hpp"

using namespace aot;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

// Beyond this many basis monomials the kernel command skips the full kernel.
constexpr std::size_t kKernelDenseLimit = 3000;

std::optional<fs::path> cache_file() {
  const char* dir = std::getenv("AOT_WLP_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return fs::path(dir) / "chromatic.txt";
}

std::string edge_names(const std::vector<int>& edges) {
  std::string out;
  for (int e : edges) out += (out.empty() ? "y" : " y") + std::to_string(e + 1);
  return out;
}

// Rescaled to coprime integer coefficients; kernel membership is unchanged.
PolyElement primitive(const PolyElement& x) {
  BigInt den = 1, num = 0;
  for (const auto& [m, c] : x.terms()) den = lcm(den, BigInt(c.get_den()));
  for (const auto& [m, c] : x.terms()) num = gcd(num, BigInt(c.get_num() * (den / c.get_den())));
  if (num == 0) return x;
  return x * Rational(den, num);
}

int cmd_hilbert(const std::string& input, bool json) {
  SimpleGraph g = parse_graph_input(input);
  IntPolynomial p = poincare_polynomial(g);
  const bool chordal = g.is_connected() && is_chordal(g);
  if (chordal && chordal_hilbert_series(g) != p)
    throw consistency_error("chordal product formula disagrees with the Poincare polynomial");
  if (json) {
    std::vector<std::string> coeffs;
    for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
    nlohmann::json j{{"graph6", to_graph6(g)},
                     {"hilbert", coeffs},
                     {"text", p.to_string()},
                     {"chordal_check", chordal ? "agrees" : "not applicable"},
                     {"presentation", to_json(AotPresentation(g))}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << p.to_string() << "\n";
  if (chordal) std::cout << "chordal product formula: agrees\n";
  return kExitOk;
}

int cmd_wlp(const std::string& input, std::size_t samples, std::uint64_t seed, bool json, bool check) {
  WlpReport r = wlp_check(parse_graph_input(input), samples, seed);
  if (json) {
    std::cout << to_json(r).dump(2) << "\n";
  } else {
    std::cout << r.summary() << "\n";
    for (const auto& d : r.degrees)
      std::cout << "  degree " << d.degree << ": " << d.dim_source << " -> " << d.dim_target << ", rank " << d.rank
                << " of " << d.max_rank << ", " << to_string(d.verdict) << (d.exact ? "" : " (probabilistic)") << "\n";
    if (r.certificate == CertificateKind::probabilistic)
      std::cout << "  failure bound " << r.failure_bound << " (" << r.samples << " samples, seed " << r.seed << ")\n";
  }
  return check && !r.has_wlp ? kExitVerdict : kExitOk;
}

int cmd_initideals(const std::string& input, std::size_t max_edges, bool json, bool check) {
  SimpleGraph g = parse_graph_input(input);
  InitialIdealCensus c = initial_ideals_wlp(g, max_edges);
  if (json) {
    std::cout << to_json(c).dump(2) << "\n";
  } else {
    std::cout << c.summary() << "\n";
    for (const auto& v : c.ideals) {
      std::cout << "  " << v.ideal.algebra.to_string() << "  " << (v.has_wlp ? "WLP" : "no WLP") << "  ordering";
      for (int e : v.ideal.witness.perm()) std::cout << " y" << e + 1;
      std::cout << "\n";
    }
  }
  return check && c.wlp_count == 0 ? kExitVerdict : kExitOk;
}

int cmd_kernel(const std::string& input, std::optional<std::size_t> degree, std::uint64_t seed, bool json) {
  SimpleGraph g = parse_graph_input(input);
  AotPresentation whole(g);
  NbcBasis basis(whole);
  const std::vector<Rational> l = sample_point(g.edge_count(), seed, 0);

  // Biconnected blocks stay separate factors; all bridges form one more.
  std::vector<TensorFactor> factors;
  std::vector<int> bridge_edges;
  for (TensorFactor& f : tensor_presentation(g)) {
    if (f.is_bridge)
      bridge_edges.insert(bridge_edges.end(), f.edge_map.begin(), f.edge_map.end());
    else
      factors.push_back(std::move(f));
  }
  if (!bridge_edges.empty()) factors.push_back(factor_of_edges(g, whole.ordering(), bridge_edges));

  nlohmann::json out{{"graph6", to_graph6(g)}, {"seed", seed}, {"factors", factors.size()}};
  auto nothing = [&] {
    if (json) {
      out["elements"] = nlohmann::json::array();
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "no tensor kernel elements in range\n";
    }
    return kExitOk;
  };
  if (factors.size() < 2) return nothing();

  // Degrees where each factor's own kernel is nonzero.
  std::vector<std::vector<std::size_t>> live(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k)
    for (std::size_t i = 0; i <= factors[k].presentation.top_degree(); ++i)
      if (!factor_kernel(factors[k], l, i).empty()) live[k].push_back(i);
  std::size_t target = 0;
  if (degree) {
    target = *degree;
  } else {
    for (const auto& v : live) target += v.front();
  }
  if (target > whole.top_degree()) return nothing();

  struct Found {
    std::string kind;
    PolyElement element;
  };
  std::vector<Found> found;
  std::vector<std::size_t> split(factors.size());
  auto visit = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (k == factors.size()) {
      if (left != 0) return;
      std::string tag = "tautological (";
      for (std::size_t q = 0; q < split.size(); ++q) tag += (q ? "," : "") + std::to_string(split[q]);
      tag += ")";
      for (PolyElement& x : tautological_kernel(whole, factors, l, split)) found.push_back({tag, primitive(x)});
      return;
    }
    for (std::size_t i : live[k]) {
      if (i > left) break;
      split[k] = i;
      self(self, k + 1, left - i);
    }
  };
  visit(visit, 0, target);
  if (factors.size() == 2) {
    const std::size_t n = factors[0].presentation.top_degree();
    if (n >= 2 && n == factors[1].presentation.top_degree() && n == target)
      found.push_back({"alternating", primitive(alternating_kernel_element(whole, factors[0], factors[1], l))});
  }
  if (found.empty()) return nothing();

  nlohmann::json elements = nlohmann::json::array();
  std::vector<PolyElement> all;
  for (const Found& f : found) {
    const bool killed = multiply_by_linear(f.element, l, whole).is_zero();
    if (!killed) throw consistency_error("constructed kernel element is not annihilated");
    elements.push_back({{"kind", f.kind}, {"element", f.element.to_string()}, {"annihilated", killed}});
    all.push_back(f.element);
  }
  const std::size_t span = span_dimension(all, basis, target);
  std::optional<std::size_t> kernel_dim;
  if (basis.dimension(target) + basis.dimension(target + 1) <= kKernelDenseLimit)
    kernel_dim = kernel_basis(mul_matrix(whole, basis, target).specialize(l)).size();

  if (json) {
    out["degree"] = target;
    out["elements"] = elements;
    out["span"] = span;
    if (kernel_dim) out["kernel_dimension"] = *kernel_dim;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << factors.size() << " tensor factors; degree " << target << "; L from seed " << seed << "\n";
  for (const auto& e : elements)
    std::cout << "  " << e["kind"].get<std::string>() << ": " << e["element"].get<std::string>()
              << "\n    L * v = 0: verified\n";
  std::cout << "span of constructed elements: " << span << "\n";
  if (kernel_dim)
    std::cout << "dim ker(L : A_" << target << " -> A_" << target + 1 << ") = " << *kernel_dim << "\n";
  return kExitOk;
}

int cmd_decompose(const std::string& input, bool json) {
  SimpleGraph g = parse_graph_input(input);
  BlockDecomposition bd = blocks(g);
  IntPolynomial product{1};
  nlohmann::json list = nlohmann::json::array();
  std::ostringstream text;
  for (std::size_t k = 0; k < bd.blocks.size(); ++k) {
    const Block& b = bd.blocks[k];
    IntPolynomial h = poincare_polynomial(b.graph);
    product *= h;
    std::vector<int> sorted_edges = b.edges;
    std::sort(sorted_edges.begin(), sorted_edges.end());
    text << "block " << k + 1 << ": " << (b.is_bridge ? "bridge" : "2-connected") << ", vertices";
    for (int v : b.vertices) text << " " << v;
    text << "; variables " << edge_names(sorted_edges) << "; Hilbert " << h.to_string() << "\n";
    list.push_back({{"vertices", b.vertices},
                    {"edges", b.edges},
                    {"bridge", b.is_bridge},
                    {"graph6", to_graph6(b.graph)},
                    {"hilbert", h.to_string()},
                    {"presentation", to_json(AotPresentation(b.graph))}});
  }
  IntPolynomial whole = poincare_polynomial(g);
  if (product != whole) throw consistency_error("product of block series differs from the graph's series");
  if (json) {
    std::cout << nlohmann::json{{"graph6", to_graph6(g)}, {"blocks", list}, {"hilbert", whole.to_string()}}.dump(2)
              << "\n";
  } else {
    std::cout << text.str() << "tensor product: " << whole.to_string() << "\n";
  }
  return kExitOk;
}

int cmd_survey(const SurveyOptions& o, bool json) {
  SurveyResult r = run_survey(o, std::cerr);
  std::cerr << "computed " << r.computed << ", resumed " << r.resumed << "\n";
  if (json) {
    nlohmann::json records = nlohmann::json::array();
    for (SurveyRecord rec : r.records) {
      rec.wall_seconds = 0;
      auto j = to_json(rec);
      j.erase("wall_seconds");
      records.push_back(j);
    }
    const SurveySummary& s = r.summary;
    nlohmann::json summary{{"n", s.n},
                           {"connected", {{"total", s.connected.total}, {"failing", s.connected.failing}}},
                           {"connected_chordal", {{"total", s.chordal.total}, {"failing", s.chordal.failing}}}};
    if (s.include_disconnected)
      summary["disconnected"] = {{"total", s.disconnected.total}, {"failing", s.disconnected.failing}};
    std::cout << nlohmann::json{{"summary", summary}, {"records", records}}.dump(2) << "\n";
  } else {
    std::cout << summary_table(r.summary);
  }
  return kExitOk;
}

int cmd_enumerate(int n, bool all, bool chordal_only, bool count_only) {
  if (n < 1 || n > 8) throw domain_error("enumerate supports 1 <= n <= 8");
  std::size_t count = 0;
  for (const SimpleGraph& g : enumerate_graphs(n, !all)) {
    if (chordal_only && !is_chordal(g)) continue;
    ++count;
    if (!count_only) std::cout << to_graph6(g) << "\n";
  }
  if (count_only) std::cout << count << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artinian Orlik-Terao algebras of graphs and the weak Lefschetz property"};
  app.require_subcommand(1);
  const std::string graph_help =
      "graph6 string, edge-list JSON (inline or file), or built-in: bowtie, k4dangling, k23plus, cycle:N, path:N, "
      "complete:N, bouquet:D";

  std::string input;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  bool json = false, check = false;

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert series from the chromatic polynomial");
  hilbert->add_option("graph", input, graph_help)->required();
  hilbert->add_flag("--json", json, "JSON output with the presentation dump");

  auto* wlp = app.add_subcommand("wlp", "decide the weak Lefschetz property");
  wlp->add_option("graph", input, graph_help)->required();
  wlp->add_option("--samples", samples, "random points per multiplication map")->check(CLI::PositiveNumber);
  wlp->add_option("--seed", seed, "seed for the random linear forms");
  wlp->add_flag("--json", json, "JSON output");
  wlp->add_flag("--check", check, "exit 1 if WLP fails");

  std::size_t max_edges = kMaxInitialIdealEdges;
  auto* init = app.add_subcommand("initideals", "all initial ideals over edge orderings, each tested for WLP");
  init->add_option("graph", input, graph_help)->required();
  init->add_option("--max-edges", max_edges, "size guard on the edge count");
  init->add_flag("--json", json, "JSON output");
  init->add_flag("--check", check, "exit 1 if no initial ideal has WLP");

  std::optional<std::size_t> degree;
  auto* kernel = app.add_subcommand("kernel", "kernel elements of L built from the block decomposition");
  kernel->add_option("graph", input, graph_help)->required();
  kernel->add_option("--degree", degree, "source degree (default: lowest with tautological elements)");
  kernel->add_option("--seed", seed, "seed for L");
  kernel->add_flag("--json", json, "JSON output");

  auto* decompose = app.add_subcommand("decompose", "blocks and their Hilbert series");
  decompose->add_option("graph", input, graph_help)->required();
  decompose->add_flag("--json", json, "JSON output with presentation dumps");

  SurveyOptions so;
  auto* survey = app.add_subcommand("survey", "WLP census of all graphs on n vertices");
  survey->add_option("--n", so.n, "vertex count, 3..7")->required();
  survey->add_flag("--chordal-only", so.chordal_only);
  survey->add_flag("--include-disconnected", so.include_disconnected);
  survey->add_flag("--with-init-ideals", so.with_init_ideals, "initial-ideal census per graph");
  survey->add_option("--jobs", so.jobs, "worker threads")->check(CLI::PositiveNumber);
  survey->add_option("--samples", so.samples)->check(CLI::PositiveNumber);
  survey->add_option("--seed", so.seed);
  survey->add_option("--out", so.out_dir, "directory for records.jsonl, records.csv, summary.csv");
  survey->add_flag("--resume", so.resume, "reuse records already in the output directory");
  survey->add_flag("--confirm-long", so.confirm_long, "allow n = 7");
  survey->add_flag("--json", json, "JSON output instead of the table");

  int n = 0;
  bool all = false, chordal_only = false, count_only = false;
  auto* enumerate = app.add_subcommand("enumerate", "graph6 of each isomorphism class");
  enumerate->add_option("--n", n, "vertex count")->required();
  enumerate->add_flag("--all", all, "include disconnected graphs");
  enumerate->add_flag("--chordal-only", chordal_only);
  enumerate->add_flag("--count", count_only, "print only the number of classes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  const auto cache = cache_file();
  if (cache && fs::exists(*cache)) {
    try {
      if (std::size_t bad = ChromaticCache::global().load(cache->string()))
        std::cerr << "warning: skipped " << bad << " malformed lines in " << cache->string() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "warning: ignoring chromatic cache " << cache->string() << ": " << e.what() << "\n";
    }
  }

  int code = kExitOk;
  try {
    if (*hilbert) code = cmd_hilbert(input, json);
    else if (*wlp) code = cmd_wlp(input, samples, seed, json, check);
    else if (*init) code = cmd_initideals(input, max_edges, json, check);
    else if (*kernel) code = cmd_kernel(input, degree, seed, json);
    else if (*decompose) code = cmd_decompose(input, json);
    else if (*survey) code = cmd_survey(so, json);
    else if (*enumerate) code = cmd_enumerate(n, all, chordal_only, count_only);
  } catch (const consistency_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const size_guard_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }

  if (cache) {
    try {
      fs::create_directories(cache->parent_path());
      ChromaticCache::global().save(cache->string());
    } catch (const std::exception& e) {
      std::cerr << "warning: could not save chromatic cache: " << e.what() << "\n";
    }
  }
  return code;
}
