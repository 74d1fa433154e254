#include "aot/survey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "aot/errors.hpp"

namespace aot {

namespace fs = std::filesystem;

nlohmann::json to_json(const SurveyRecord& r) {
  nlohmann::json j{{"graph6", r.graph6},
                   {"n", r.n},
                   {"edges", r.edges},
                   {"connected", r.connected},
                   {"chordal", r.chordal},
                   {"hilbert", r.hilbert},
                   {"has_wlp", r.has_wlp},
                   {"failing_degrees", r.failing_degrees},
                   {"certificate", to_string(r.certificate)},
                   {"failure_bound", r.failure_bound},
                   {"samples", r.samples},
                   {"seed", r.seed},
                   {"bridges", r.bridges},
                   {"blocks", r.blocks},
                   {"wall_seconds", r.wall_seconds}};
  if (r.init_total) {
    j["init_total"] = *r.init_total;
    j["init_wlp"] = *r.init_wlp;
  }
  return j;
}

SurveyRecord survey_record_from_json(const nlohmann::json& j) {
  try {
    SurveyRecord r;
    r.graph6 = j.at("graph6").get<std::string>();
    r.n = j.at("n").get<int>();
    r.edges = j.at("edges").get<std::size_t>();
    r.connected = j.at("connected").get<bool>();
    r.chordal = j.at("chordal").get<bool>();
    r.hilbert = j.at("hilbert").get<std::vector<std::string>>();
    r.has_wlp = j.at("has_wlp").get<bool>();
    r.failing_degrees = j.at("failing_degrees").get<std::vector<std::size_t>>();
    const std::string cert = j.at("certificate").get<std::string>();
    if (cert != "exact" && cert != "probabilistic") throw parse_error("unknown certificate kind " + cert);
    r.certificate = cert == "exact" ? CertificateKind::exact : CertificateKind::probabilistic;
    r.failure_bound = j.at("failure_bound").get<double>();
    r.samples = j.at("samples").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.bridges = j.at("bridges").get<std::size_t>();
    r.blocks = j.at("blocks").get<std::vector<std::string>>();
    if (j.contains("init_total")) {
      r.init_total = j.at("init_total").get<std::size_t>();
      r.init_wlp = j.at("init_wlp").get<std::size_t>();
    }
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad survey record: ") + e.what());
  }
}

SurveyRecord survey_graph(const SimpleGraph& input, const SurveyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const SimpleGraph g = canonical_form(input);
  SurveyRecord r;
  r.graph6 = to_graph6(g);
  r.n = g.vertex_count();
  r.edges = g.edge_count();
  r.connected = g.is_connected();
  r.chordal = is_chordal(g);
  WlpReport report = wlp_check(g, options.samples, options.seed);
  if (r.connected && report.hilbert.degree() != r.n - 1)
    throw consistency_error("Hilbert series of connected " + r.graph6 + " has degree " +
                            std::to_string(report.hilbert.degree()));
  for (const auto& c : report.hilbert.coeffs()) r.hilbert.push_back(c.get_str());
  r.has_wlp = report.has_wlp;
  r.failing_degrees = report.failing_degrees;
  r.certificate = report.certificate;
  r.failure_bound = report.failure_bound;
  r.samples = options.samples;
  r.seed = options.seed;
  BlockDecomposition bd = blocks(g);
  r.bridges = bd.bridges.size();
  for (const Block& b : bd.blocks)
    if (!b.is_bridge) r.blocks.push_back(to_graph6(canonical_form(b.graph)));
  std::sort(r.blocks.begin(), r.blocks.end());
  if (options.with_init_ideals && g.edge_count() <= options.init_ideal_max_edges) {
    InitialIdealCensus census = initial_ideals_wlp(g, options.init_ideal_max_edges);
    r.init_total = census.total;
    r.init_wlp = census.wlp_count;
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::string format_bound(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", b);
  return buf;
}

SurveySummary summarize(const std::vector<SurveyRecord>& records, const SurveyOptions& options) {
  SurveySummary s;
  s.n = options.n;
  s.include_disconnected = options.include_disconnected;
  for (const auto& r : records) {
    SurveyCount& bucket = r.connected ? s.connected : s.disconnected;
    ++bucket.total;
    bucket.failing += !r.has_wlp;
    if (r.connected && r.chordal) {
      ++s.chordal.total;
      s.chordal.failing += !r.has_wlp;
    }
  }
  return s;
}

bool record_matches(const SurveyRecord& r, const SurveyOptions& o) {
  return r.samples == o.samples && r.seed == o.seed && r.init_total.has_value() == (o.with_init_ideals && r.edges <= o.init_ideal_max_edges);
}

}  // namespace

SurveyResult run_survey(const SurveyOptions& options, std::ostream& log) {
  if (options.n < 3 || options.n > 7) throw domain_error("survey supports 3 <= n <= 7");
  if (options.n == 7 && !options.confirm_long) throw domain_error("n = 7 is a long run; pass --confirm-long");
  if (options.jobs == 0) throw domain_error("jobs must be positive");

  std::vector<SimpleGraph> graphs;
  for (SimpleGraph& g : enumerate_graphs(options.n, !options.include_disconnected))
    if (!options.chordal_only || is_chordal(g)) graphs.push_back(std::move(g));

  SurveyResult result;
  std::map<std::string, SurveyRecord> done;
  fs::path log_path;
  if (!options.out_dir.empty()) {
    fs::create_directories(options.out_dir);
    log_path = fs::path(options.out_dir) / "records.jsonl";
    if (options.resume && fs::exists(log_path)) {
      std::ifstream in(log_path);
      std::string line;
      std::size_t number = 0;
      while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        try {
          SurveyRecord r = survey_record_from_json(nlohmann::json::parse(line));
          if (r.n == options.n && record_matches(r, options)) done[r.graph6] = std::move(r);
        } catch (const std::exception& e) {
          ++result.corrupt_lines;
          log << "warning: skipping corrupt line " << number << " of " << log_path.string() << "\n";
        }
      }
    }
  }

  std::vector<std::size_t> todo;
  std::vector<std::optional<SurveyRecord>> slots(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto it = done.find(to_graph6(graphs[i]));
    if (it != done.end()) {
      slots[i] = it->second;
      ++result.resumed;
    } else {
      todo.push_back(i);
    }
  }

  std::ofstream out;
  if (!log_path.empty()) {
    // A fresh run starts a new log; a resumed one appends (rewriting first
    // so that a torn last line does not glue onto the next record).
    out.open(log_path, std::ios::trunc);
    for (const auto& slot : slots)
      if (slot) out << to_json(*slot).dump() << "\n";
    out.flush();
  }

  std::mutex writer;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next++;
      if (k >= todo.size()) return;
      try {
        SurveyRecord r = survey_graph(graphs[todo[k]], options);
        std::lock_guard lock(writer);
        if (out.is_open()) out << to_json(r).dump() << "\n" << std::flush;
        slots[todo[k]] = std::move(r);
      } catch (...) {
        std::lock_guard lock(writer);
        if (!failure) failure = std::current_exception();
        next = todo.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(options.jobs, todo.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  result.computed = todo.size();

  for (auto& slot : slots) result.records.push_back(std::move(*slot));
  std::sort(result.records.begin(), result.records.end(), [](const SurveyRecord& a, const SurveyRecord& b) {
    return a.edges != b.edges ? a.edges < b.edges : a.graph6 < b.graph6;
  });
  result.summary = summarize(result.records, options);

  if (!options.out_dir.empty()) {
    std::ofstream(fs::path(options.out_dir) / "records.csv") << records_csv(result.records);
    std::ofstream(fs::path(options.out_dir) / "summary.csv") << summary_csv(result.summary);
  }
  return result;
}

std::string records_csv(const std::vector<SurveyRecord>& records) {
  std::ostringstream out;
  out << "graph6,n,edges,connected,chordal,hilbert,has_wlp,failing_degrees,certificate,failure_bound,bridges,blocks,"
         "init_total,init_wlp\n";
  for (const auto& r : records) {
    std::vector<std::string> fails;
    for (std::size_t d : r.failing_degrees) fails.push_back(std::to_string(d));
    // graph6 may contain commas and quotes, so it is always quoted.
    auto quote = [](const std::string& s) {
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    out << quote(r.graph6) << ',' << r.n << ',' << r.edges << ',' << r.connected << ',' << r.chordal << ','
        << join(r.hilbert, " ") << ',' << r.has_wlp << ',' << join(fails, " ") << ',' << to_string(r.certificate) << ','
        << format_bound(r.failure_bound) << ',' << r.bridges << ',' << quote(join(r.blocks, " ")) << ','
        << (r.init_total ? std::to_string(*r.init_total) : "") << ','
        << (r.init_wlp ? std::to_string(*r.init_wlp) : "") << '\n';
  }
  return out.str();
}

std::string summary_csv(const SurveySummary& s) {
  std::ostringstream out;
  out << "n,class,total,failing\n";
  out << s.n << ",connected," << s.connected.total << ',' << s.connected.failing << '\n';
  out << s.n << ",connected_chordal," << s.chordal.total << ',' << s.chordal.failing << '\n';
  if (s.include_disconnected) out << s.n << ",disconnected," << s.disconnected.total << ',' << s.disconnected.failing << '\n';
  return out.str();
}

std::string summary_table(const SurveySummary& s) {
  std::ostringstream out;
  out << "n = " << s.n << "\n";
  out << "  connected graphs failing WLP:         " << s.connected.failing << " / " << s.connected.total << "\n";
  out << "  connected chordal graphs failing WLP: " << s.chordal.failing << " / " << s.chordal.total << "\n";
  if (s.include_disconnected)
    out << "  disconnected graphs failing WLP:      " << s.disconnected.failing << " / " << s.disconnected.total << "\n";
  return out.str();
}

}  // namespace aot
