#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aot/initideals.hpp"
#include "aot/wlp.hpp"

namespace aot {

struct SurveyOptions {
  int n = 5;
  bool chordal_only = false;
  bool include_disconnected = false;
  bool with_init_ideals = false;
  std::size_t init_ideal_max_edges = kMaxInitialIdealEdges;
  std::size_t jobs = 1;
  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  std::string out_dir;  ///< empty: no files written
  bool resume = false;
  bool confirm_long = false;  ///< required for n = 7
};

/// One isomorphism class.
struct SurveyRecord {
  std::string graph6;  ///< canonical form
  int n = 0;
  std::size_t edges = 0;
  bool connected = true;
  bool chordal = false;
  std::vector<std::string> hilbert;  ///< coefficients, decimal
  bool has_wlp = true;
  std::vector<std::size_t> failing_degrees;
  CertificateKind certificate = CertificateKind::exact;
  double failure_bound = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t bridges = 0;
  std::vector<std::string> blocks;  ///< canonical graph6 of the 2-connected blocks, sorted
  std::optional<std::size_t> init_total;  ///< absent when not requested or over the size guard
  std::optional<std::size_t> init_wlp;
  double wall_seconds = 0.0;
};

nlohmann::json to_json(const SurveyRecord& r);
/// Throws parse_error on missing or mistyped fields.
SurveyRecord survey_record_from_json(const nlohmann::json& j);

struct SurveyCount {
  std::size_t total = 0;
  std::size_t failing = 0;
};

struct SurveySummary {
  int n = 0;
  SurveyCount connected;     ///< simple connected
  SurveyCount chordal;       ///< simple connected chordal
  SurveyCount disconnected;  ///< only filled with include_disconnected
  bool include_disconnected = false;
};

struct SurveyResult {
  std::vector<SurveyRecord> records;  ///< sorted by (edges, graph6)
  SurveySummary summary;
  std::size_t computed = 0;
  std::size_t resumed = 0;
  std::size_t corrupt_lines = 0;
};

SurveyRecord survey_graph(const SimpleGraph& g, const SurveyOptions& options);

/// Runs the survey. With an output directory, records are appended to
/// records.jsonl as they finish (wall time included), and records.csv and
/// summary.csv are rewritten at the end; the CSVs carry no timing and are
/// identical across runs. With resume, records already in the log are
/// reused and corrupt lines are skipped with a warning on `log`.
SurveyResult run_survey(const SurveyOptions& options, std::ostream& log);

std::string records_csv(const std::vector<SurveyRecord>& records);
std::string summary_csv(const SurveySummary& s);
/// Human-readable table of the summary.
std::string summary_table(const SurveySummary& s);

}  // namespace aot
