#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aot/builtins.hpp"
#include "aot/errors.hpp"
#include "aot/survey.hpp"

using namespace aot;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("aot_survey_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("record json round trip") {
  SurveyOptions o;
  o.with_init_ideals = true;
  SurveyRecord r = survey_graph(bowtie(), o);
  CHECK_FALSE(r.has_wlp);
  CHECK(r.failing_degrees == std::vector<std::size_t>{2});
  CHECK(r.blocks.size() == 2);
  CHECK(r.blocks[0] == r.blocks[1]);
  CHECK(r.bridges == 0);
  CHECK(r.hilbert == std::vector<std::string>{"1", "6", "13", "12", "4"});
  REQUIRE(r.init_total.has_value());
  CHECK(*r.init_wlp == 0);
  SurveyRecord back = survey_record_from_json(to_json(r));
  CHECK(to_json(back) == to_json(r));
  CHECK_THROWS_AS(survey_record_from_json(nlohmann::json{{"graph6", "Bw"}}), parse_error);
}

TEST_CASE("record is keyed on the canonical form") {
  SurveyOptions o;
  SimpleGraph a = path_graph(4);
  SimpleGraph b(4, {{0, 2}, {2, 1}, {1, 3}});
  CHECK(survey_graph(a, o).graph6 == survey_graph(b, o).graph6);
}

TEST_CASE("small surveys") {
  std::ostringstream log;
  SurveyOptions o;
  o.n = 4;
  SurveyResult r4 = run_survey(o, log);
  CHECK(r4.summary.connected.total == 6);
  CHECK(r4.summary.connected.failing == 0);
  CHECK(r4.summary.chordal.total == 5);

  o.n = 5;
  o.jobs = 3;
  SurveyResult r5 = run_survey(o, log);
  CHECK(r5.summary.connected.total == 21);
  CHECK(r5.summary.connected.failing == 1);
  CHECK(r5.summary.chordal.failing == 1);

  o.include_disconnected = true;
  SurveyResult all5 = run_survey(o, log);
  CHECK(all5.summary.connected.total == 21);
  CHECK(all5.summary.disconnected.total == 34 - 21);
  CHECK(all5.summary.disconnected.failing == 0);

  o.include_disconnected = false;
  o.chordal_only = true;
  SurveyResult c5 = run_survey(o, log);
  CHECK(c5.summary.connected.total == c5.summary.chordal.total);
  CHECK(c5.summary.chordal.total == r5.summary.chordal.total);
}

TEST_CASE("records are sorted and independent of the job count") {
  std::ostringstream log;
  SurveyOptions o;
  o.n = 5;
  o.jobs = 1;
  auto a = run_survey(o, log);
  o.jobs = 4;
  auto b = run_survey(o, log);
  CHECK(records_csv(a.records) == records_csv(b.records));
  for (std::size_t k = 1; k < a.records.size(); ++k) CHECK(a.records[k - 1].edges <= a.records[k].edges);
}

TEST_CASE("output files are reproducible and resumable") {
  std::ostringstream log;
  SurveyOptions o;
  o.n = 5;
  o.jobs = 2;
  o.out_dir = scratch("files").string();
  run_survey(o, log);
  const fs::path dir(o.out_dir);
  const std::string csv = slurp(dir / "records.csv");
  const std::string summary = slurp(dir / "summary.csv");
  CHECK(summary == "n,class,total,failing\n5,connected,21,1\n5,connected_chordal,15,1\n");

  run_survey(o, log);
  CHECK(slurp(dir / "records.csv") == csv);
  CHECK(slurp(dir / "summary.csv") == summary);

  // Drop half the log, add junk, resume.
  std::string jsonl = slurp(dir / "records.jsonl");
  std::istringstream lines(jsonl);
  std::string line, kept;
  for (int k = 0; k < 10 && std::getline(lines, line); ++k) kept += line + "\n";
  kept += "{\"graph6\": \"D~{\"\n";
  kept += "not json at all\n";
  std::ofstream(dir / "records.jsonl") << kept;
  o.resume = true;
  SurveyResult r = run_survey(o, log);
  CHECK(r.resumed == 10);
  CHECK(r.computed == 11);
  CHECK(r.corrupt_lines == 2);
  CHECK(log.str().find("skipping corrupt line 11") != std::string::npos);
  CHECK(slurp(dir / "records.csv") == csv);

  // The rewritten log is clean and complete.
  o.resume = true;
  std::ostringstream quiet;
  SurveyResult again = run_survey(o, quiet);
  CHECK(again.resumed == 21);
  CHECK(again.computed == 0);
  CHECK(quiet.str().empty());
  fs::remove_all(dir);
}

TEST_CASE("resume ignores records computed with other parameters") {
  std::ostringstream log;
  SurveyOptions o;
  o.n = 4;
  o.out_dir = scratch("params").string();
  run_survey(o, log);
  o.resume = true;
  o.seed = 99;
  CHECK(run_survey(o, log).resumed == 0);
  fs::remove_all(o.out_dir);
}

TEST_CASE("argument guards") {
  std::ostringstream log;
  SurveyOptions o;
  o.n = 8;
  CHECK_THROWS_AS(run_survey(o, log), domain_error);
  o.n = 2;
  CHECK_THROWS_AS(run_survey(o, log), domain_error);
  o.n = 7;
  CHECK_THROWS_AS(run_survey(o, log), domain_error);
  o.n = 4;
  o.jobs = 0;
  CHECK_THROWS_AS(run_survey(o, log), domain_error);
}
