// Acceptance driver: one pass/fail line per criterion.
//   acceptance [--criterion N] [--fixtures DIR]
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "records.hpp"
#include "suites.hpp"

using namespace gl3gl2::cli;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Tally {
  int records = 0, failed = 0;
  double runtime_ms = 0.0;
  std::string first_failure;
};

// Runs `suite` and tallies the records whose check is in `checks` (all when empty).
Tally run_checks(const std::string& suite, const std::string& fixtures, const std::set<std::string>& checks) {
  Tally t;
  run_records(default_config(suite, fixtures), [&](const Record& r) {
    if (!checks.empty() && !checks.count(r.check())) return;
    ++t.records;
    t.runtime_ms += r.runtime_ms;
    if (!r.pass) {
      ++t.failed;
      if (t.first_failure.empty()) t.first_failure = to_json(r).dump();
    }
  });
  return t;
}

Outcome judge(const Tally& t, double budget_s) {
  Outcome o;
  std::ostringstream ss;
  ss << t.records << " records, " << t.failed << " failed, " << t.runtime_ms / 1000.0 << " s (budget " << budget_s << " s)";
  if (t.records == 0) {
    o.pass = false;
    ss << "; no records";
  }
  if (t.failed > 0) {
    o.pass = false;
    ss << "; first failure " << t.first_failure;
  }
  if (t.runtime_ms > budget_s * 1000.0) {
    o.pass = false;
    ss << "; over budget";
  }
  o.detail = ss.str();
  return o;
}

std::string strip_runtime(const std::string& s) {
  static const std::regex rt("\"runtime_ms\":[-0-9.eE+]+");
  return std::regex_replace(s, rt, "\"runtime_ms\":0");
}

Outcome determinism(const std::string& fixtures) {
  std::string out[2];
  int code[2];
  for (int i = 0; i < 2; ++i) {
    std::ostringstream os, err;
    code[i] = run_suite(default_config("full-acceptance", fixtures), os, err);
    out[i] = strip_runtime(os.str());
  }
  Outcome o;
  const bool same = out[0] == out[1];
  o.pass = same && code[0] == 0 && code[1] == 0;
  std::ostringstream ss;
  ss << "reports " << (same ? "identical" : "differ") << " (" << out[0].size() << " bytes), exit codes " << code[0]
     << " and " << code[1];
  o.detail = ss.str();
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome(const std::string&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<Outcome(const std::string&)>>> list = {
      {"kloosterman sums",
       [](const std::string& f) {
         return judge(run_checks("kloosterman", f, {"symmetry", "periodicity", "ramanujan_exact", "weil_bound"}), 10);
       }},
      {"Petersson formula, level 1", [](const std::string& f) { return judge(run_checks("ptf-verify", f, {}), 30); }},
      {"newform trace formula", [](const std::string& f) { return judge(run_checks("newform-tf-verify", f, {}), 180); }},
      {"GL(3) Voronoi summation", [](const std::string& f) { return judge(run_checks("voronoi-verify", f, {}), 300); }},
      {"approximate functional equation", [](const std::string& f) { return judge(run_checks("afe", f, {}), 60); }},
      {"amplifier expansion",
       [](const std::string& f) {
         return judge(run_checks("amplifier-demo", f, {"reconstruction", "l2_closed_form"}), 10);
       }},
      {"reciprocity and Ramanujan dichotomy",
       [](const std::string& f) {
         return judge(run_checks("kloosterman", f, {"reciprocity_split", "ramanujan_dichotomy"}), 5);
       }},
      {"special functions", [](const std::string& f) { return judge(run_checks("specfun-selftest", f, {}), 30); }},
      {"determinism of full-acceptance", determinism},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IONBF, 0);
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::string fixtures = GL3GL2_FIXTURE_DIR;
  app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_option("--fixtures", fixtures, "Fixture directory");
  CLI11_PARSE(app, argc, argv);

  bool all = true;
  const auto& list = criteria();
  for (int i = 1; i <= static_cast<int>(list.size()); ++i) {
    if (only != 0 && i != only) continue;
    Outcome o;
    try {
      o = list[i - 1].second(fixtures);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    std::cout << "criterion " << i << " [" << (o.pass ? "PASS" : "FAIL") << "] " << list[i - 1].first << ": "
              << o.detail << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
