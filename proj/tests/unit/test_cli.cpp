#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "suites.hpp"

using namespace gl3gl2::cli;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "gl3gl2");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

std::filesystem::path temp_file(const char* name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("flags override the config file") {
  const auto path = temp_file("gl3gl2_test.cfg", "# test\nk = 16\nc_max = 50\n");
  const auto cfg = parse({"ptf-verify", "--config", path.string(), "--k", "12", "--fixtures", GL3GL2_FIXTURE_DIR});
  CHECK(cfg.get_int("k", 0) == 12);
  CHECK(cfg.get_int("c_max", 0) == 50);
  CHECK(cfg.fixture_dir == GL3GL2_FIXTURE_DIR);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(parse({"kloosterman", "--tol", "-1"}), UsageError);
  CHECK_THROWS_AS(parse({"kloosterman", "--bogus", "3"}), UsageError);
  CHECK_THROWS_AS(parse({"no-such-suite"}), UsageError);
  CHECK_THROWS_AS(parse({"afe", "--fixtures", "/nonexistent/fixtures"}), UsageError);
  CHECK_THROWS_AS(parse({"afe", "--d", "3", "--fixtures", GL3GL2_FIXTURE_DIR}), UsageError);
  CHECK_THROWS_AS(parse({"voronoi-verify", "--N", "-2"}), UsageError);
  CHECK_THROWS_AS(parse({"--help"}), HelpRequested);
}

TEST_CASE("configuration errors map to exit code 2") {
  std::ostringstream out, err;
  auto cfg = parse({"ptf-verify", "--fixtures", GL3GL2_FIXTURE_DIR, "--k", "14"});
  CHECK(run_suite(cfg, out, err) == 2);
  CHECK_FALSE(err.str().empty());
}

TEST_CASE("single Voronoi query emits one record") {
  std::ostringstream out, err;
  const auto cfg = parse({"voronoi-verify", "--d", "1", "--b", "1", "--r", "1", "--N", "20"});
  CHECK(run_suite(cfg, out, err) == 0);
  std::istringstream lines(out.str());
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("pass").get<bool>());
    CHECK(j.at("suite") == "voronoi-verify");
    ++count;
  }
  CHECK(count == 1);
}

TEST_CASE("CSV output has a header and one row per record") {
  std::ostringstream out, err;
  const auto cfg = parse({"kloosterman", "--format", "csv", "--c_max", "12", "--nm_max", "4"});
  CHECK(run_suite(cfg, out, err) == 0);
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  CHECK(header.rfind("suite,", 0) == 0);
  int rows = 0;
  while (std::getline(lines, row)) {
    CHECK(row.rfind("\"kloosterman\",", 0) == 0);
    ++rows;
  }
  CHECK(rows > 0);
}
