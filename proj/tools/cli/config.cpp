#include "config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <set>

namespace gl3gl2::cli {

namespace {

const std::map<std::string, std::set<std::string>>& suite_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"specfun-selftest", {}},
      {"kloosterman", {"c_max", "nm_max"}},
      {"ptf-verify", {"k", "q", "n", "m", "c_max", "grid"}},
      {"newform-tf-verify", {"k", "q", "n", "m", "c_max", "grid"}},
      {"voronoi-verify", {"d", "b", "r", "N"}},
      {"afe", {"k", "q"}},
      {"amplifier-demo", {"k", "q", "L"}},
      {"full-acceptance", {}},
  };
  return keys;
}

const std::set<std::string> kFixtureFree = {"specfun-selftest", "kloosterman", "voronoi-verify"};

}  // namespace

double RunConfig::get(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : static_cast<long long>(it->second);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : suite_keys()) v.push_back(k);
    return v;
  }();
  return names;
}

RunConfig parse_config(int argc, const char* const* argv) {
  CLI::App app{"Numerical verification suites for GL(3) x GL(2) L-function identities", "gl3gl2"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "File of `key = value` lines; # starts a comment; flags win");

  RunConfig cfg;
  app.add_option("suite", cfg.suite, "Suite to run")->required()->check(CLI::IsMember(suite_names()));

  std::map<std::string, std::optional<long long>> ints;
  const std::map<std::string, std::string> int_help = {
      {"k", "Weight"},
      {"q", "Level"},
      {"n", "First Fourier index"},
      {"m", "Second Fourier index"},
      {"c_max", "Largest Kloosterman modulus"},
      {"grid", "Index range 1..grid"},
      {"nm_max", "Largest n, m in the Kloosterman checks"},
      {"d", "Voronoi denominator"},
      {"b", "Voronoi numerator, coprime to d"},
      {"r", "GL(3) first index"},
      {"L", "Amplifier length"},
  };
  for (const auto& [key, help] : int_help) app.add_option("--" + key, ints[key], help);
  std::optional<double> big_n;
  app.add_option("--N", big_n, "Voronoi scale")->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Tolerance override (> 0)");
  std::string fixtures, format = "jsonl";
  app.add_option("--fixtures", fixtures, std::string("Fixture directory (fallback: $") + kFixtureEnv + ")");
  app.add_option("--output,-o", cfg.output, "Report path (default stdout)");
  app.add_option("--format", format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [key, slot] : ints) {
    if (slot) cfg.params[key] = static_cast<double>(*slot);
  }
  if (big_n) cfg.params["N"] = *big_n;
  const auto& allowed = suite_keys().at(cfg.suite);
  for (const auto& [key, _] : cfg.params) {
    if (!allowed.count(key)) throw UsageError("--" + key + " does not apply to " + cfg.suite);
  }
  if (cfg.tol && !(*cfg.tol > 0.0 && std::isfinite(*cfg.tol))) throw UsageError("--tol must be a positive number");
  cfg.format = format == "csv" ? Format::Csv : Format::Jsonl;

  const bool explicit_dir = !fixtures.empty();
  if (!explicit_dir) {
    const char* env = std::getenv(kFixtureEnv);
    fixtures = env != nullptr && *env != '\0' ? env : "fixtures";
  }
  cfg.fixture_dir = fixtures;
  if ((explicit_dir || !kFixtureFree.count(cfg.suite)) && !std::filesystem::is_directory(fixtures))
    throw UsageError("fixture directory not found: " + fixtures);
  return cfg;
}

}  // namespace gl3gl2::cli
