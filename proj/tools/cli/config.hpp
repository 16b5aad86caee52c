#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "records.hpp"

namespace gl3gl2::cli {

// Bad flags, bad config file, bad values. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kFixtureEnv = "GL3GL2_FIXTURES";

struct RunConfig {
  std::string suite;
  std::map<std::string, double> params;  // only keys given on the command line or in the file
  std::string fixture_dir;
  std::string output;  // empty: stdout
  Format format = Format::Jsonl;
  std::optional<double> tol;

  double get(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool has(const std::string& key) const { return params.count(key) != 0; }
};

const std::vector<std::string>& suite_names();

// Flags override `key = value` entries of --config. Throws UsageError.
RunConfig parse_config(int argc, const char* const* argv);

// Help text or version requested: message to print, exit 0.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gl3gl2::cli
