#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "records.hpp"

namespace gl3gl2::cli {

using Sink = std::function<void(const Record&)>;

// Runs one suite, handing every record to `sink` as soon as it is complete.
// Returns true when every record passed. Throws UsageError for bad
// parameters or missing fixtures.
bool run_records(const RunConfig& cfg, const Sink& sink);

// Streams records to cfg.output (or `fallback` when it is empty) and maps
// the outcome to the exit code contract: 0 pass, 1 numerical failure,
// 2 configuration error.
int run_suite(const RunConfig& cfg, std::ostream& fallback, std::ostream& err);

// Default configuration for `suite` with the given fixture directory.
RunConfig default_config(const std::string& suite, const std::string& fixture_dir);

}  // namespace gl3gl2::cli
