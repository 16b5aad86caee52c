#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "gl3gl2/numeric.hpp"
#include "gl3gl2/report.hpp"

namespace gl3gl2::cli {

struct Record {
  std::string suite;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  cplx lhs, rhs, main_term;
  double abs_err = 0.0, rel_err = 0.0, tol = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;

  std::string check() const { return params.value("check", std::string()); }
};

// Copies lhs/rhs/main/discrepancies/pass and the diagnostics (into params).
Record from_report(const std::string& suite, nlohmann::ordered_json params, const VerificationReport& rep);

// lhs against rhs with |lhs - rhs| < tol (absolute) or, when relative is set,
// |lhs - rhs| / max(1, |rhs|) < tol.
Record compare(const std::string& suite, nlohmann::ordered_json params, cplx lhs, cplx rhs, double tol,
               bool relative = false);

// lhs must not exceed rhs.
Record bound(const std::string& suite, nlohmann::ordered_json params, double value, double limit);

enum class Format { Jsonl, Csv };

class RecordWriter {
 public:
  RecordWriter(std::ostream& os, Format format);
  void write(const Record& r);
  void flush();

 private:
  std::ostream& os_;
  Format format_;
  bool header_done_ = false;
};

nlohmann::ordered_json to_json(const Record& r);

}  // namespace gl3gl2::cli
