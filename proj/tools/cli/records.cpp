#include "records.hpp"

#include <cmath>
#include <ostream>

namespace gl3gl2::cli {

namespace {

nlohmann::ordered_json number(cplx z) {
  if (z.imag() == 0.0) return z.real();
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_number(cplx z) {
  const auto j = number(z);
  return j.is_array() ? csv_quote(j.dump()) : j.dump();
}

}  // namespace

Record from_report(const std::string& suite, nlohmann::ordered_json params, const VerificationReport& rep) {
  Record r;
  r.suite = suite;
  for (const auto& [k, v] : rep.diagnostics) params[k] = v;
  if (!rep.flags.empty()) params["flags"] = rep.flags;
  r.params = std::move(params);
  r.lhs = rep.lhs;
  r.rhs = rep.rhs;
  r.main_term = rep.main_term;
  r.abs_err = rep.abs_discrepancy;
  r.rel_err = rep.rel_discrepancy;
  r.tol = rep.tol;
  r.pass = rep.pass;
  return r;
}

Record compare(const std::string& suite, nlohmann::ordered_json params, cplx lhs, cplx rhs, double tol, bool relative) {
  Record r;
  r.suite = suite;
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max(1.0, std::abs(rhs));
  r.tol = tol;
  r.pass = (relative ? r.rel_err : r.abs_err) < tol;
  return r;
}

Record bound(const std::string& suite, nlohmann::ordered_json params, double value, double limit) {
  Record r;
  r.suite = suite;
  r.params = std::move(params);
  r.lhs = value;
  r.rhs = limit;
  r.abs_err = std::max(0.0, value - limit);
  r.rel_err = r.abs_err / std::max(1.0, std::abs(limit));
  r.pass = value <= limit;
  return r;
}

nlohmann::ordered_json to_json(const Record& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["params"] = r.params;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["main_term"] = number(r.main_term);
  j["abs_err"] = r.abs_err;
  j["rel_err"] = r.rel_err;
  j["tol"] = r.tol;
  j["pass"] = r.pass;
  j["runtime_ms"] = std::round(r.runtime_ms * 1000.0) / 1000.0;
  return j;
}

RecordWriter::RecordWriter(std::ostream& os, Format format) : os_(os), format_(format) {}

void RecordWriter::write(const Record& r) {
  const auto j = to_json(r);
  if (format_ == Format::Jsonl) {
    os_ << j.dump() << '\n';
    return;
  }
  if (!header_done_) {
    os_ << "suite,params,lhs,rhs,main_term,abs_err,rel_err,tol,pass,runtime_ms\n";
    header_done_ = true;
  }
  os_ << csv_quote(r.suite) << ',' << csv_quote(r.params.dump()) << ',' << csv_number(r.lhs) << ',' << csv_number(r.rhs)
      << ',' << csv_number(r.main_term) << ',' << j["abs_err"].dump() << ',' << j["rel_err"].dump() << ','
      << j["tol"].dump() << ',' << (r.pass ? "true" : "false") << ',' << j["runtime_ms"].dump() << '\n';
}

void RecordWriter::flush() { os_.flush(); }

}  // namespace gl3gl2::cli
