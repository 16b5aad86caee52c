#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "gl3gl2/numeric.hpp"

namespace gl3gl2 {

// Outcome of one two-sided identity test.
struct VerificationReport {
  cplx lhs;
  cplx rhs;
  cplx main_term;
  double abs_discrepancy = 0.0;  // |lhs - main_term - rhs|
  double rel_discrepancy = 0.0;  // abs_discrepancy / max(1, |lhs|)
  double tol = 0.0;
  bool pass = false;
  std::map<std::string, double> diagnostics;
  std::vector<std::string> flags;

  // Fills the discrepancies from lhs, rhs, main_term and sets pass against tol.
  void finish(double tolerance);
};

inline void VerificationReport::finish(double tolerance) {
  tol = tolerance;
  abs_discrepancy = std::abs(lhs - main_term - rhs);
  rel_discrepancy = abs_discrepancy / std::max(1.0, std::abs(lhs));
  pass = rel_discrepancy < tol && flags.empty();
}

}  // namespace gl3gl2
