#pragma once

#include <cstdint>
#include <vector>

#include "gl3gl2/gl2.hpp"
#include "gl3gl2/report.hpp"

namespace gl3gl2::trace {

struct TraceQuery {
  int k = 12;
  std::int64_t q = 1;
  std::int64_t n = 1, m = 1;
  std::int64_t c_max = 100;
  double tol = 1e-10;
};

// Dimension of the newform space S_k^new(q) for q = 1 or prime, k even.
int newform_dimension(int k, std::int64_t q);

// (12 / (q (k-1))) sum_f a_f(n) a_f(m) / omega_f with omega_f the harmonic
// weight. Throws PreconditionError when `forms` does not span the space.
double delta_spectral(const TraceQuery& query, const std::vector<gl2::FormGL2>& forms);

struct GeometricSide {
  double value = 0.0;
  std::int64_t c_used = 0;  // Kloosterman moduli c (times q) summed
  double tail_bound = 0.0;  // truncation_bound at c_used, infinity if not applicable
  bool reached_tol = false; // tail_bound < tol
};

// delta(n, m) + 2 pi i^k sum_{c <= C} S(n, m; c)/c J_{k-1}(4 pi sqrt(nm)/c).
GeometricSide delta_geometric_level1(const TraceQuery& query);

// Level-q newform variant with the level-1 correction line; `level1_forms`
// must span S_k(1).
GeometricSide delta_geometric_newform(const TraceQuery& query, const std::vector<gl2::FormGL2>& level1_forms);

// Explicit bound for sum_{c > C} |S(n,m;c)/c J_{k-1}(4 pi sqrt(nm)/c)| times
// 2 pi, from the Weil bound and J_nu(x) <= (x/2)^nu / nu!. Requires
// C >= 8 pi sqrt(nm); decreasing in C.
double truncation_bound(int k, std::int64_t n, std::int64_t m, double C);

// Spectral (lhs) against geometric (rhs); pass when |lhs - rhs| < tol.
// diagnostics: c_used, tail_bound, tail_certified (tail_bound < tol).
VerificationReport verify_trace(const TraceQuery& query, const std::vector<gl2::FormGL2>& forms,
                                const std::vector<gl2::FormGL2>& level1_forms = {});

// Smallest eigenvalue of [Delta*(n_i, n_j)] computed geometrically.
double geometric_gram_min_eigenvalue(const TraceQuery& base, const std::vector<std::int64_t>& ns,
                                     const std::vector<gl2::FormGL2>& level1_forms = {});

}  // namespace gl3gl2::trace
