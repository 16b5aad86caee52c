#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "gl3gl2/gl2.hpp"
#include "gl3gl2/numeric.hpp"
#include "gl3gl2/report.hpp"

namespace gl3gl2::gl3 {

enum class TableKind { EisensteinD3, Sym2Lift };

// Fourier coefficients A(n, m), 1 <= n <= n_max, 1 <= m <= m_max.
class CoeffTableGL3 {
 public:
  CoeffTableGL3(TableKind kind, cplx nu, std::int64_t n_max, std::int64_t m_max);

  TableKind kind() const { return kind_; }
  cplx nu() const { return nu_; }
  bool self_dual() const { return true; }
  // Only the ternary-divisor table has the archimedean type H+- is built for.
  bool voronoi_admissible() const { return kind_ == TableKind::EisensteinD3; }
  // Entries are integers stored exactly.
  bool exact() const { return kind_ == TableKind::EisensteinD3; }
  std::int64_t n_max() const { return n_max_; }
  std::int64_t m_max() const { return m_max_; }

  double operator()(std::int64_t n, std::int64_t m) const;
  bool covers(std::int64_t n, std::int64_t m) const { return n >= 1 && m >= 1 && n <= n_max_ && m <= m_max_; }

  // Lines "<n> <m> <A(n,m)>".
  void dump(std::ostream& os) const;

 private:
  friend CoeffTableGL3 eisenstein_coeffs(std::int64_t, std::int64_t);
  friend CoeffTableGL3 sym2_lift_coeffs(const gl2::FormGL2&, std::int64_t, std::int64_t);
  // Fills the table from its first row and column through the Hecke relation.
  void fill_from_edges(const std::vector<double>& row1);

  TableKind kind_;
  cplx nu_;
  std::int64_t n_max_, m_max_;
  std::vector<double> a_;  // row-major, (n - 1) * m_max + (m - 1)
};

// A(n, 1) = d3(n), nu = 1/3; L(s, g) = zeta(s)^3.
CoeffTableGL3 eisenstein_coeffs(std::int64_t n_max, std::int64_t m_max);

// A(n, 1) = sum_{d^2 l = n} lambda_f(l^2) for f of level 1.
CoeffTableGL3 sym2_lift_coeffs(const gl2::FormGL2& f, std::int64_t n_max, std::int64_t m_max);

// Hecke reconstruction residual, coprime multiplicativity, self-duality and
// the averaged-coefficient ratio over x, y <= 100, a, b <= 4.
VerificationReport gl3_hecke_check(const CoeffTableGL3& table, std::int64_t n_max);

}  // namespace gl3gl2::gl3
