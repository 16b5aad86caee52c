#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gl3gl2/report.hpp"

namespace gl3gl2::gl2 {

using BigInt = boost::multiprecision::cpp_int;
using Series = std::vector<BigInt>;  // coefficient of q^n at index n

// Holomorphic newform of weight k and level 1 or prime q with trivial
// character. raw[n] = c(n) for 1 <= n <= N (raw[0] is unused).
struct FormGL2 {
  int weight = 0;
  std::int64_t level = 1;
  std::string source;
  Series raw;
  std::vector<double> normalized;  // a(n) = c(n) / n^((k-1)/2)
  int eps = 0;
  double harmonic_weight = std::numeric_limits<double>::quiet_NaN();

  std::int64_t size() const { return static_cast<std::int64_t>(raw.size()) - 1; }
  const BigInt& c(std::int64_t n) const;
  double a(std::int64_t n) const;
  // a(n) for any n whose prime factors are stored, extended by the Hecke
  // recursion at prime powers; throws RangeError otherwise.
  double lambda(std::int64_t n) const;
  bool has_harmonic_weight() const { return harmonic_weight == harmonic_weight; }
};

// Builds the normalized coefficients, root number and (when the stored
// primes reach the cutoff) the harmonic weight.
FormGL2 make_form(int k, std::int64_t q, Series raw, std::string source);

struct EtaQuotientSpec {
  std::vector<std::pair<int, int>> factors;  // (scale m, exponent r)
  int weight = 0;
  std::int64_t level = 1;

  // Leading q-power sum r m / 24; must be a positive integer.
  int leading_exponent() const;
};

EtaQuotientSpec eta_level11();
EtaQuotientSpec eta_level5_weight4();

// prod_{n>=1} (1 - q^n) to q^N by the pentagonal number theorem.
Series euler_product(std::int64_t n_max);
// f^r for f(0) = 1 and any integer r, via n g_n = sum ((r+1)k - n) f_k g_{n-k}.
Series series_power(const Series& f, int r);
Series series_multiply(const Series& a, const Series& b);
// f(q^m)
Series series_stretch(const Series& f, int m, std::int64_t n_max);

FormGL2 eta_quotient_coeffs(const EtaQuotientSpec& spec, std::int64_t n_max);

// E_4 = 1 + 240 sum sigma_3(n) q^n, E_6 = 1 - 504 sum sigma_5(n) q^n.
Series eisenstein_e4(std::int64_t n_max);
Series eisenstein_e6(std::int64_t n_max);

// Level-1 Hecke eigenforms of weight k from E4^a E6^b monomials.
std::vector<FormGL2> level1_basis(int k, std::int64_t n_max);

// Weight-2 newform attached to y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// of prime conductor q, from point counts a_p = p - #affine points.
struct WeierstrassCurve {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
  std::int64_t conductor = 1;
};
WeierstrassCurve curve_11a();  // y^2 + y = x^3 - x^2 - 10x - 20
WeierstrassCurve curve_37a();  // y^2 + y = x^3 - x
std::int64_t affine_point_count(const WeierstrassCurve& e, std::int64_t p);
FormGL2 point_count_form(const WeierstrassCurve& e, std::int64_t n_max);

// Fixture files: "# form k=<k> q=<q> source=<src>" then "<n> <c(n)>".
void write_fixture(std::ostream& os, const FormGL2& f);
FormGL2 read_fixture(std::istream& is);
FormGL2 load_fixture(const std::string& path);

// c(n) c(m) = sum_{d | (n,m), (d,q)=1} d^{k-1} c(nm/d^2) for n, m <= N.
VerificationReport hecke_multiplicativity_check(const FormGL2& f, std::int64_t n_max);

// -i^k a(q) sqrt(q); level 1 gives i^k.
int root_number(const FormGL2& f);

struct SymSquareValue {
  double value = 0.0;
  double delta = 0.0;      // |value(P) - value(P/2)|
  bool converged = false;  // delta <= 1e-2
};
// Euler product over p <= P.
SymSquareValue sym_sq_L1(const FormGL2& f, std::int64_t euler_cutoff);
// L(1, sym^2 f) from its approximate functional equation (conductor q^2).
double sym_sq_L1_afe(const FormGL2& f);
// zeta(2)^{-1} L(1, sym^2 f)
double harmonic_weight(const FormGL2& f);

}  // namespace gl3gl2::gl2
