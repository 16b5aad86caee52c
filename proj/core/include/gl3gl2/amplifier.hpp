#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gl3gl2/afe.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/gl3.hpp"
#include "gl3gl2/report.hpp"

namespace gl3gl2::amplifier {

// A(f) = sum_{n <= L} a_f0(n) a_f(n) / sqrt(n) and its square expanded as
// sum_m x_m a_f(m) / sqrt(m), valid for every Hecke eigenvector at the level of f0.
struct AmplifierSpec {
  std::int64_t level = 1;
  std::int64_t L = 0;
  std::vector<double> a0;  // a_f0(n), n = 0..L (entry 0 unused)
  std::vector<double> x;   // x_m, m = 0..L^2 (entry 0 unused)

  double x_at(std::int64_t m) const;
  std::int64_t support() const { return L * L; }
};

// x_m = sum_{(d,q)=1} (1/d) sum_{n1, n2 <= L, d | (n1, n2), n1 n2 = m d^2} a_f0(n1) a_f0(n2)
AmplifierSpec amplifier_coeffs(const gl2::FormGL2& f0, std::int64_t L);

// a(n) for n = 0..size (entry 0 unused); these are the inputs A(f) and the
// expansion are evaluated on.
std::vector<double> form_coefficients(const gl2::FormGL2& f, std::int64_t size);

// Hecke-consistent coefficient vector at level q: a(p^j) from Chebyshev
// polynomials of a seeded random angle for p != q, a(q^j) = a_q^j.
std::vector<double> synthetic_hecke_vector(std::int64_t q, std::int64_t size, std::uint64_t seed, double a_q);

double amplifier_value(const AmplifierSpec& spec, const std::vector<double>& af);
double expanded_square(const AmplifierSpec& spec, const std::vector<double>& af);

// lhs = expanded square, rhs = A(f)^2, relative tolerance.
VerificationReport reconstruction_check(const AmplifierSpec& spec, const std::vector<double>& af, double tol = 1e-12);

// Shared GL(3) x GL(2) inputs of the moment sums.
struct FamilyContext {
  int k = 2;
  std::int64_t q = 11;
  std::vector<gl2::FormGL2> family;
  const gl3::CoeffTableGL3* table = nullptr;
  std::shared_ptr<const afe::VWeight> weight;  // built on first use
};

struct MomentValue {
  double value = 0.0;
  double ratio = 0.0;          // value / q^{1.1}
  std::vector<double> summands;  // L(1/2, g x f) A(f)^2 / omega_f per form
  std::vector<double> central;   // L(1/2, g x f) per form
  double min_summand = 0.0;
  bool nonnegative = true;     // every summand >= -1e-6
};

// Sum^h_f L(1/2, g x f) A(f)^2 with Sum^h_f c_f = sum_f c_f / omega_f.
// Throws PreconditionError when the family does not fill H_k*(q).
MomentValue amplified_moment(FamilyContext& ctx, const AmplifierSpec& spec);

struct Prop2Value {
  double lhs = 0.0;
  double envelope = 0.0;   // (q^{0.1}/sqrt m)(1 + sum_{r < q^2} |A(r,m)|/r)
  double ratio = 0.0;      // |lhs| / envelope
  bool within = false;     // |lhs| <= 10 envelope
};

// (1/q) Sum^h_f L(1/2, g x f) a_f(m), requires (m, q) = 1.
Prop2Value prop2_lhs(FamilyContext& ctx, std::int64_t m);

struct Mainlem1Ranges {
  std::int64_t r_max = 0;  // 0: up to the V cutoff
  std::int64_t c_max = 50;
  double tail_cut = 1e-16;
};

struct Mainlem1Value {
  double value = 0.0;
  double scaled = 0.0;  // |value| sqrt(m)
  std::int64_t terms = 0;
  std::int64_t r_used = 0, n_used = 0;
};

// sum_{n, r} A(r,n)/(r sqrt n) V(r^2 n / q^{3/2}) sum_{c <= c_max} S(n, m; cq)/(cq) J_{k-1}(4 pi sqrt(nm)/(cq)),
// r unrestricted, n and r cut where V drops below tail_cut.
Mainlem1Value mainlem1_sum(std::int64_t m, std::int64_t q, int k, const gl3::CoeffTableGL3& table,
                           const Mainlem1Ranges& ranges, std::shared_ptr<const afe::VWeight> weight = nullptr);

// min over 2 <= L <= L_max of (sum_{n <= L} a_f0(n)^2) (log L + 2) / L
double amplification_constant(const gl2::FormGL2& f0, std::int64_t L_max);

}  // namespace gl3gl2::amplifier
