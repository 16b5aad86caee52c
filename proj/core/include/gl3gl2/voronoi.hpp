#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "gl3gl2/gl3.hpp"
#include "gl3gl2/numeric.hpp"
#include "gl3gl2/report.hpp"
#include "gl3gl2/specfun.hpp"

namespace gl3gl2::voronoi {

enum class Sign { Plus, Minus };

// H+-(s) = e^{A(s)} -+ i e^{B(s)} with a = 3 nu - 1 and
// A(s) = log G3(s) - log G3(1 - s), G3(s) = Gamma((s+a)/2) Gamma(s/2) Gamma((s-a)/2),
// B(s) = log G3(1 + s) - log G3(2 - s).
// Throws PoleError when any Gamma argument is within 1e-6 of a pole.
cplx h_transform(cplx s, cplx nu, Sign sign);

// Psi+-(X) = X (1/2 pi i) int_{(sigma)} (pi^3 X)^{-s} H+-(s) psi~(1 - s) ds.
// The integrand samples F(t) = H+(sigma + it) psi~(1 - sigma - it) on a
// step-h grid are transformed once by FFT onto a fine grid in
// u = log(pi^3 X); values between grid points come from 8-point Lagrange
// interpolation. Psi- is the conjugate of Psi+ for admissible nu.
class PsiTransform {
 public:
  // with_table = false skips the FFT; every call then goes through direct().
  PsiTransform(const specfun::BumpFunction& psi, cplx nu, double sigma = 0.9, double step = 0.1,
               bool with_table = true);
  ~PsiTransform();
  PsiTransform(const PsiTransform&) = delete;
  PsiTransform& operator=(const PsiTransform&) = delete;

  cplx operator()(double X, Sign sign = Sign::Plus) const;
  // Trapezoid sum evaluated directly at one X (no FFT, no interpolation).
  cplx direct(double X, Sign sign = Sign::Plus) const;

  double sigma() const { return sigma_; }
  double step() const { return step_; }
  double t_max() const { return t_max_; }
  int nodes() const { return static_cast<int>(f_.size()); }
  // Integrand magnitude at t_max relative to its peak.
  double tail_ratio() const { return tail_ratio_; }
  bool converged() const { return tail_ratio_ < 1e-14; }
  // Range of X served from the FFT table; other X fall back to direct().
  double x_lo() const;
  double x_hi() const;

 private:
  double sigma_, step_;
  double t_max_ = 0.0, tail_ratio_ = 0.0;
  std::vector<cplx> f_;  // F(t_j), j = -J..J, stored at index j + J
  std::vector<cplx> g_;  // h sum_j F_j e^{-i t_j u_k}
  double u0_ = 0.0, du_ = 0.0;
};

// Psi+-(X) by direct quadrature on the line sigma with trapezoid step h.
cplx psi_transform(const specfun::BumpFunction& psi, cplx nu, double X, Sign sign, double sigma, double step = 0.1);

struct VoronoiParams {
  std::int64_t d = 1, b = 1, r = 1;
  double N = 20.0;
  const specfun::BumpFunction* psi = nullptr;
  const gl3::CoeffTableGL3* table = nullptr;
  double sigma = 0.9;
  double tol = 1e-3;
};

struct MainTermValue {
  cplx value;
  cplx refined;        // same contour with twice the nodes
  bool accurate = true;  // |value - refined| <= 1e-10
};

// Res_{s=1} D_r(s; bbar/d) psi~(s) N^s on the circle |s - 1| = 1/2, where
// D_r(s; a/d) = sum_n A(r,n) e(n a/d) n^{-s} for the ternary-divisor table.
MainTermValue main_term(std::int64_t d, std::int64_t b, double N, const specfun::BumpFunction& psi, std::int64_t r,
                        int nodes = 64);

// c2 + 3 gamma0 c1 + (3 gamma0^2 - 3 gamma1) c0, c_j = N int psi(x) (log Nx)^j / j! dx;
// equals main_term at d = r = 1.
double main_term_laurent(double N, const specfun::BumpFunction& psi);

// sum_n A(r, n) e(n bbar/d) psi(n/N)
cplx voronoi_lhs(const VoronoiParams& p);

// Psi table at the default contour plus the sigma-shift cross-check, shared
// across parameter sets with the same psi and nu.
struct VoronoiKernel {
  VoronoiKernel(const specfun::BumpFunction& psi, cplx nu, double sigma = 0.9);
  PsiTransform table;
  // max over X in {0.1, 1, 10, 100} of |Psi+(X) at sigma 0.6 - at sigma 1.2|
  double contour_shift = 0.0;
  // |Psi+(1) at step h - at step h/2|
  double step_halving = 0.0;
};

// Step used off the default contour. The trapezoid rule on a vertical line
// aliases with weight about e^{-2 pi sigma / h}, so h shrinks with sigma.
double contour_step(double sigma);

// Full two-sided check. diagnostics carry the dual cutoff, the contour
// t_max, node counts and the fitted constant (lhs - main)/rhs.
VerificationReport verify_voronoi(const VoronoiParams& p, const VoronoiKernel* kernel = nullptr);

}  // namespace gl3gl2::voronoi
