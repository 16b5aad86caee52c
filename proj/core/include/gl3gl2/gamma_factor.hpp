#pragma once

#include <vector>

#include "gl3gl2/numeric.hpp"

namespace gl3gl2 {

// pi^{-c s} * prod_j Gamma((s + mu_j) / 2)
struct GammaFactor {
  std::vector<cplx> shifts;
  double pi_power = 0.0;

  // L(s, f) for f of weight k: shifts (k-1)/2, (k+1)/2, c = 1.
  static GammaFactor gl2(int k);
  // L(s, g x f) for g of type (nu, nu): shifts (k +- 1)/2 + delta with
  // delta in {3nu - 1, 0, 1 - 3nu}, c = 3.
  static GammaFactor rankin_selberg(int k, cplx nu);
  // L(s, sym^2 f) for f of weight k: shifts 1, k - 1, k, c = 3/2.
  static GammaFactor symmetric_square(int k);

  int degree() const { return static_cast<int>(shifts.size()); }
  cplx log_value(cplx s) const;
  cplx value(cplx s) const;
  // Nearest pole to the right edge: the largest real s where some
  // (s + mu_j)/2 is a nonpositive integer.
  double rightmost_pole() const;

  // Same shift multiset (to 1e-12) and same pi power.
  bool same_as(const GammaFactor& other) const;
  // n-fold product: every shift repeated, pi power scaled.
  GammaFactor power(int n) const;
};

// W(x) = (1/2 pi i) int_{(sigma)} x^{-u} G(s0 + u) / G(s_norm) du / u.
// With s_norm = s0 this is the usual approximate-functional-equation weight,
// equal to 1 + O(x^a) as x -> 0 and rapidly decaying as x -> infinity.
class MellinWeight {
 public:
  MellinWeight(GammaFactor gf, double s0, double s_norm);

  // Direct quadrature. For x < 1 the contour is moved left of u = 0 and the
  // residue 1 * G(s0)/G(s_norm) is added back; for x >= 1 the line is placed
  // near the saddle of x^{-u} G(s0 + u).
  double operator()(double x) const;

  // Contour data used by operator(); exposed for diagnostics.
  double sigma_for(double x) const;
  double step_for(double sigma) const;

  const GammaFactor& gamma() const { return gf_; }
  double s0() const { return s0_; }

 private:
  GammaFactor gf_;
  double s0_;
  double s_norm_;
  double log_norm_;
  double left_sigma_;
  double residue_;
};

// Tabulated MellinWeight on a uniform grid in log x with local Lagrange
// interpolation. Values below x_lo are the limit value at 0 plus the direct
// evaluation; values beyond the tail cutoff are reported as 0.
class MellinWeightTable {
 public:
  MellinWeightTable(const MellinWeight& w, double tail_cut = 1e-16, double log_step = 0.01);

  double operator()(double x) const;
  // Smallest tabulated x beyond which |W| < tail_cut.
  double cutoff() const { return x_cut_; }

 private:
  const MellinWeight* w_;
  double v_lo_, dv_;
  std::vector<double> vals_;
  double x_cut_;
};

}  // namespace gl3gl2
