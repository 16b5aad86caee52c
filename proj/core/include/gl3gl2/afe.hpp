#pragma once

#include <memory>
#include <vector>

#include "gl3gl2/gamma_factor.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/gl3.hpp"
#include "gl3gl2/report.hpp"

namespace gl3gl2::afe {

// V(x) = (1/2 pi i) int x^{-s} G(1/2 + s)/G(1/2) ds/s, direct quadrature.
double v_weight(double x, const GammaFactor& gf);

// Tabulated V for repeated use in the smoothed sums.
class VWeight {
 public:
  explicit VWeight(const GammaFactor& gf, double tail_cut = 1e-16);
  VWeight(const VWeight&) = delete;
  VWeight& operator=(const VWeight&) = delete;

  double operator()(double x) const { return table_(x); }
  // |V| < tail_cut beyond this point.
  double cutoff() const { return table_.cutoff(); }
  const GammaFactor& gamma() const { return weight_.gamma(); }

 private:
  MellinWeight weight_;
  MellinWeightTable table_;
};

struct AfeContext {
  const gl2::FormGL2* f = nullptr;
  const gl3::CoeffTableGL3* table = nullptr;
  double split = 0.0;       // X; the dual side uses q^3 / X
  double tail_cut = 1e-16;
  int eps_override = 0;     // nonzero replaces eps_f (wrong-sign diagnostic)
  std::shared_ptr<const VWeight> weight;  // built on demand when empty

  // q^{3/2}
  static double symmetric_split(const gl2::FormGL2& f);
};

struct CentralValue {
  double value = 0.0;
  double s1 = 0.0, s2 = 0.0;
  int eps = 0;
  std::int64_t terms = 0;
};

// L(1/2, g x f) = S1 + eps_f S2 with
// S1 = sum_{(r,q)=1} sum_n a_f(n) A(r,n) / (r sqrt n) V(r^2 n / X)
// and S2 the same sum against V(r^2 n X / q^3).
CentralValue afe_central_value(AfeContext& ctx);

// L(1/2, f) from the two-sided smoothed sum with conductor q; split
// defaults to sqrt(q). `extend` stretches the summation range past the
// V cutoff (the self-convergence check uses 2).
CentralValue gl2_central_value(const gl2::FormGL2& f, double split = 0.0,
                               std::shared_ptr<const VWeight> weight = nullptr, double extend = 1.0);

// Max pairwise relative deviation of the central value across splits.
VerificationReport split_invariance_check(AfeContext ctx, const std::vector<double>& splits);
VerificationReport gl2_split_invariance_check(const gl2::FormGL2& f, const std::vector<double>& splits);

// L(1, E) for a weight-2 rank-0 newform: 2 sum c(n)/n exp(-2 pi n / sqrt q).
double exponential_series_L1(const gl2::FormGL2& f);

}  // namespace gl3gl2::afe
