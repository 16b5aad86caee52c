#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "gl3gl2/numeric.hpp"

namespace gl3gl2::specfun {

// Principal branch of log Gamma(s); throws PoleError at nonpositive integers.
cplx log_gamma(cplx s);

// Orders above this lose accuracy near the regime switch and are rejected.
inline constexpr int kMaxBesselOrder = 20;

// J_order(x) for integer 0 <= order <= kMaxBesselOrder and x >= 0.
double bessel_j(int order, double x);

// The two evaluation regimes, exposed for the overlap test.
double bessel_j_series(int order, double x);
double bessel_j_hankel(int order, double x);
double bessel_switch_point(int order);

// Hurwitz zeta(s, a) for a > 0, continued to s != 1 by Euler-Maclaurin.
cplx hurwitz_zeta(cplx s, double a);
cplx riemann_zeta(cplx s);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int n);

enum class QuadratureKind { VerticalLine, Circle };

struct ContourSpec {
  double sigma = 1.0;
  double t_max = 50.0;
  int node_count = 1024;
  QuadratureKind kind = QuadratureKind::VerticalLine;

  // node_count >= 16 and t_max > 0
  bool valid() const;
};

// (1/2 pi i) * integral over Re s = sigma of f(s) ds by the trapezoid rule
// with nodes sigma + i*step*j, |j*step| <= t_max.
cplx integrate_vertical(const std::function<cplx(cplx)>& f, double sigma, double step, double t_max);

struct VerticalIntegral {
  cplx value;
  double t_max = 0.0;
  int nodes = 0;
  bool converged = false;  // integrand tail fell below rel_tail of its peak
};

// As integrate_vertical, but walks outward until |f| stays below rel_tail
// times its running peak over a stretch of `settle` units of t.
VerticalIntegral integrate_vertical_adaptive(const std::function<cplx(cplx)>& f, double sigma, double step,
                                             double rel_tail = 1e-17, double t_limit = 5000.0,
                                             double settle = 4.0);

// (1/2 pi i) * contour integral of f around the circle |s - center| = radius,
// periodic trapezoid rule with `nodes` points.
cplx circle_integral(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes);

// Smooth bump with support [1, 2]. The canonical profile is
// exp(-1/(x-1) - 1/(2-x)), unnormalized.
class BumpFunction {
 public:
  static constexpr int kMaxDerivative = 12;

  BumpFunction() = default;

  double operator()(double x) const { return value(x); }
  double value(double x) const;
  // d^order/dx^order psi(x) via Taylor-jet arithmetic, order <= kMaxDerivative.
  double derivative(double x, int order) const;

  double support_lo() const { return 1.0; }
  double support_hi() const { return 2.0; }

  // Mellin transform int_1^2 x^(s-1) psi(x) dx, composite Gauss-Legendre.
  // Results are cached per s.
  cplx mellin(cplx s) const;
  // Uncached evaluation with an explicit panel count (20 nodes per panel).
  cplx mellin_with_panels(cplx s, int panels) const;
  static int default_panels(double abs_imag);

  // psi~(a - i*t_j) for t_j = j*step, j = 0..count-1, using a shared node set
  // and per-node phasor rotation. Panel count is sized for the largest t.
  // ibp > 0 integrates by parts that many times in log x, which lowers the
  // rounding floor by roughly |s|^-ibp (useless near s = 0).
  std::vector<cplx> mellin_grid(double a, double step, int count, int ibp = 0) const;

 private:
  mutable std::shared_mutex cache_mutex_;
  mutable std::map<std::pair<double, double>, cplx> cache_;
};

}  // namespace gl3gl2::specfun
