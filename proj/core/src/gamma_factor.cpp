#include "gl3gl2/gamma_factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gl3gl2/errors.hpp"
#include "gl3gl2/specfun.hpp"

namespace gl3gl2 {

GammaFactor GammaFactor::gl2(int k) {
  if (k < 1) throw PreconditionError("GammaFactor::gl2: weight must be positive");
  return {{cplx((k - 1) / 2.0), cplx((k + 1) / 2.0)}, 1.0};
}

GammaFactor GammaFactor::rankin_selberg(int k, cplx nu) {
  if (k < 1) throw PreconditionError("GammaFactor::rankin_selberg: weight must be positive");
  const cplx a = 3.0 * nu - 1.0;
  GammaFactor g;
  g.pi_power = 3.0;
  for (double base : {(k - 1) / 2.0, (k + 1) / 2.0}) {
    for (cplx delta : {a, cplx(0.0), -a}) g.shifts.push_back(base + delta);
  }
  return g;
}

GammaFactor GammaFactor::symmetric_square(int k) {
  if (k < 2) throw PreconditionError("GammaFactor::symmetric_square: weight must be >= 2");
  return {{cplx(1.0), cplx(k - 1.0), cplx(static_cast<double>(k))}, 1.5};
}

cplx GammaFactor::log_value(cplx s) const {
  cplx acc = -pi_power * s * std::log(kPi);
  for (const cplx& mu : shifts) acc += specfun::log_gamma((s + mu) / 2.0);
  return acc;
}

cplx GammaFactor::value(cplx s) const { return std::exp(log_value(s)); }

double GammaFactor::rightmost_pole() const {
  double r = -std::numeric_limits<double>::infinity();
  for (const cplx& mu : shifts) r = std::max(r, -mu.real());
  return r;
}

bool GammaFactor::same_as(const GammaFactor& other) const {
  if (shifts.size() != other.shifts.size()) return false;
  if (std::abs(pi_power - other.pi_power) > 1e-12) return false;
  auto key = [](const cplx& z) { return std::pair{z.real(), z.imag()}; };
  auto a = shifts, b = other.shifts;
  std::sort(a.begin(), a.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
  std::sort(b.begin(), b.end(), [&](auto& x, auto& y) { return key(x) < key(y); });
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12) return false;
  }
  return true;
}

GammaFactor GammaFactor::power(int n) const {
  GammaFactor g;
  g.pi_power = pi_power * n;
  for (int i = 0; i < n; ++i) g.shifts.insert(g.shifts.end(), shifts.begin(), shifts.end());
  return g;
}

MellinWeight::MellinWeight(GammaFactor gf, double s0, double s_norm)
    : gf_(std::move(gf)), s0_(s0), s_norm_(s_norm) {
  log_norm_ = gf_.log_value(s_norm_).real();
  // Poles of G(s0 + u) sit at u = pole - s0 - 2j.
  const double first_pole = gf_.rightmost_pole() - s0_;
  if (first_pole >= 0.0) throw PreconditionError("MellinWeight: G has a pole at or right of s0");
  left_sigma_ = first_pole / 2.0;
  residue_ = std::exp(gf_.log_value(s0_).real() - log_norm_);
}

double MellinWeight::sigma_for(double x) const {
  if (x < 1.0) return left_sigma_;
  // Minimize -sigma log x + log G(s0 + sigma) - log sigma over a coarse grid.
  const double lx = std::log(x);
  double best = 2.0, best_val = std::numeric_limits<double>::infinity();
  for (double sg = 1.0; sg <= 60.0; sg += 1.0) {
    const double v = -sg * lx + gf_.log_value(s0_ + sg).real() - std::log(sg);
    if (v < best_val) {
      best_val = v;
      best = sg;
    }
  }
  return best;
}

double MellinWeight::step_for(double sigma) const {
  // Trapezoid error ~ exp(-2 pi a / h), a = distance to nearest singularity.
  const double pole = gf_.rightmost_pole() - s0_;
  const double a = std::min(std::abs(sigma), sigma - pole);
  return std::min(0.25, kTwoPi * a / 40.0);
}

double MellinWeight::operator()(double x) const {
  if (!(x > 0.0)) throw PreconditionError("MellinWeight: x must be positive");
  const double sigma = sigma_for(x);
  const double lx = std::log(x);
  auto f = [&](cplx u) { return std::exp(-u * lx + gf_.log_value(s0_ + u) - log_norm_) / u; };
  const auto r = specfun::integrate_vertical_adaptive(f, sigma, step_for(sigma), 1e-18, 2000.0, 2.0);
  if (!r.converged) throw std::runtime_error("MellinWeight: contour integral did not converge");
  // On the real axis the integrand is conjugate symmetric, so the value is real.
  const double v = r.value.real();
  return sigma < 0.0 ? v + residue_ : v;
}

namespace {

// Four-point-per-side Lagrange interpolation at fractional offset p in [0,1)
// from samples y[-3..4].
double lagrange8(const double* y, double p) {
  double acc = 0.0;
  for (int i = -3; i <= 4; ++i) {
    double w = 1.0;
    for (int j = -3; j <= 4; ++j) {
      if (j != i) w *= (p - j) / static_cast<double>(i - j);
    }
    acc += w * y[i];
  }
  return acc;
}

}  // namespace

MellinWeightTable::MellinWeightTable(const MellinWeight& w, double tail_cut, double log_step)
    : w_(&w), v_lo_(std::log(1e-10)), dv_(log_step) {
  // March right until the weight has stayed below tail_cut for a while.
  int below = 0;
  const int need = static_cast<int>(std::ceil(0.5 / dv_));
  for (int i = -3;; ++i) {
    const double v = v_lo_ + i * dv_;
    const double val = w(std::exp(v));
    vals_.push_back(val);
    below = std::abs(val) < tail_cut ? below + 1 : 0;
    if (below >= need && v > 0.0) break;
    if (v > std::log(1e12)) throw std::runtime_error("MellinWeightTable: weight did not decay");
  }
  const int n = static_cast<int>(vals_.size());
  int last = n - 1;
  while (last > 0 && std::abs(vals_[static_cast<std::size_t>(last)]) < tail_cut) --last;
  x_cut_ = std::exp(v_lo_ + (last - 3 + 1) * dv_);
}

double MellinWeightTable::operator()(double x) const {
  if (!(x > 0.0)) throw PreconditionError("MellinWeightTable: x must be positive");
  if (x >= x_cut_) return 0.0;
  const double v = std::log(x);
  const double pos = (v - v_lo_) / dv_;
  if (pos < 0.0) return (*w_)(x);
  const int i = static_cast<int>(std::floor(pos));
  const std::size_t idx = static_cast<std::size_t>(i + 3);
  if (idx + 4 >= vals_.size()) return 0.0;
  return lagrange8(&vals_[idx], pos - i);
}

}  // namespace gl3gl2
