#include "gl3gl2/voronoi.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"

namespace gl3gl2::voronoi {

using i64 = std::int64_t;

namespace {

constexpr double kPoleGuard = 1e-6;

void guard_pole(cplx z) {
  if (z.real() > 0.5) return;
  const double k = std::round(z.real());
  if (k <= 0.0 && std::abs(z - cplx(k, 0.0)) < kPoleGuard) throw PoleError("h_transform: Gamma argument at a pole");
}

cplx log_g3(cplx s, cplx a) {
  const cplx z1 = (s + a) / 2.0, z2 = s / 2.0, z3 = (s - a) / 2.0;
  guard_pole(z1);
  guard_pole(z2);
  guard_pole(z3);
  return specfun::log_gamma(z1) + specfun::log_gamma(z2) + specfun::log_gamma(z3);
}

// log of pi^{3/2} sized prefactor X (pi^3 X)^{-sigma} / (2 pi)
double psi_prefactor(double X, double sigma) { return X * std::pow(kPi * kPi * kPi * X, -sigma) / kTwoPi; }

double lagrange8_re(const cplx* y, double p, bool imag) {
  double acc = 0.0;
  for (int i = -3; i <= 4; ++i) {
    double w = 1.0;
    for (int j = -3; j <= 4; ++j) {
      if (j != i) w *= (p - j) / static_cast<double>(i - j);
    }
    acc += w * (imag ? y[i].imag() : y[i].real());
  }
  return acc;
}

constexpr int kFftLog2 = 20;
constexpr double kU0 = -12.0;
// Fraction of the 2 pi / h period in u that is served from the table.
constexpr double kUsable = 0.6;

}  // namespace

cplx h_transform(cplx s, cplx nu, Sign sign) {
  const cplx a = 3.0 * nu - 1.0;
  const cplx A = log_g3(s, a) - log_g3(1.0 - s, a);
  const cplx B = log_g3(1.0 + s, a) - log_g3(2.0 - s, a);
  const cplx i_sign = sign == Sign::Plus ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
  return std::exp(A) + i_sign * std::exp(B);
}

PsiTransform::PsiTransform(const specfun::BumpFunction& psi, cplx nu, double sigma, double step, bool with_table)
    : sigma_(sigma), step_(step) {
  if (!(sigma > 0.0 && sigma <= 2.0)) throw PreconditionError("PsiTransform: sigma must lie in (0, 2]");
  if (!(step > 0.0 && step <= 0.25)) throw PreconditionError("PsiTransform: step must lie in (0, 0.25]");
  if (std::abs((3.0 * nu - 1.0).real()) > 1e-12) throw PreconditionError("PsiTransform: nu is not admissible");

  // Walk out until |F| has stayed below 1e-16 of its peak for 50 units of t.
  // Beyond t = 50 psi~ comes from the integrated-by-parts rule, whose
  // rounding floor sits far below the plain one.
  constexpr double kTail = 1e-16, kSettle = 50.0, kLimit = 5000.0, kIbpFrom = 50.0;
  const int settle = static_cast<int>(std::ceil(kSettle / step));
  std::vector<cplx> pos, neg;  // F(+t_j), F(-t_j)
  for (double span = 2560.0;; span = std::min(2.0 * span, kLimit)) {
    const int count = static_cast<int>(std::floor(span / step)) + 1;
    const auto plain = psi.mellin_grid(1.0 - sigma, step, count);
    const auto ibp = psi.mellin_grid(1.0 - sigma, step, count, 6);
    pos.clear();
    neg.clear();
    double peak = 0.0;
    int quiet = 0;
    bool done = false;
    for (int j = 0; j < count; ++j) {
      const double t = j * step;
      const cplx mp = t < kIbpFrom ? plain[static_cast<std::size_t>(j)] : ibp[static_cast<std::size_t>(j)];
      const cplx fp = h_transform(cplx(sigma, t), nu, Sign::Plus) * mp;
      const cplx fn = h_transform(cplx(sigma, -t), nu, Sign::Plus) * std::conj(mp);
      pos.push_back(fp);
      neg.push_back(fn);
      const double mag = std::max(std::abs(fp), std::abs(fn));
      peak = std::max(peak, mag);
      quiet = mag < kTail * peak ? quiet + 1 : 0;
      t_max_ = t;
      tail_ratio_ = mag / peak;
      if (quiet >= settle) {
        done = true;
        break;
      }
    }
    if (done || span >= kLimit) break;
  }
  const int J = static_cast<int>(pos.size()) - 1;
  f_.resize(static_cast<std::size_t>(2 * J + 1));
  for (int j = 0; j <= J; ++j) {
    f_[static_cast<std::size_t>(J + j)] = pos[static_cast<std::size_t>(j)];
    f_[static_cast<std::size_t>(J - j)] = neg[static_cast<std::size_t>(j)];
  }

  if (!with_table) return;
  const std::size_t M = std::size_t{1} << kFftLog2;
  if (static_cast<std::size_t>(2 * J + 1) > M) throw RangeError("PsiTransform: integrand too wide for the FFT grid");
  u0_ = kU0;
  du_ = kTwoPi / (step * static_cast<double>(M));
  auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M));
  auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * M));
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(M), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  for (std::size_t i = 0; i < M; ++i) in[i][0] = in[i][1] = 0.0;
  for (int j = -J; j <= J; ++j) {
    const long double ph = -static_cast<long double>(j) * step * u0_;
    const cplx w = cplx(static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph))) * step;
    const cplx v = f_[static_cast<std::size_t>(J + j)] * w;
    const std::size_t slot = static_cast<std::size_t>((j % static_cast<long>(M) + static_cast<long>(M)) % static_cast<long>(M));
    in[slot][0] = v.real();
    in[slot][1] = v.imag();
  }
  fftw_execute(plan);
  const auto usable = static_cast<std::size_t>(kUsable * static_cast<double>(M));
  g_.resize(usable);
  for (std::size_t k = 0; k < usable; ++k) g_[k] = {out[k][0], out[k][1]};
  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);
}

PsiTransform::~PsiTransform() = default;

double PsiTransform::x_lo() const { return std::exp(u0_ + 4.0 * du_) / (kPi * kPi * kPi); }
double PsiTransform::x_hi() const { return std::exp(u0_ + (static_cast<double>(g_.size()) - 6.0) * du_) / (kPi * kPi * kPi); }

cplx PsiTransform::direct(double X, Sign sign) const {
  if (!(X > 0.0)) throw PreconditionError("PsiTransform: X must be positive");
  const double u = std::log(kPi * kPi * kPi * X);
  const int J = (nodes() - 1) / 2;
  CompensatedComplexSum s;
  for (int j = -J; j <= J; ++j) {
    const long double ph = -static_cast<long double>(j) * step_ * u;
    s.add(f_[static_cast<std::size_t>(J + j)] * cplx(static_cast<double>(std::cos(ph)), static_cast<double>(std::sin(ph))));
  }
  const cplx v = psi_prefactor(X, sigma_) * step_ * s.value();
  return sign == Sign::Plus ? v : std::conj(v);
}

cplx PsiTransform::operator()(double X, Sign sign) const {
  if (!(X > 0.0)) throw PreconditionError("PsiTransform: X must be positive");
  const double u = std::log(kPi * kPi * kPi * X);
  const double pos = (u - u0_) / du_;
  const double i0 = std::floor(pos);
  if (g_.empty() || i0 < 3.0 || i0 + 5.0 >= static_cast<double>(g_.size())) return direct(X, sign);
  const cplx* y = &g_[static_cast<std::size_t>(i0)];
  const double p = pos - i0;
  const cplx g(lagrange8_re(y, p, false), lagrange8_re(y, p, true));
  const cplx v = psi_prefactor(X, sigma_) * g;
  return sign == Sign::Plus ? v : std::conj(v);
}

cplx psi_transform(const specfun::BumpFunction& psi, cplx nu, double X, Sign sign, double sigma, double step) {
  const PsiTransform p(psi, nu, sigma, step, false);
  if (!p.converged()) throw std::runtime_error("psi_transform: contour integral did not converge");
  return p.direct(X, sign);
}

double contour_step(double sigma) { return std::min(0.1, sigma / 9.0); }

VoronoiKernel::VoronoiKernel(const specfun::BumpFunction& psi, cplx nu, double sigma)
    : table(psi, nu, sigma, contour_step(sigma)) {
  const PsiTransform lo(psi, nu, 0.6, contour_step(0.6), false);
  const PsiTransform hi(psi, nu, 1.2, contour_step(1.2), false);
  for (double X : {0.1, 1.0, 10.0, 100.0}) contour_shift = std::max(contour_shift, std::abs(lo.direct(X) - hi.direct(X)));
  const PsiTransform half(psi, nu, sigma, contour_step(sigma) / 2.0, false);
  step_halving = std::abs(half.direct(1.0) - table.direct(1.0));
}

namespace {

// D_1(s; a/d) = d^{-3s} sum_{r1,r2,r3 mod d} e(r1 r2 r3 a/d) prod zeta(s, r_i/d)
cplx twisted_d3_series(cplx s, i64 a, i64 d) {
  a = arith::mod(a, d);
  if (a == 0) {
    const cplx z = specfun::riemann_zeta(s);
    return z * z * z;
  }
  std::vector<cplx> z(static_cast<std::size_t>(d));
  for (i64 j = 1; j <= d; ++j) z[static_cast<std::size_t>(j - 1)] = specfun::hurwitz_zeta(s, static_cast<double>(j) / d);
  CompensatedComplexSum acc;
  for (i64 r1 = 1; r1 <= d; ++r1) {
    for (i64 r2 = 1; r2 <= d; ++r2) {
      const cplx z12 = z[static_cast<std::size_t>(r1 - 1)] * z[static_cast<std::size_t>(r2 - 1)];
      for (i64 r3 = 1; r3 <= d; ++r3) {
        const i64 k = arith::mod(r1 * r2 % d * r3 % d * a, d);
        acc.add(expi2pi(static_cast<double>(k) / d) * z12 * z[static_cast<std::size_t>(r3 - 1)]);
      }
    }
  }
  return std::exp(-3.0 * s * std::log(static_cast<double>(d))) * acc.value();
}

std::vector<i64> divisors_of(i64 n) {
  std::vector<i64> out;
  for (i64 e = 1; e <= n; ++e) {
    if (n % e == 0) out.push_back(e);
  }
  return out;
}

int mobius(i64 n) {
  int m = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    m = -m;
  }
  return n > 1 ? -m : m;
}

i64 d3_small(i64 n) {
  i64 out = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    i64 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out *= (e + 1) * (e + 2) / 2;
  }
  return n > 1 ? 3 * out : out;
}

void check_params(const VoronoiParams& p) {
  if (p.d < 1 || p.r < 1) throw PreconditionError("voronoi: d and r must be positive");
  if (std::gcd(p.b, p.d) != 1) throw PreconditionError("voronoi: gcd(b, d) must be 1");
  if (!(p.N > 0.0)) throw PreconditionError("voronoi: N must be positive");
  if (p.psi == nullptr || p.table == nullptr) throw PreconditionError("voronoi: psi and table are required");
  if (!p.table->voronoi_admissible()) throw PreconditionError("voronoi: table is not Voronoi admissible");
}

}  // namespace

MainTermValue main_term(i64 d, i64 b, double N, const specfun::BumpFunction& psi, i64 r, int nodes) {
  if (d < 1 || r < 1) throw PreconditionError("main_term: d and r must be positive");
  if (std::gcd(b, d) != 1) throw PreconditionError("main_term: gcd(b, d) must be 1");
  if (!(N > 0.0)) throw PreconditionError("main_term: N must be positive");
  const i64 bbar = d == 1 ? 0 : arith::mod_inverse(b, d);
  const double logN = std::log(N);
  auto integrand = [&](cplx s) {
    CompensatedComplexSum acc;
    for (i64 e : divisors_of(r)) {
      const int mu = mobius(e);
      if (mu == 0) continue;
      acc.add(static_cast<double>(mu * d3_small(r / e)) * std::exp(-s * std::log(static_cast<double>(e))) *
              twisted_d3_series(s, e * bbar, d));
    }
    return acc.value() * psi.mellin(s) * std::exp(s * logN);
  };
  MainTermValue out;
  out.value = specfun::circle_integral(integrand, 1.0, 0.5, nodes);
  out.refined = specfun::circle_integral(integrand, 1.0, 0.5, 2 * nodes);
  out.accurate = std::abs(out.value - out.refined) <= 1e-10;
  return out;
}

double main_term_laurent(double N, const specfun::BumpFunction& psi) {
  constexpr double g0 = 0.5772156649015329, g1 = -0.07281584548367672;
  const auto& gl = specfun::gauss_legendre(40);
  constexpr int kPanels = 64;
  double c[3] = {0.0, 0.0, 0.0};
  for (int p = 0; p < kPanels; ++p) {
    const double mid = 1.0 + (p + 0.5) / kPanels, half = 0.5 / kPanels;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double x = mid + half * gl.nodes[i];
      const double w = half * gl.weights[i] * psi(x);
      const double L = std::log(N * x);
      c[0] += w;
      c[1] += w * L;
      c[2] += w * L * L / 2.0;
    }
  }
  return N * (c[2] + 3.0 * g0 * c[1] + (3.0 * g0 * g0 - 3.0 * g1) * c[0]);
}

cplx voronoi_lhs(const VoronoiParams& p) {
  check_params(p);
  const i64 bbar = p.d == 1 ? 0 : arith::mod_inverse(p.b, p.d);
  const auto n_lo = static_cast<i64>(std::floor(p.N * p.psi->support_lo()));
  const auto n_hi = static_cast<i64>(std::ceil(p.N * p.psi->support_hi()));
  if (!p.table->covers(p.r, n_hi)) throw RangeError("voronoi_lhs: table does not cover the summation range");
  CompensatedComplexSum acc;
  for (i64 n = std::max<i64>(1, n_lo); n <= n_hi; ++n) {
    const double w = (*p.psi)(static_cast<double>(n) / p.N);
    if (w == 0.0) continue;
    acc.add((*p.table)(p.r, n) * w * expi2pi(static_cast<double>(arith::mod(n * bbar, p.d)) / p.d));
  }
  return acc.value();
}

VerificationReport verify_voronoi(const VoronoiParams& p, const VoronoiKernel* kernel) {
  check_params(p);
  std::unique_ptr<VoronoiKernel> own;
  if (kernel == nullptr || std::abs(kernel->table.sigma() - p.sigma) > 0.0) {
    own = std::make_unique<VoronoiKernel>(*p.psi, p.table->nu(), p.sigma);
    kernel = own.get();
  }
  const PsiTransform& psi_t = kernel->table;
  VerificationReport rep;
  rep.lhs = voronoi_lhs(p);
  const MainTermValue mt = main_term(p.d, p.b, p.N, *p.psi, p.r);
  rep.main_term = mt.value;
  if (!mt.accurate) rep.flags.push_back("main_term_contour_inaccurate");
  if (!psi_t.converged()) rep.flags.push_back("psi_nonconvergence");

  const double cutoff = 1e-12 * std::abs(rep.lhs);
  const double scale = p.N / (static_cast<double>(p.d) * p.d * p.d * p.r);  // X = n l^2 scale
  // Last X below which |Psi| may still exceed the cutoff; sizes the sieve.
  double x_star = 1.0;
  for (double u = std::log(psi_t.x_hi()); u > std::log(1e-3); u -= 0.01) {
    if (std::abs(psi_t(std::exp(u))) >= cutoff) {
      x_star = std::exp(u);
      break;
    }
  }
  constexpr i64 kDecayBy = 10000;
  constexpr int kWindow = 20;
  const i64 n_cap = std::max<i64>(kDecayBy, static_cast<i64>(std::ceil(1.25 * x_star / scale)) + 1000);
  const auto d3 = arith::ternary_divisor_table(n_cap);

  const i64 dr = p.d * p.r;
  const std::vector<i64> ls = divisors_of(dr);
  // S(rb, +-n; dr/l) depends on n mod dr/l only.
  std::vector<std::vector<double>> kl_plus, kl_minus;
  for (i64 l : ls) {
    const i64 c = dr / l;
    std::vector<double> sp(static_cast<std::size_t>(c)), sm(static_cast<std::size_t>(c));
    for (i64 k = 0; k < c; ++k) {
      sp[static_cast<std::size_t>(k)] = arith::kloosterman(p.r * p.b, k, c);
      sm[static_cast<std::size_t>(k)] = arith::kloosterman(p.r * p.b, -k, c);
    }
    kl_plus.push_back(std::move(sp));
    kl_minus.push_back(std::move(sm));
  }
  auto coeff = [&](i64 n, i64 l) {
    // A(n, l) = sum_{e | (n, l)} mu(e) d3(n/e) d3(l/e)
    const i64 g = std::gcd(n, l);
    if (g == 1) return static_cast<double>(d3[static_cast<std::size_t>(n)]) * static_cast<double>(d3_small(l));
    double a = 0.0;
    for (i64 e = 1; e <= g; ++e) {
      if (g % e) continue;
      const int mu = mobius(e);
      if (mu != 0) a += mu * static_cast<double>(d3[static_cast<std::size_t>(n / e)]) * static_cast<double>(d3_small(l / e));
    }
    return a;
  };

  CompensatedComplexSum dual;
  double prev = 0.0;
  int run = 0;
  i64 n_stop = 0, decay_from = 0;
  for (i64 n = 1; n <= n_cap; ++n) {
    for (std::size_t li = 0; li < ls.size(); ++li) {
      const i64 l = ls[li];
      const double a = coeff(n, l);
      if (a == 0.0) continue;
      const i64 c = dr / l;
      const double sp = kl_plus[li][static_cast<std::size_t>(n % c)];
      const double sm = kl_minus[li][static_cast<std::size_t>(n % c)];
      if (sp == 0.0 && sm == 0.0) continue;
      const cplx v = psi_t(static_cast<double>(n) * static_cast<double>(l * l) * scale);
      dual.add(a / (static_cast<double>(n) * l) * (sp * v + sm * std::conj(v)));
    }
    // l = 1 carries the smallest X and so the slowest tail.
    const double mag = std::abs(psi_t(static_cast<double>(n) * scale));
    run = (n > 1 && mag < prev) ? run + 1 : 0;
    prev = mag;
    if (run >= kWindow && decay_from == 0) decay_from = n - kWindow;
    if (run >= kWindow && mag < cutoff) {
      n_stop = n;
      break;
    }
  }
  if (decay_from == 0 || decay_from > kDecayBy) rep.flags.push_back("dual_truncation_failure");
  if (n_stop == 0) rep.flags.push_back("dual_cutoff_not_reached");
  const double constant = std::pow(kPi, 1.5) / 2.0 * static_cast<double>(p.d);
  rep.rhs = constant * dual.value();

  const cplx fitted = (rep.lhs - rep.main_term) / rep.rhs;
  rep.diagnostics["dual_cutoff_n"] = static_cast<double>(n_stop);
  rep.diagnostics["dual_decay_from_n"] = static_cast<double>(decay_from);
  rep.diagnostics["dual_sieve_n"] = static_cast<double>(n_cap);
  rep.diagnostics["contour_t_max"] = psi_t.t_max();
  rep.diagnostics["contour_nodes"] = psi_t.nodes();
  rep.diagnostics["contour_tail_ratio"] = psi_t.tail_ratio();
  rep.diagnostics["contour_shift_dev"] = kernel->contour_shift;
  rep.diagnostics["step_halving_dev"] = kernel->step_halving;
  rep.diagnostics["main_term_refine_dev"] = std::abs(mt.value - mt.refined);
  rep.diagnostics["fitted_constant_re"] = fitted.real();
  rep.diagnostics["fitted_constant_im"] = fitted.imag();
  rep.diagnostics["imag_balance"] = std::abs((rep.rhs + rep.main_term - rep.lhs).imag());
  if (kernel->contour_shift >= 1e-9) rep.flags.push_back("contour_shift_mismatch");
  rep.finish(p.tol);
  return rep;
}

}  // namespace gl3gl2::voronoi
