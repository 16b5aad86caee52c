#include "gl3gl2/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>

#include "gl3gl2/errors.hpp"

namespace gl3gl2::specfun {

namespace {

using cld = std::complex<long double>;
using f128 = __float128;

// Lanczos coefficients, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.).
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosSeries0 = 0.999999999999997092;
constexpr double kSqrtTwoPi = 2.5066282746310005;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

cplx log_gamma_lanczos(cplx s) {
  const cplx tmp0 = s + kLanczosG;
  const cplx tmp = (s + 0.5) * std::log(tmp0) - tmp0;
  cplx ser = kLanczosSeries0;
  cplx y = s;
  for (double c : kLanczos) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(kSqrtTwoPi * ser) - std::log(s);
}

// B_{2j} / (2j)! for j = 1..20.
constexpr std::array<long double, 20> kBernoulliOverFactorial = {
    8.3333333333333333333333333333333e-2L,
    -1.3888888888888888888888888888889e-3L,
    3.3068783068783068783068783068783e-5L,
    -8.2671957671957671957671957671958e-7L,
    2.0876756987868098979210090321201e-8L,
    -5.2841901386874931848476822021796e-10L,
    1.3382536530684678832826980975129e-11L,
    -3.3896802963225828668301953912494e-13L,
    8.5860620562778445641359054504256e-15L,
    -2.1748686985580618730415164238659e-16L,
    5.5090028283602295152026526089023e-18L,
    -1.3954464685812523340707686264064e-19L,
    3.5347070396294674716932299778038e-21L,
    -8.9535174270375468504026113181127e-23L,
    2.2679524523376830603109507388682e-24L,
    -5.744790668872202445263881987607e-26L,
    1.4551724756148649018662648672713e-27L,
    -3.6859949406653101781817824799087e-29L,
    9.3367342570950446720325551527856e-31L,
    -2.3650224157006299345596351963698e-32L};

long double factorial_ld(int n) {
  long double r = 1.0L;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

template <typename T>
T bessel_series_impl(int order, T x) {
  const T half = x / 2;
  const T q = half * half;
  T term = 1;
  for (int i = 1; i <= order; ++i) term = term * half / i;
  T sum = term;
  for (int k = 1; k < 1000; ++k) {
    term = -term * q / (static_cast<T>(k) * static_cast<T>(k + order));
    sum += term;
    const T at = term < 0 ? -term : term;
    const T as = sum < 0 ? -sum : sum;
    if (static_cast<T>(k) > half && at <= as * static_cast<T>(1e-30)) break;
    if (at == 0) break;
  }
  return sum;
}

constexpr int kGaussPerPanel = 20;

}  // namespace

cplx log_gamma(cplx s) {
  const double re = s.real();
  if (s.imag() == 0.0 && re <= 0.0 && re == std::floor(re)) {
    throw PoleError("log_gamma: pole at nonpositive integer");
  }
  if (re >= 0.5) return log_gamma_lanczos(s);
  // Recur upward with principal logs of each shift; this reproduces the
  // branch that is continuous along vertical lines.
  const int n = static_cast<int>(std::ceil(0.5 - re));
  cplx shift = 0.0;
  for (int k = 0; k < n; ++k) shift += std::log(s + static_cast<double>(k));
  return log_gamma_lanczos(s + static_cast<double>(n)) - shift;
}

double bessel_switch_point(int order) { return std::max(25.0, 1.5 * order + 20.0); }

namespace {

void check_bessel_args(int order, double x) {
  if (order < 0) throw PreconditionError("bessel_j: order must be nonnegative");
  if (order > kMaxBesselOrder) throw RangeError("bessel_j: order above supported maximum");
  if (x < 0) throw PreconditionError("bessel_j: x must be nonnegative");
}

}  // namespace

double bessel_j_series(int order, double x) {
  check_bessel_args(order, x);
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x <= 8.0) return static_cast<double>(bessel_series_impl<long double>(order, x));
  return static_cast<double>(bessel_series_impl<f128>(order, static_cast<f128>(x)));
}

double bessel_j_hankel(int order, double x) {
  check_bessel_args(order, x);
  if (x <= 0) throw PreconditionError("bessel_j: Hankel expansion needs x > 0");
  const long double mu = 4.0L * order * order;
  const long double xl = x;
  long double p = 0, q = 0;
  long double term = 1;
  long double last = std::numeric_limits<long double>::infinity();
  for (int k = 0; k < 400; ++k) {
    // term = a_k(order) / x^k
    const long double at = std::fabs(term);
    // Past the turning point the terms shrink until k ~ 2x, then diverge.
    const long double odd_prev = 2.0L * k - 1.0L;
    if (at > last && odd_prev * odd_prev > mu) break;
    last = at;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      default: q -= term; break;
    }
    if (at < 1e-24L) break;
    const long double odd = 2.0L * k + 1.0L;
    term *= (mu - odd * odd) / (8.0L * (k + 1) * xl);
  }
  // chi = x - (2 order + 1) pi / 4, with the phase offset reduced exactly.
  const int r = (2 * order + 1) % 8;
  const long double phi = r * std::numbers::pi_v<long double> / 4.0L;
  const long double cx = std::cos(xl), sx = std::sin(xl);
  const long double cphi = std::cos(phi), sphi = std::sin(phi);
  const long double cchi = cx * cphi + sx * sphi;
  const long double schi = sx * cphi - cx * sphi;
  const long double amp = std::sqrt(2.0L / (std::numbers::pi_v<long double> * xl));
  return static_cast<double>(amp * (p * cchi - q * schi));
}

double bessel_j(int order, double x) {
  check_bessel_args(order, x);
  if (x < bessel_switch_point(order)) return bessel_j_series(order, x);
  return bessel_j_hankel(order, x);
}

cplx hurwitz_zeta(cplx s, double a) {
  if (!(a > 0.0)) throw PreconditionError("hurwitz_zeta: a must be positive");
  if (s == cplx(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1");
  const cld sl(s.real(), s.imag());
  const int n_direct = 30 + static_cast<int>(std::ceil(std::abs(s)));
  cld head = 0;
  for (int k = n_direct - 1; k >= 0; --k) head += std::pow(static_cast<long double>(k) + a, -sl);
  const long double base = static_cast<long double>(n_direct) + a;
  const long double lb = std::log(base);
  const cld pw = std::exp(-sl * lb);  // base^{-s}
  cld tail = pw * base / (sl - 1.0L) + pw / 2.0L;
  // sum_j B_{2j}/(2j)! * s (s+1) ... (s+2j-2) * base^{-s-2j+1}
  cld rising = sl;
  cld bpow = pw / base;
  const long double inv_b2 = 1.0L / (base * base);
  for (int j = 0; j < static_cast<int>(kBernoulliOverFactorial.size()); ++j) {
    const cld term = kBernoulliOverFactorial[static_cast<std::size_t>(j)] * rising * bpow;
    tail += term;
    if (std::abs(term) < 1e-22L * std::abs(head + tail)) break;
    rising *= (sl + static_cast<long double>(2 * j + 1)) * (sl + static_cast<long double>(2 * j + 2));
    bpow *= inv_b2;
  }
  const cld out = head + tail;
  return {static_cast<double>(out.real()), static_cast<double>(out.imag())};
}

cplx riemann_zeta(cplx s) { return hurwitz_zeta(s, 1.0); }

namespace {

struct RuleLd {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

// Newton iteration on the three-term recurrence, in extended precision.
RuleLd compute_rule(int n) {
  RuleLd r;
  r.nodes.resize(static_cast<std::size_t>(n));
  r.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
    long double pp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p1 = 1, p2 = 0;
      for (int j = 1; j <= n; ++j) {
        const long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0L);
      const long double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-19L) break;
    }
    const long double w = 2.0L / ((1.0L - z * z) * pp * pp);
    r.nodes[static_cast<std::size_t>(i)] = -z;
    r.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    r.weights[static_cast<std::size_t>(i)] = w;
    r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return r;
}

const RuleLd& bump_rule() {
  static const RuleLd rule = compute_rule(kGaussPerPanel);
  return rule;
}

long double bump_ld(long double x) {
  if (x <= 1.0L || x >= 2.0L) return 0.0L;
  return std::exp(-1.0L / (x - 1.0L) - 1.0L / (2.0L - x));
}

// Nodes log(x_i) and weights w_i psi(x_i) x_i^(a-1) of the composite rule.
void bump_nodes(int panels, long double a, std::vector<long double>& amp, std::vector<long double>& logx) {
  const auto& gl = bump_rule();
  const long double width = 1.0L / panels;
  amp.clear();
  logx.clear();
  for (int p = 0; p < panels; ++p) {
    const long double mid = 1.0L + (p + 0.5L) * width;
    for (int i = 0; i < kGaussPerPanel; ++i) {
      const long double x = mid + 0.5L * width * gl.nodes[static_cast<std::size_t>(i)];
      const long double w = 0.5L * width * gl.weights[static_cast<std::size_t>(i)] * bump_ld(x);
      if (w == 0.0L) continue;
      const long double lx = std::log(x);
      amp.push_back(w * std::exp((a - 1.0L) * lx));
      logx.push_back(lx);
    }
  }
}

// Same rule with psi replaced by theta^k psi, theta = x d/dx.
void bump_nodes_theta(const BumpFunction& psi, int panels, long double a, int k, std::vector<long double>& amp,
                      std::vector<long double>& logx) {
  // Stirling numbers of the second kind, theta^k = sum_j S(k, j) x^j D^j.
  std::vector<std::vector<long double>> st(static_cast<std::size_t>(k + 1), std::vector<long double>(static_cast<std::size_t>(k + 1), 0.0L));
  st[0][0] = 1.0L;
  for (int n = 1; n <= k; ++n)
    for (int j = 1; j <= n; ++j) st[n][j] = j * st[n - 1][j] + st[n - 1][j - 1];
  const auto& gl = bump_rule();
  const long double width = 1.0L / panels;
  amp.clear();
  logx.clear();
  for (int p = 0; p < panels; ++p) {
    const long double mid = 1.0L + (p + 0.5L) * width;
    for (int i = 0; i < kGaussPerPanel; ++i) {
      const long double x = mid + 0.5L * width * gl.nodes[static_cast<std::size_t>(i)];
      long double th = 0.0L, xp = 1.0L;
      for (int j = 1; j <= k; ++j) {
        xp *= x;
        th += st[k][j] * xp * psi.derivative(static_cast<double>(x), j);
      }
      const long double w = 0.5L * width * gl.weights[static_cast<std::size_t>(i)] * th;
      if (w == 0.0L) continue;
      const long double lx = std::log(x);
      amp.push_back(w * std::exp((a - 1.0L) * lx));
      logx.push_back(lx);
    }
  }
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw PreconditionError("gauss_legendre: need at least one node");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> rules;
  std::lock_guard lock(mu);
  auto& slot = rules[n];
  if (slot) return *slot;
  const RuleLd r = compute_rule(n);
  auto rule = std::make_unique<GaussLegendreRule>();
  rule->nodes.assign(r.nodes.begin(), r.nodes.end());
  rule->weights.assign(r.weights.begin(), r.weights.end());
  slot = std::move(rule);
  return *slot;
}

bool ContourSpec::valid() const { return node_count >= 16 && t_max > 0.0; }

cplx integrate_vertical(const std::function<cplx(cplx)>& f, double sigma, double step, double t_max) {
  if (!(step > 0.0) || !(t_max > 0.0)) throw PreconditionError("integrate_vertical: step and t_max must be positive");
  const long j_max = static_cast<long>(std::floor(t_max / step));
  CompensatedComplexSum acc;
  for (long j = -j_max; j <= j_max; ++j) acc.add(f({sigma, static_cast<double>(j) * step}));
  return acc.value() * (step / kTwoPi);
}

VerticalIntegral integrate_vertical_adaptive(const std::function<cplx(cplx)>& f, double sigma, double step,
                                             double rel_tail, double t_limit, double settle) {
  if (!(step > 0.0)) throw PreconditionError("integrate_vertical_adaptive: step must be positive");
  VerticalIntegral out;
  CompensatedComplexSum acc;
  const cplx f0 = f({sigma, 0.0});
  acc.add(f0);
  double peak = std::abs(f0);
  double recent = 0.0;  // max |f| since the window start
  long window_start = 1;
  const long settle_nodes = std::max(1L, static_cast<long>(std::ceil(settle / step)));
  long j = 1;
  for (;; ++j) {
    const double t = static_cast<double>(j) * step;
    if (t > t_limit) {
      --j;
      break;
    }
    const cplx fp = f({sigma, t});
    const cplx fm = f({sigma, -t});
    acc.add(fp);
    acc.add(fm);
    const double m = std::max(std::abs(fp), std::abs(fm));
    peak = std::max(peak, m);
    recent = std::max(recent, m);
    if (j - window_start + 1 >= settle_nodes) {
      if (recent <= rel_tail * peak) {
        out.converged = true;
        break;
      }
      window_start = j + 1;
      recent = 0.0;
    }
  }
  out.value = acc.value() * (step / kTwoPi);
  out.t_max = static_cast<double>(j) * step;
  out.nodes = static_cast<int>(2 * j + 1);
  return out;
}

cplx circle_integral(const std::function<cplx(cplx)>& f, cplx center, double radius, int nodes) {
  if (nodes < 4 || !(radius > 0.0)) throw PreconditionError("circle_integral: bad contour");
  CompensatedComplexSum acc;
  for (int j = 0; j < nodes; ++j) {
    const cplx w = expi2pi(static_cast<double>(j) / nodes);
    acc.add(f(center + radius * w) * (radius * w));
  }
  return acc.value() / static_cast<double>(nodes);
}

double BumpFunction::value(double x) const {
  if (x <= 1.0 || x >= 2.0) return 0.0;
  return std::exp(-1.0 / (x - 1.0) - 1.0 / (2.0 - x));
}

double BumpFunction::derivative(double x, int order) const {
  if (order < 0 || order > kMaxDerivative) throw PreconditionError("BumpFunction::derivative: order out of range");
  if (x <= 1.0 || x >= 2.0) return 0.0;
  if (order == 0) return value(x);
  // Taylor coefficients of phi(x + h) = -1/(u + h) - 1/(v - h), u = x - 1, v = 2 - x.
  const long double u = x - 1.0L, v = 2.0L - x;
  std::array<long double, kMaxDerivative + 1> phi{}, e{};
  long double pu = 1.0L / u, pv = 1.0L / v;
  for (int j = 0; j <= order; ++j) {
    phi[static_cast<std::size_t>(j)] = -((j % 2 == 0) ? pu : -pu) - pv;
    pu /= u;
    pv /= v;
  }
  e[0] = std::exp(phi[0]);
  for (int n = 1; n <= order; ++n) {
    long double acc = 0;
    for (int j = 1; j <= n; ++j) acc += j * phi[static_cast<std::size_t>(j)] * e[static_cast<std::size_t>(n - j)];
    e[static_cast<std::size_t>(n)] = acc / n;
  }
  return static_cast<double>(e[static_cast<std::size_t>(order)] * factorial_ld(order));
}

int BumpFunction::default_panels(double abs_imag) { return 16 + static_cast<int>(std::ceil(abs_imag / 16.0)); }

cplx BumpFunction::mellin_with_panels(cplx s, int panels) const {
  if (panels < 1) throw PreconditionError("mellin_with_panels: need at least one panel");
  std::vector<long double> amp, logx;
  bump_nodes(panels, s.real(), amp, logx);
  const long double si = s.imag();
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < amp.size(); ++i) {
    re += amp[i] * std::cos(si * logx[i]);
    im += amp[i] * std::sin(si * logx[i]);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

cplx BumpFunction::mellin(cplx s) const {
  const std::pair<double, double> key{s.real(), s.imag()};
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const cplx v = mellin_with_panels(s, default_panels(std::abs(s.imag())));
  std::unique_lock lock(cache_mutex_);
  return cache_.emplace(key, v).first->second;
}

std::vector<cplx> BumpFunction::mellin_grid(double a, double step, int count, int ibp) const {
  if (count < 1 || !(step > 0.0)) throw PreconditionError("mellin_grid: bad grid");
  if (ibp < 0 || ibp > kMaxDerivative) throw PreconditionError("mellin_grid: ibp order out of range");
  std::vector<long double> amp, logx;
  if (ibp == 0) {
    bump_nodes(default_panels(step * (count - 1)), a, amp, logx);
  } else {
    bump_nodes_theta(*this, default_panels(step * (count - 1)), a, ibp, amp, logx);
  }
  // Per-node phasors exp(-i t_j log x) advanced by rotation, re-anchored
  // every kAnchor steps from a direct evaluation.
  constexpr int kAnchor = 256;
  const std::size_t nodes = amp.size();
  std::vector<cld> cur(nodes), rot(nodes);
  const long double stepl = step;
  for (std::size_t i = 0; i < nodes; ++i) {
    const long double ph = stepl * logx[i];
    rot[i] = {std::cos(ph), -std::sin(ph)};
  }
  std::vector<cplx> out(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    if (j % kAnchor == 0) {
      const long double t = stepl * j;
      for (std::size_t i = 0; i < nodes; ++i) {
        const long double ph = t * logx[i];
        cur[i] = {amp[i] * std::cos(ph), -amp[i] * std::sin(ph)};
      }
    }
    long double re = 0, im = 0;
    for (std::size_t i = 0; i < nodes; ++i) {
      re += cur[i].real();
      im += cur[i].imag();
      const long double cr = cur[i].real(), ci = cur[i].imag();
      cur[i] = {cr * rot[i].real() - ci * rot[i].imag(), cr * rot[i].imag() + ci * rot[i].real()};
    }
    cld v(re, im);
    if (ibp > 0) v *= std::pow(cld(-1.0L, 0.0L) / cld(a, -stepl * j), ibp);
    out[static_cast<std::size_t>(j)] = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  return out;
}

}  // namespace gl3gl2::specfun
