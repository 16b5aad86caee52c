#include "gl3gl2/gl2.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <regex>
#include <sstream>

#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"
#include "gl3gl2/gamma_factor.hpp"
#include "gl3gl2/specfun.hpp"

namespace gl3gl2::gl2 {

namespace {

using Rational = boost::multiprecision::cpp_rational;
using i64 = std::int64_t;

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

double to_double(const BigInt& x) { return x.convert_to<double>(); }

// sigma_r(n) for n <= N
std::vector<BigInt> divisor_power_sums(i64 n_max, unsigned r) {
  std::vector<BigInt> s(static_cast<std::size_t>(n_max + 1), 0);
  for (i64 d = 1; d <= n_max; ++d) {
    const BigInt dr = boost::multiprecision::pow(BigInt(d), r);
    for (i64 m = d; m <= n_max; m += d) s[static_cast<std::size_t>(m)] += dr;
  }
  return s;
}

// Eigenforms inside the cusp space spanned by rows (each row a Series with
// row i = q^i + O(q^dim)); only dim <= 2 is handled.
std::vector<Series> hecke_eigenbasis(const std::vector<Series>& cusp, int k) {
  if (cusp.size() == 1) return cusp;
  if (cusp.size() > 2) throw UnsupportedError("level1_basis: cusp space of dimension > 2 not supported");
  const i64 n = static_cast<i64>(cusp[0].size()) - 1;
  if (n < 4) throw RangeError("level1_basis: need coefficients to q^4 for T_2");
  const BigInt two_k1 = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(k - 1));
  // T_2 g (j) = g(2j) + 2^{k-1} g(j/2); matrix rows in the echelon basis.
  Rational m[2][2];
  for (int i = 0; i < 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      BigInt v = cusp[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * j)];
      if (j % 2 == 0) v += two_k1 * cusp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j / 2)];
      m[i][j - 1] = Rational(v);
    }
  }
  const Rational tr = m[0][0] + m[1][1];
  const Rational det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const Rational disc = tr * tr - 4 * det;
  const BigInt dn = boost::multiprecision::numerator(disc), dd = boost::multiprecision::denominator(disc);
  const BigInt sn = boost::multiprecision::sqrt(dn), sd = boost::multiprecision::sqrt(dd);
  if (disc < 0 || sn * sn != dn || sd * sd != dd) {
    throw UnsupportedError("level1_basis: T_2 characteristic polynomial is irreducible over Q");
  }
  const Rational root = Rational(sn) / Rational(sd);
  std::vector<Series> out;
  for (const Rational& lam : {Rational((tr - root) / 2), Rational((tr + root) / 2)}) {
    // Left eigenvector (x, y) of m: x m00 + y m10 = lam x.
    Rational x = 1, y = 0;
    if (m[1][0] != 0) {
      y = (lam - m[0][0]) / m[1][0];
    } else if (m[0][0] != lam) {
      x = 0;
      y = 1;
    }
    Series f(cusp[0].size());
    const Rational lead = x * Rational(cusp[0][1]) + y * Rational(cusp[1][1]);
    if (lead == 0) throw std::logic_error("level1_basis: eigenvector with vanishing c(1)");
    for (std::size_t t = 0; t < f.size(); ++t) {
      const Rational v = (x * Rational(cusp[0][t]) + y * Rational(cusp[1][t])) / lead;
      if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("level1_basis: non-integral eigenform");
      f[t] = boost::multiprecision::numerator(v);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

const BigInt& FormGL2::c(std::int64_t n) const {
  if (n < 1 || n > size()) throw RangeError("FormGL2::c: index outside stored range");
  return raw[static_cast<std::size_t>(n)];
}

double FormGL2::a(std::int64_t n) const {
  if (n < 1 || n > size()) throw RangeError("FormGL2::a: index outside stored range");
  return normalized[static_cast<std::size_t>(n)];
}

double FormGL2::lambda(std::int64_t n) const {
  if (n < 1) throw PreconditionError("FormGL2::lambda: n must be positive");
  if (n <= size()) return a(n);
  const auto fac = arith::factor(n);
  double out = 1.0;
  for (const auto& pp : fac.factors) {
    if (pp.prime > size()) throw RangeError("FormGL2::lambda: prime factor beyond stored coefficients");
    const double lp = a(pp.prime);
    if (pp.prime == level) {
      out *= std::pow(lp, pp.exponent);
      continue;
    }
    double prev = 1.0, cur = lp;
    for (int e = 1; e < pp.exponent; ++e) {
      const double next = lp * cur - prev;
      prev = cur;
      cur = next;
    }
    out *= cur;
  }
  return out;
}

FormGL2 make_form(int k, std::int64_t q, Series raw, std::string source) {
  if (k < 2 || k % 2 != 0) throw PreconditionError("make_form: weight must be even and >= 2");
  if (q != 1 && !is_prime(q)) throw PreconditionError("make_form: level must be 1 or prime");
  if (raw.size() < 2 || raw[1] != 1) throw PreconditionError("make_form: c(1) must equal 1");
  FormGL2 f;
  f.weight = k;
  f.level = q;
  f.source = std::move(source);
  f.raw = std::move(raw);
  f.raw[0] = 0;
  f.normalized.assign(f.raw.size(), 0.0);
  const double half = (k - 1) / 2.0;
  for (std::size_t n = 1; n < f.raw.size(); ++n) {
    f.normalized[n] = to_double(f.raw[n]) / std::pow(static_cast<double>(n), half);
  }
  if (q == 1 || f.size() >= q) f.eps = root_number(f);
  try {
    f.harmonic_weight = harmonic_weight(f);
  } catch (const RangeError&) {
    // Not enough primes stored for the symmetric-square sum.
  }
  return f;
}

int EtaQuotientSpec::leading_exponent() const {
  long s = 0;
  for (const auto& [m, r] : factors) s += static_cast<long>(m) * r;
  if (s <= 0 || s % 24 != 0) throw PreconditionError("EtaQuotientSpec: leading exponent is not a positive integer");
  return static_cast<int>(s / 24);
}

EtaQuotientSpec eta_level11() { return {{{1, 2}, {11, 2}}, 2, 11}; }
EtaQuotientSpec eta_level5_weight4() { return {{{1, 4}, {5, 4}}, 4, 5}; }

Series euler_product(std::int64_t n_max) {
  Series p(static_cast<std::size_t>(n_max + 1), 0);
  p[0] = 1;
  // exponents j(3j -+ 1)/2 with sign (-1)^j
  for (i64 j = 1;; ++j) {
    const i64 e1 = j * (3 * j - 1) / 2, e2 = j * (3 * j + 1) / 2;
    if (e1 > n_max) break;
    const int sign = j % 2 == 0 ? 1 : -1;
    p[static_cast<std::size_t>(e1)] += sign;
    if (e2 <= n_max) p[static_cast<std::size_t>(e2)] += sign;
  }
  return p;
}

Series series_power(const Series& f, int r) {
  if (f.empty() || f[0] != 1) throw PreconditionError("series_power: constant term must be 1");
  const std::size_t n = f.size();
  Series g(n, 0);
  g[0] = 1;
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k < n; ++k) {
    if (f[k] != 0) support.push_back(k);
  }
  for (std::size_t m = 1; m < n; ++m) {
    BigInt acc = 0;
    for (std::size_t k : support) {
      if (k > m) break;
      acc += BigInt((static_cast<i64>(r) + 1) * static_cast<i64>(k) - static_cast<i64>(m)) * f[k] * g[m - k];
    }
    g[m] = acc / static_cast<i64>(m);
  }
  return g;
}

Series series_multiply(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series out(n, 0);
  std::vector<std::size_t> sa;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != 0) sa.push_back(i);
  }
  for (std::size_t i : sa) {
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Series series_stretch(const Series& f, int m, std::int64_t n_max) {
  Series out(static_cast<std::size_t>(n_max + 1), 0);
  for (std::size_t i = 0; i < f.size() && static_cast<i64>(i) * m <= n_max; ++i) {
    out[i * static_cast<std::size_t>(m)] = f[i];
  }
  return out;
}

FormGL2 eta_quotient_coeffs(const EtaQuotientSpec& spec, std::int64_t n_max) {
  if (n_max < 1) throw PreconditionError("eta_quotient_coeffs: N must be positive");
  if (spec.factors.empty()) throw PreconditionError("eta_quotient_coeffs: empty spec");
  int twice_weight = 0;
  for (const auto& [m, r] : spec.factors) {
    if (m < 1) throw PreconditionError("eta_quotient_coeffs: scale must be positive");
    twice_weight += r;
  }
  if (twice_weight != 2 * spec.weight) throw PreconditionError("eta_quotient_coeffs: weight does not match exponents");
  const int lead = spec.leading_exponent();
  const i64 len = n_max - lead;  // series needed to q^len
  Series prod(static_cast<std::size_t>(std::max<i64>(len, 0) + 1), 0);
  prod[0] = 1;
  const Series base = euler_product(std::max<i64>(len, 0));
  for (const auto& [m, r] : spec.factors) {
    const Series scaled = series_stretch(base, m, std::max<i64>(len, 0));
    prod = series_multiply(prod, series_power(scaled, r));
  }
  Series raw(static_cast<std::size_t>(n_max + 1), 0);
  for (i64 n = lead; n <= n_max; ++n) raw[static_cast<std::size_t>(n)] = prod[static_cast<std::size_t>(n - lead)];
  return make_form(spec.weight, spec.level, std::move(raw), "eta");
}

Series eisenstein_e4(std::int64_t n_max) {
  auto s = divisor_power_sums(n_max, 3);
  s[0] = 1;
  for (std::size_t i = 1; i < s.size(); ++i) s[i] *= 240;
  return s;
}

Series eisenstein_e6(std::int64_t n_max) {
  auto s = divisor_power_sums(n_max, 5);
  s[0] = 1;
  for (std::size_t i = 1; i < s.size(); ++i) s[i] *= -504;
  return s;
}

std::vector<FormGL2> level1_basis(int k, std::int64_t n_max) {
  if (k < 4 || k % 2 != 0) throw PreconditionError("level1_basis: weight must be even and >= 4");
  if (n_max < 2) throw PreconditionError("level1_basis: N must be >= 2");
  std::vector<std::pair<int, int>> monos;  // (a, b): E4^a E6^b
  for (int b = 0; 6 * b <= k; ++b) {
    if ((k - 6 * b) % 4 == 0) monos.emplace_back((k - 6 * b) / 4, b);
  }
  const int dim = static_cast<int>(monos.size());
  if (dim <= 1) return {};
  if (dim - 1 > 2) throw UnsupportedError("level1_basis: cusp space of dimension > 2 not supported");
  const i64 len = std::max<i64>(n_max, 2 * dim);
  const Series e4 = eisenstein_e4(len), e6 = eisenstein_e6(len);
  std::vector<std::vector<Rational>> rows;
  for (const auto& [a, b] : monos) {
    Series m(static_cast<std::size_t>(len + 1), 0);
    m[0] = 1;
    for (int i = 0; i < a; ++i) m = series_multiply(m, e4);
    for (int i = 0; i < b; ++i) m = series_multiply(m, e6);
    rows.emplace_back(m.begin(), m.end());
  }
  // Reduce columns 0..dim-1 to the identity, pivoting on the first nonzero entry.
  for (int col = 0; col < dim; ++col) {
    int piv = -1;
    for (int r = col; r < dim; ++r) {
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw std::logic_error("level1_basis: singular monomial matrix");
    std::swap(rows[static_cast<std::size_t>(col)], rows[static_cast<std::size_t>(piv)]);
    auto& pr = rows[static_cast<std::size_t>(col)];
    const Rational pv = pr[static_cast<std::size_t>(col)];
    for (auto& v : pr) v /= pv;
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      auto& rr = rows[static_cast<std::size_t>(r)];
      const Rational fct = rr[static_cast<std::size_t>(col)];
      if (fct == 0) continue;
      for (std::size_t t = 0; t < rr.size(); ++t) rr[t] -= fct * pr[t];
    }
  }
  std::vector<Series> cusp;
  for (int r = 1; r < dim; ++r) {
    Series s(static_cast<std::size_t>(len + 1));
    for (std::size_t t = 0; t < s.size(); ++t) {
      const Rational& v = rows[static_cast<std::size_t>(r)][t];
      if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("level1_basis: non-integral Miller basis");
      s[t] = boost::multiprecision::numerator(v);
    }
    cusp.push_back(std::move(s));
  }
  std::vector<FormGL2> out;
  for (auto& s : hecke_eigenbasis(cusp, k)) {
    s.resize(static_cast<std::size_t>(n_max + 1));
    out.push_back(make_form(k, 1, std::move(s), "miller"));
  }
  return out;
}

WeierstrassCurve curve_11a() { return {0, -1, 1, -10, -20, 11}; }
WeierstrassCurve curve_37a() { return {0, 0, 1, -1, 0, 37}; }

std::int64_t affine_point_count(const WeierstrassCurve& e, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("affine_point_count: p must be prime");
  auto md = [p](i64 v) { return arith::mod(v, p); };
  i64 count = 0;
  if (p == 2) {
    for (i64 x = 0; x < 2; ++x) {
      for (i64 y = 0; y < 2; ++y) {
        const i64 lhs = y * y + e.a1 * x * y + e.a3 * y;
        const i64 rhs = x * x * x + e.a2 * x * x + e.a4 * x + e.a6;
        if (md(lhs - rhs) == 0) ++count;
      }
    }
    return count;
  }
  // Complete the square: (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2.
  std::vector<int> sq_count(static_cast<std::size_t>(p), 0);
  for (i64 y = 0; y < p; ++y) ++sq_count[static_cast<std::size_t>(y * y % p)];
  for (i64 x = 0; x < p; ++x) {
    const i64 rhs = md(md(md(md(x * x) * x) + md(e.a2 * md(x * x)) + md(e.a4 * x)) + md(e.a6));
    const i64 lin = md(e.a1 * x + e.a3);
    const i64 disc = md(4 * rhs + lin * lin);
    count += sq_count[static_cast<std::size_t>(disc)];
  }
  return count;
}

FormGL2 point_count_form(const WeierstrassCurve& e, std::int64_t n_max) {
  if (n_max < 1) throw PreconditionError("point_count_form: N must be positive");
  const auto tables = arith::multiplicative_tables(std::max<i64>(n_max, 2));
  Series c(static_cast<std::size_t>(n_max + 1), 0);
  c[1] = 1;
  for (i64 n = 2; n <= n_max; ++n) {
    const i64 p = tables.spf[static_cast<std::size_t>(n)];
    i64 rest = n, pe = 1;
    int ex = 0;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
      ++ex;
    }
    if (rest > 1) {
      c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(rest)] * c[static_cast<std::size_t>(pe)];
      continue;
    }
    if (ex == 1) {
      c[static_cast<std::size_t>(n)] = p - affine_point_count(e, p);
    } else if (p == e.conductor) {
      c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(p)] * c[static_cast<std::size_t>(n / p)];
    } else {
      c[static_cast<std::size_t>(n)] =
          c[static_cast<std::size_t>(p)] * c[static_cast<std::size_t>(n / p)] - p * c[static_cast<std::size_t>(n / p / p)];
    }
  }
  return make_form(2, e.conductor, std::move(c), "pointcount");
}

void write_fixture(std::ostream& os, const FormGL2& f) {
  os << "# form k=" << f.weight << " q=" << f.level << " source=" << f.source << '\n';
  for (i64 n = 1; n <= f.size(); ++n) os << n << ' ' << f.raw[static_cast<std::size_t>(n)] << '\n';
}

FormGL2 read_fixture(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw PreconditionError("fixture: empty input");
  static const std::regex head_re(R"(^#\s*form\s+k=(\d+)\s+q=(\d+)\s+source=(eta|pointcount|miller)\s*$)");
  std::smatch m;
  if (!std::regex_match(header, m, head_re)) throw PreconditionError("fixture: malformed header: " + header);
  const int k = std::stoi(m[1]);
  const i64 q = std::stoll(m[2]);
  const std::string src = m[3];
  Series raw{0};
  std::string line;
  i64 expect = 1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    i64 n = 0;
    std::string val;
    if (!(ls >> n >> val)) throw PreconditionError("fixture: malformed line: " + line);
    if (n != expect) throw PreconditionError("fixture: indices must ascend from 1 without gaps");
    try {
      raw.emplace_back(val);
    } catch (const std::exception&) {
      throw PreconditionError("fixture: bad integer: " + val);
    }
    ++expect;
  }
  return make_form(k, q, std::move(raw), src);
}

FormGL2 load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("fixture: cannot open " + path);
  return read_fixture(in);
}

VerificationReport hecke_multiplicativity_check(const FormGL2& f, std::int64_t n_max) {
  if (n_max < 1) throw PreconditionError("hecke_multiplicativity_check: N must be positive");
  if (n_max * n_max > f.size()) throw RangeError("hecke_multiplicativity_check: coefficients needed to N^2");
  VerificationReport rep;
  BigInt worst = 0;
  i64 checked = 0;
  for (i64 n = 1; n <= n_max; ++n) {
    for (i64 m = 1; m <= n_max; ++m) {
      const BigInt lhs = f.c(n) * f.c(m);
      BigInt rhs = 0;
      const i64 g = std::gcd(n, m);
      for (i64 d = 1; d <= g; ++d) {
        if (g % d != 0 || (f.level > 1 && d % f.level == 0)) continue;
        rhs += boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(f.weight - 1)) * f.c(n * m / (d * d));
      }
      BigInt diff = lhs - rhs;
      if (diff < 0) diff = -diff;
      if (diff > worst) worst = diff;
      ++checked;
    }
  }
  rep.lhs = rep.rhs = 0.0;
  rep.diagnostics["pairs_checked"] = static_cast<double>(checked);
  rep.diagnostics["worst_residual"] = to_double(worst);
  rep.abs_discrepancy = to_double(worst);
  rep.rel_discrepancy = rep.abs_discrepancy;
  rep.tol = 0.0;
  rep.pass = worst == 0;
  return rep;
}

int root_number(const FormGL2& f) {
  const int ik = (f.weight / 2) % 2 == 0 ? 1 : -1;  // i^k for even k
  if (f.level == 1) return ik;
  const double v = -ik * f.a(f.level) * std::sqrt(static_cast<double>(f.level));
  const int r = v > 0 ? 1 : -1;
  if (std::abs(v - r) > 1e-12) throw std::logic_error("root_number: value not within 1e-12 of +-1; normalization is wrong");
  return r;
}

SymSquareValue sym_sq_L1(const FormGL2& f, std::int64_t euler_cutoff) {
  if (euler_cutoff < 4) throw PreconditionError("sym_sq_L1: cutoff must be >= 4");
  if (euler_cutoff > f.size()) throw RangeError("sym_sq_L1: coefficients do not reach the cutoff");
  const auto primes_tab = arith::multiplicative_tables(euler_cutoff);
  auto product = [&](i64 cut) {
    double logsum = 0.0;
    for (i64 p = 2; p <= cut; ++p) {
      if (primes_tab.spf[static_cast<std::size_t>(p)] != p) continue;
      const double lp = f.a(p);
      const double x = 1.0 / static_cast<double>(p);
      double local;
      if (p == f.level) {
        local = 1.0 - lp * lp * x;
      } else {
        const double e = lp * lp - 1.0;
        local = 1.0 - e * x + e * x * x - x * x * x;
      }
      logsum -= std::log(local);
    }
    return std::exp(logsum);
  };
  SymSquareValue out;
  out.value = product(euler_cutoff);
  out.delta = std::abs(out.value - product(euler_cutoff / 2));
  out.converged = out.delta <= 1e-2;
  return out;
}

double sym_sq_L1_afe(const FormGL2& f) {
  const GammaFactor g = GammaFactor::symmetric_square(f.weight);
  const MellinWeight va(g, 1.0, 1.0);
  const MellinWeight vb(g, 0.0, 1.0);
  const double q = static_cast<double>(f.level);
  auto b = [&](i64 n) {
    double acc = 0.0;
    for (i64 d = 1; d * d <= n; ++d) {
      if (n % (d * d) != 0 || (f.level > 1 && d % f.level == 0)) continue;
      const i64 l = n / (d * d);
      acc += f.lambda(l * l);
    }
    return acc;
  };
  CompensatedSum s1, s2;
  int quiet = 0;
  for (i64 n = 1;; ++n) {
    const double x = static_cast<double>(n) / q;
    const double wa = va(x), wb = vb(x);
    const double bn = b(n);
    s1.add(bn / static_cast<double>(n) * wa);
    s2.add(bn * wb);
    quiet = (std::abs(wa) < 1e-18 && std::abs(wb) < 1e-18) ? quiet + 1 : 0;
    if (quiet >= 5) break;
    if (n > 1'000'000) throw std::runtime_error("sym_sq_L1_afe: weights failed to decay");
  }
  return s1.value() + s2.value() / q;
}

double harmonic_weight(const FormGL2& f) { return sym_sq_L1_afe(f) / (kPi * kPi / 6.0); }

}  // namespace gl3gl2::gl2
