#include "gl3gl2/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gl3gl2/errors.hpp"

namespace gl3gl2::arith {

namespace {

using i128 = __int128;

// Cosine table cos(2 pi k / c), k = 0..c-1, built by phasor rotation with
// periodic re-anchoring and mirrored so that cos_[k] == cos_[c - k] exactly.
std::vector<double> cosine_table(i64 c) {
  std::vector<double> t(static_cast<std::size_t>(c));
  const i64 half = c / 2;
  constexpr i64 kAnchor = 64;
  const cplx step = expi2pi(1.0 / static_cast<double>(c));
  cplx w{1.0, 0.0};
  for (i64 k = 0; k <= half; ++k) {
    if (k % kAnchor == 0) w = expi2pi(static_cast<double>(k) / static_cast<double>(c));
    t[static_cast<std::size_t>(k)] = w.real();
    w *= step;
  }
  for (i64 k = half + 1; k < c; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(c - k)];
  return t;
}

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// S(a, b; p^e) by enumeration. Prime moduli use the linear inverse
// recurrence; higher powers invert each unit separately.
double kloosterman_prime_power(i64 a, i64 b, i64 p, int e) {
  const i64 m = ipow(p, e);
  a = mod(a, m);
  b = mod(b, m);
  const auto cos_t = cosine_table(m);
  CompensatedSum acc;
  if (e == 1) {
    std::vector<i64> inv(static_cast<std::size_t>(m), 0);
    if (m > 1) inv[1] = 1;
    for (i64 i = 2; i < m; ++i) {
      inv[static_cast<std::size_t>(i)] =
          (m - (m / i) * inv[static_cast<std::size_t>(m % i)] % m) % m;
    }
    i64 ah = 0;
    for (i64 h = 1; h < m; ++h) {
      ah += a;
      if (ah >= m) ah -= m;
      const i64 k = (ah + b * inv[static_cast<std::size_t>(h)]) % m;
      acc.add(cos_t[static_cast<std::size_t>(k)]);
    }
  } else {
    for (i64 h = 1; h < m; ++h) {
      if (h % p == 0) continue;
      const i64 hb = mod_inverse(h, m);
      const i64 k = static_cast<i64>((static_cast<i128>(a) * h + static_cast<i128>(b) * hb) % m);
      acc.add(cos_t[static_cast<std::size_t>(k)]);
    }
  }
  return acc.value();
}

}  // namespace

i64 FactoredInteger::divisor_count() const {
  i64 r = 1;
  for (const auto& f : factors) r *= f.exponent + 1;
  return r;
}

i64 FactoredInteger::divisor_count3() const {
  i64 r = 1;
  for (const auto& f : factors) r *= static_cast<i64>(f.exponent + 1) * (f.exponent + 2) / 2;
  return r;
}

i64 FactoredInteger::euler_phi() const {
  i64 r = 1;
  for (const auto& f : factors) r *= (f.prime - 1) * ipow(f.prime, f.exponent - 1);
  return r;
}

int FactoredInteger::moebius() const {
  int r = 1;
  for (const auto& f : factors) {
    if (f.exponent > 1) return 0;
    r = -r;
  }
  return r;
}

bool FactoredInteger::consistent() const {
  i64 prod = 1;
  i64 last = 1;
  for (const auto& f : factors) {
    if (f.prime <= last || f.exponent < 1) return false;
    last = f.prime;
    prod *= ipow(f.prime, f.exponent);
  }
  return prod == value;
}

FactoredInteger factor(i64 n) {
  if (n < 1) throw PreconditionError("factor: argument must be positive");
  if (n > kMaxFactorable) throw RangeError("factor: argument exceeds trial-division bound 1e7");
  FactoredInteger out;
  out.value = n;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

i64 mod(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mod_inverse(i64 a, i64 m) {
  if (m < 1) throw PreconditionError("mod_inverse: modulus must be positive");
  if (m == 1) return 0;
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) throw PreconditionError("mod_inverse: argument not coprime to modulus");
  return mod(old_s, m);
}

i64 divisor_count(i64 n) { return factor(n).divisor_count(); }

ExactFraction::ExactFraction(i64 numerator, i64 denominator) {
  if (denominator == 0) throw PreconditionError("ExactFraction: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const i64 g = std::gcd(numerator < 0 ? -numerator : numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

ExactFraction ExactFraction::mod_one() const { return {mod(num_, den_), den_}; }

std::string ExactFraction::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << '/' << den_;
  return os.str();
}

ExactFraction operator+(const ExactFraction& a, const ExactFraction& b) {
  const i64 g = std::gcd(a.den_, b.den_);
  const i128 num = static_cast<i128>(a.num_) * (b.den_ / g) + static_cast<i128>(b.num_) * (a.den_ / g);
  const i128 den = static_cast<i128>(a.den_) * (b.den_ / g);
  return {static_cast<i64>(num), static_cast<i64>(den)};
}

ExactFraction operator-(const ExactFraction& a) { return {-a.num_, a.den_}; }

ExactFraction operator-(const ExactFraction& a, const ExactFraction& b) { return a + (-b); }

KloostermanTable::KloostermanTable(i64 c) : c_(c) {
  if (c < 1) throw PreconditionError("Kloosterman modulus must be >= 1");
  if (c == 1) {
    units_ = {0};
    inverses_ = {0};
    cos_ = {1.0};
    return;
  }
  for (i64 h = 1; h < c; ++h) {
    if (std::gcd(h, c) != 1) continue;
    units_.push_back(h);
    inverses_.push_back(mod_inverse(h, c));
  }
  cos_ = cosine_table(c);
}

double KloostermanTable::operator()(i64 n, i64 m) const {
  const i64 a = mod(n, c_);
  const i64 b = mod(m, c_);
  CompensatedSum acc;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const i64 k = static_cast<i64>((static_cast<i128>(a) * units_[i] + static_cast<i128>(b) * inverses_[i]) % c_);
    acc.add(cos_[static_cast<std::size_t>(k)]);
  }
  return acc.value();
}

double kloosterman(i64 n, i64 m, i64 c) { return KloostermanTable(c)(n, m); }

cplx kloosterman_exponential(i64 n, i64 m, i64 c) {
  if (c < 1) throw PreconditionError("Kloosterman modulus must be >= 1");
  if (c == 1) return {1.0, 0.0};
  CompensatedComplexSum acc;
  for (i64 h = 1; h < c; ++h) {
    if (std::gcd(h, c) != 1) continue;
    const i64 hb = mod_inverse(h, c);
    const i64 k = static_cast<i64>(mod(static_cast<i64>((static_cast<i128>(n) * h + static_cast<i128>(m) * hb) % c), c));
    acc.add(expi2pi(static_cast<double>(k) / static_cast<double>(c)));
  }
  return acc.value();
}

double kloosterman_crt(i64 n, i64 m, i64 c) {
  if (c < 1) throw PreconditionError("Kloosterman modulus must be >= 1");
  if (c == 1) return 1.0;
  const auto fc = factor(c);
  double prod = 1.0;
  for (const auto& pp : fc.factors) {
    const i64 q = ipow(pp.prime, pp.exponent);
    const i64 rest = c / q;
    const i64 u = mod_inverse(rest, q);
    const i64 a = static_cast<i64>(static_cast<i128>(mod(n, q)) * u % q);
    const i64 b = static_cast<i64>(static_cast<i128>(mod(m, q)) * u % q);
    prod *= kloosterman_prime_power(a, b, pp.prime, pp.exponent);
  }
  return prod;
}

i64 ramanujan_sum(i64 n, i64 c) {
  if (c < 1) throw PreconditionError("Ramanujan sum modulus must be >= 1");
  const i64 g = std::gcd(n < 0 ? -n : n, c);
  i64 total = 0;
  for (i64 d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    total += d * factor(c / d).moebius();
    const i64 e = g / d;
    if (e != d) total += e * factor(c / e).moebius();
  }
  return total;
}

ReciprocitySplit reciprocity_split(i64 n, i64 m, i64 q) {
  if (m < 1 || q < 1) throw PreconditionError("reciprocity_split: m and q must be positive");
  if (std::gcd(m, q) != 1) throw PreconditionError("reciprocity_split: gcd(m, q) != 1");
  const i64 mbar = mod_inverse(m, q);
  const i64 qbar = mod_inverse(q, m);
  ReciprocitySplit out;
  out.combined = ExactFraction(static_cast<i64>(static_cast<i128>(mod(n, q)) * mbar % q), q).mod_one();
  out.direct = ExactFraction(n, m * q).mod_one();
  out.swapped = ExactFraction(-static_cast<i64>(static_cast<i128>(mod(n, m)) * qbar % m), m).mod_one();
  out.holds = (out.direct + out.swapped - out.combined).is_integer();
  return out;
}

MultiplicativeTables multiplicative_tables(i64 n_max) {
  if (n_max < 1) throw PreconditionError("multiplicative_tables: N must be >= 1");
  const auto sz = static_cast<std::size_t>(n_max + 1);
  MultiplicativeTables t;
  t.size = n_max;
  t.d.assign(sz, 0);
  t.d3.assign(sz, 0);
  t.mu.assign(sz, 0);
  t.phi.assign(sz, 0);
  t.spf.assign(sz, 0);
  std::vector<i64> primes;
  for (i64 i = 2; i <= n_max; ++i) {
    if (t.spf[static_cast<std::size_t>(i)] == 0) {
      t.spf[static_cast<std::size_t>(i)] = i;
      primes.push_back(i);
    }
    for (i64 p : primes) {
      if (p > t.spf[static_cast<std::size_t>(i)] || i * p > n_max) break;
      t.spf[static_cast<std::size_t>(i * p)] = p;
    }
  }
  t.d[1] = t.d3[1] = t.phi[1] = 1;
  t.mu[1] = 1;
  for (i64 i = 2; i <= n_max; ++i) {
    const i64 p = t.spf[static_cast<std::size_t>(i)];
    i64 rest = i;
    int e = 0;
    i64 pe = 1;
    while (rest % p == 0) {
      rest /= p;
      pe *= p;
      ++e;
    }
    const auto r = static_cast<std::size_t>(rest);
    const auto ii = static_cast<std::size_t>(i);
    t.d[ii] = t.d[r] * (e + 1);
    t.d3[ii] = t.d3[r] * (static_cast<i64>(e + 1) * (e + 2) / 2);
    t.mu[ii] = e > 1 ? 0 : -t.mu[r];
    t.phi[ii] = t.phi[r] * (pe - pe / p);
  }
  return t;
}

std::vector<std::uint32_t> ternary_divisor_table(i64 n_max) {
  if (n_max < 1) throw PreconditionError("ternary_divisor_table: N must be >= 1");
  i64 root = static_cast<i64>(std::sqrt(static_cast<double>(n_max)));
  while (root * root > n_max) --root;
  while ((root + 1) * (root + 1) <= n_max) ++root;
  std::vector<i64> primes;
  {
    std::vector<char> comp(static_cast<std::size_t>(root + 1), 0);
    for (i64 i = 2; i <= root; ++i) {
      if (comp[static_cast<std::size_t>(i)]) continue;
      primes.push_back(i);
      for (i64 j = i * i; j <= root; j += i) comp[static_cast<std::size_t>(j)] = 1;
    }
  }
  std::vector<std::uint32_t> d3(static_cast<std::size_t>(n_max + 1), 1);
  d3[0] = 0;
  constexpr i64 kSegment = i64{1} << 18;
  std::vector<i64> rest(static_cast<std::size_t>(kSegment));
  for (i64 lo = 1; lo <= n_max; lo += kSegment) {
    const i64 hi = std::min(n_max, lo + kSegment - 1);
    for (i64 n = lo; n <= hi; ++n) rest[static_cast<std::size_t>(n - lo)] = n;
    for (i64 p : primes) {
      for (i64 n = ((lo + p - 1) / p) * p; n <= hi; n += p) {
        i64& x = rest[static_cast<std::size_t>(n - lo)];
        std::uint32_t e = 0;
        while (x % p == 0) {
          x /= p;
          ++e;
        }
        d3[static_cast<std::size_t>(n)] *= (e + 1) * (e + 2) / 2;
      }
    }
    // at most one prime above sqrt(n_max) survives
    for (i64 n = lo; n <= hi; ++n) {
      if (rest[static_cast<std::size_t>(n - lo)] > 1) d3[static_cast<std::size_t>(n)] *= 3;
    }
  }
  return d3;
}

}  // namespace gl3gl2::arith
