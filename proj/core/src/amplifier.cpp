#include "gl3gl2/amplifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"
#include "gl3gl2/numeric.hpp"
#include "gl3gl2/specfun.hpp"
#include "gl3gl2/trace.hpp"

namespace gl3gl2::amplifier {

using i64 = std::int64_t;

double AmplifierSpec::x_at(i64 m) const {
  if (m < 1) throw PreconditionError("AmplifierSpec: m must be positive");
  return m < static_cast<i64>(x.size()) ? x[static_cast<std::size_t>(m)] : 0.0;
}

std::vector<double> form_coefficients(const gl2::FormGL2& f, i64 size) {
  std::vector<double> a(static_cast<std::size_t>(size + 1), 0.0);
  for (i64 n = 1; n <= size; ++n) a[static_cast<std::size_t>(n)] = f.lambda(n);
  return a;
}

AmplifierSpec amplifier_coeffs(const gl2::FormGL2& f0, i64 L) {
  if (L < 1) throw PreconditionError("amplifier_coeffs: L must be positive");
  if (L * L > f0.size()) throw RangeError("amplifier_coeffs: form coefficients do not reach L^2");
  AmplifierSpec s;
  s.level = f0.level;
  s.L = L;
  s.a0 = form_coefficients(f0, L);
  s.x.assign(static_cast<std::size_t>(L * L + 1), 0.0);
  for (i64 d = 1; d <= L; ++d) {
    if (f0.level > 1 && d % f0.level == 0) continue;
    for (i64 n1 = d; n1 <= L; n1 += d) {
      for (i64 n2 = d; n2 <= L; n2 += d) {
        const i64 m = n1 * n2 / (d * d);
        s.x[static_cast<std::size_t>(m)] += s.a0[static_cast<std::size_t>(n1)] * s.a0[static_cast<std::size_t>(n2)] / static_cast<double>(d);
      }
    }
  }
  return s;
}

std::vector<double> synthetic_hecke_vector(i64 q, i64 size, std::uint64_t seed, double a_q) {
  if (size < 1) throw PreconditionError("synthetic_hecke_vector: size must be positive");
  const auto tabs = arith::multiplicative_tables(size);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::vector<double> a(static_cast<std::size_t>(size + 1), 0.0);
  a[1] = 1.0;
  for (i64 n = 2; n <= size; ++n) {
    const i64 p = tabs.spf[static_cast<std::size_t>(n)];
    i64 rest = n;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    double ape = 0.0;
    if (p == q) {
      ape = std::pow(a_q, e);
    } else if (rest == 1 && e == 1) {
      // draw once per prime, in increasing order of p
      const double th = angle(rng);
      ape = 2.0 * std::cos(th);
    } else {
      const double ap = a[static_cast<std::size_t>(p)];
      // a(p^e) = a(p) a(p^{e-1}) - a(p^{e-2})
      double prev = 1.0, cur = ap;
      for (int j = 2; j <= e; ++j) {
        const double nxt = ap * cur - prev;
        prev = cur;
        cur = nxt;
      }
      ape = cur;
    }
    if (rest == 1) {
      a[static_cast<std::size_t>(n)] = ape;
    } else {
      i64 pe = n / rest;
      a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(pe)] * a[static_cast<std::size_t>(rest)];
    }
  }
  return a;
}

double amplifier_value(const AmplifierSpec& spec, const std::vector<double>& af) {
  if (static_cast<i64>(af.size()) <= spec.L) throw RangeError("amplifier_value: coefficient vector too short");
  CompensatedSum s;
  for (i64 n = 1; n <= spec.L; ++n)
    s.add(spec.a0[static_cast<std::size_t>(n)] * af[static_cast<std::size_t>(n)] / std::sqrt(static_cast<double>(n)));
  return s.value();
}

double expanded_square(const AmplifierSpec& spec, const std::vector<double>& af) {
  const i64 top = spec.support();
  if (static_cast<i64>(af.size()) <= top) throw RangeError("expanded_square: coefficient vector too short");
  CompensatedSum s;
  for (i64 m = 1; m <= top; ++m) {
    const double xm = spec.x[static_cast<std::size_t>(m)];
    if (xm != 0.0) s.add(xm * af[static_cast<std::size_t>(m)] / std::sqrt(static_cast<double>(m)));
  }
  return s.value();
}

VerificationReport reconstruction_check(const AmplifierSpec& spec, const std::vector<double>& af, double tol) {
  VerificationReport rep;
  rep.lhs = expanded_square(spec, af);
  const double a = amplifier_value(spec, af);
  rep.rhs = a * a;
  rep.tol = tol;
  rep.abs_discrepancy = std::abs(rep.lhs - rep.rhs);
  rep.rel_discrepancy = rep.abs_discrepancy / std::max(1.0, std::abs(rep.rhs));
  rep.pass = rep.rel_discrepancy < tol;
  rep.diagnostics["L"] = static_cast<double>(spec.L);
  rep.diagnostics["amplifier"] = a;
  return rep;
}

namespace {

void check_family(const FamilyContext& ctx) {
  if (ctx.table == nullptr) throw PreconditionError("amplifier: GL(3) table required");
  const int dim = trace::newform_dimension(ctx.k, ctx.q);
  if (static_cast<int>(ctx.family.size()) != dim) throw PreconditionError("amplifier: family does not fill H_k*(q)");
  for (const auto& f : ctx.family) {
    if (f.weight != ctx.k || f.level != ctx.q) throw PreconditionError("amplifier: family member of the wrong weight or level");
    if (!f.has_harmonic_weight()) throw PreconditionError("amplifier: family member without harmonic weight");
  }
}

double central_value(FamilyContext& ctx, const gl2::FormGL2& f) {
  afe::AfeContext a;
  a.f = &f;
  a.table = ctx.table;
  a.split = afe::AfeContext::symmetric_split(f);
  a.weight = ctx.weight;
  const double v = afe::afe_central_value(a).value;
  ctx.weight = a.weight;
  return v;
}

}  // namespace

MomentValue amplified_moment(FamilyContext& ctx, const AmplifierSpec& spec) {
  check_family(ctx);
  if (spec.level != ctx.q) throw PreconditionError("amplified_moment: amplifier built at a different level");
  MomentValue out;
  CompensatedSum total;
  for (const auto& f : ctx.family) {
    const double l = central_value(ctx, f);
    const double a = amplifier_value(spec, form_coefficients(f, spec.L));
    const double term = l * a * a / f.harmonic_weight;
    out.central.push_back(l);
    out.summands.push_back(term);
    total.add(term);
  }
  out.value = total.value();
  out.ratio = out.value / std::pow(static_cast<double>(ctx.q), 1.1);
  out.min_summand = *std::min_element(out.summands.begin(), out.summands.end());
  out.nonnegative = out.min_summand >= -1e-6;
  return out;
}

Prop2Value prop2_lhs(FamilyContext& ctx, i64 m) {
  check_family(ctx);
  if (m < 1) throw PreconditionError("prop2_lhs: m must be positive");
  if (std::gcd(m, ctx.q) != 1) throw PreconditionError("prop2_lhs: m must be coprime to q");
  CompensatedSum total;
  for (const auto& f : ctx.family) total.add(central_value(ctx, f) * f.lambda(m) / f.harmonic_weight);
  Prop2Value out;
  const double q = static_cast<double>(ctx.q);
  out.lhs = total.value() / q;
  const i64 r_top = ctx.q * ctx.q - 1;
  if (!ctx.table->covers(r_top, m)) throw RangeError("prop2_lhs: table does not cover r < q^2");
  CompensatedSum env;
  env.add(1.0);
  for (i64 r = 1; r <= r_top; ++r) env.add(std::abs((*ctx.table)(r, m)) / static_cast<double>(r));
  out.envelope = std::pow(q, 0.1) / std::sqrt(static_cast<double>(m)) * env.value();
  out.ratio = std::abs(out.lhs) / out.envelope;
  out.within = std::abs(out.lhs) <= 10.0 * out.envelope;
  return out;
}

Mainlem1Value mainlem1_sum(i64 m, i64 q, int k, const gl3::CoeffTableGL3& table, const Mainlem1Ranges& ranges,
                           std::shared_ptr<const afe::VWeight> weight) {
  if (m < 1) throw PreconditionError("mainlem1_sum: m must be positive");
  if (q < 1 || k < 2) throw PreconditionError("mainlem1_sum: bad level or weight");
  if (ranges.c_max < 1) throw PreconditionError("mainlem1_sum: c_max must be positive");
  const GammaFactor gf = GammaFactor::rankin_selberg(k, table.nu());
  if (!weight) weight = std::make_shared<afe::VWeight>(gf, ranges.tail_cut);
  if (!weight->gamma().same_as(gf)) throw PreconditionError("mainlem1_sum: weight built for a different gamma factor");
  const afe::VWeight& v = *weight;
  const double x = std::pow(static_cast<double>(q), 1.5);
  const double reach = v.cutoff() * x;
  i64 r_top = static_cast<i64>(std::floor(std::sqrt(reach)));
  if (ranges.r_max > 0) r_top = std::min(r_top, ranges.r_max);
  const i64 n_top = static_cast<i64>(std::floor(reach));
  if (r_top > table.n_max() || n_top > table.m_max()) throw RangeError("mainlem1_sum: table does not reach the V cutoff");

  // Kloosterman-Bessel factor, a function of n alone.
  std::vector<double> kb(static_cast<std::size_t>(n_top + 1), 0.0);
  for (i64 n = 1; n <= n_top; ++n) {
    CompensatedSum s;
    for (i64 c = 1; c <= ranges.c_max; ++c) {
      const i64 cq = c * q;
      const double S = arith::kloosterman_crt(n, m, cq);
      if (S == 0.0) continue;
      const double arg = 4.0 * kPi * std::sqrt(static_cast<double>(n) * static_cast<double>(m)) / static_cast<double>(cq);
      s.add(S / static_cast<double>(cq) * specfun::bessel_j(k - 1, arg));
    }
    kb[static_cast<std::size_t>(n)] = s.value();
  }
  Mainlem1Value out;
  CompensatedSum total;
  for (i64 r = 1; r <= r_top; ++r) {
    const double r2 = static_cast<double>(r) * static_cast<double>(r);
    for (i64 n = 1; r2 * static_cast<double>(n) <= reach; ++n) {
      const double a = table(r, n);
      if (a == 0.0) continue;
      total.add(a / (static_cast<double>(r) * std::sqrt(static_cast<double>(n))) * v(r2 * static_cast<double>(n) / x) *
                kb[static_cast<std::size_t>(n)]);
      ++out.terms;
      out.n_used = std::max(out.n_used, n);
    }
    out.r_used = r;
  }
  out.value = total.value();
  out.scaled = std::abs(out.value) * std::sqrt(static_cast<double>(m));
  return out;
}

double amplification_constant(const gl2::FormGL2& f0, i64 L_max) {
  if (L_max < 2) throw PreconditionError("amplification_constant: L_max must be at least 2");
  if (L_max > f0.size()) throw RangeError("amplification_constant: form coefficients do not reach L_max");
  double best = std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (i64 n = 1; n <= L_max; ++n) {
    const double a = f0.a(n);
    acc += a * a;
    if (n >= 2) best = std::min(best, acc * (std::log(static_cast<double>(n)) + 2.0) / static_cast<double>(n));
  }
  return best;
}

}  // namespace gl3gl2::amplifier
