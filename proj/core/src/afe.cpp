#include "gl3gl2/afe.hpp"

#include <cmath>
#include <numeric>

#include "gl3gl2/errors.hpp"

namespace gl3gl2::afe {

using i64 = std::int64_t;

double v_weight(double x, const GammaFactor& gf) { return MellinWeight(gf, 0.5, 0.5)(x); }

VWeight::VWeight(const GammaFactor& gf, double tail_cut) : weight_(gf, 0.5, 0.5), table_(weight_, tail_cut) {}

double AfeContext::symmetric_split(const gl2::FormGL2& f) { return std::pow(static_cast<double>(f.level), 1.5); }

CentralValue afe_central_value(AfeContext& ctx) {
  if (ctx.f == nullptr || ctx.table == nullptr) throw PreconditionError("afe_central_value: context lacks a form or table");
  const auto& f = *ctx.f;
  const auto& tab = *ctx.table;
  if (!(ctx.split > 0.0)) throw PreconditionError("afe_central_value: split must be positive");
  const double q = static_cast<double>(f.level);
  const double q3 = q * q * q;
  if (!ctx.weight) ctx.weight = std::make_shared<VWeight>(GammaFactor::rankin_selberg(f.weight, tab.nu()), ctx.tail_cut);
  const VWeight& v = *ctx.weight;
  if (!v.gamma().same_as(GammaFactor::rankin_selberg(f.weight, tab.nu())))
    throw PreconditionError("afe_central_value: weight built for a different gamma factor");

  const double x1 = ctx.split, x2 = q3 / ctx.split;
  // r^2 n below cutoff * max(X1, X2) carries all terms above tail_cut.
  const double reach = v.cutoff() * std::max(x1, x2);
  const i64 n_need = static_cast<i64>(std::floor(reach));
  const i64 r_need = static_cast<i64>(std::floor(std::sqrt(reach)));
  if (n_need > f.size()) throw RangeError("afe_central_value: form coefficients do not reach the V cutoff");
  if (n_need > tab.m_max() || r_need > tab.n_max()) throw RangeError("afe_central_value: GL(3) table does not reach the V cutoff");

  CompensatedSum s1, s2;
  i64 terms = 0;
  for (i64 r = 1; r <= r_need; ++r) {
    if (f.level > 1 && r % f.level == 0) continue;
    const double r2 = static_cast<double>(r) * static_cast<double>(r);
    for (i64 n = 1; r2 * static_cast<double>(n) <= reach; ++n) {
      const double coef = f.a(n) * tab(r, n) / (static_cast<double>(r) * std::sqrt(static_cast<double>(n)));
      if (coef == 0.0) continue;
      const double y = r2 * static_cast<double>(n);
      s1.add(coef * v(y / x1));
      s2.add(coef * v(y / x2));
      ++terms;
    }
  }
  CentralValue out;
  out.eps = ctx.eps_override != 0 ? ctx.eps_override : f.eps;
  out.s1 = s1.value();
  out.s2 = s2.value();
  out.value = out.s1 + out.eps * out.s2;
  out.terms = terms;
  return out;
}

CentralValue gl2_central_value(const gl2::FormGL2& f, double split, std::shared_ptr<const VWeight> weight,
                               double extend) {
  const double q = static_cast<double>(f.level);
  if (split <= 0.0) split = std::sqrt(q);
  if (!weight) weight = std::make_shared<VWeight>(GammaFactor::gl2(f.weight));
  const VWeight& v = *weight;
  if (!v.gamma().same_as(GammaFactor::gl2(f.weight))) throw PreconditionError("gl2_central_value: weight built for a different gamma factor");
  const double x1 = split, x2 = q / split;
  if (!(extend >= 1.0)) throw PreconditionError("gl2_central_value: extend must be >= 1");
  const double reach = extend * v.cutoff() * std::max(x1, x2);
  const i64 n_need = static_cast<i64>(std::floor(reach));
  if (n_need > f.size()) throw RangeError("gl2_central_value: coefficients do not reach the V cutoff");
  CompensatedSum s1, s2;
  for (i64 n = 1; n <= n_need; ++n) {
    const double coef = f.a(n) / std::sqrt(static_cast<double>(n));
    s1.add(coef * v(static_cast<double>(n) / x1));
    s2.add(coef * v(static_cast<double>(n) / x2));
  }
  CentralValue out;
  out.eps = f.eps;
  out.s1 = s1.value();
  out.s2 = s2.value();
  out.value = out.s1 + out.eps * out.s2;
  out.terms = n_need;
  return out;
}

namespace {

VerificationReport spread_report(const std::vector<double>& vals, const std::vector<double>& splits) {
  VerificationReport rep;
  double worst = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      // Values that vanish (odd forms) are compared absolutely.
      const double scale = std::max(std::abs(vals[i]), std::abs(vals[j]));
      const double diff = std::abs(vals[i] - vals[j]);
      const double dev = scale < 1e-10 ? diff : diff / scale;
      worst = std::max(worst, dev);
    }
  }
  for (std::size_t i = 0; i < vals.size(); ++i) rep.diagnostics["value_at_split_" + std::to_string(splits[i])] = vals[i];
  rep.lhs = vals.empty() ? 0.0 : vals.front();
  rep.rhs = vals.empty() ? 0.0 : vals.back();
  rep.main_term = 0.0;
  rep.abs_discrepancy = vals.empty() ? 0.0 : std::abs(vals.front() - vals.back());
  rep.rel_discrepancy = worst;
  return rep;
}

}  // namespace

VerificationReport split_invariance_check(AfeContext ctx, const std::vector<double>& splits) {
  std::vector<double> vals;
  for (double x : splits) {
    ctx.split = x;
    vals.push_back(afe_central_value(ctx).value);
  }
  auto rep = spread_report(vals, splits);
  rep.tol = 1e-8;
  rep.pass = rep.rel_discrepancy < rep.tol;
  return rep;
}

VerificationReport gl2_split_invariance_check(const gl2::FormGL2& f, const std::vector<double>& splits) {
  const auto w = std::make_shared<VWeight>(GammaFactor::gl2(f.weight));
  std::vector<double> vals;
  for (double x : splits) vals.push_back(gl2_central_value(f, x, w).value);
  auto rep = spread_report(vals, splits);
  rep.tol = 1e-10;
  rep.pass = rep.rel_discrepancy < rep.tol;
  return rep;
}

double exponential_series_L1(const gl2::FormGL2& f) {
  if (f.weight != 2 || f.level < 2) throw PreconditionError("exponential_series_L1: needs a weight-2 form of prime level");
  const double decay = kTwoPi / std::sqrt(static_cast<double>(f.level));
  CompensatedSum s;
  for (i64 n = 1; n <= f.size(); ++n) {
    const double t = f.c(n).convert_to<double>() / static_cast<double>(n) * std::exp(-decay * static_cast<double>(n));
    s.add(t);
    if (decay * static_cast<double>(n) > 745.0) break;
  }
  return 2.0 * s.value();
}

}  // namespace gl3gl2::afe
