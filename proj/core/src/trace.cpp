#include "gl3gl2/trace.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numeric>

#include "gl3gl2/arith.hpp"
#include "gl3gl2/errors.hpp"
#include "gl3gl2/specfun.hpp"

namespace gl3gl2::trace {

using i64 = std::int64_t;

namespace {

int legendre_minus(i64 p, int d) {
  // (-d / p) for d in {1, 3} and odd prime p != d
  if (d == 1) return p % 4 == 1 ? 1 : -1;
  return p % 3 == 1 ? 1 : -1;
}

int cusp_dimension(int k, i64 q) {
  if (k < 2 || k % 2 != 0) throw PreconditionError("cusp_dimension: weight must be even and >= 2");
  double mu, nu2, nu3, cusps;
  if (q == 1) {
    mu = 1, nu2 = 1, nu3 = 1, cusps = 1;
  } else {
    mu = static_cast<double>(q + 1);
    cusps = 2;
    nu2 = q == 2 ? 1 : 1 + legendre_minus(q, 1);
    nu3 = q == 3 ? 1 : 1 + legendre_minus(q, 3);
  }
  double dim;
  if (k == 2) {
    dim = 1 + mu / 12 - nu2 / 4 - nu3 / 3 - cusps / 2;
  } else {
    dim = (k - 1) * mu / 12 + (std::floor(k / 4.0) - (k - 1) / 4.0) * nu2 +
          (std::floor(k / 3.0) - (k - 1) / 3.0) * nu3 - cusps / 2;
  }
  return static_cast<int>(std::lround(dim));
}

int i_pow_k(int k) { return (k / 2) % 2 == 0 ? 1 : -1; }

void check_family(int k, i64 q, const std::vector<gl2::FormGL2>& forms) {
  for (const auto& f : forms) {
    if (f.weight != k || f.level != q) throw PreconditionError("trace: form of wrong weight or level in family");
    if (!f.has_harmonic_weight()) throw PreconditionError("trace: form lacks a harmonic weight");
  }
  if (static_cast<int>(forms.size()) != newform_dimension(k, q))
    throw PreconditionError("trace: family does not span the newform space (missing forms)");
}

double spectral_sum(int k, i64 q, i64 n, i64 m, const std::vector<gl2::FormGL2>& forms) {
  double acc = 0.0;
  for (const auto& f : forms) acc += f.lambda(n) * f.lambda(m) / f.harmonic_weight;
  return 12.0 / (static_cast<double>(q) * (k - 1)) * acc;
}

// 2 pi i^k sum over moduli c = j * step, j = 1..count.
double kloosterman_bessel_sum(int k, i64 n, i64 m, i64 step, i64 count) {
  const double x0 = 4.0 * kPi * std::sqrt(static_cast<double>(n) * static_cast<double>(m));
  CompensatedSum s;
  for (i64 j = 1; j <= count; ++j) {
    const i64 c = j * step;
    const double kl = arith::kloosterman_crt(n, m, c);
    if (kl == 0.0) continue;
    s.add(kl / static_cast<double>(c) * specfun::bessel_j(k - 1, x0 / static_cast<double>(c)));
  }
  return kTwoPi * i_pow_k(k) * s.value();
}

// Smallest modulus C' (a multiple of step, at most step * c_max) where the
// tail bound drops below tol; c_max when none does.
i64 choose_cutoff(int k, i64 n, i64 m, i64 step, i64 c_max, double tol, double& bound) {
  const double lo = 8.0 * kPi * std::sqrt(static_cast<double>(n) * static_cast<double>(m));
  auto b = [&](i64 j) {
    const double C = static_cast<double>(j * step);
    return C < lo ? std::numeric_limits<double>::infinity() : truncation_bound(k, n, m, C);
  };
  if (b(c_max) >= tol) {
    bound = b(c_max);
    return c_max;
  }
  i64 a = 1, z = c_max;  // b(z) < tol
  while (a < z) {
    const i64 mid = a + (z - a) / 2;
    if (b(mid) < tol) {
      z = mid;
    } else {
      a = mid + 1;
    }
  }
  bound = b(z);
  return z;
}

}  // namespace

int newform_dimension(int k, i64 q) {
  if (q == 1) return cusp_dimension(k, 1);
  const auto f = arith::factor(q);
  if (f.factors.size() != 1 || f.factors[0].exponent != 1) throw PreconditionError("newform_dimension: level must be 1 or prime");
  return cusp_dimension(k, q) - 2 * cusp_dimension(k, 1);
}

double delta_spectral(const TraceQuery& query, const std::vector<gl2::FormGL2>& forms) {
  check_family(query.k, query.q, forms);
  return spectral_sum(query.k, query.q, query.n, query.m, forms);
}

double truncation_bound(int k, i64 n, i64 m, double C) {
  if (k < 2 || n < 1 || m < 1) throw PreconditionError("truncation_bound: bad arguments");
  const double x = 2.0 * kPi * std::sqrt(static_cast<double>(n) * static_cast<double>(m));
  if (C < 4.0 * x) throw PreconditionError("truncation_bound: C below the small-argument regime 8 pi sqrt(nm)");
  // |term(c)| <= d(c) sqrt(gcd) c^{-1/2} (x/c)^{k-1}/(k-1)!, and
  // sum_{c > C} d(c) c^{-a} <= a C^{1-a} [(log C + 1)/(a-1) + 1/(a-1)^2].
  const double a = k - 0.5;
  const double g = static_cast<double>(std::gcd(n, m));
  const double lead = kTwoPi * std::sqrt(g) * std::exp((k - 1) * std::log(x) - std::lgamma(static_cast<double>(k)));
  const double tail = a * std::pow(C, 1.0 - a) * ((std::log(C) + 1.0) / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)));
  return lead * tail;
}

GeometricSide delta_geometric_level1(const TraceQuery& query) {
  if (query.k < 2 || query.k % 2 != 0) throw PreconditionError("delta_geometric_level1: weight must be even and >= 2");
  if (query.n < 1 || query.m < 1 || query.c_max < 1) throw PreconditionError("delta_geometric_level1: n, m, C must be positive");
  GeometricSide out;
  out.c_used = choose_cutoff(query.k, query.n, query.m, 1, query.c_max, query.tol, out.tail_bound);
  out.reached_tol = out.tail_bound < query.tol;
  out.value = (query.n == query.m ? 1.0 : 0.0) + kloosterman_bessel_sum(query.k, query.n, query.m, 1, out.c_used);
  return out;
}

GeometricSide delta_geometric_newform(const TraceQuery& query, const std::vector<gl2::FormGL2>& level1_forms) {
  const i64 q = query.q;
  if (query.k < 2 || query.k % 2 != 0) throw PreconditionError("delta_geometric_newform: weight must be even and >= 2");
  if (q < 2 || arith::factor(q).factors.size() != 1 || arith::factor(q).factors[0].exponent != 1)
    throw PreconditionError("delta_geometric_newform: level must be prime");
  if (query.n < 1 || query.m < 1 || query.c_max < 1) throw PreconditionError("delta_geometric_newform: n, m, C must be positive");
  if (std::gcd(query.m, q) != 1) throw PreconditionError("delta_geometric_newform: requires (m, q) = 1");
  if (query.n % (q * q) == 0) throw PreconditionError("delta_geometric_newform: requires q^2 not dividing n");
  check_family(query.k, 1, level1_forms);

  GeometricSide out;
  out.c_used = choose_cutoff(query.k, query.n, query.m, q, query.c_max, query.tol, out.tail_bound);
  out.reached_tol = out.tail_bound < query.tol;
  double v = (query.n == query.m ? 1.0 : 0.0) + kloosterman_bessel_sum(query.k, query.n, query.m, q, out.c_used);

  if (!level1_forms.empty()) {
    // [Gamma_0(1) : Gamma_0((n, q))] is 1 or q + 1.
    const double index = query.n % q == 0 ? static_cast<double>(q + 1) : 1.0;
    const int i_max = static_cast<int>(std::ceil(std::log(1.0 / query.tol) / std::log(static_cast<double>(q)))) + 1;
    CompensatedSum corr;
    double qpow = 1.0;
    i64 mq = query.m;
    for (int i = 0; i <= i_max; ++i) {
      corr.add(spectral_sum(query.k, 1, query.n, mq, level1_forms) / qpow);
      qpow *= static_cast<double>(q);
      if (i < i_max) {
        if (mq > std::numeric_limits<i64>::max() / (q * q)) break;
        mq *= q * q;
      }
    }
    v -= corr.value() / (static_cast<double>(q) * index);
  }
  out.value = v;
  return out;
}

VerificationReport verify_trace(const TraceQuery& query, const std::vector<gl2::FormGL2>& forms,
                                const std::vector<gl2::FormGL2>& level1_forms) {
  VerificationReport rep;
  rep.lhs = delta_spectral(query, forms);
  const GeometricSide g = query.q == 1 ? delta_geometric_level1(query) : delta_geometric_newform(query, level1_forms);
  rep.rhs = g.value;
  rep.main_term = 0.0;
  rep.diagnostics["c_used"] = static_cast<double>(g.c_used);
  rep.diagnostics["tail_bound"] = g.tail_bound;
  rep.diagnostics["tail_certified"] = g.reached_tol ? 1.0 : 0.0;
  rep.finish(query.tol);
  // Absolute criterion; Delta* values are O(1). An uncertified tail is
  // reported through tail_certified and left to the caller.
  rep.pass = rep.abs_discrepancy < query.tol;
  return rep;
}

double geometric_gram_min_eigenvalue(const TraceQuery& base, const std::vector<i64>& ns,
                                     const std::vector<gl2::FormGL2>& level1_forms) {
  const auto sz = static_cast<Eigen::Index>(ns.size());
  Eigen::MatrixXd mat(sz, sz);
  for (Eigen::Index i = 0; i < sz; ++i) {
    for (Eigen::Index j = i; j < sz; ++j) {
      TraceQuery q = base;
      q.n = ns[static_cast<std::size_t>(i)];
      q.m = ns[static_cast<std::size_t>(j)];
      const double v = base.q == 1 ? delta_geometric_level1(q).value : delta_geometric_newform(q, level1_forms).value;
      mat(i, j) = mat(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace gl3gl2::trace
