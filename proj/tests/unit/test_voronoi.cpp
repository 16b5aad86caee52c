#include <doctest.h>

#include <cmath>
#include <memory>

#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl3.hpp"
#include "gl3gl2/voronoi.hpp"

using namespace gl3gl2;
using namespace gl3gl2::voronoi;

namespace {

const specfun::BumpFunction& bump() {
  static specfun::BumpFunction psi;
  return psi;
}

const VoronoiKernel& kernel() {
  static const VoronoiKernel k(bump(), cplx(1.0 / 3.0));
  return k;
}

const gl3::CoeffTableGL3& table() {
  static const auto t = gl3::eisenstein_coeffs(130, 10000);
  return t;
}

VoronoiParams params(std::int64_t d, std::int64_t b, std::int64_t r, double N) {
  VoronoiParams p;
  p.d = d;
  p.b = b;
  p.r = r;
  p.N = N;
  p.psi = &bump();
  p.table = &table();
  return p;
}

}  // namespace

TEST_CASE("H transform at the centre") {
  const cplx nu(1.0 / 3.0);
  CHECK(std::abs(h_transform(0.5, nu, Sign::Plus) - cplx(1, -1)) < 1e-13);
  CHECK(std::abs(h_transform(0.5, nu, Sign::Minus) - cplx(1, 1)) < 1e-13);
  const cplx h = h_transform(cplx(0.9, 5.0), nu, Sign::Plus);
  CHECK(std::abs(h - cplx(1.87575568648848550e-6, -1.96036764506494167e-6)) < 1e-14);
  CHECK_THROWS_AS(h_transform(0.0, nu, Sign::Plus), PoleError);
}

TEST_CASE("H transform grows like t^{3 sigma - 3/2}") {
  const cplx nu(1.0 / 3.0);
  const double sigma = 0.9;
  const double a = std::abs(h_transform(cplx(sigma, -200.0), nu, Sign::Plus));
  const double b = std::abs(h_transform(cplx(sigma, -400.0), nu, Sign::Plus));
  CHECK(std::log(b / a) / std::log(2.0) == doctest::Approx(3 * sigma - 1.5).epsilon(1e-2));
}

TEST_CASE("Psi transform is stable under contour moves") {
  const auto& k = kernel();
  CHECK(k.table.converged());
  CHECK(k.contour_shift < 1e-15);
  CHECK(k.step_halving < 1e-15);
  for (double x : {0.1, 1.0, 10.0})
    CHECK(std::abs(k.table(x) - k.table.direct(x)) < 1e-15);
  CHECK(std::abs(k.table(2.0, Sign::Minus) - std::conj(k.table(2.0, Sign::Plus))) < 1e-16);
}

TEST_CASE("main term against the Laurent expansion") {
  for (double N : {20.0, 40.0}) {
    const auto mt = main_term(1, 1, N, bump(), 1);
    CHECK(mt.accurate);
    CHECK(mt.value.real() == doctest::Approx(main_term_laurent(N, bump())).epsilon(1e-10));
  }
  const auto d2 = main_term(2, 1, 30.0, bump(), 1);
  CHECK(std::abs(d2.value - d2.refined) < 1e-10);
}

TEST_CASE("left side values") {
  CHECK(voronoi_lhs(params(1, 1, 1, 20)).real() == doctest::Approx(1.7953522364).epsilon(1e-9));
  const cplx a = voronoi_lhs(params(3, 1, 1, 30));
  const cplx b = voronoi_lhs(params(3, 2, 1, 30));
  CHECK(std::abs(a - cplx(1.0037168754, 0.0539539834)) < 1e-9);
  CHECK(std::abs(b - std::conj(a)) < 1e-12);
}

TEST_CASE("summation formula holds") {
  for (auto p : {params(1, 1, 1, 20), params(3, 1, 1, 30), params(1, 1, 1, 40)}) {
    const auto rep = verify_voronoi(p, &kernel());
    CHECK(rep.pass);
    CHECK(rep.rel_discrepancy < 1e-10);
    CHECK(rep.flags.empty());
  }
}

TEST_CASE("bad parameters") {
  CHECK_THROWS_AS(voronoi_lhs(params(4, 2, 1, 20)), PreconditionError);
  CHECK_THROWS_AS(voronoi_lhs(params(1, 1, 0, 20)), PreconditionError);
  auto p = params(1, 1, 1, 20);
  p.N = -1.0;
  CHECK_THROWS_AS(verify_voronoi(p, &kernel()), PreconditionError);
}
