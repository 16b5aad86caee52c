#include <doctest.h>

#include <cmath>

#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/gl3.hpp"

using namespace gl3gl2;
using namespace gl3gl2::gl3;

TEST_CASE("ternary divisor Eisenstein table") {
  const auto t = eisenstein_coeffs(12, 60);
  CHECK(t.kind() == TableKind::EisensteinD3);
  CHECK(t.voronoi_admissible());
  CHECK(t(1, 1) == 1.0);
  CHECK(t(2, 1) == 3.0);
  CHECK(t(1, 2) == 3.0);
  CHECK(t(2, 2) == 8.0);
  CHECK(t(1, 12) == 18.0);
  CHECK(std::abs(t.nu() - cplx(1.0 / 3.0)) < 1e-15);
  CHECK_THROWS_AS(t(13, 1), RangeError);
  CHECK(t.covers(12, 60));
  CHECK_FALSE(t.covers(0, 1));
}

TEST_CASE("Hecke relations hold for both table kinds") {
  const auto e = eisenstein_coeffs(40, 400);
  const auto rep = gl3_hecke_check(e, 30);
  CHECK(rep.pass);
  CHECK(rep.diagnostics.at("hecke_residual") < 1e-9);
  const auto delta = gl2::level1_basis(12, 2000)[0];
  const auto s = sym2_lift_coeffs(delta, 40, 400);
  CHECK_FALSE(s.voronoi_admissible());
  // A(p, 1) = lambda(p)^2 - 1
  CHECK(s(2, 1) == doctest::Approx(-0.71875).epsilon(1e-12));
  CHECK(gl3_hecke_check(s, 30).pass);
}

TEST_CASE("lift needs level one") {
  const auto f = gl2::eta_quotient_coeffs(gl2::eta_level11(), 500);
  CHECK_THROWS_AS(sym2_lift_coeffs(f, 10, 50), PreconditionError);
}
