#include <doctest.h>

#include <cmath>

#include "gl3gl2/errors.hpp"
#include "gl3gl2/specfun.hpp"

using namespace gl3gl2;
using namespace gl3gl2::specfun;

// Reference values below come from mpmath at 30 digits.

TEST_CASE("log gamma") {
  const cplx a = log_gamma(cplx(3, 4));
  CHECK(a.real() == doctest::Approx(-1.75662678460378411).epsilon(1e-13));
  CHECK(a.imag() == doctest::Approx(4.74266443803465793).epsilon(1e-13));
  const cplx b = log_gamma(cplx(0.1, -20));
  CHECK(b.real() == doctest::Approx(-31.6952659073465626).epsilon(1e-13));
  // branch continued along the line, not reduced mod 2 pi
  CHECK(b.imag() == doctest::Approx(-39.2844100106493612).epsilon(1e-13));
  CHECK(std::exp(log_gamma(0.5)).real() == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
}

TEST_CASE("Hurwitz zeta") {
  CHECK(hurwitz_zeta(3.0, 0.3).real() == doctest::Approx(37.6362682943630195).epsilon(1e-12));
  const cplx z = hurwitz_zeta(cplx(0.5, 10), 0.7);
  CHECK(z.real() == doctest::Approx(-0.990471287175768055).epsilon(1e-11));
  CHECK(z.imag() == doctest::Approx(0.254226578429864623).epsilon(1e-11));
  CHECK(std::abs(riemann_zeta(2.0) - kPi * kPi / 6.0) < 1e-13);
}

TEST_CASE("Bessel J") {
  CHECK(bessel_j(0, 1.0) == doctest::Approx(0.765197686557966551).epsilon(1e-14));
  CHECK(bessel_j(5, 30.0) == doctest::Approx(-0.143240295512077077).epsilon(1e-12));
  CHECK(bessel_j(11, 60.0) == doctest::Approx(0.0528133264789797631).epsilon(1e-11));
  CHECK(bessel_j(20, 45.0) == doctest::Approx(0.00476334379003129910).epsilon(1e-10));
  for (int k = 0; k <= 20; ++k) {
    const double x = bessel_switch_point(k);
    CHECK(std::abs(bessel_j_series(k, x) - bessel_j_hankel(k, x)) < 1e-10);
  }
  CHECK_THROWS_AS(bessel_j(-1, 1.0), PreconditionError);
}

TEST_CASE("bump Mellin transform") {
  const BumpFunction psi;
  CHECK(psi.mellin(1.0).real() == doctest::Approx(0.00702985840660965624).epsilon(1e-13));
  const cplx m = psi.mellin(cplx(0.3, 2.0));
  CHECK(m.real() == doctest::Approx(0.00367813869394574898).epsilon(1e-12));
  CHECK(m.imag() == doctest::Approx(0.00371468788463336561).epsilon(1e-12));
  const auto grid = psi.mellin_grid(0.3, 0.5, 9);
  CHECK(std::abs(grid[4] - psi.mellin(cplx(0.3, -2.0))) < 1e-17);
  // integration by parts agrees where both rules are accurate
  const auto plain = psi.mellin_grid(0.1, 0.1, 2001);
  const auto ibp = psi.mellin_grid(0.1, 0.1, 2001, 6);
  for (int j : {500, 1000, 2000}) CHECK(std::abs(plain[j] - ibp[j]) < 1e-19);
  CHECK(psi.derivative(1.5, 0) == psi(1.5));
  CHECK(psi(0.9) == 0.0);
}

TEST_CASE("contour engines") {
  // residue of 1/(s-1)^2 * e^s at s = 1 is e
  const cplx r = circle_integral([](cplx s) { return std::exp(s) / ((s - 1.0) * (s - 1.0)); }, 1.0, 0.5, 64);
  CHECK(std::abs(r - std::exp(1.0)) < 1e-14);
  // (1/2 pi i) int e^{s^2} ds on Re s = 0 equals 1 / (2 sqrt(pi))
  const auto v = integrate_vertical_adaptive([](cplx s) { return std::exp(s * s); }, 0.0, 0.05);
  CHECK(v.converged);
  CHECK(std::abs(v.value - 0.5 / std::sqrt(kPi)) < 1e-14);
}
