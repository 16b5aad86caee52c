#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl2.hpp"

using namespace gl3gl2;
using namespace gl3gl2::gl2;

TEST_CASE("eta quotient of level 11") {
  const auto f = eta_quotient_coeffs(eta_level11(), 400);
  CHECK(f.c(1) == 1);
  CHECK(f.c(2) == -2);
  CHECK(f.c(3) == -1);
  CHECK(f.c(11) == 1);
  CHECK(f.eps == 1);
  CHECK(hecke_multiplicativity_check(f, 20).pass);
  // agrees with the point-count construction
  const auto g = point_count_form(curve_11a(), 400);
  for (std::int64_t n = 1; n <= 400; ++n) CHECK(f.c(n) == g.c(n));
}

TEST_CASE("weight 4 level 5 and level 37") {
  const auto f = eta_quotient_coeffs(eta_level5_weight4(), 200);
  CHECK(f.c(2) == -4);
  CHECK(f.c(5) == -5);
  const auto e = point_count_form(curve_37a(), 200);
  CHECK(e.c(2) == -2);
  CHECK(e.c(37) == -1);
  CHECK(root_number(e) == -1);
  CHECK(hecke_multiplicativity_check(e, 14).pass);
}

TEST_CASE("level one eigenforms") {
  const auto d = level1_basis(12, 300);
  REQUIRE(d.size() == 1);
  CHECK(d[0].c(2) == -24);
  CHECK(d[0].c(3) == 252);
  CHECK(d[0].c(5) == 4830);
  CHECK(root_number(d[0]) == 1);
  CHECK(level1_basis(16, 50)[0].c(2) == 216);
  CHECK(level1_basis(10, 50).empty());
  CHECK_THROWS_AS(level1_basis(24, 50), UnsupportedError);
}

TEST_CASE("series helpers") {
  const auto e = euler_product(10);
  // 1 - q - q^2 + q^5 + q^7
  CHECK(e[1] == -1);
  CHECK(e[3] == 0);
  CHECK(e[5] == 1);
  CHECK(e[7] == 1);
  const auto inv = series_power(e, -1);  // partition numbers
  CHECK(inv[10] == 42);
  CHECK(series_multiply(e, inv)[7] == 0);
  CHECK(eisenstein_e4(3)[2] == 240 * 9);
}

TEST_CASE("symmetric square values") {
  const auto f = eta_quotient_coeffs(eta_level11(), 3000);
  CHECK(sym_sq_L1_afe(f) == doctest::Approx(1.05759924459097).epsilon(1e-10));
  const auto d = level1_basis(12, 3000)[0];
  CHECK(sym_sq_L1_afe(d) == doctest::Approx(0.631792945727885).epsilon(1e-10));
  const auto e = sym_sq_L1(f, 3000);
  CHECK(std::abs(e.value - 1.05759924459097) < 5e-2);
}

TEST_CASE("fixture round trip") {
  const auto f = eta_quotient_coeffs(eta_level11(), 60);
  std::stringstream ss;
  write_fixture(ss, f);
  const auto g = read_fixture(ss);
  CHECK(g.weight == 2);
  CHECK(g.level == 11);
  CHECK(g.c(59) == f.c(59));
  std::stringstream bad("# form k=2 q=11 source=eta\n1 1\n3 5\n");
  CHECK_THROWS(read_fixture(bad));
}

TEST_CASE("shipped fixtures") {
  const auto f = load_fixture(std::string(GL3GL2_FIXTURE_DIR) + "/level11_k2.txt");
  CHECK(f.size() >= 10000);
  CHECK(f.has_harmonic_weight());
  CHECK(f.lambda(2) == doctest::Approx(-std::sqrt(2.0)));
}
