#include <doctest.h>

#include <cmath>

#include "gl3gl2/afe.hpp"
#include "gl3gl2/errors.hpp"
#include "gl3gl2/gl2.hpp"
#include "gl3gl2/gl3.hpp"

using namespace gl3gl2;
using namespace gl3gl2::afe;

namespace {
std::string fixture(const char* name) { return std::string(GL3GL2_FIXTURE_DIR) + "/" + name; }
}  // namespace

TEST_CASE("V weight limits") {
  const auto gf = GammaFactor::rankin_selberg(4, cplx(1.0 / 3.0));
  CHECK(std::abs(v_weight(1e-6, gf) - 1.0) < 1e-6);
  CHECK(std::abs(v_weight(50.0, gf)) < 1e-10);
  CHECK(v_weight(0.5, gf) > v_weight(2.0, gf));
  const VWeight table(gf);
  for (double x : {0.01, 0.3, 1.0, 3.0})
    CHECK(table(x) == doctest::Approx(v_weight(x, gf)).epsilon(1e-10));
}

TEST_CASE("GL(2) central value matches the exponential series at level 11") {
  const auto f = gl2::load_fixture(fixture("level11_k2.txt"));
  const double l1 = exponential_series_L1(f);
  CHECK(l1 == doctest::Approx(0.253841860855911).epsilon(1e-9));
  const auto rep = gl2_split_invariance_check(f, {1.0, std::sqrt(11.0), 10.0});
  CHECK(rep.pass);
}

TEST_CASE("odd form has a vanishing central value") {
  const auto f = gl2::load_fixture(fixture("level37_k2.txt"));
  CHECK(gl2::root_number(f) == -1);
  CHECK(std::abs(gl2_central_value(f).value) < 1e-10);
}

TEST_CASE("Rankin-Selberg central value is split invariant") {
  const auto f = gl2::load_fixture(fixture("level5_k4.txt"));
  const auto g = gl3::eisenstein_coeffs(130, 10000);
  AfeContext ctx;
  ctx.f = &f;
  ctx.table = &g;
  const double x0 = AfeContext::symmetric_split(f);
  const auto rep = split_invariance_check(ctx, {x0 / 4.0, x0, 4.0 * x0});
  CHECK(rep.pass);
  CHECK(rep.rel_discrepancy < 1e-8);
}
